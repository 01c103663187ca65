#include "gauges/scenario.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "gauges/suites.hpp"

namespace gauges {

using Json = nlohmann::ordered_json;

FieldPtr Scenario::find_extension(const std::string& name) const {
  for (const auto& [n, f] : extensions)
    if (n == name) return f;
  throw UnresolvedReference("extension '" + name + "'");
}
AlgebraPtr Scenario::find_algebra(const std::string& name) const {
  for (const auto& [n, a] : algebras)
    if (n == name) return a;
  throw UnresolvedReference("algebra '" + name + "'");
}
GaugePtr Scenario::find_gauge(const std::string& name) const {
  for (const auto& [n, g] : gauges)
    if (n == name) return g;
  throw UnresolvedReference("gauge '" + name + "'");
}

Scalar parse_scalar(const std::string& text, const FieldPtr& field) {
  std::vector<std::string> vars = field->vars;
  vars.push_back("t");
  Series with_t = parse_series(text, field->rank + 1, vars, field->coeff);
  Series a = Series::zero(field->rank, field->coeff);
  Series b = a;
  for (const auto& [e, c] : with_t.terms()) {
    long te = e.back();
    ExpKey base_e(e.begin(), e.end() - 1);
    if (te == 0)
      a = a + Series::monomial(c, base_e);
    else if (te == 1)
      b = b + Series::monomial(c, base_e);
    else
      throw ParseError("scalar literals are linear in t");
  }
  if (!b.is_exact_zero() && !field->is_extension())
    throw ParseError("t used over the base field");
  if (field->is_extension()) return Scalar(field, RatScalar(a), RatScalar(b));
  return Scalar(field, RatScalar(a));
}

namespace {

Value json_value(const Json& j) {
  std::vector<std::string> coords;
  for (const auto& c : j) coords.push_back(c.get<std::string>());
  return parse_value(coords);
}

Element json_element(const Json& j, const AlgebraPtr& A) {
  if (static_cast<int>(j.size()) != A->dim)
    throw ParseError("element coordinate count != algebra dimension");
  Element z = el_zero(A);
  for (int i = 0; i < A->dim; ++i) z.c[i] = parse_scalar(j[i].get<std::string>(), A->field);
  return z;
}

ValuationHandle json_handle(const Json& j, const Scenario& s) {
  std::string fname = j.value("field", "base");
  if (fname == "base") return ValuationHandle{s.base, +1};
  int sign = j.value("sign", 1);
  return ValuationHandle{s.find_extension(fname), sign >= 0 ? +1 : -1};
}

}  // namespace

Scenario parse_scenario_text(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  Scenario s;
  if (!j.contains("field")) throw ParseError("missing 'field' block");
  const Json& jf = j["field"];
  CoeffField coeff{};
  if (jf.contains("coeff") && jf["coeff"].is_object())
    coeff.p = jf["coeff"].value("prime", 0UL);
  if (coeff.p == 2) throw ParseError("prime coefficient fields must have odd characteristic");
  int rank = jf.value("rank", 0);
  std::vector<std::string> vars;
  for (const auto& v : jf["vars"]) vars.push_back(v.get<std::string>());
  if (static_cast<int>(vars.size()) != rank) throw ParseError("rank != #vars");
  s.base = make_base_field(coeff, rank, vars);

  if (j.contains("precision")) {
    s.precision.initial = json_value(j["precision"]["initial"]);
    s.precision.max_refinements = j["precision"].value("max_refinements", 4);
  } else {
    s.precision.initial = Value(std::vector<Rat>(rank, Rat(8)));
  }
  s.seed = j.value("seed", 1ULL);

  auto check_fresh = [](std::vector<std::string>& seen, const std::string& name) {
    for (const auto& n : seen)
      if (n == name) throw ParseError("duplicate block name '" + name + "'");
    seen.push_back(name);
  };
  std::vector<std::string> names;

  for (const auto& je : j.value("extensions", Json::array())) {
    std::string name = je.at("name").get<std::string>();
    check_fresh(names, name);
    Series u = parse_series(je.at("u").get<std::string>(), rank, vars, coeff);
    s.extensions.emplace_back(name, make_extension_field(s.base, name, u));
  }

  for (const auto& ja : j.value("algebras", Json::array())) {
    std::string name = ja.at("name").get<std::string>();
    check_fresh(names, name);
    std::string kind = ja.at("kind").get<std::string>();
    AlgebraPtr A;
    if (kind == "quaternion") {
      Scalar a = parse_scalar(ja.at("a").get<std::string>(), s.base);
      Scalar b = parse_scalar(ja.at("b").get<std::string>(), s.base);
      A = construct_quaternion(s.base, a, b, ValuationHandle{s.base, +1});
    } else if (kind == "matrix") {
      FieldPtr f = s.base;
      if (ja.contains("scalars") && ja["scalars"].get<std::string>() != "base")
        f = s.find_extension(ja["scalars"].get<std::string>());
      std::vector<ValuationHandle> handles;
      if (ja.contains("center_valuations")) {
        for (const auto& jh : ja["center_valuations"]) {
          int sign = jh.value("sign", 1);
          handles.push_back(ValuationHandle{f, sign >= 0 ? +1 : -1});
        }
      } else {
        handles.push_back(ValuationHandle{f, +1});
      }
      A = construct_matrix(f, ja.value("n", 1), handles);
    } else if (kind == "product") {
      std::vector<AlgebraPtr> factors;
      for (const auto& fn : ja.at("factors")) factors.push_back(s.find_algebra(fn.get<std::string>()));
      A = construct_product(factors);
    } else {
      throw ParseError("unknown algebra kind '" + kind + "'");
    }
    s.algebras.emplace_back(name, A);
    if (ja.contains("embed")) {
      const Json& jm = ja["embed"];
      AlgebraPtr from = s.find_algebra(jm.at("from").get<std::string>());
      Element image_i = json_element(jm.at("i"), A);
      Element image_j = json_element(jm.at("j"), A);
      // Construction verifies multiplicativity; the embedding itself is kept
      // implicit (scenario blocks only declare it to pin the matrix model).
      Embedding::quaternion_generated(from, A, image_i, image_j);
    }
  }

  for (const auto& jg : j.value("gauges", Json::array())) {
    std::string name = jg.at("name").get<std::string>();
    check_fresh(names, name);
    std::string kind = jg.at("kind").get<std::string>();
    GaugePtr g;
    if (kind == "base_norm") {
      AlgebraPtr A = s.find_algebra(jg.at("algebra").get<std::string>());
      ValuationHandle h = json_handle(jg.value("valuation", Json::object()), s);
      std::vector<Element> base;
      std::vector<Value> values;
      for (const auto& je : jg.at("base")) base.push_back(json_element(je, A));
      for (const auto& jv : jg.at("values")) values.push_back(json_value(jv));
      g = base_norm(A, std::move(base), std::move(values), h, name);
    } else if (kind == "end") {
      AlgebraPtr A = s.find_algebra(jg.at("algebra").get<std::string>());
      ValuationHandle h = json_handle(jg.value("valuation", Json::object()), s);
      std::vector<Value> shifts;
      for (const auto& jv : jg.at("shifts")) shifts.push_back(json_value(jv));
      g = end_gauge(A, h, std::move(shifts), name);
    } else if (kind == "coarsen") {
      GaugePtr inner = s.find_gauge(jg.at("inner").get<std::string>());
      g = coarsen_vf(inner, ConvexCut{jg.at("cut").get<int>()}, name);
    } else if (kind == "residue") {
      GaugePtr inner = s.find_gauge(jg.at("inner").get<std::string>());
      g = residue_vf(inner, ConvexCut{jg.at("cut").get<int>()}).alpha0;
    } else if (kind == "product") {
      std::vector<GaugePtr> comps;
      for (const auto& jc : jg.at("components")) comps.push_back(s.find_gauge(jc.get<std::string>()));
      g = product_gauge(std::move(comps), name);
    } else if (kind == "min") {
      std::vector<GaugePtr> comps;
      for (const auto& jc : jg.at("components")) comps.push_back(s.find_gauge(jc.get<std::string>()));
      g = min_compose(std::move(comps), name);
    } else {
      throw ParseError("unknown gauge kind '" + kind + "'");
    }
    s.gauges.emplace_back(name, g);
    if (jg.contains("xi"))
      s.gauge_xi[name] = jg["xi"].get<long>();
    else
      s.gauge_xi[name] = std::nullopt;
  }

  if (j.contains("constants")) {
    const Json& jc = j["constants"];
    s.constants.xi = jc.value("xi", 1L);
    s.constants.xi_note = jc.value("xi_note", "");
    if (jc.contains("ell")) {
      s.constants.ell = jc["ell"].get<long>();
      s.constants.ell_note = jc.value("ell_note", "");
    }
    if (jc.contains("r")) {
      s.constants.r = jc["r"].get<long>();
      s.constants.r_note = jc.value("r_note", "");
    }
    if (jc.contains("coarse_xi")) s.constants.coarse_xi = jc["coarse_xi"].get<long>();
    if (jc.contains("xi") && s.constants.xi_note.empty())
      throw ParseError("declared constants must carry a provenance note (xi_note)");
    if (s.constants.ell && s.constants.ell_note.empty())
      throw ParseError("declared constants must carry a provenance note (ell_note)");
    if (s.constants.r && s.constants.r_note.empty())
      throw ParseError("declared constants must carry a provenance note (r_note)");
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str());
}

bool Report::pass() const {
  for (const auto& r : records)
    if (r.status == CheckRecord::Status::Fail || r.status == CheckRecord::Status::Error)
      return false;
  return true;
}

int Report::exit_code() const {
  if (precision_exhausted) return 3;
  return pass() ? 0 : 1;
}

static const char* status_name(CheckRecord::Status s) {
  switch (s) {
    case CheckRecord::Status::Pass: return "pass";
    case CheckRecord::Status::Fail: return "fail";
    case CheckRecord::Status::Unverified: return "unverified";
    case CheckRecord::Status::Error: return "error";
  }
  return "?";
}

std::string Report::human() const {
  size_t w = 4;
  for (const auto& r : records) w = std::max(w, r.name.size());
  std::ostringstream os;
  for (const auto& r : records) {
    os << std::left << std::setw(static_cast<int>(w) + 2) << r.name << std::setw(12)
       << status_name(r.status) << std::fixed << std::setprecision(3) << r.seconds
       << "s";
    if (!r.details.empty()) os << "  " << r.details;
    os << "\n";
  }
  os << (pass() ? "PASS" : "FAIL") << " (" << records.size() << " checks)\n";
  return os.str();
}

std::string Report::machine_json() const {
  Json j;
  j["checks"] = Json::array();
  for (const auto& r : records) {
    Json jr;
    jr["name"] = r.name;
    jr["status"] = status_name(r.status);
    jr["details"] = r.details;
    j["checks"].push_back(jr);
  }
  j["pass"] = pass();
  return j.dump(2) + "\n";
}

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void run_record(Report& rep, const std::string& name,
                const std::function<CheckRecord::Status(std::string&)>& body) {
  CheckRecord r;
  r.name = name;
  Timer timer;
  try {
    std::string details;
    r.status = body(details);
    r.details = details;
  } catch (const InsufficientPrecision& e) {
    r.status = CheckRecord::Status::Error;
    r.details = e.what();
    rep.precision_exhausted = true;
  } catch (const Error& e) {
    r.status = CheckRecord::Status::Error;
    r.details = e.what();
  }
  r.seconds = timer.seconds();
  rep.records.push_back(std::move(r));
}

std::string coset_list(const std::vector<Value>& keys) {
  std::ostringstream os;
  for (size_t i = 0; i < keys.size(); ++i) os << (i ? " " : "") << keys[i].str();
  return os.str();
}

CheckRecord::Status verify_to_record(const VerifyReport& rep, std::string& details) {
  std::ostringstream os;
  os << "norm=" << (rep.is_norm ? "yes" : "no")
     << " surmult=" << (rep.surmult.passed() ? "yes" : "no");
  switch (rep.graded_ss.verdict) {
    case Verdict3::True: os << " graded_ss=yes"; break;
    case Verdict3::False: os << " graded_ss=no"; break;
    case Verdict3::Unverified: os << " graded_ss=unverified"; break;
  }
  if (rep.omega_value) os << " omega=" << *rep.omega_value;
  if (rep.minimal) os << " minimal=" << (*rep.minimal ? "yes" : "no");
  os << " cosets={" << coset_list(rep.coset_keys) << "}";
  if (rep.surmult.witness_pair)
    os << " witness_pair=(" << rep.surmult.witness_pair->first << ","
       << rep.surmult.witness_pair->second << ")";
  if (!rep.detail.empty()) os << " note=" << rep.detail;
  details = os.str();
  if (rep.hard_failure) return CheckRecord::Status::Fail;
  if (!rep.is_norm || !rep.surmult.passed() || rep.graded_ss.verdict == Verdict3::False)
    return CheckRecord::Status::Fail;
  if (rep.graded_ss.verdict == Verdict3::Unverified) return CheckRecord::Status::Unverified;
  return CheckRecord::Status::Pass;
}

}  // namespace

Report run_check(const Scenario& s) {
  Report rep;
  for (const auto& [name, g] : s.gauges) {
    run_record(rep, "check " + name, [&, gp = g](std::string& details) {
      auto xi_it = s.gauge_xi.find(gp->name);
      std::optional<long> xi = xi_it != s.gauge_xi.end() ? xi_it->second : std::nullopt;
      VerifyReport vr = verify_gauge(gp, xi, s.seed);
      return verify_to_record(vr, details);
    });
  }
  return rep;
}

std::string gr_presentation_json(const std::string& name, const GaugePtr& g) {
  GradedAlgebra G = gr_of(g);
  Json j;
  j["gauge"] = name;
  j["value_rank"] = G.value_rank;
  j["residue_rank"] = G.residue_rank;
  j["labels"] = G.labels;
  j["degrees"] = Json::array();
  for (const auto& d : G.degrees) j["degrees"].push_back(value_strings(d));
  j["constants"] = Json::array();
  for (int i = 0; i < G.dim(); ++i)
    for (int jj = 0; jj < G.dim(); ++jj)
      for (const auto& t : G.constants[i][jj]) {
        Json jt;
        jt["i"] = i;
        jt["j"] = jj;
        jt["l"] = t.l;
        jt["coeff"] = t.coeff.str(G.residue_vars);
        jt["e"] = value_strings(t.e);
        j["constants"].push_back(jt);
      }
  return j.dump(2);
}

Report run_gr(const Scenario& s) {
  Report rep;
  for (const auto& [name, g] : s.gauges) {
    run_record(rep, "gr " + name, [&, gp = g, n = name](std::string& details) {
      details = gr_presentation_json(n, gp);
      return CheckRecord::Status::Pass;
    });
  }
  return rep;
}

Report run_extensions(const Scenario& s) {
  Report rep;
  for (const auto& [name, f] : s.extensions) {
    run_record(rep, "extensions " + name, [&, fp = f](std::string& details) {
      ExtensionCount c = count_extensions_quadratic(fp->ext->u);
      details = "count=" + std::to_string(c.count) + " kind=" + kind_name(c.kind);
      return CheckRecord::Status::Pass;
    });
  }
  return rep;
}

Report run_report(const Scenario& s) {
  Report rep = run_check(s);
  Report ext = run_extensions(s);
  rep.records.insert(rep.records.end(), ext.records.begin(), ext.records.end());
  for (const auto& [name, g] : s.gauges) {
    run_record(rep, "defect " + name, [&, gp = g](std::string& details) {
      DefectLedger led = defect_report(gp);
      std::ostringstream os;
      os << "[A:F]=" << led.dim_A << " [gr:gr(F)]=" << led.gr_rank;
      if (led.residue_dim) os << " residue_dim=" << led.residue_dim;
      if (led.ram_index) os << " ram_index=" << led.ram_index;
      os << " defect=" << led.defect;
      details = os.str();
      return led.defectless ? CheckRecord::Status::Pass : CheckRecord::Status::Fail;
    });
  }
  return rep;
}

Report run_props(const std::string& suite, std::uint64_t seed) {
  Report rep;
  auto results = run_suite(suite, seed);
  for (const auto& r : results) {
    CheckRecord cr;
    cr.name = r.name;
    cr.status = r.pass ? CheckRecord::Status::Pass : CheckRecord::Status::Fail;
    cr.details = "samples=" + std::to_string(r.samples) +
                 (r.detail.empty() ? "" : " " + r.detail);
    rep.records.push_back(cr);
  }
  return rep;
}

Report run_example51(const Rat& gamma, int samples, std::uint64_t seed) {
  Report rep;
  Example51 ctx = build_example51(gamma);
  Value zero2 = Value::zero(2);
  Value mdelta = parse_value({rational_str(-gamma), "1/2"});
  Value pdelta = parse_value({rational_str(gamma), "1/2"});

  run_record(rep, "value table", [&](std::string& details) {
    bool ok = evaluate(ctx.alpha, el_unit(ctx.D)) == ExtValue(zero2) &&
              evaluate(ctx.alpha, el_basis(ctx.D, 1)) == ExtValue(zero2) &&
              evaluate(ctx.alpha, el_basis(ctx.D, 2)) == ExtValue(mdelta) &&
              evaluate(ctx.alpha, el_basis(ctx.D, 3)) == ExtValue(mdelta) &&
              evaluate(ctx.alpha, el_sub(el_basis(ctx.D, 2), el_basis(ctx.D, 3))) ==
                  ExtValue(pdelta) &&
              evaluate(ctx.beta, el_basis(ctx.D, 2)) == ExtValue(parse_value({"1/2"})) &&
              evaluate(ctx.beta, el_basis(ctx.D, 3)) == ExtValue(parse_value({"1/2"}));
    details = "alpha(j) = " + evaluate(ctx.alpha, el_basis(ctx.D, 2)).str();
    return ok ? CheckRecord::Status::Pass : CheckRecord::Status::Fail;
  });

  run_record(rep, "value-set cosets", [&](std::string& details) {
    std::vector<Value> allowed = {coset_key(zero2), coset_key(pdelta), coset_key(mdelta)};
    auto corpus = ex51_corpus(ctx, samples > 0 ? 500 : 0, seed);
    int checked = 0;
    for (const auto& z : corpus) {
      ExtValue v = evaluate(ctx.alpha, z);
      if (v.is_infinity()) continue;
      ++checked;
      Value key = coset_key(v.finite());
      bool ok = false;
      for (const auto& a : allowed) ok = ok || a == key;
      if (!ok) {
        details = "stray coset " + key.str();
        return CheckRecord::Status::Fail;
      }
    }
    details = "corpus=" + std::to_string(checked) + " keys={" + coset_list(allowed) + "}";
    return CheckRecord::Status::Pass;
  });

  run_record(rep, "omega and minimality", [&](std::string& details) {
    VerifyReport ra = verify_gauge(ctx.alpha, 2, seed);
    VerifyReport rap = verify_gauge(ctx.alpha_p, 2, seed);
    VerifyReport rb = verify_gauge(ctx.beta, 1, seed);
    std::ostringstream os;
    os << "omega(alpha)=" << (ra.omega_value ? *ra.omega_value : -1)
       << " omega(alpha')=" << (rap.omega_value ? *rap.omega_value : -1)
       << " omega(beta)=" << (rb.omega_value ? *rb.omega_value : -1);
    details = os.str();
    bool ok = ra.is_gauge() && rap.is_gauge() && rb.is_gauge() && ra.omega_value == 2 &&
              rap.omega_value == 2 && rb.omega_value == 1 && ra.minimal.value_or(false) &&
              rap.minimal.value_or(false) && rb.minimal.value_or(false);
    return ok ? CheckRecord::Status::Pass : CheckRecord::Status::Fail;
  });

  if (samples > 0) {
    run_record(rep, "gauge-ring description", [&](std::string& details) {
      auto corpus = ex51_corpus(ctx, samples, seed + 1);
      for (const auto& z : corpus) {
        bool expect = true;
        for (int i = 0; i < 4 && expect; ++i) {
          if (z.c[i].is_zero()) continue;
          ExtValue v = handle_valuation(ctx.v, z.c[i]);
          if (i < 2)
            expect = v.sign() >= 0;
          else
            expect = split_value(v.finite(), ConvexCut{1}).coarse >= Value::zero(1);
        }
        if ((membership(ctx.alpha, z) != RingVerdict::NotInRing) != expect) {
          details = "disagreement on a corpus element";
          return CheckRecord::Status::Fail;
        }
      }
      details = "corpus=" + std::to_string(corpus.size());
      return CheckRecord::Status::Pass;
    });

    run_record(rep, "gamma independence", [&](std::string& details) {
      std::vector<Rat> others;
      for (const Rat& g : {Rat(1, 8), Rat(1, 4), Rat(3, 8)})
        if (g != gamma) others.push_back(g);
      Example51 o1 = build_example51(others[0]);
      Example51 o2 = build_example51(others[1]);
      auto corpus = ex51_corpus(ctx, samples, seed + 2);
      for (const auto& z : corpus) {
        RingVerdict m = membership(ctx.alpha, z);
        if (membership(o1.alpha, z) != m || membership(o2.alpha, z) != m) {
          details = "membership differs across gamma";
          return CheckRecord::Status::Fail;
        }
      }
      Element jb = el_basis(ctx.D, 2);
      bool distinct = evaluate(ctx.alpha, jb) != evaluate(o1.alpha, jb) &&
                      evaluate(ctx.alpha, jb) != evaluate(o2.alpha, jb) &&
                      evaluate(o1.alpha, jb) != evaluate(o2.alpha, jb);
      details = "corpus=" + std::to_string(corpus.size()) +
                " alpha_gamma(j) pairwise distinct=" + (distinct ? "yes" : "no");
      return distinct ? CheckRecord::Status::Pass : CheckRecord::Status::Fail;
    });

    run_record(rep, "Graeter identity", [&](std::string& details) {
      auto corpus = ex51_corpus(ctx, samples, seed + 3);
      GraeterReport gr = graeter_intersection_check(
          ctx.alpha, {oracle_dubrovin_ex51(ctx, 1), oracle_dubrovin_ex51(ctx, 2)}, 0, 0,
          corpus);
      if (!gr.agrees()) {
        const Element& w = gr.disagreements.front();
        details = "counterexample " + el_str(w) + ": alpha=" +
                  evaluate(ctx.alpha, w).str() +
                  " B1=" + (dubrovin_membership_ex51(ctx, 1, w) ? "in" : "out") +
                  " B2=" + (dubrovin_membership_ex51(ctx, 2, w) ? "in" : "out");
        return CheckRecord::Status::Fail;
      }
      details = "corpus=" + std::to_string(gr.tested);
      return CheckRecord::Status::Pass;
    });

    run_record(rep, "total rings", [&](std::string& details) {
      auto inverse = [&](const Element& z) { return quaternion_inverse(ctx.D, z); };
      auto extra = ex51_corpus(ctx, 0, 0);
      TotalRingReport r1 = total_ring_check(oracle_dubrovin_ex51(ctx, 1), inverse, ctx.D,
                                            200, seed + 4, extra);
      TotalRingReport r2 = total_ring_check(oracle_dubrovin_ex51(ctx, 2), inverse, ctx.D,
                                            200, seed + 4, extra);
      TotalRingReport ra = total_ring_check(oracle_gauge_ring(ctx.alpha), inverse, ctx.D,
                                            200, seed + 4, extra);
      std::ostringstream os;
      os << "B1 violations=" << r1.violations.size()
         << " B2 violations=" << r2.violations.size()
         << " R_alpha violations=" << ra.violations.size();
      if (!r1.total()) os << " B1 witness " << el_str(r1.violations.front());
      if (!r2.total()) os << " B2 witness " << el_str(r2.violations.front());
      if (!ra.total())
        os << " recorded witness " << el_str(ra.violations.front()) << " with value "
           << evaluate(ctx.alpha, ra.violations.front()).str();
      details = os.str();
      return r1.total() && r2.total() && !ra.total() ? CheckRecord::Status::Pass
                                                     : CheckRecord::Status::Fail;
    });
  }

  run_record(rep, "defect ledger", [&](std::string& details) {
    DefectLedger lb = defect_report(ctx.beta);
    bool ok = lb.dim_A == 4 && lb.residue_dim == 2 && lb.ram_index == 2 && lb.defectless &&
              defect_report(ctx.alpha).defectless && defect_report(ctx.alpha_p).defectless;
    std::ostringstream os;
    os << "beta: " << lb.dim_A << " = " << lb.residue_dim << " * " << lb.ram_index
       << " * " << lb.defect;
    details = os.str();
    return ok ? CheckRecord::Status::Pass : CheckRecord::Status::Fail;
  });

  run_record(rep, "extension counting", [&](std::string& details) {
    CoeffField Q{};
    auto c1 = count_extensions_quadratic(parse_series("1 + x", 2, ctx.F->vars, Q));
    auto c2 = count_extensions_quadratic(parse_series("y", 2, ctx.F->vars, Q));
    auto c3 = count_extensions_quadratic(parse_series("2", 2, ctx.F->vars, Q));
    std::ostringstream os;
    os << "1+x: " << c1.count << " (" << kind_name(c1.kind) << "), y: " << c2.count
       << " (" << kind_name(c2.kind) << "), 2: " << c3.count << " (" << kind_name(c3.kind)
       << ")";
    details = os.str();
    bool ok = c1.count == 2 && c2.count == 1 && c2.kind == ExtensionKind::Ramified &&
              c3.count == 1 && c3.kind == ExtensionKind::Inertial;
    return ok ? CheckRecord::Status::Pass : CheckRecord::Status::Fail;
  });

  run_record(rep, "lifting", [&](std::string& details) {
    GaugePtr lifted =
        lift_gauge(ctx.S, ctx.v1, ConvexCut{1}, {Value::zero(1), parse_value({"1/2"})},
                   {zero2, pdelta}, "lifted");
    for (int l = 0; l < 4; ++l) {
      Element e = el_basis(ctx.S, l);
      if (!(evaluate(lifted, e) == evaluate(ctx.alpha_p, e))) {
        details = "lift disagrees with alpha' on the matrix units";
        return CheckRecord::Status::Fail;
      }
    }
    GaugePtr lc = coarsen_vf(lifted, ConvexCut{1});
    Rng rng(seed + 5);
    for (int s2 = 0; s2 < 100; ++s2) {
      Element z = sample_element(ctx.S, rng);
      if (!(evaluate(lc, z) == evaluate(ctx.beta_p, z))) {
        details = "coarsened lift disagrees with beta'";
        return CheckRecord::Status::Fail;
      }
    }
    details = "reproduces alpha'; coarsening matches beta'";
    return CheckRecord::Status::Pass;
  });

  run_record(rep, "composition round trip", [&](std::string& details) {
    GaugePtr eta1 = end_gauge(ctx.S, ctx.v1, {zero2, zero2}, "eta1");
    GaugePtr eta2 = end_gauge(ctx.S, ctx.v2, {zero2, zero2}, "eta2");
    GaugePtr m = min_compose({eta1, eta2}, "m");
    auto R = restrict_scalars(ctx.S, ctx.v);
    CoeffField Q{};
    Scalar half = Scalar::constant(ctx.K, Coeff(Rat(1, 2), Q));
    Scalar c1 = (Scalar::one(ctx.K) + Scalar::generator(ctx.K)) * half;
    Scalar c2 = (Scalar::one(ctx.K) - Scalar::generator(ctx.K)) * half;
    std::vector<Element> base;
    std::vector<Value> values;
    for (const Scalar& c : {c1, c2})
      for (int l = 0; l < 4; ++l) {
        base.push_back(to_restricted(R, el_scale(c, el_basis(ctx.S, l))));
        values.push_back(zero2);
      }
    GaugePtr galpha = base_norm(R, base, values, ValuationHandle{R->field, +1}, "m/F");
    VerifyReport vr = verify_gauge(galpha, 2, seed);
    if (!vr.is_gauge() || vr.omega_value != 2) {
      details = "composed gauge failed verification";
      return CheckRecord::Status::Fail;
    }
    auto comps = extract_components(galpha);
    Rng rng(seed + 6);
    for (int s2 = 0; s2 < 200; ++s2) {
      Element z = sample_element(ctx.S, rng);
      if (!(evaluate(comps[0], z) == evaluate(eta1, z)) ||
          !(evaluate(comps[1], z) == evaluate(eta2, z))) {
        details = "extraction differs from the constructed components";
        return CheckRecord::Status::Fail;
      }
    }
    bool rejected = false;
    try {
      GaugePtr bad = end_gauge(ctx.S, ctx.v2, {zero2, parse_value({"0", "1"})}, "bad");
      min_compose({eta1, bad});
    } catch (const IncompatibleCoarsenings&) {
      rejected = true;
    }
    details = "omega=2, components recovered, incompatible pair rejected";
    return rejected ? CheckRecord::Status::Pass : CheckRecord::Status::Fail;
  });

  return rep;
}

}  // namespace gauges
