#include <doctest.h>

#include <chrono>
#include <cstdio>

#include "gauges/rng.hpp"
#include "gauges/scenario.hpp"
#include "gauges/suites.hpp"

using namespace gauges;

namespace {

const CoeffField Q{};

struct Criterion {
  const char* label;
  double limit_seconds;
  bool ok = true;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  Criterion(const char* l, double lim) : label(l), limit_seconds(lim) {}
  void expect(bool cond) { ok = ok && cond; }
  ~Criterion() {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < limit_seconds;
    std::printf("[%s] %s (%.2fs, limit %.0fs)\n", ok && in_time ? "PASS" : "FAIL", label,
                secs, limit_seconds);
    std::fflush(stdout);
    CHECK(ok);
    CHECK(in_time);
  }
};

Element quat(const Example51& ctx, const std::string& a, const std::string& b,
             const std::string& c, const std::string& d) {
  Element z = el_zero(ctx.D);
  z.c[0] = Scalar(ctx.F, RatScalar(parse_series(a, 2, ctx.F->vars, Q)));
  z.c[1] = Scalar(ctx.F, RatScalar(parse_series(b, 2, ctx.F->vars, Q)));
  z.c[2] = Scalar(ctx.F, RatScalar(parse_series(c, 2, ctx.F->vars, Q)));
  z.c[3] = Scalar(ctx.F, RatScalar(parse_series(d, 2, ctx.F->vars, Q)));
  return z;
}

const Example51& ctx14() {
  static Example51 ctx = build_example51(Rat(1, 4));
  return ctx;
}

}  // namespace

TEST_CASE("criterion 1: value table") {
  Criterion c("criterion 1: rank-2 value table, exact", 1.0);
  const Example51& ctx = ctx14();
  Value zero2 = Value::zero(2);
  c.expect(evaluate(ctx.alpha, el_unit(ctx.D)) == ExtValue(zero2));
  c.expect(evaluate(ctx.alpha, el_basis(ctx.D, 1)) == ExtValue(zero2));
  c.expect(evaluate(ctx.alpha, el_basis(ctx.D, 2)) == ExtValue(parse_value({"-1/4", "1/2"})));
  c.expect(evaluate(ctx.alpha, el_basis(ctx.D, 3)) == ExtValue(parse_value({"-1/4", "1/2"})));
  c.expect(evaluate(ctx.alpha, el_sub(el_basis(ctx.D, 2), el_basis(ctx.D, 3))) ==
           ExtValue(parse_value({"1/4", "1/2"})));
  c.expect(evaluate(ctx.beta, el_basis(ctx.D, 2)) == ExtValue(parse_value({"1/2"})));
  c.expect(evaluate(ctx.beta, el_basis(ctx.D, 3)) == ExtValue(parse_value({"1/2"})));
}

TEST_CASE("criterion 2: coset structure of the value set") {
  Criterion c("criterion 2: value-set cosets lie in {0, delta, -delta} mod Z^2", 2.0);
  const Example51& ctx = ctx14();
  std::vector<Value> allowed = {coset_key(Value::zero(2)),
                                coset_key(parse_value({"1/4", "1/2"})),
                                coset_key(parse_value({"-1/4", "1/2"}))};
  auto corpus = ex51_corpus(ctx, 500, 1001);
  int checked = 0;
  for (const auto& z : corpus) {
    ExtValue v = evaluate(ctx.alpha, z);
    if (v.is_infinity()) continue;
    ++checked;
    Value key = coset_key(v.finite());
    bool hit = false;
    for (const auto& a : allowed) hit = hit || a == key;
    c.expect(hit);
  }
  c.expect(checked >= 500);
}

TEST_CASE("criterion 3: omega and minimality") {
  Criterion c("criterion 3: omega values and graded semisimplicity", 2.0);
  const Example51& ctx = ctx14();
  VerifyReport ra = verify_gauge(ctx.alpha, 2);
  VerifyReport rap = verify_gauge(ctx.alpha_p, 2);
  VerifyReport rb = verify_gauge(ctx.beta, 1);
  c.expect(ra.omega_value == 2 && ra.minimal.value_or(false));
  c.expect(rap.omega_value == 2 && rap.minimal.value_or(false));
  c.expect(rb.omega_value == 1 && rb.minimal.value_or(false));
  c.expect(ra.graded_ss.verdict == Verdict3::True);
  c.expect(rap.graded_ss.verdict == Verdict3::True);
  c.expect(rb.graded_ss.verdict == Verdict3::True);
  c.expect(ra.is_gauge() && rap.is_gauge() && rb.is_gauge());
}

TEST_CASE("criterion 4: gauge-ring description") {
  Criterion c("criterion 4: R_alpha = {a,b in V; c,d in W} on 1000 samples", 5.0);
  const Example51& ctx = ctx14();
  auto corpus = ex51_corpus(ctx, 1000, 1002);
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
    c.expect((membership(ctx.alpha, z) != RingVerdict::NotInRing) == expect);
  }
}

TEST_CASE("criterion 5: gamma independence and non-isomorphy") {
  Criterion c("criterion 5: same verdicts for gamma in {1/8,1/4,3/8}, distinct alpha(j)",
              10.0);
  const Example51& ctx = ctx14();
  Example51 c18 = build_example51(Rat(1, 8));
  Example51 c38 = build_example51(Rat(3, 8));
  auto corpus = ex51_corpus(ctx, 1000, 1003);
  for (const auto& z : corpus) {
    RingVerdict m = membership(ctx.alpha, z);
    c.expect(membership(c18.alpha, z) == m);
    c.expect(membership(c38.alpha, z) == m);
  }
  Element j = el_basis(ctx.D, 2);
  ExtValue a14 = evaluate(ctx.alpha, j), a18 = evaluate(c18.alpha, j),
           a38 = evaluate(c38.alpha, j);
  c.expect(a14 != a18 && a14 != a38 && a18 != a38);
}

TEST_CASE("criterion 6: the Graeter identity") {
  Criterion c("criterion 6: R_alpha = B1 cap B2 including the (1+-i)/x family", 5.0);
  const Example51& ctx = ctx14();
  auto corpus = ex51_corpus(ctx, 1000, 1004);
  GraeterReport rep = graeter_intersection_check(
      ctx.alpha, {oracle_dubrovin_ex51(ctx, 1), oracle_dubrovin_ex51(ctx, 2)}, 0, 0,
      corpus);
  c.expect(rep.agrees());
  c.expect(rep.tested >= 1000);
  Element z = quat(ctx, "x^-1", "-x^-1", "0", "0");
  c.expect(membership(ctx.alpha, z) == RingVerdict::NotInRing);
  c.expect(dubrovin_membership_ex51(ctx, 1, z));
  c.expect(!dubrovin_membership_ex51(ctx, 2, z));
}

TEST_CASE("criterion 7: total-ring property") {
  Criterion c("criterion 7: B1, B2 total on 200 invertible samples; R_alpha is not", 5.0);
  const Example51& ctx = ctx14();
  auto inverse = [&](const Element& z) { return quaternion_inverse(ctx.D, z); };
  auto extra = ex51_corpus(ctx, 0, 0);
  TotalRingReport r1 =
      total_ring_check(oracle_dubrovin_ex51(ctx, 1), inverse, ctx.D, 200, 1005, extra);
  TotalRingReport r2 =
      total_ring_check(oracle_dubrovin_ex51(ctx, 2), inverse, ctx.D, 200, 1005, extra);
  TotalRingReport ra =
      total_ring_check(oracle_gauge_ring(ctx.alpha), inverse, ctx.D, 200, 1005, extra);
  c.expect(r1.total() && r1.tested >= 200);
  c.expect(r2.total());
  c.expect(!ra.total());
  // Recorded witness: (1-i)^2/x and its inverse (1+i)^2/x both fail.
  Element w = quat(ctx, "2*x^-1 + 1", "-2*x^-1", "0", "0");
  c.expect(membership(ctx.alpha, w) == RingVerdict::NotInRing);
  c.expect(membership(ctx.alpha, quaternion_inverse(ctx.D, w)) == RingVerdict::NotInRing);
  bool witness_recorded = false;
  for (const auto& v : ra.violations) witness_recorded = witness_recorded || el_eq(v, w);
  c.expect(witness_recorded);
}

TEST_CASE("criterion 8: defect ledger") {
  Criterion c("criterion 8: beta reports 4 = 2*2*1; alpha, alpha' are norms", 2.0);
  const Example51& ctx = ctx14();
  DefectLedger lb = defect_report(ctx.beta);
  c.expect(lb.dim_A == 4);
  c.expect(lb.residue_dim == 2);
  c.expect(lb.ram_index == 2);
  c.expect(lb.defect == 1 && lb.defectless);
  DefectLedger la = defect_report(ctx.alpha);
  c.expect(la.gr_rank == la.dim_A);
  DefectLedger lap = defect_report(ctx.alpha_p);
  c.expect(lap.gr_rank == lap.dim_A);
}

TEST_CASE("criterion 9: extension counting at desk scale") {
  Criterion c("criterion 9: 1+x splits, y ramifies, 2 is inertial", 2.0);
  const Example51& ctx = ctx14();
  auto c1 = count_extensions_quadratic(parse_series("1 + x", 2, ctx.F->vars, Q));
  auto c2 = count_extensions_quadratic(parse_series("y", 2, ctx.F->vars, Q));
  auto c3 = count_extensions_quadratic(parse_series("2", 2, ctx.F->vars, Q));
  c.expect(c1.count == 2);
  c.expect(c2.count == 1 && c2.kind == ExtensionKind::Ramified);
  c.expect(c3.count == 1 && c3.kind == ExtensionKind::Inertial);
}

TEST_CASE("criterion 10: composition round trips") {
  Criterion c("criterion 10: min composition verifies, extraction recovers, bad pair rejected",
              30.0);
  const Example51& ctx = ctx14();
  Value zero2 = Value::zero(2);
  GaugePtr eta1 = end_gauge(ctx.S, ctx.v1, {zero2, zero2}, "eta1");
  GaugePtr eta2 = end_gauge(ctx.S, ctx.v2, {zero2, zero2}, "eta2");
  GaugePtr m = min_compose({eta1, eta2}, "m");
  c.expect(m->kind == GaugeKind::Min);
  c.expect(omega(m) == 2);

  auto R = restrict_scalars(ctx.S, ctx.v);
  Scalar half = Scalar::constant(ctx.K, Coeff(Rat(1, 2), Q));
  Scalar c1 = (Scalar::one(ctx.K) + Scalar::generator(ctx.K)) * half;
  Scalar c2 = (Scalar::one(ctx.K) - Scalar::generator(ctx.K)) * half;
  std::vector<Element> base;
  std::vector<Value> values;
  for (const Scalar& cc : {c1, c2})
    for (int l = 0; l < 4; ++l) {
      base.push_back(to_restricted(R, el_scale(cc, el_basis(ctx.S, l))));
      values.push_back(zero2);
    }
  GaugePtr galpha = base_norm(R, base, values, ValuationHandle{R->field, +1}, "m/F");
  VerifyReport vr = verify_gauge(galpha, 2);
  c.expect(vr.is_gauge());
  c.expect(vr.omega_value == 2);

  auto comps = extract_components(galpha);
  c.expect(comps.size() == 2);
  for (int l = 0; l < 4; ++l) {
    Element e = el_basis(ctx.S, l);
    c.expect(evaluate(comps[0], e) == evaluate(eta1, e));
    c.expect(evaluate(comps[1], e) == evaluate(eta2, e));
  }
  Rng rng(1006);
  for (int s = 0; s < 200; ++s) {
    Element z = sample_element(ctx.S, rng);
    c.expect(evaluate(comps[0], z) == evaluate(eta1, z));
    c.expect(evaluate(comps[1], z) == evaluate(eta2, z));
  }
  bool rejected = false;
  std::string witness;
  try {
    GaugePtr bad = end_gauge(ctx.S, ctx.v2, {zero2, parse_value({"0", "1"})}, "bad");
    min_compose({eta1, bad});
  } catch (const IncompatibleCoarsenings& e) {
    rejected = true;
    witness = e.what();
  }
  c.expect(rejected);
  c.expect(witness.find("witness") != std::string::npos);
}

TEST_CASE("criterion 11: invariant suites") {
  Criterion c("criterion 11: all module property suites at the default seed", 60.0);
  auto results = run_suite("all", 1);
  c.expect(!results.empty());
  for (const auto& r : results) {
    if (!r.pass) std::printf("  suite failure: %s %s\n", r.name.c_str(), r.detail.c_str());
    c.expect(r.pass);
  }
}

TEST_CASE("criterion 12: lifting") {
  Criterion c("criterion 12: the (1/4, 1/2) lift reproduces alpha' and coarsens to beta'",
              5.0);
  const Example51& ctx = ctx14();
  GaugePtr lifted = lift_gauge(ctx.S, ctx.v1, ConvexCut{1},
                               {Value::zero(1), parse_value({"1/2"})},
                               {Value::zero(2), parse_value({"1/4", "1/2"})}, "lifted");
  for (int l = 0; l < 4; ++l) {
    Element e = el_basis(ctx.S, l);
    c.expect(evaluate(lifted, e) == evaluate(ctx.alpha_p, e));
  }
  GaugePtr lc = coarsen_vf(lifted, ConvexCut{1});
  for (int l = 0; l < 4; ++l) {
    Element e = el_basis(ctx.S, l);
    c.expect(evaluate(lc, e) == evaluate(ctx.beta_p, e));
  }
  Rng rng(1007);
  for (int s = 0; s < 100; ++s) {
    Element z = sample_element(ctx.S, rng);
    c.expect(evaluate(lc, z) == evaluate(ctx.beta_p, z));
  }
}
