#include "gauges/rings.hpp"

#include <sstream>

namespace gauges {

Example51 build_example51(const Rat& gamma) {
  if (!(gamma > 0 && gamma < Rat(1, 2)))
    throw GammaOutOfRange("gamma must satisfy 0 < gamma < 1/2, got " + rational_str(gamma));
  Example51 ctx;
  ctx.gamma = gamma;
  CoeffField Q{};
  ctx.F = make_base_field(Q, 2, {"x", "y"});
  Series one_plus_x = parse_series("1 + x", 2, ctx.F->vars, Q);
  Series y = parse_series("y", 2, ctx.F->vars, Q);
  ctx.K = make_extension_field(ctx.F, "K", one_plus_x);
  ctx.v = ValuationHandle{ctx.F, +1};
  ctx.v1 = ValuationHandle{ctx.K, +1};
  ctx.v2 = ValuationHandle{ctx.K, -1};

  ctx.D = construct_quaternion(ctx.F, Scalar(ctx.F, RatScalar(one_plus_x)),
                               Scalar(ctx.F, RatScalar(y)), ctx.v);
  ctx.S = construct_matrix(ctx.K, 2, {ctx.v1, ctx.v2});

  // i = (t 0; 0 -t), j = (0 y; 1 0).
  Scalar t = Scalar::generator(ctx.K);
  Element image_i = el_zero(ctx.S), image_j = el_zero(ctx.S);
  image_i.c[0] = t;
  image_i.c[3] = -t;
  image_j.c[1] = Scalar(ctx.K, RatScalar(y));
  image_j.c[2] = Scalar::one(ctx.K);
  ctx.embed = std::make_shared<Embedding>(
      Embedding::quaternion_generated(ctx.D, ctx.S, image_i, image_j));

  // alpha: splitting base (1+i, 1-i, j, j-k) with values (0, 0, -delta', delta')
  // where delta' = (-gamma, 1/2) resp. (gamma, 1/2).
  Value zero2 = Value::zero(2);
  Value mdelta = parse_value({rational_str(-gamma), "1/2"});
  Value pdelta = parse_value({rational_str(gamma), "1/2"});
  Scalar o = Scalar::one(ctx.F);
  Element e1 = el_zero(ctx.D), e2 = el_zero(ctx.D), e3 = el_basis(ctx.D, 2),
          e4 = el_zero(ctx.D);
  e1.c[0] = o;
  e1.c[1] = o;
  e2.c[0] = o;
  e2.c[1] = -o;
  e4.c[2] = o;
  e4.c[3] = -o;
  ctx.alpha = base_norm(ctx.D, {e1, e2, e3, e4}, {zero2, zero2, mdelta, pdelta}, ctx.v,
                        "alpha");

  Value delta = parse_value({rational_str(gamma), "1/2"});
  ctx.alpha_p = end_gauge(ctx.S, ctx.v1, {zero2, delta}, "alpha'");

  ctx.beta = coarsen_vf(ctx.alpha, ConvexCut{1}, "beta");
  ctx.beta_p = coarsen_vf(ctx.alpha_p, ConvexCut{1}, "beta'");

  auto Fx = make_base_field(Q, 1, {"x"});
  ctx.residue_ext = make_extension_field(Fx, "res", parse_series("1 + x", 1, {"x"}, Q));
  ctx.u1 = ValuationHandle{ctx.residue_ext, +1};
  ctx.u2 = ValuationHandle{ctx.residue_ext, -1};
  return ctx;
}

MembershipOracle oracle_gauge_ring(const GaugePtr& g, std::string name) {
  MembershipOracle o;
  o.name = name.empty() ? "R_" + g->name : std::move(name);
  o.provenance = MembershipOracle::Provenance::GaugeRing;
  o.member = [g](const Element& z) { return membership(g, z) != RingVerdict::NotInRing; };
  return o;
}

MembershipOracle oracle_radical(const GaugePtr& g, std::string name) {
  MembershipOracle o;
  o.name = name.empty() ? "J_" + g->name : std::move(name);
  o.provenance = MembershipOracle::Provenance::Radical;
  o.member = [g](const Element& z) { return membership(g, z) == RingVerdict::InRadical; };
  return o;
}

bool dubrovin_membership_ex51(const Example51& ctx, int ell, const Element& z) {
  if (ell != 1 && ell != 2) throw UnsupportedScenario("ell must be 1 or 2");
  ExtValue bv = evaluate(ctx.beta, z);
  int s = bv.sign();
  if (s < 0) return false;
  if (s > 0 || bv.is_infinity()) return true;
  // beta(z) = 0: the residue abar + bbar*s lives in L(x)(sqrt(1+x)); test the
  // x-adic value at the embedding s -> (-1)^(ell+1) sqrt(1+x).
  const RatScalar& a = z.c[0].a();
  const RatScalar& b = z.c[1].a();
  RatScalar abar = a.residue(ConvexCut{1});
  RatScalar bbar = b.residue(ConvexCut{1});
  ValuationHandle u = ell == 1 ? ctx.u1 : ctx.u2;
  Scalar zr(ctx.residue_ext, abar, bbar);
  if (zr.is_zero())
    throw InternalCheckFailed("beta(z) = 0 but the i-part residue vanishes");
  return handle_valuation(u, zr).sign() >= 0;
}

MembershipOracle oracle_dubrovin_ex51(const Example51& ctx, int ell) {
  MembershipOracle o;
  o.name = "B" + std::to_string(ell);
  o.provenance = MembershipOracle::Provenance::Dubrovin;
  Example51 copy = ctx;
  o.member = [copy, ell](const Element& z) { return dubrovin_membership_ex51(copy, ell, z); };
  return o;
}

bool morandi_check(const GaugePtr& g, std::uint64_t seed) {
  VerifyReport rep = verify_gauge(g, {}, seed);
  if (!rep.is_gauge())
    throw UnsupportedScenario("morandi_check requires a verified gauge");
  DefectLedger led = defect_report(g);
  if (!led.defectless)
    throw UnsupportedScenario("morandi_check requires a defectless subject");
  if (!rep.omega_value) throw UnsupportedScenario("omega unavailable");
  return *rep.omega_value == 1;
}

Element quaternion_inverse(const AlgebraPtr& D, const Element& z) {
  // Conjugate a - bi - cj - dk; the reduced norm is the 1-coordinate of the
  // product z * conj(z).
  Element conj = z;
  for (int i = 1; i < 4; ++i) conj.c[i] = -conj.c[i];
  Element n = multiply(D, z, conj);
  for (int i = 1; i < 4; ++i)
    if (!n.c[i].is_zero()) throw InternalCheckFailed("norm is not scalar");
  if (n.c[0].is_zero()) throw DivisionByZero("non-invertible quaternion");
  Scalar inv = n.c[0].inverse();
  return el_scale(inv, conj);
}

TotalRingReport total_ring_check(const MembershipOracle& oracle,
                                 const std::function<Element(const Element&)>& inverse,
                                 const AlgebraPtr& A, int samples, std::uint64_t seed,
                                 const std::vector<Element>& extra) {
  TotalRingReport rep;
  Rng rng(seed);
  std::vector<Element> corpus = extra;
  while (static_cast<int>(corpus.size()) < samples + static_cast<int>(extra.size()))
    corpus.push_back(sample_element(A, rng));
  for (const auto& z : corpus) {
    if (el_is_zero(z)) continue;
    Element zi;
    try {
      zi = inverse(z);
    } catch (const DivisionByZero&) {
      ++rep.skipped;
      continue;
    }
    ++rep.tested;
    if (!oracle.member(z) && !oracle.member(zi)) rep.violations.push_back(z);
  }
  return rep;
}

GraeterReport graeter_intersection_check(const GaugePtr& g,
                                         const std::vector<MembershipOracle>& oracles,
                                         int samples, std::uint64_t seed,
                                         const std::vector<Element>& adversarial) {
  GraeterReport rep;
  Rng rng(seed);
  std::vector<Element> corpus = adversarial;
  for (int i = 0; i < samples; ++i) corpus.push_back(sample_element(g->algebra, rng));
  for (const auto& z : corpus) {
    ++rep.tested;
    bool in_ring = membership(g, z) != RingVerdict::NotInRing;
    bool in_all = true;
    for (const auto& o : oracles) in_all = in_all && o.member(z);
    if (in_ring != in_all) rep.disagreements.push_back(z);
  }
  return rep;
}

MinimalityReport minimality_report(const GaugePtr& g, const ScenarioConstants& constants,
                                   std::optional<ConvexCut> cut) {
  MinimalityReport rep;
  rep.declared_xi = constants.xi;
  rep.omega = omega(g);
  rep.minimal = rep.omega == static_cast<int>(constants.xi);
  if (rep.omega < static_cast<int>(constants.xi)) {
    rep.hard_failure = true;
    rep.detail = "omega < declared xi contradicts the extension-number lower bound";
  }
  if (cut) {
    GaugePtr coarse = coarsen_vf(g, *cut);
    rep.coarse_omega = omega(coarse);
    if (constants.coarse_xi) {
      rep.coarse_xi = constants.coarse_xi;
      rep.coarse_minimal = *rep.coarse_omega == static_cast<int>(*constants.coarse_xi);
      if (*rep.coarse_omega < static_cast<int>(*constants.coarse_xi)) {
        rep.hard_failure = true;
        rep.detail = "coarse omega < declared coarse xi";
      }
    }
  }
  return rep;
}

GaugePtr lift_gauge(const AlgebraPtr& M, const ValuationHandle& fine, ConvexCut cut,
                    const std::vector<Value>& pis, const std::vector<Value>& mus,
                    std::string name) {
  if (pis.size() != mus.size())
    throw LiftConstraintViolated("one lift choice per coarse shift required");
  for (size_t i = 0; i < mus.size(); ++i) {
    if (!(split_value(mus[i], cut).coarse == pis[i]))
      throw LiftConstraintViolated("epsilon(mu_" + std::to_string(i + 1) +
                                   ") != pi_" + std::to_string(i + 1));
    for (size_t j = 0; j < i; ++j)
      if (pis[i] == pis[j] && !(mus[i] == mus[j]))
        throw LiftConstraintViolated("mu must agree wherever pi agrees");
  }
  GaugePtr lifted = end_gauge(M, fine, mus, std::move(name));
  // The cut-coarsening must reproduce the input End-data on the matrix units.
  GaugePtr coarse = coarsen_vf(lifted, cut);
  int n = M->matrix_n;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      Element e = el_basis(M, p * n + q);
      ExtValue got = evaluate(coarse, e);
      Value expect = pis[p] - pis[q];
      if (!(got == ExtValue(expect)))
        throw LiftConstraintViolated("coarsening disagrees with the End-data at e" +
                                     std::to_string(p + 1) + std::to_string(q + 1));
    }
  return lifted;
}

std::vector<Element> ex51_corpus(const Example51& ctx, int samples, std::uint64_t seed) {
  std::vector<Element> corpus;
  const AlgebraPtr& D = ctx.D;
  const FieldPtr& F = ctx.F;
  CoeffField Q{};
  auto rs = [&](const std::string& s) { return Scalar(F, RatScalar(parse_series(s, 2, F->vars, Q))); };
  auto quat = [&](const std::string& a, const std::string& b, const std::string& c,
                  const std::string& d) {
    Element z = el_zero(D);
    z.c[0] = rs(a);
    z.c[1] = rs(b);
    z.c[2] = rs(c);
    z.c[3] = rs(d);
    return z;
  };
  // The directed family: monomial multiples of the basis and the (1 +- i)/x
  // and (1 +- i)^2/x elements whose membership separates B1 from B2.
  const char* monos[] = {"1", "x", "y", "x^-1", "y^-1", "x*y^-1", "x^-2*y"};
  for (const char* m : monos) {
    for (int b = 0; b < 4; ++b) {
      Element z = el_zero(D);
      z.c[b] = rs(m);
      corpus.push_back(z);
    }
  }
  corpus.push_back(quat("x^-1", "x^-1", "0", "0"));    // (1+i)/x
  corpus.push_back(quat("x^-1", "-x^-1", "0", "0"));   // (1-i)/x
  // (1 +- i)^2/x = (2 + x +- 2i)/x
  corpus.push_back(quat("2*x^-1 + 1", "2*x^-1", "0", "0"));
  corpus.push_back(quat("2*x^-1 + 1", "-2*x^-1", "0", "0"));
  corpus.push_back(quat("0", "0", "y^-1", "0"));       // j/y
  corpus.push_back(quat("0", "0", "y^-1", "-y^-1"));   // (j-k)/y
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) corpus.push_back(sample_element(D, rng));
  return corpus;
}

}  // namespace gauges
