#include <doctest.h>

#include "gauges/rings.hpp"
#include "gauges/rng.hpp"

using namespace gauges;

namespace {
const CoeffField Q{};

struct Fix {
  Example51 ctx = build_example51(Rat(1, 4));
  Value V(std::vector<std::string> s) const { return parse_value(s); }
  Scalar fs(const std::string& s) const {
    return Scalar(ctx.F, RatScalar(parse_series(s, 2, ctx.F->vars, Q)));
  }
  Element quat(const std::string& a, const std::string& b, const std::string& c,
               const std::string& d) const {
    Element z = el_zero(ctx.D);
    z.c[0] = fs(a);
    z.c[1] = fs(b);
    z.c[2] = fs(c);
    z.c[3] = fs(d);
    return z;
  }
};
}  // namespace

TEST_CASE("the rank-2 quaternion value table, exact") {
  Fix f;
  const auto& a = f.ctx.alpha;
  CHECK(evaluate(a, el_unit(f.ctx.D)) == ExtValue(f.V({"0", "0"})));
  CHECK(evaluate(a, el_basis(f.ctx.D, 1)) == ExtValue(f.V({"0", "0"})));
  CHECK(evaluate(a, el_basis(f.ctx.D, 2)) == ExtValue(f.V({"-1/4", "1/2"})));
  CHECK(evaluate(a, el_basis(f.ctx.D, 3)) == ExtValue(f.V({"-1/4", "1/2"})));
  Element jmk = el_sub(el_basis(f.ctx.D, 2), el_basis(f.ctx.D, 3));
  CHECK(evaluate(a, jmk) == ExtValue(f.V({"1/4", "1/2"})));
  CHECK(evaluate(a, el_zero(f.ctx.D)) == ExtValue::infinity());
}

TEST_CASE("alpha agrees with the matrix-model evaluation") {
  Fix f;
  Rng rng(71);
  for (int i = 0; i < 4; ++i) {
    Element b = el_basis(f.ctx.D, i);
    CHECK(evaluate(f.ctx.alpha, b) == evaluate(f.ctx.alpha_p, f.ctx.embed->apply(b)));
  }
  for (int s = 0; s < 200; ++s) {
    Element z = sample_element(f.ctx.D, rng);
    CHECK(evaluate(f.ctx.alpha, z) == evaluate(f.ctx.alpha_p, f.ctx.embed->apply(z)));
  }
}

TEST_CASE("End-gauge evaluation formula on matrices") {
  Fix f;
  // alpha'(p q; r s) = min(v'(p), v'(q) - delta, v'(r) + delta, v'(s))
  Value delta = f.V({"1/4", "1/2"});
  Rng rng(81);
  for (int s = 0; s < 100; ++s) {
    Element z = sample_element(f.ctx.S, rng);
    ExtValue expect = ExtValue::infinity();
    ValuationHandle v1 = f.ctx.v1;
    auto add = [&](const Scalar& c, const Value& shift) {
      if (c.is_zero()) return;
      ExtValue v = handle_valuation(v1, c) + shift;
      if (v < expect) expect = v;
    };
    add(z.c[0], Value::zero(2));
    add(z.c[1], -delta);
    add(z.c[2], delta);
    add(z.c[3], Value::zero(2));
    CHECK(evaluate(f.ctx.alpha_p, z) == expect);
  }
  // identity matrix evaluates to 0, e12 to gamma_1 - gamma_2
  CHECK(evaluate(f.ctx.alpha_p, el_unit(f.ctx.S)) == ExtValue(Value::zero(2)));
  CHECK(evaluate(f.ctx.alpha_p, el_basis(f.ctx.S, 1)) == ExtValue(-delta));
}

TEST_CASE("surmultiplicativity: the rank-2 gauge passes") {
  Fix f;
  Rng rng(91);
  CHECK(check_surmultiplicative(f.ctx.alpha, rng).passed());
  CHECK(check_surmultiplicative(f.ctx.alpha_p, rng).passed());
}

TEST_CASE("surmultiplicativity: raising the j value breaks it with a witness") {
  Fix f;
  // gamma_j raised to (gamma, 1/2) while keeping j-k: alpha(j j) = (0,1) is
  // below the raised sum (1/2, 1).
  Value pdelta = f.V({"1/4", "1/2"});
  GaugePtr broken =
      base_norm(f.ctx.D,
                {f.quat("1", "1", "0", "0"), f.quat("1", "-1", "0", "0"),
                 el_basis(f.ctx.D, 2), el_sub(el_basis(f.ctx.D, 2), el_basis(f.ctx.D, 3))},
                {Value::zero(2), Value::zero(2), pdelta, pdelta}, f.ctx.v, "broken");
  Rng rng(92);
  SurmultReport rep = check_surmultiplicative(broken, rng);
  CHECK_FALSE(rep.passed());
  REQUIRE(rep.witness_pair.has_value());
  CHECK(rep.witness_pair->first == 2);
  CHECK(rep.witness_pair->second == 2);
}

TEST_CASE("value-function axioms on random data") {
  Fix f;
  Rng rng(93);
  for (int s = 0; s < 200; ++s) {
    Element x = sample_element(f.ctx.D, rng), y = sample_element(f.ctx.D, rng);
    ExtValue vx = evaluate(f.ctx.alpha, x), vy = evaluate(f.ctx.alpha, y);
    // (i) infinity exactly at zero
    CHECK(vx.is_infinity() == el_is_zero(x));
    // (ii) ultrametric
    CHECK(evaluate(f.ctx.alpha, el_add(x, y)) >= min(vx, vy));
    // (iii) scaling by central scalars
    Scalar c = f.fs("x^-1 + y");
    CHECK(evaluate(f.ctx.alpha, el_scale(c, x)) == vx + handle_valuation(f.ctx.v, c));
  }
}

TEST_CASE("coarsening reproduces the y-adic valuation formula") {
  Fix f;
  Rng rng(94);
  Value half = parse_value({"1/2"});
  for (int s = 0; s < 200; ++s) {
    Element z = sample_element(f.ctx.D, rng);
    ExtValue expect = ExtValue::infinity();
    auto add = [&](const Scalar& c, const Rat& shift) {
      if (c.is_zero()) return;
      Value w = split_value(handle_valuation(f.ctx.v, c).finite(), ConvexCut{1}).coarse;
      ExtValue v = ExtValue(w + Value({std::vector<Rat>{shift}}));
      if (v < expect) expect = v;
    };
    add(z.c[0], Rat(0));
    add(z.c[1], Rat(0));
    add(z.c[2], Rat(1, 2));
    add(z.c[3], Rat(1, 2));
    CHECK(evaluate(f.ctx.beta, z) == expect);
  }
  // beta(j) = beta(k) = 1/2 in the rank-1 value group
  CHECK(evaluate(f.ctx.beta, el_basis(f.ctx.D, 2)) == ExtValue(half));
  CHECK(evaluate(f.ctx.beta, el_basis(f.ctx.D, 3)) == ExtValue(half));
  // the k = 0 cut leaves evaluations unchanged
  CHECK(coarsen_vf(f.ctx.alpha, ConvexCut{0}) == f.ctx.alpha);
}

TEST_CASE("beta is multiplicative (a valuation on the division algebra)") {
  Fix f;
  Rng rng(95);
  for (int s = 0; s < 200; ++s) {
    Element x = sample_element(f.ctx.D, rng), y = sample_element(f.ctx.D, rng);
    CHECK(evaluate(f.ctx.beta, multiply(f.ctx.D, x, y)) ==
          evaluate(f.ctx.beta, x) + evaluate(f.ctx.beta, y));
  }
}

TEST_CASE("membership monotonicity under coarsening") {
  Fix f;
  Rng rng(96);
  for (int s = 0; s < 200; ++s) {
    Element z = sample_element(f.ctx.D, rng);
    int sa = evaluate(f.ctx.alpha, z).sign();
    int sb = evaluate(f.ctx.beta, z).sign();
    if (sa >= 0) CHECK(sb >= 0);
    if (sb > 0) CHECK(sa > 0);
  }
  // The coarse gauge ring is a central localization: x^-1 lies in R_beta but
  // not in R_alpha.
  Element xinv = f.quat("x^-1", "0", "0", "0");
  CHECK(membership(f.ctx.beta, xinv) != RingVerdict::NotInRing);
  CHECK(membership(f.ctx.alpha, xinv) == RingVerdict::NotInRing);
}

TEST_CASE("gauge-ring membership: the V/W description") {
  Fix f;
  // a + bi + cj + dk lies in R_alpha iff a, b are v-integral and c, d are
  // w-integral.
  auto corpus = ex51_corpus(f.ctx, 300, 97);
  for (const auto& z : corpus) {
    bool expect = true;
    for (int i = 0; i < 4 && expect; ++i) {
      if (z.c[i].is_zero()) continue;
      ExtValue v = handle_valuation(f.ctx.v, z.c[i]);
      if (i < 2)
        expect = v.sign() >= 0;
      else
        expect = split_value(v.finite(), ConvexCut{1}).coarse >= Value::zero(1);
    }
    CHECK((membership(f.ctx.alpha, z) != RingVerdict::NotInRing) == expect);
  }
  CHECK(membership(f.ctx.alpha, f.quat("0", "0", "0", "0")) == RingVerdict::InRadical);
  CHECK(membership(f.ctx.alpha, f.quat("y", "0", "0", "0")) == RingVerdict::InRadical);
  CHECK(membership(f.ctx.alpha, f.quat("x^-1", "-x^-1", "0", "0")) ==
        RingVerdict::NotInRing);
}

TEST_CASE("leq via the splitting-base criterion") {
  Fix f;
  Rng rng(98);
  CHECK(leq(f.ctx.alpha, f.ctx.alpha, rng));
  // a second gauge with a strictly larger j value dominates alpha
  Value pdelta = f.V({"1/4", "1/2"});
  GaugePtr eta =
      base_norm(f.ctx.D,
                {f.quat("1", "1", "0", "0"), f.quat("1", "-1", "0", "0"),
                 el_basis(f.ctx.D, 2), el_sub(el_basis(f.ctx.D, 2), el_basis(f.ctx.D, 3))},
                {Value::zero(2), Value::zero(2), pdelta, pdelta}, f.ctx.v, "eta");
  CHECK(leq(f.ctx.alpha, eta, rng));
  CHECK_FALSE(leq(eta, f.ctx.alpha, rng));
}

TEST_CASE("product gauges evaluate componentwise") {
  Fix f;
  GaugePtr pg = product_gauge({f.ctx.alpha, f.ctx.alpha}, "alpha x alpha");
  Rng rng(99);
  for (int s = 0; s < 100; ++s) {
    Element z1 = sample_element(f.ctx.D, rng), z2 = sample_element(f.ctx.D, rng);
    Element z = el_add(inject(pg->algebra, 0, z1), inject(pg->algebra, 1, z2));
    CHECK(evaluate(pg, z) == min(evaluate(f.ctx.alpha, z1), evaluate(f.ctx.alpha, z2)));
    // single-slot elements see only their component
    CHECK(evaluate(pg, inject(pg->algebra, 0, z1)) == evaluate(f.ctx.alpha, z1));
  }
  CHECK(restrict_component(pg, 0) == f.ctx.alpha);
  CHECK(product_gauge({f.ctx.alpha}) == f.ctx.alpha);
  Rng rng2(100);
  CHECK(check_surmultiplicative(pg, rng2).passed());
}

TEST_CASE("min composition of the two End-gauges for the signed handles") {
  Fix f;
  // Morandi-style components: min-entry End-gauges over v1 and v2.
  GaugePtr eta1 = end_gauge(f.ctx.S, f.ctx.v1, {Value::zero(2), Value::zero(2)}, "eta1");
  GaugePtr eta2 = end_gauge(f.ctx.S, f.ctx.v2, {Value::zero(2), Value::zero(2)}, "eta2");
  GaugePtr m = min_compose({eta1, eta2}, "min(eta1,eta2)");
  REQUIRE(m->kind == GaugeKind::Min);
  CHECK(m->cert.pairs.size() == 1);
  CHECK(m->cert.pairs[0].cut.k == 1);
  Rng rng(101);
  for (int s = 0; s < 100; ++s) {
    Element z = sample_element(f.ctx.S, rng);
    CHECK(evaluate(m, z) == min(evaluate(eta1, z), evaluate(eta2, z)));
  }
  CHECK(check_surmultiplicative(m, rng).passed());
  // single component composes to itself
  CHECK(min_compose({eta1}) == eta1);
  // identical heads are rejected
  CHECK_THROWS_AS(min_compose({eta1, eta1}), UnsupportedScenario);
}

TEST_CASE("incompatible coarsenings are rejected with a witness") {
  Fix f;
  GaugePtr eta1 = end_gauge(f.ctx.S, f.ctx.v1, {Value::zero(2), Value::zero(2)}, "eta1");
  // shifts (0, (0,1)): the y-adic coarsening differs on e12 by a full level
  GaugePtr bad = end_gauge(f.ctx.S, f.ctx.v2, {Value::zero(2), f.V({"0", "1"})}, "bad");
  CHECK_THROWS_WITH_AS(min_compose({eta1, bad}), doctest::Contains("witness"),
                       IncompatibleCoarsenings);
}

TEST_CASE("gamma-independence of the gauge ring, distinct value sets") {
  Fix f;
  Example51 c18 = build_example51(Rat(1, 8));
  Example51 c38 = build_example51(Rat(3, 8));
  auto corpus = ex51_corpus(f.ctx, 200, 103);
  for (const auto& z : corpus) {
    auto m14 = membership(f.ctx.alpha, z);
    // identical verdicts for all three gammas (same gauge ring)
    Element z18 = z, z38 = z;  // same coordinates over the same field model
    CHECK(membership(c18.alpha, z18) == m14);
    CHECK(membership(c38.alpha, z38) == m14);
  }
  // pairwise distinct alpha(j): non-isomorphic gauges
  Element j = el_basis(f.ctx.D, 2);
  CHECK(evaluate(f.ctx.alpha, j) == ExtValue(f.V({"-1/4", "1/2"})));
  CHECK(evaluate(c18.alpha, j) == ExtValue(f.V({"-1/8", "1/2"})));
  CHECK(evaluate(c38.alpha, j) == ExtValue(f.V({"-3/8", "1/2"})));
}

TEST_CASE("gamma out of range is rejected") {
  CHECK_THROWS_AS(build_example51(Rat(1, 2)), GammaOutOfRange);
  CHECK_THROWS_AS(build_example51(Rat(0)), GammaOutOfRange);
  CHECK_THROWS_AS(build_example51(Rat(-1, 4)), GammaOutOfRange);
}

TEST_CASE("degenerate alpha(1) != 0 is rejected at construction") {
  Fix f;
  CHECK_THROWS_AS(base_norm(f.ctx.D,
                            {el_basis(f.ctx.D, 0), el_basis(f.ctx.D, 1),
                             el_basis(f.ctx.D, 2), el_basis(f.ctx.D, 3)},
                            {f.V({"1", "0"}), Value::zero(2), Value::zero(2),
                             Value::zero(2)},
                            f.ctx.v),
                  UnsupportedScenario);
}
