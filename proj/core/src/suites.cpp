#include "gauges/suites.hpp"

#include <functional>

#include "gauges/rings.hpp"
#include "gauges/rng.hpp"

namespace gauges {

namespace {

const CoeffField Q{};

struct Runner {
  std::vector<PropertyResult> out;
  void run(const std::string& name, int samples, const std::function<bool(std::string&)>& f) {
    PropertyResult r;
    r.name = name;
    r.samples = samples;
    try {
      std::string detail;
      r.pass = f(detail);
      r.detail = detail;
    } catch (const Error& e) {
      r.pass = false;
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  }
};

Value rnd_value(Rng& rng, int rank) {
  std::vector<Rat> c(rank);
  for (auto& x : c) {
    x = Rat(rng.range(-8, 8), rng.range(1, 4));
    x.canonicalize();
  }
  return Value(std::move(c));
}

Series rnd_series(Rng& rng, int rank, int max_terms = 3) {
  Series s = Series::zero(rank, Q);
  long n = rng.range(0, max_terms);
  for (long t = 0; t < n; ++t) {
    ExpKey e(rank);
    for (int i = 0; i < rank; ++i) e[i] = rng.range(-3, 3);
    s = s + Series::monomial(Coeff(Rat(rng.range(-4, 4)), Q), e);
  }
  return s;
}

}  // namespace

std::vector<PropertyResult> suite_ordered(std::uint64_t seed) {
  Runner R;
  R.run("compare: trichotomy and transitivity", 300, [&](std::string&) {
    Rng rng(seed);
    for (int s = 0; s < 300; ++s) {
      Value a = rnd_value(rng, 3), b = rnd_value(rng, 3), c = rnd_value(rng, 3);
      int rel = (compare(a, b) == Ordering::Less) + (compare(a, b) == Ordering::Equal) +
                (compare(a, b) == Ordering::Greater);
      if (rel != 1) return false;
      if (a < b && b < c && !(a < c)) return false;
    }
    return true;
  });
  R.run("compare: translation invariance", 300, [&](std::string&) {
    Rng rng(seed + 1);
    for (int s = 0; s < 300; ++s) {
      Value a = rnd_value(rng, 3), b = rnd_value(rng, 3), c = rnd_value(rng, 3);
      if (compare(a, b) != compare(a + c, b + c)) return false;
    }
    return true;
  });
  R.run("convexity of the cut subgroups", 200, [&](std::string&) {
    Rng rng(seed + 2);
    for (int s = 0; s < 200; ++s) {
      int k = static_cast<int>(rng.range(0, 3));
      std::vector<Rat> d(3, Rat(0));
      for (int i = 0; i < k; ++i) d[i] = Rat(rng.range(0, 6));
      Value delta(d), gamma = rnd_value(rng, 3);
      if (Value::zero(3) <= gamma && gamma <= delta)
        if (!split_value(gamma, ConvexCut{k}).coarse.is_zero()) return false;
    }
    return true;
  });
  R.run("split_value: homomorphism, epsilon order-preserving", 200, [&](std::string&) {
    Rng rng(seed + 3);
    for (int s = 0; s < 200; ++s) {
      Value a = rnd_value(rng, 3), b = rnd_value(rng, 3);
      ConvexCut cut{static_cast<int>(rng.range(0, 3))};
      auto sa = split_value(a, cut), sb = split_value(b, cut), sab = split_value(a + b, cut);
      if (!(sab.coarse == sa.coarse + sb.coarse)) return false;
      if (!(sab.fine == sa.fine + sb.fine)) return false;
      if (!(sa.coarse == sb.coarse) && (a < b) != (sa.coarse < sb.coarse)) return false;
    }
    return true;
  });
  R.run("lattice torsion multiples", 100, [&](std::string&) {
    Rng rng(seed + 4);
    for (int s = 0; s < 100; ++s) {
      Value a = rnd_value(rng, 2);
      if (!lattice_member(a.scaled(Rat(static_cast<long>(torsion_multiple(a)))))) return false;
    }
    return true;
  });
  return R.out;
}

std::vector<PropertyResult> suite_series(std::uint64_t seed) {
  Runner R;
  R.run("ultrametric and equality off ties", 200, [&](std::string&) {
    Rng rng(seed);
    for (int s = 0; s < 200; ++s) {
      Series a = rnd_series(rng, 2), b = rnd_series(rng, 2);
      if (a.is_exact_zero() || b.is_exact_zero()) continue;
      ExtValue va = a.valuation(), vb = b.valuation();
      if (!((a + b).valuation() >= min(va, vb))) return false;
      if (va != vb && !((a + b).valuation() == min(va, vb))) return false;
    }
    return true;
  });
  R.run("multiplicativity of the monomial valuation", 200, [&](std::string&) {
    Rng rng(seed + 1);
    for (int s = 0; s < 200; ++s) {
      Series a = rnd_series(rng, 2), b = rnd_series(rng, 2);
      if (a.is_exact_zero() || b.is_exact_zero()) continue;
      if (!((a * b).valuation() == a.valuation() + b.valuation())) return false;
    }
    return true;
  });
  R.run("hensel square roots square back", 100, [&](std::string&) {
    Rng rng(seed + 2);
    Value target = parse_value({"6", "0"});
    for (int s = 0; s < 100; ++s) {
      // random unit with square leading coefficient and a level-0 tail
      long c = rng.range(1, 9);
      Series u = Series::constant(Coeff(Rat(c * c), Q), 2);
      long nt = rng.range(1, 3);
      for (long t = 0; t < nt; ++t)
        u = u + Series::monomial(Coeff(Rat(rng.range(-4, 4)), Q), {rng.range(1, 4), 0});
      Series r = hensel_sqrt(u, target);
      Series diff = r * r - u;
      for (const auto& [e, cc] : diff.terms()) {
        (void)cc;
        if (exp_below(e, target)) return false;
      }
    }
    return true;
  });
  R.run("extension handles agree on the base field", 100, [&](std::string&) {
    auto base = make_base_field(Q, 2, {"x", "y"});
    auto k = make_extension_field(base, "K", parse_series("1 + x", 2, base->vars, Q));
    ValuationHandle v1{k, +1}, v2{k, -1};
    Rng rng(seed + 3);
    for (int s = 0; s < 100; ++s) {
      Series a = rnd_series(rng, 2);
      if (a.is_exact_zero()) continue;
      Scalar z(k, RatScalar(a));
      if (!(handle_valuation(v1, z) == handle_valuation(v2, z))) return false;
    }
    return true;
  });
  R.run("norm identity v1 + v2 = v(N)", 100, [&](std::string&) {
    auto base = make_base_field(Q, 2, {"x", "y"});
    auto k = make_extension_field(base, "K", parse_series("1 + x", 2, base->vars, Q));
    ValuationHandle v1{k, +1}, v2{k, -1}, vb{base, +1};
    Rng rng(seed + 4);
    for (int s = 0; s < 100; ++s) {
      Scalar z(k, RatScalar(rnd_series(rng, 2)), RatScalar(rnd_series(rng, 2)));
      if (z.is_zero()) continue;
      Scalar n = z * z.conj();
      if (!(handle_valuation(v1, z) + handle_valuation(v2, z) ==
            handle_valuation(vb, Scalar(base, n.a()))))
        return false;
    }
    return true;
  });
  R.run("precision soundness under cut doubling", 20, [&](std::string&) {
    for (int c = 2; c <= 8; c *= 2) {
      Series q1 = div(Series::one(1, Q), parse_series("1 + x", 1, {"x"}, Q),
                      parse_value({std::to_string(c)}));
      Series q2 = div(Series::one(1, Q), parse_series("1 + x", 1, {"x"}, Q),
                      parse_value({std::to_string(2 * c)}));
      for (const auto& [e, cc] : q1.terms()) {
        auto it = q2.terms().find(e);
        if (it == q2.terms().end() || !(it->second == cc)) return false;
      }
      if (!(q1.valuation() == q2.valuation())) return false;
    }
    return true;
  });
  return R.out;
}

std::vector<PropertyResult> suite_gauges(std::uint64_t seed) {
  Runner R;
  Example51 ctx = build_example51(Rat(1, 4));
  R.run("algebra associativity on random triples", 200, [&](std::string&) {
    Rng rng(seed);
    for (int s = 0; s < 200; ++s) {
      Element a = sample_element(ctx.D, rng), b = sample_element(ctx.D, rng),
              c = sample_element(ctx.D, rng);
      if (!el_eq(multiply(ctx.D, multiply(ctx.D, a, b), c),
                 multiply(ctx.D, a, multiply(ctx.D, b, c))))
        return false;
    }
    return true;
  });
  R.run("express then recombine on random elements", 100, [&](std::string&) {
    Rng rng(seed + 1);
    const auto& base = *splitting_base(ctx.alpha);
    BaseChange bc(ctx.D, base);
    for (int s = 0; s < 100; ++s) {
      Element z = sample_element(ctx.D, rng);
      auto d = bc.express(z);
      Element back = el_zero(ctx.D);
      for (int i = 0; i < 4; ++i) back = el_add(back, el_scale(d[i], base[i]));
      if (!el_eq(back, z)) return false;
    }
    return true;
  });
  R.run("embedding preserves products and unit", 100, [&](std::string&) {
    Rng rng(seed + 2);
    if (!el_eq(ctx.embed->apply(el_unit(ctx.D)), el_unit(ctx.S))) return false;
    for (int s = 0; s < 100; ++s) {
      Element a = sample_element(ctx.D, rng), b = sample_element(ctx.D, rng);
      if (!el_eq(ctx.embed->apply(multiply(ctx.D, a, b)),
                 multiply(ctx.S, ctx.embed->apply(a), ctx.embed->apply(b))))
        return false;
    }
    return true;
  });
  R.run("value-function axioms (i)-(iii)", 200, [&](std::string&) {
    Rng rng(seed + 3);
    for (int s = 0; s < 200; ++s) {
      Element x = sample_element(ctx.D, rng), y = sample_element(ctx.D, rng);
      ExtValue vx = evaluate(ctx.alpha, x);
      if (vx.is_infinity() != el_is_zero(x)) return false;
      if (!(evaluate(ctx.alpha, el_add(x, y)) >= min(vx, evaluate(ctx.alpha, y))))
        return false;
      Scalar c(ctx.F, RatScalar(rnd_series(rng, 2)));
      if (c.is_zero()) continue;
      if (!(evaluate(ctx.alpha, el_scale(c, x)) == vx + handle_valuation(ctx.v, c)))
        return false;
    }
    return true;
  });
  R.run("surmultiplicativity on 500 sampled pairs", 500, [&](std::string&) {
    Rng rng(seed + 4);
    for (const GaugePtr& g : {ctx.alpha, ctx.alpha_p}) {
      for (int s = 0; s < 500; ++s) {
        Element x = sample_element(g->algebra, rng), y = sample_element(g->algebra, rng);
        if (!(evaluate(g, multiply(g->algebra, x, y)) >=
              evaluate(g, x) + evaluate(g, y)))
          return false;
      }
    }
    return true;
  });
  R.run("End-gauge: psi(fg) >= psi(f) + psi(g) and value-set cosets", 200, [&](std::string&) {
    Rng rng(seed + 5);
    for (int s = 0; s < 200; ++s) {
      Element f1 = sample_element(ctx.S, rng), g1 = sample_element(ctx.S, rng);
      if (!(evaluate(ctx.alpha_p, multiply(ctx.S, f1, g1)) >=
            evaluate(ctx.alpha_p, f1) + evaluate(ctx.alpha_p, g1)))
        return false;
      // Gamma_psi within the shift-difference cosets of the inner group.
      Element z = sample_element(ctx.S, rng);
      ExtValue v = evaluate(ctx.alpha_p, z);
      if (v.is_infinity()) continue;
      Value key = coset_key(v.finite());
      bool ok = false;
      for (const auto& si : ctx.alpha_p->end_shifts)
        for (const auto& sj : ctx.alpha_p->end_shifts)
          ok = ok || key == coset_key(si - sj);
      if (!ok) return false;
    }
    return true;
  });
  R.run("min gauge is the pointwise minimum; omega adds up", 200, [&](std::string&) {
    GaugePtr eta1 = end_gauge(ctx.S, ctx.v1, {Value::zero(2), Value::zero(2)}, "eta1");
    GaugePtr eta2 = end_gauge(ctx.S, ctx.v2, {Value::zero(2), Value::zero(2)}, "eta2");
    GaugePtr m = min_compose({eta1, eta2});
    Rng rng(seed + 6);
    for (int s = 0; s < 200; ++s) {
      Element z = sample_element(ctx.S, rng);
      if (!(evaluate(m, z) == min(evaluate(eta1, z), evaluate(eta2, z)))) return false;
    }
    return omega(m) == omega(eta1) + omega(eta2);
  });
  R.run("membership monotonicity under coarsening", 200, [&](std::string&) {
    Rng rng(seed + 7);
    for (int s = 0; s < 200; ++s) {
      Element z = sample_element(ctx.D, rng);
      int sa = evaluate(ctx.alpha, z).sign(), sb = evaluate(ctx.beta, z).sign();
      if (sa >= 0 && sb < 0) return false;
      if (sb > 0 && sa <= 0) return false;
    }
    return true;
  });
  R.run("component extraction round trip recovers the minimum operands", 200, [&](std::string&) {
    GaugePtr eta1 = end_gauge(ctx.S, ctx.v1, {Value::zero(2), Value::zero(2)}, "eta1");
    GaugePtr eta2 = end_gauge(ctx.S, ctx.v2, {Value::zero(2), Value::zero(2)}, "eta2");
    auto R2 = restrict_scalars(ctx.S, ctx.v);
    Scalar half = Scalar::constant(ctx.K, Coeff(Rat(1, 2), Q));
    Scalar c1 = (Scalar::one(ctx.K) + Scalar::generator(ctx.K)) * half;
    Scalar c2 = (Scalar::one(ctx.K) - Scalar::generator(ctx.K)) * half;
    std::vector<Element> base;
    std::vector<Value> values;
    for (const Scalar& c : {c1, c2})
      for (int l = 0; l < 4; ++l) {
        base.push_back(to_restricted(R2, el_scale(c, el_basis(ctx.S, l))));
        values.push_back(Value::zero(2));
      }
    GaugePtr galpha = base_norm(R2, base, values, ValuationHandle{R2->field, +1}, "m/F");
    auto comps = extract_components(galpha);
    if (comps.size() != 2) return false;
    Rng rng(seed + 8);
    for (int s = 0; s < 200; ++s) {
      Element z = sample_element(ctx.S, rng);
      if (!(evaluate(comps[0], z) == evaluate(eta1, z))) return false;
      if (!(evaluate(comps[1], z) == evaluate(eta2, z))) return false;
    }
    return true;
  });
  R.run("graded: homogeneity, ranks, degree-zero dimension", 0, [&](std::string&) {
    GradedAlgebra G = gr_of(ctx.alpha);  // homogeneity asserted on construction
    if (G.dim() != ctx.D->dim) return false;
    DegreeZero D0 = degree_zero(G);
    int lattice = 0;
    for (const auto& d : G.degrees) lattice += lattice_member(d) ? 1 : 0;
    if (D0.algebra->dim != lattice) return false;
    GaugePtr pg = product_gauge({ctx.alpha, ctx.alpha});
    return omega(pg) == 2 * omega(ctx.alpha);
  });
  R.run("graded: radical is a nilpotent ideal with semisimple quotient", 0,
        [&](std::string&) {
          // Condensed carrier of the broken perturbation has a nonzero
          // homogeneous radical part; powering kills it.
          Value pdelta = parse_value({"1/4", "1/2"});
          Element e1 = el_zero(ctx.D), e2 = el_zero(ctx.D);
          e1.c[0] = Scalar::one(ctx.F);
          e1.c[1] = Scalar::one(ctx.F);
          e2.c[0] = Scalar::one(ctx.F);
          e2.c[1] = -Scalar::one(ctx.F);
          GaugePtr broken = base_norm(
              ctx.D,
              {e1, e2, el_basis(ctx.D, 2), el_sub(el_basis(ctx.D, 2), el_basis(ctx.D, 3))},
              {Value::zero(2), Value::zero(2), pdelta, pdelta}, ctx.v, "broken");
          return is_graded_semisimple(gr_of(broken)).verdict == Verdict3::False &&
                 is_graded_semisimple(gr_of(ctx.alpha)).verdict == Verdict3::True;
        });
  R.run("graded semisimplicity invariance under relabel and shift", 0, [&](std::string&) {
    GradedAlgebra G = gr_of(ctx.alpha);
    GradedAlgebra Sh = G;
    Value shift = parse_value({"2", "-1"});
    for (auto& d : Sh.degrees) d = d + shift;
    for (auto& row : Sh.constants)
      for (auto& cell : row)
        for (auto& t : cell) t.e = t.e + shift;
    std::swap(Sh.labels[0], Sh.labels[2]);
    return is_graded_semisimple(Sh).verdict == is_graded_semisimple(G).verdict;
  });
  return R.out;
}

std::vector<PropertyResult> suite_rings(std::uint64_t seed) {
  Runner R;
  Example51 ctx = build_example51(Rat(1, 4));
  R.run("ring oracles closed under + and *, contain 1", 150, [&](std::string&) {
    std::vector<MembershipOracle> oracles = {oracle_dubrovin_ex51(ctx, 1),
                                             oracle_dubrovin_ex51(ctx, 2),
                                             oracle_gauge_ring(ctx.alpha)};
    Rng rng(seed);
    for (const auto& o : oracles)
      if (!o.member(el_unit(ctx.D))) return false;
    for (int s = 0; s < 150; ++s) {
      Element x = sample_element(ctx.D, rng), y = sample_element(ctx.D, rng);
      for (const auto& o : oracles) {
        if (o.member(x) && o.member(y)) {
          if (!o.member(el_add(x, y))) return false;
          if (!o.member(multiply(ctx.D, x, y))) return false;
        }
      }
    }
    return true;
  });
  R.run("J(R_beta) inside B_ell inside R_beta", 300, [&](std::string&) {
    auto b1 = oracle_dubrovin_ex51(ctx, 1), b2 = oracle_dubrovin_ex51(ctx, 2);
    auto corpus = ex51_corpus(ctx, 300, seed + 1);
    for (const auto& z : corpus) {
      RingVerdict vb = membership(ctx.beta, z);
      if (vb == RingVerdict::InRadical && (!b1.member(z) || !b2.member(z))) return false;
      if ((b1.member(z) || b2.member(z)) && vb == RingVerdict::NotInRing) return false;
    }
    return true;
  });
  R.run("gamma-independence with distinct value sets", 1000, [&](std::string&) {
    Example51 c18 = build_example51(Rat(1, 8));
    Example51 c38 = build_example51(Rat(3, 8));
    auto corpus = ex51_corpus(ctx, 1000, seed + 2);
    for (const auto& z : corpus) {
      RingVerdict m = membership(ctx.alpha, z);
      if (membership(c18.alpha, z) != m) return false;
      if (membership(c38.alpha, z) != m) return false;
    }
    Element j = el_basis(ctx.D, 2);
    return evaluate(ctx.alpha, j) != evaluate(c18.alpha, j) &&
           evaluate(ctx.alpha, j) != evaluate(c38.alpha, j) &&
           evaluate(c18.alpha, j) != evaluate(c38.alpha, j);
  });
  R.run("refinement inclusion of rings and radicals", 300, [&](std::string&) {
    auto corpus = ex51_corpus(ctx, 300, seed + 3);
    for (const auto& z : corpus) {
      RingVerdict va = membership(ctx.alpha, z), vb = membership(ctx.beta, z);
      if (va != RingVerdict::NotInRing && vb == RingVerdict::NotInRing) return false;
      if (vb == RingVerdict::InRadical && va != RingVerdict::InRadical) return false;
    }
    return true;
  });
  return R.out;
}

std::vector<PropertyResult> run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "ordered") return suite_ordered(seed);
  if (name == "series") return suite_series(seed);
  if (name == "gauges") return suite_gauges(seed);
  if (name == "rings") return suite_rings(seed);
  if (name == "all") {
    std::vector<PropertyResult> all;
    for (const char* s : {"ordered", "series", "gauges", "rings"}) {
      auto part = run_suite(s, seed);
      for (auto& p : part) p.name = std::string(s) + ": " + p.name;
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw UnsupportedScenario("unknown suite '" + name + "'");
}

}  // namespace gauges
