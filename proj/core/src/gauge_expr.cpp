#include "gauges/gauge_expr.hpp"

#include <sstream>

namespace gauges {

int GaugeExpr::value_rank() const {
  switch (kind) {
    case GaugeKind::BaseNorm:
    case GaugeKind::End:
    case GaugeKind::Residue:
      return bn.scalar.field->rank;
    case GaugeKind::Product:
    case GaugeKind::Min:
      return children[0]->value_rank();
    case GaugeKind::Coarsened:
      return children[0]->value_rank() - cut.k;
  }
  return 0;
}

static ExtValue eval_impl(const GaugeExpr& g, const Element& z);

ExtValue evaluate(const GaugePtr& g, const Element& z) { return eval_impl(*g, z); }

static ExtValue eval_impl(const GaugeExpr& g, const Element& z) {
  switch (g.kind) {
    case GaugeKind::BaseNorm:
    case GaugeKind::End:
    case GaugeKind::Residue: {
      std::vector<Scalar> d = g.bn.solver->express(z);
      ExtValue best = ExtValue::infinity();
      for (size_t i = 0; i < d.size(); ++i) {
        if (d[i].is_zero()) continue;
        ExtValue v = handle_valuation(g.bn.scalar, d[i]) + g.bn.values[i];
        if (v < best) best = v;
      }
      return best;
    }
    case GaugeKind::Product: {
      ExtValue best = ExtValue::infinity();
      for (size_t s = 0; s < g.children.size(); ++s) {
        Element zi = project(g.algebra, static_cast<int>(s), z);
        ExtValue v = eval_impl(*g.children[s], zi);
        if (v < best) best = v;
      }
      return best;
    }
    case GaugeKind::Min: {
      ExtValue best = ExtValue::infinity();
      for (const auto& c : g.children) {
        ExtValue v = eval_impl(*c, z);
        if (v < best) best = v;
      }
      return best;
    }
    case GaugeKind::Coarsened: {
      ExtValue v = eval_impl(*g.children[0], z);
      if (v.is_infinity()) return v;
      return ExtValue(split_value(v.finite(), g.cut).coarse);
    }
  }
  throw InternalCheckFailed("unreachable gauge kind");
}

RingVerdict membership(const GaugePtr& g, const Element& z) {
  int s = evaluate(g, z).sign();
  if (s > 0) return RingVerdict::InRadical;
  if (s == 0) return RingVerdict::InRingNotRadical;
  return RingVerdict::NotInRing;
}

static void check_unit_value(const GaugeExpr& g) {
  ExtValue v = eval_impl(g, el_unit(g.algebra));
  if (v.is_infinity() || !v.finite().is_zero())
    throw UnsupportedScenario("alpha(1) = " + v.str() + " != 0: not a value function");
}

GaugePtr base_norm(AlgebraPtr A, std::vector<Element> base, std::vector<Value> values,
                   ValuationHandle scalar, std::string name) {
  if (base.size() != values.size() || static_cast<int>(base.size()) != A->dim)
    throw SingularBase("splitting base needs dim elements with one value each");
  if (!scalar.field->same(*A->field))
    throw FieldMismatch("scalar handle field differs from the algebra's");
  for (const auto& v : values)
    if (v.rank() != scalar.field->rank) throw RankMismatch("base value rank");
  auto g = std::make_shared<GaugeExpr>();
  g->kind = GaugeKind::BaseNorm;
  g->name = std::move(name);
  g->algebra = A;
  g->bn.base = std::move(base);
  g->bn.values = std::move(values);
  g->bn.scalar = std::move(scalar);
  g->bn.solver = std::make_shared<BaseChange>(A, g->bn.base);
  check_unit_value(*g);
  return g;
}

GaugePtr end_gauge(AlgebraPtr M, ValuationHandle inner, std::vector<Value> shifts,
                   std::string name) {
  int n = M->matrix_n;
  if (n == 0) throw UnsupportedScenario("end_gauge requires a matrix algebra");
  if (static_cast<int>(shifts.size()) != n)
    throw RankMismatch("one shift per module base element required");
  auto g = std::make_shared<GaugeExpr>();
  g->kind = GaugeKind::End;
  g->name = std::move(name);
  g->algebra = M;
  g->end_shifts = shifts;
  std::vector<Element> base;
  std::vector<Value> values;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      base.push_back(el_basis(M, p * n + q));
      values.push_back(shifts[p] - shifts[q]);
    }
  g->bn.base = std::move(base);
  g->bn.values = std::move(values);
  g->bn.scalar = std::move(inner);
  g->bn.solver = std::make_shared<BaseChange>(M, g->bn.base);
  return g;
}

GaugePtr product_gauge(std::vector<GaugePtr> components, std::string name) {
  if (components.empty()) throw ZeroParameter("empty product gauge");
  if (components.size() == 1) return components[0];
  int rank0 = components[0]->value_rank();
  for (const auto& c : components)
    if (c->value_rank() != rank0) throw RankMismatch("component value ranks differ");
  std::vector<AlgebraPtr> algebras;
  for (const auto& c : components) algebras.push_back(c->algebra);
  auto g = std::make_shared<GaugeExpr>();
  g->kind = GaugeKind::Product;
  g->name = std::move(name);
  g->algebra = construct_product(algebras);
  g->children = std::move(components);
  return g;
}

GaugePtr restrict_component(const GaugePtr& g, int i) {
  if (g->kind != GaugeKind::Product) throw UnsupportedScenario("not a product gauge");
  return g->children[static_cast<size_t>(i)];
}

GaugePtr coarsen_vf(const GaugePtr& g, ConvexCut cut, std::string name) {
  if (cut.k == 0) return g;
  if (cut.k < 0 || cut.k > g->value_rank()) throw RankMismatch("coarsening cut");
  auto out = std::make_shared<GaugeExpr>();
  out->kind = GaugeKind::Coarsened;
  out->name = std::move(name);
  out->algebra = g->algebra;
  out->children = {g};
  out->cut = cut;
  return out;
}

const std::vector<Element>* splitting_base(const GaugePtr& g) {
  switch (g->kind) {
    case GaugeKind::BaseNorm:
    case GaugeKind::End:
    case GaugeKind::Residue:
      return &g->bn.base;
    case GaugeKind::Coarsened:
      return splitting_base(g->children[0]);
    default:
      return nullptr;
  }
}

std::vector<Value> splitting_values(const GaugePtr& g) {
  switch (g->kind) {
    case GaugeKind::BaseNorm:
    case GaugeKind::End:
    case GaugeKind::Residue:
      return g->bn.values;
    case GaugeKind::Coarsened: {
      std::vector<Value> inner = splitting_values(g->children[0]);
      for (auto& v : inner) v = split_value(v, g->cut).coarse;
      return inner;
    }
    default:
      throw UnsupportedScenario("gauge does not present a splitting base");
  }
}

Element sample_element(const AlgebraPtr& A, Rng& rng) {
  const FieldPtr& f = A->field;
  static const std::vector<Rat> pool = {Rat(1),     Rat(-1),    Rat(2),  Rat(-2),
                                        Rat(3),     Rat(-3),    Rat(1, 2), Rat(-1, 2),
                                        Rat(3, 2),  Rat(1, 3)};
  auto random_rat_scalar = [&]() {
    Series s = Series::zero(f->rank, f->coeff);
    long nterms = rng.range(0, 2);
    for (long t = 0; t < nterms; ++t) {
      ExpKey e(f->rank);
      for (int i = 0; i < f->rank; ++i) e[i] = rng.range(-3, 3);
      s = s + Series::monomial(Coeff(rng.pick(pool), f->coeff), e);
    }
    return RatScalar(s);
  };
  Element z = el_zero(A);
  for (int i = 0; i < A->dim; ++i) {
    RatScalar a = random_rat_scalar();
    if (f->is_extension() && rng.range(0, 1) == 1)
      z.c[i] = Scalar(f, a, random_rat_scalar());
    else
      z.c[i] = Scalar(f, a);
  }
  return z;
}

SurmultReport check_surmultiplicative(const GaugePtr& g, Rng& rng) {
  SurmultReport rep;
  ExtValue unit = evaluate(g, el_unit(g->algebra));
  rep.alpha_unit_zero = !unit.is_infinity() && unit.finite().is_zero();

  const std::vector<Element>* base = splitting_base(g);
  std::vector<Element> pair_set;
  std::vector<ExtValue> pair_vals;
  if (base) {
    std::vector<Value> vals = splitting_values(g);
    for (size_t i = 0; i < base->size(); ++i) {
      pair_set.push_back((*base)[i]);
      pair_vals.push_back(ExtValue(vals[i]));
    }
  } else {
    for (int i = 0; i < g->algebra->dim; ++i) {
      Element b = el_basis(g->algebra, i);
      pair_set.push_back(b);
      pair_vals.push_back(evaluate(g, b));
    }
  }
  rep.pairs_ok = true;
  for (size_t i = 0; i < pair_set.size() && rep.pairs_ok; ++i)
    for (size_t j = 0; j < pair_set.size(); ++j) {
      Element prod = multiply(g->algebra, pair_set[i], pair_set[j]);
      if (!(evaluate(g, prod) >= pair_vals[i] + pair_vals[j])) {
        rep.pairs_ok = false;
        rep.witness_pair = {static_cast<int>(i), static_cast<int>(j)};
        break;
      }
    }

  rep.samples_ok = true;
  for (int s = 0; s < 200 && rep.samples_ok; ++s) {
    Element x = sample_element(g->algebra, rng);
    Element y = sample_element(g->algebra, rng);
    ExtValue lhs = evaluate(g, multiply(g->algebra, x, y));
    if (!(lhs >= evaluate(g, x) + evaluate(g, y))) rep.samples_ok = false;
  }
  return rep;
}

bool leq(const GaugePtr& alpha, const GaugePtr& eta, Rng& rng, int samples) {
  const std::vector<Element>* base = splitting_base(alpha);
  if (!base) throw UnsupportedScenario("leq needs a splitting base on the left side");
  std::vector<Value> vals = splitting_values(alpha);
  bool ok = true;
  for (size_t i = 0; i < base->size() && ok; ++i) {
    if (!(ExtValue(vals[i]) <= evaluate(eta, (*base)[i]))) ok = false;
  }
  // Sampled confirmation of the base criterion.
  for (int s = 0; s < samples; ++s) {
    Element z = sample_element(alpha->algebra, rng);
    bool sample_le = evaluate(alpha, z) <= evaluate(eta, z);
    if (ok && !sample_le)
      throw InternalCheckFailed("base criterion accepted leq but a sample refutes it");
  }
  return ok;
}

GaugePtr min_compose(std::vector<GaugePtr> components, std::string name) {
  if (components.empty()) throw ZeroParameter("empty min composition");
  if (components.size() == 1) return components[0];
  const AlgebraPtr& A = components[0]->algebra;
  for (const auto& c : components) {
    if (c->algebra != A) throw FieldMismatch("min components on different algebras");
    if (!splitting_base(c)) throw UnsupportedScenario("min components must present bases");
  }
  CompatCert cert;
  Rng rng(0x5eedu);
  for (size_t i = 0; i < components.size(); ++i)
    for (size_t j = i + 1; j < components.size(); ++j) {
      const ValuationHandle& hi = components[i]->bn.scalar;
      const ValuationHandle& hj = components[j]->bn.scalar;
      if (hi.same(hj))
        throw UnsupportedScenario("min components must carry distinct center valuations");
      ConvexCut cij = agreement_cut(hi, hj);
      GaugePtr ci = coarsen_vf(components[i], cij);
      GaugePtr cj = coarsen_vf(components[j], cij);
      bool le = leq(ci, cj, rng);
      bool ge = leq(cj, ci, rng);
      if (!le || !ge) {
        // Identify a witness base element for the diagnostic.
        std::ostringstream os;
        os << "components " << i << " and " << j
           << " have different coarsenings at cut " << cij.k;
        const std::vector<Element>* base = splitting_base(ci);
        std::vector<Value> vals = splitting_values(ci);
        for (size_t b = 0; b < base->size(); ++b) {
          ExtValue other = evaluate(cj, (*base)[b]);
          if (!(other == ExtValue(vals[b]))) {
            os << "; witness base element #" << b << ": " << vals[b].str() << " vs "
               << other.str();
            break;
          }
        }
        throw IncompatibleCoarsenings(os.str());
      }
      cert.pairs.push_back({i, j, cij});
    }
  auto g = std::make_shared<GaugeExpr>();
  g->kind = GaugeKind::Min;
  g->name = std::move(name);
  g->algebra = A;
  g->children = std::move(components);
  g->cert = std::move(cert);
  return g;
}

}  // namespace gauges
