#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gauges/algebra.hpp"
#include "gauges/rng.hpp"

namespace gauges {

struct GaugeExpr;
using GaugePtr = std::shared_ptr<const GaugeExpr>;

enum class GaugeKind { BaseNorm, End, Product, Min, Coarsened, Residue };

/// Splitting-base presentation: alpha(sum b_i d_i) = min(v(d_i) + values_i).
struct BaseNormData {
  std::vector<Element> base;
  std::vector<Value> values;
  ValuationHandle scalar;
  std::shared_ptr<const BaseChange> solver;
};

/// Pairwise compatibility certificate of a MinGauge: for each
/// component pair the agreement cut and the verified coarsened equality.
struct CompatCert {
  struct Pair {
    size_t i, j;
    ConvexCut cut;
  };
  std::vector<Pair> pairs;
};

/// An expression tree of value-function presentations with one evaluation
/// contract. Nodes are immutable after construction.
struct GaugeExpr {
  GaugeKind kind;
  std::string name;
  AlgebraPtr algebra;

  BaseNormData bn;                 // BaseNorm, End, Residue
  std::vector<Value> end_shifts;   // End
  std::vector<GaugePtr> children;  // Product/Min components; Coarsened/Residue inner
  ConvexCut cut;                   // Coarsened/Residue
  CompatCert cert;                 // Min

  /// Rank of produced values (base rank minus coarsening cuts).
  int value_rank() const;
};

/// Constructors. Every constructor checks that declared values lie in the
/// divisible hull of the reference value group (they are exact rationals by
/// construction) and that alpha(1) = 0.
GaugePtr base_norm(AlgebraPtr A, std::vector<Element> base, std::vector<Value> values,
                   ValuationHandle scalar, std::string name = "");

/// End-gauge on a matrix algebra M_n over a division scalar field: the value
/// of a matrix is min over entries of v(z_pq) + shift_p - shift_q.
GaugePtr end_gauge(AlgebraPtr M, ValuationHandle inner, std::vector<Value> shifts,
                   std::string name = "");

GaugePtr product_gauge(std::vector<GaugePtr> components, std::string name = "");
GaugePtr restrict_component(const GaugePtr& g, int i);

/// Builds the compatibility certificate (pairwise agreement-cut coarsenings
/// compared by the two-sided splitting-base criterion) and returns the
/// pointwise minimum. Throws IncompatibleCoarsenings with a witness.
GaugePtr min_compose(std::vector<GaugePtr> components, std::string name = "");

GaugePtr coarsen_vf(const GaugePtr& g, ConvexCut cut, std::string name = "");

ExtValue evaluate(const GaugePtr& g, const Element& z);

enum class RingVerdict { InRadical, InRingNotRadical, NotInRing };
RingVerdict membership(const GaugePtr& g, const Element& z);

struct SurmultReport {
  bool alpha_unit_zero = false;
  bool pairs_ok = false;
  bool samples_ok = false;
  std::optional<std::pair<int, int>> witness_pair;
  bool passed() const { return alpha_unit_zero && pairs_ok && samples_ok; }
};

/// alpha(1) = 0 plus the basis-pair criterion alpha(x_i x_j) >= v_i + v_j
/// (sufficient for a norm with central scalars), plus 200 sampled pairs.
SurmultReport check_surmultiplicative(const GaugePtr& g, Rng& rng);

/// True iff alpha(b) <= eta(b) on every splitting-base element of alpha
/// (the splitting-base criterion), confirmed on sampled elements.
bool leq(const GaugePtr& alpha, const GaugePtr& eta, Rng& rng, int samples = 200);

/// Random element with Laurent-monomial coordinates, exponents in [-3, 3],
/// coefficients from a small rational pool.
Element sample_element(const AlgebraPtr& A, Rng& rng);

/// Splitting-base element list of g, when g presents one (BaseNorm, End,
/// coarsenings of those, Residue).
const std::vector<Element>* splitting_base(const GaugePtr& g);
/// Values of the splitting base under g.
std::vector<Value> splitting_values(const GaugePtr& g);

}  // namespace gauges
