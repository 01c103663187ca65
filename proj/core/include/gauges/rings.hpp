#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gauges/graded.hpp"

namespace gauges {

/// The rank-2 quaternion instance: D = (1 + x, y / F) over F = L(x)((y))
/// modeled inside L((x))((y)), with the splitting field K = F(t), t^2 = 1+x,
/// the matrix model S = M_2(K), and the gauges alpha, alpha', beta.
struct Example51 {
  Rat gamma;
  FieldPtr F;
  FieldPtr K;
  ValuationHandle v;        // rank-2 monomial valuation on F
  ValuationHandle v1, v2;   // its two extensions to K (t -> +root / -root)
  AlgebraPtr D;             // quaternion (1 + x, y)
  AlgebraPtr S;             // M_2(K)
  std::shared_ptr<Embedding> embed;  // D -> S via i = diag(t, -t), j = (0 y; 1 0)
  GaugePtr alpha;           // base norm on (1+i, 1-i, j, j-k)
  GaugePtr alpha_p;         // End-gauge on S with shifts (0, delta)
  GaugePtr beta;            // y-adic coarsening of alpha (the valuation on D)
  GaugePtr beta_p;          // y-adic coarsening of alpha'

  // Residue layer for the Dubrovin pullback rings: L(x)(sqrt(1+x)) with its
  // two x-adic valuation extensions.
  FieldPtr residue_ext;
  ValuationHandle u1, u2;
};

/// Builds the full tower for a rational 0 < gamma < 1/2.
Example51 build_example51(const Rat& gamma);

/// Named membership predicate with ring provenance.
struct MembershipOracle {
  std::string name;
  enum class Provenance { GaugeRing, Radical, Dubrovin, ValuationRing } provenance;
  std::function<bool(const Element&)> member;
};

MembershipOracle oracle_gauge_ring(const GaugePtr& g, std::string name = "");
MembershipOracle oracle_radical(const GaugePtr& g, std::string name = "");
MembershipOracle oracle_dubrovin_ex51(const Example51& ctx, int ell);

/// Declared scenario constants with provenance notes.
struct ScenarioConstants {
  long xi = 1;
  std::string xi_note;
  std::optional<long> ell;
  std::string ell_note;
  std::optional<long> r;
  std::string r_note;
  std::optional<long> coarse_xi;
};

/// Morandi status by the Remark-3.7 equivalence: a verified gauge over a
/// defectless valuation is Morandi iff its degree-zero ring is simple.
bool morandi_check(const GaugePtr& g, std::uint64_t seed = 1);

/// Membership in the Dubrovin pullback ring B_ell = pi^{-1}(U_ell) of the
/// rank-2 instance: negative beta-value excluded, positive included, and at
/// beta = 0 the x-adic value of abar + (-1)^{ell+1} bbar sqrt(1+x) decides.
bool dubrovin_membership_ex51(const Example51& ctx, int ell, const Element& z);

/// Quaternion inverse via the reduced norm; DivisionByZero on nonunits.
Element quaternion_inverse(const AlgebraPtr& D, const Element& z);

struct TotalRingReport {
  int tested = 0;
  int skipped = 0;  // non-invertible samples
  std::vector<Element> violations;
  bool total() const { return violations.empty(); }
};

/// d in B or d^{-1} in B for sampled invertible d.
TotalRingReport total_ring_check(const MembershipOracle& oracle,
                                 const std::function<Element(const Element&)>& inverse,
                                 const AlgebraPtr& A, int samples, std::uint64_t seed,
                                 const std::vector<Element>& extra = {});

struct GraeterReport {
  int tested = 0;
  std::vector<Element> disagreements;
  bool agrees() const { return disagreements.empty(); }
};

/// membership(g, z) agrees with the intersection of the oracles on a seeded
/// corpus plus a directed adversarial list.
GraeterReport graeter_intersection_check(const GaugePtr& g,
                                         const std::vector<MembershipOracle>& oracles,
                                         int samples, std::uint64_t seed,
                                         const std::vector<Element>& adversarial = {});

struct MinimalityReport {
  int omega = 0;
  long declared_xi = 0;
  bool minimal = false;
  std::optional<int> coarse_omega;
  std::optional<long> coarse_xi;
  std::optional<bool> coarse_minimal;
  bool hard_failure = false;
  std::string detail;
};

/// omega vs the declared extension number; when a cut is supplied the
/// coarsened gauge is checked against the declared coarse extension number.
MinimalityReport minimality_report(const GaugePtr& g, const ScenarioConstants& constants,
                                   std::optional<ConvexCut> cut = {});

/// Coarse-to-fine lift: End-gauge with shifts mu over the fine valuation, checked
/// to coarsen back onto the given End-data pi.
GaugePtr lift_gauge(const AlgebraPtr& M, const ValuationHandle& fine, ConvexCut cut,
                    const std::vector<Value>& pis, const std::vector<Value>& mus,
                    std::string name = "");

/// Seeded sample corpus plus the directed adversarial family of the rank-2
/// instance ((1 +- i)/x, (1 +- i)^2/x, monomial multiples of the basis).
std::vector<Element> ex51_corpus(const Example51& ctx, int samples, std::uint64_t seed);

}  // namespace gauges
