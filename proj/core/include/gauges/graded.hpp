#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gauges/gauge_expr.hpp"

namespace gauges {

/// One structure-constant term of a graded algebra: coefficient times the
/// lattice monomial X^e landing on homogeneous basis element `l`.
struct GrTerm {
  int l;
  RatScalar coeff;  // element of the residue field (rank residue_rank)
  Value e;          // lattice exponent in the coarse value group
};

/// Exact presentation of an associated graded algebra over the graded field
/// of the (possibly coarsened) scalar valuation. Fine gauges have
/// residue_rank 0 (coefficients in the scenario coefficient field).
struct GradedAlgebra {
  int value_rank = 0;
  int residue_rank = 0;
  CoeffField coeff;
  std::vector<std::string> residue_vars;  // variable names of the residue field
  std::vector<std::string> labels;
  std::vector<Value> degrees;
  std::vector<std::vector<std::vector<GrTerm>>> constants;
  std::vector<int> component_tag;  // provenance for min/product blocks

  int dim() const { return static_cast<int>(labels.size()); }
};

/// Graded presentation of a gauge. Degree homogeneity of every constant is
/// asserted on construction.
GradedAlgebra gr_of(const GaugePtr& g);

/// Finite-dimensional algebra over the coefficient field carrying a G-degree
/// (coset key) per basis element: the condensed carrier for homogeneous
/// radical questions, with the lattice monomial corrections folded in.
struct KAlgebra {
  CoeffField field;
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<Value> gdeg;
  std::vector<std::vector<std::vector<Coeff>>> table;
  std::vector<Coeff> unit;
  bool associative = true;
};

KAlgebra condensed(const GradedAlgebra& G);

/// Trace-form radical (kernel of tr(L_x L_y)); equals the Jacobson radical
/// in characteristic 0. Rows of the result are a basis of the radical.
std::vector<std::vector<Coeff>> radical(const KAlgebra& B);

/// Number of simple components of a semisimple algebra, via the factorization
/// of the minimal polynomial of a randomized generating central element.
int count_simple_components(const KAlgebra& B, std::uint64_t seed = 1);

enum class Verdict3 { True, False, Unverified };
struct GradedSSReport {
  Verdict3 verdict = Verdict3::Unverified;
  std::string detail;
};

/// No nonzero homogeneous nilpotent ideal, decided through the condensed
/// algebra (characteristic 0 only; GF(p) reports Unverified, never true).
GradedSSReport is_graded_semisimple(const GradedAlgebra& G);

/// Degree-zero algebra of a graded presentation: the span of basis elements
/// with lattice degrees, normalized to degree 0, as an algebra over the
/// residue field. `indices` maps its basis back to the graded basis.
struct DegreeZero {
  AlgebraPtr algebra;
  std::vector<int> indices;
};
DegreeZero degree_zero(const GradedAlgebra& G);

/// Residue gauge construction: the degree-zero algebra of the cut-coarsening
/// together with the induced norm over the rank-k residue field.
struct ResidueResult {
  AlgebraPtr algebra;
  GaugePtr alpha0;
  std::vector<int> indices;
};
ResidueResult residue_vf(const GaugePtr& g, ConvexCut cut);

/// Number of simple components of the degree-zero algebra of g.
int omega(const GaugePtr& g);

struct DefectLedger {
  std::string subject;
  long dim_A = 0;        // [A:F]
  long gr_rank = 0;      // [gr(A):gr(F)]
  long residue_dim = 0;  // [residue ring : residue field], valuation subjects
  long ram_index = 0;    // |Gamma_w : Gamma_v|, valuation subjects
  long defect = 1;
  bool defectless = true;
};

DefectLedger defect_report(const GaugePtr& g);
/// Ledger for a declared quadratic field extension.
DefectLedger defect_report_quadratic(const Series& u);

struct VerifyReport {
  std::string name;
  bool is_norm = false;
  SurmultReport surmult;
  GradedSSReport graded_ss;
  std::optional<int> omega_value;
  std::vector<Value> coset_keys;
  std::optional<long> declared_xi;
  std::optional<bool> minimal;
  bool hard_failure = false;  // omega < xi would contradict the lower bound
  std::string detail;

  bool is_gauge() const {
    return is_norm && surmult.passed() && graded_ss.verdict != Verdict3::False;
  }
};

/// Aggregated gauge verification; when xi is declared the minimal flag is
/// omega == xi and omega < xi is flagged as a hard failure.
VerifyReport verify_gauge(const GaugePtr& g, std::optional<long> declared_xi = {},
                          std::uint64_t seed = 1);

/// Distinct coset keys of the gauge's value set modulo the lattice.
std::vector<Value> value_coset_keys(const GaugePtr& g);

/// Component extraction for a base-field gauge whose algebra is
/// a scalar restriction with declared center extensions: splits the condensed
/// algebra by the central idempotents obtained from approximation elements
/// and lifts homogeneous bases to v_i-gauges on the extension presentation.
std::vector<GaugePtr> extract_components(const GaugePtr& g);

}  // namespace gauges
