#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gauges/rational.hpp"
#include "gauges/values.hpp"

namespace gauges {

/// Monomial exponent vector in Z^n.
using ExpKey = std::vector<long>;

/// Right-to-left lexicographic order on exponent vectors, matching the value
/// order. Map iteration then visits terms in increasing valuation.
struct RtlExpLess {
  bool operator()(const ExpKey& a, const ExpKey& b) const {
    for (size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }
};

Value exp_to_value(const ExpKey& e);
/// exp < v in the right-to-left lexicographic order.
bool exp_below(const ExpKey& e, const Value& v);

/// A truncated iterated Laurent series over an exact coefficient field.
/// `cut == nullopt` means the stored terms are the whole series; otherwise
/// every term of value < cut is stored and nothing is known at or above it.
class Series {
public:
  Series() = default;
  Series(int rank, CoeffField field) : rank_(rank), field_(field) {}
  static Series zero(int rank, CoeffField f) { return Series(rank, f); }
  static Series constant(const Coeff& c, int rank);
  static Series one(int rank, CoeffField f) { return constant(Coeff::one(f), rank); }
  static Series monomial(const Coeff& c, const ExpKey& e);

  int rank() const { return rank_; }
  CoeffField field() const { return field_; }
  const std::map<ExpKey, Coeff, RtlExpLess>& terms() const { return terms_; }
  const std::optional<Value>& cut() const { return cut_; }
  bool is_exact() const { return !cut_.has_value(); }
  bool is_exact_zero() const { return is_exact() && terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  void set_term(const ExpKey& e, const Coeff& c);
  void set_cut(std::optional<Value> cut);

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator-() const;
  Series operator*(const Series& o) const;
  Series scaled(const Coeff& c) const;
  Series shifted(const ExpKey& e) const;  // multiply by the monomial X^e
  bool operator==(const Series& o) const; // exact data equality

  /// Minimal exponent with nonzero coefficient; infinity only for exact zero.
  /// Throws InsufficientPrecision when truncated with no stored term.
  ExtValue valuation() const;
  Coeff leading_coeff() const;
  ExpKey leading_exp() const;

  /// Drops terms at or above the cut and records it.
  Series truncated(const Value& cut) const;

  /// Image in the residue field of the cut-k coarsening: keeps terms whose
  /// last n-k exponents vanish, as a rank-k series. Requires every stored
  /// term to have nonnegative coarse part.
  Series residue(ConvexCut cut) const;

  std::string str(const std::vector<std::string>& vars) const;

private:
  int rank_ = 0;
  CoeffField field_{};
  std::map<ExpKey, Coeff, RtlExpLess> terms_;
  std::optional<Value> cut_;
};

/// Exact division when the divisor is a monomial; otherwise materializes the
/// quotient as a truncated series below `target` (clamped by whatever the
/// operand precisions justify).
Series div(const Series& a, const Series& b, const Value& target);

/// Square root by leading-coefficient extraction and exact term recursion.
/// Errors: OddExponent when v(u) is not in 2Z^n, NonSquareResidue when the
/// leading coefficient has no square root in the coefficient field.
Series hensel_sqrt(const Series& u, const Value& target);

/// Attempts an exact finite square root (decides squareness of Laurent
/// polynomials in the fraction field).
std::optional<Series> exact_poly_sqrt(const Series& u);

/// Series literal parser: sums of terms "c * x1^e1 * ... * xn^en".
Series parse_series(const std::string& text, int rank,
                    const std::vector<std::string>& vars, CoeffField field);

}  // namespace gauges
