#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gauges/series.hpp"

namespace gauges {

/// Exact element of the Laurent-fraction field k(x_1..x_n): a quotient of two
/// finitely supported series. All algebra coordinates and linear solves run
/// on these, so valuations and residues come out exact.
class RatScalar {
public:
  RatScalar() = default;
  RatScalar(Series num, Series den);
  explicit RatScalar(Series num);
  static RatScalar zero(int rank, CoeffField f) {
    return RatScalar(Series::zero(rank, f));
  }
  static RatScalar one(int rank, CoeffField f) {
    return RatScalar(Series::one(rank, f));
  }
  static RatScalar constant(const Coeff& c, int rank) {
    return RatScalar(Series::constant(c, rank));
  }

  const Series& num() const { return num_; }
  const Series& den() const { return den_; }
  int rank() const { return num_.rank(); }
  CoeffField field() const { return num_.field(); }
  bool is_zero() const { return num_.terms().empty(); }

  RatScalar operator+(const RatScalar& o) const;
  RatScalar operator-(const RatScalar& o) const;
  RatScalar operator*(const RatScalar& o) const;
  RatScalar operator/(const RatScalar& o) const;
  RatScalar operator-() const;
  RatScalar inverse() const;
  bool operator==(const RatScalar& o) const;
  bool operator!=(const RatScalar& o) const { return !(*this == o); }

  /// Exact valuation v(num) - v(den) under the monomial valuation.
  ExtValue valuation() const;
  Coeff leading_coeff() const;

  /// Coarse part of the valuation under the cut-k coarsening.
  ExtValue coarse_valuation(ConvexCut cut) const;
  /// Exact image in the rank-k residue field; zero when the coarse valuation
  /// is positive, NegativeValue when it is negative.
  RatScalar residue(ConvexCut cut) const;

  /// Truncated series expansion below `target`.
  Series materialize(const Value& target) const;

  std::string str(const std::vector<std::string>& vars) const;

private:
  void normalize();
  Series num_, den_;
};

/// Quadratic extension K = F(t), t^2 = u, with u a nonzero finitely
/// supported series. `root_exists` records whether t embeds in the ambient
/// iterated Laurent field (even valuation and square leading coefficient).
struct QuadExt {
  std::string name;
  Series u;
  bool root_exists = false;
  ExpKey root_exp;     // valuation of the root, when it exists
  Coeff root_lc;       // its exact leading coefficient

  explicit QuadExt(std::string name, Series u_in);

  /// Truncated expansion of the root below `target`.
  Series root(const Value& target) const;
};

/// Field descriptor for scalars: the base Laurent-fraction field, or a
/// quadratic extension of it.
struct ScalarField {
  CoeffField coeff;
  int rank = 0;
  std::vector<std::string> vars;
  std::shared_ptr<const QuadExt> ext;  // null for the base field

  bool is_extension() const { return ext != nullptr; }
  bool same(const ScalarField& o) const;
};

using FieldPtr = std::shared_ptr<const ScalarField>;

FieldPtr make_base_field(CoeffField coeff, int rank, std::vector<std::string> vars);
FieldPtr make_extension_field(const FieldPtr& base, std::string name, Series u);

/// Element a + b*t of a ScalarField (b = 0 over the base field).
class Scalar {
public:
  Scalar() = default;
  Scalar(FieldPtr f, RatScalar a);
  Scalar(FieldPtr f, RatScalar a, RatScalar b);
  static Scalar zero(const FieldPtr& f);
  static Scalar one(const FieldPtr& f);
  static Scalar constant(const FieldPtr& f, const Coeff& c);
  static Scalar generator(const FieldPtr& f);  // t

  const FieldPtr& fieldp() const { return f_; }
  const RatScalar& a() const { return a_; }
  const RatScalar& b() const { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;
  Scalar conj() const;  // a - b*t
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string str() const;

private:
  FieldPtr f_;
  RatScalar a_, b_;
};

/// Selects a valuation of a ScalarField: the monomial valuation of the base
/// field, or one of its extensions to a quadratic extension, distinguished by
/// the embedding sign t -> +root / -root when the root exists.
struct ValuationHandle {
  FieldPtr field;
  int sign = +1;

  bool same(const ValuationHandle& o) const {
    return field->same(*o.field) && (!field->is_extension() || sign == o.sign);
  }
};

/// Exact valuation of z under the handle. For rooted extensions this uses
/// the norm identity (P + sQr)(P - sQr) = P^2 - Q^2 u, so no truncation is
/// involved; unrooted quadratic extensions take half the norm valuation.
ExtValue handle_valuation(const ValuationHandle& h, const Scalar& z);

/// Exact leading coefficient of z at the handle's valuation.
Coeff handle_leading_coeff(const ValuationHandle& h, const Scalar& z);

/// Residue data of an extension element of coarse value 0: the pair
/// (residue(a), residue(b)) over the rank-k field together with residue(u).
struct ResiduePair {
  RatScalar a, b;
  Series u;
};
ResiduePair residue_pair(const Scalar& z, ConvexCut cut);

enum class ExtensionKind { Split, Inertial, Ramified, Etale };

struct ExtensionCount {
  int count;
  ExtensionKind kind;
};

/// Number of extensions of the rank-n monomial valuation to F(sqrt(u)),
/// decided at desk scale: etale when u is an exact square, ramified on odd
/// valuation, inertial on non-square residue, split otherwise.
ExtensionCount count_extensions_quadratic(const Series& u);

/// Same question for the cut-k coarsening of the valuation.
ExtensionCount count_extensions_at_cut(const Series& u, ConvexCut cut);

/// Smallest cut k at which two signed handles on one extension agree, i.e.
/// the coarsening has a unique extension.
ConvexCut agreement_cut(const ValuationHandle& h1, const ValuationHandle& h2);

/// Approximation element separating the extensions: c in K with v_k(c) = 0,
/// v_k(c - 1) > 0, and v_i(c) > delta_i for i != k. Searched over
/// ((1 +- t)/2)^m * monomials with bounded exponents.
Scalar approximate(const std::vector<ValuationHandle>& extensions, size_t k,
                   const std::vector<Value>& deltas);

std::string kind_name(ExtensionKind k);

}  // namespace gauges
