#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gauges/scalars.hpp"

namespace gauges {

struct AlgebraPresentation;
using AlgebraPtr = std::shared_ptr<const AlgebraPresentation>;

/// Coordinate vector over an algebra's scalar field.
struct Element {
  std::vector<Scalar> c;
};

/// A finite-dimensional algebra given by structure constants over its scalar
/// field, with unit coordinates and a declared center embedding. The table is
/// checked for associativity, the unit for identity, and declared center
/// elements for centrality at construction time.
struct AlgebraPresentation {
  std::string name;
  FieldPtr field;
  int dim = 0;
  std::vector<std::string> basis;
  /// table[i][j] = coordinates of basis_i * basis_j.
  std::vector<std::vector<std::vector<Scalar>>> table;
  std::vector<Scalar> unit;

  /// Declared center: basis elements of Z(A) as coordinate vectors, plus the
  /// valuation handles of all extensions of the base valuation to the center.
  std::vector<Element> center_basis;
  std::vector<ValuationHandle> center_handles;

  /// Product provenance (empty unless built by construct_product).
  std::vector<int> factor_dims;
  /// Matrix provenance: n for M_n over the scalar field, 0 otherwise.
  int matrix_n = 0;
  /// Set on scalar restrictions: the original extension-field presentation.
  AlgebraPtr restricted_from;
};

Element el_zero(const AlgebraPtr& A);
Element el_basis(const AlgebraPtr& A, int i);
Element el_unit(const AlgebraPtr& A);
Element el_add(const Element& x, const Element& y);
Element el_sub(const Element& x, const Element& y);
Element el_neg(const Element& x);
Element el_scale(const Scalar& s, const Element& x);
Element multiply(const AlgebraPtr& A, const Element& x, const Element& y);
bool el_eq(const Element& x, const Element& y);
bool el_is_zero(const Element& x);
/// Coordinate printout "(c1, c2, ...)" for diagnostics and counterexamples.
std::string el_str(const Element& x);

/// Exact coordinates in a declared base: the change-of-basis matrix is
/// inverted once at construction and cached.
class BaseChange {
public:
  BaseChange() = default;
  BaseChange(const AlgebraPtr& A, std::vector<Element> base);
  const std::vector<Element>& base() const { return base_; }
  std::vector<Scalar> express(const Element& z) const;

private:
  AlgebraPtr A_;
  std::vector<Element> base_;
  std::vector<std::vector<Scalar>> inv_;  // cached inverse matrix
};

/// Quaternion algebra (a, b / F): basis (1, i, j, k), i^2 = a, j^2 = b,
/// ij = k = -ji. Requires char != 2 and nonzero parameters.
AlgebraPtr construct_quaternion(const FieldPtr& F, const Scalar& a, const Scalar& b,
                                ValuationHandle center_handle);

/// Matrix algebra M_n over the scalar field with the matrix-unit basis
/// e_pq, row-major. Center handles are the declared extensions of the base
/// valuation to the (scalar) center.
AlgebraPtr construct_matrix(const FieldPtr& K, int n,
                            std::vector<ValuationHandle> center_handles);

/// Direct product with block-diagonal structure constants.
AlgebraPtr construct_product(const std::vector<AlgebraPtr>& factors);
Element inject(const AlgebraPtr& P, int slot, const Element& x);
Element project(const AlgebraPtr& P, int slot, const Element& x);

/// Algebra homomorphism defined by images of the source basis; verified
/// multiplicative and unital on all basis pairs at construction.
class Embedding {
public:
  Embedding(AlgebraPtr from, AlgebraPtr to, std::vector<Element> basis_images);
  /// Built from generator images for a quaternion source (images of i and j).
  static Embedding quaternion_generated(const AlgebraPtr& from, const AlgebraPtr& to,
                                        const Element& image_i, const Element& image_j);
  Element apply(const Element& x) const;
  const std::vector<Element>& images() const { return images_; }

private:
  AlgebraPtr from_, to_;
  std::vector<Element> images_;
};

/// Lifts a base-field scalar into the target algebra's scalar field.
Scalar lift_scalar(const FieldPtr& target, const RatScalar& s);

/// Scalar restriction of an extension-field algebra to the base field:
/// basis (x_1, t x_1, x_2, t x_2, ...).
AlgebraPtr restrict_scalars(const AlgebraPtr& A, ValuationHandle base_handle);
/// Converts elements between an extension-field algebra and its restriction.
Element to_restricted(const AlgebraPtr& R, const Element& x);
Element from_restricted(const AlgebraPtr& R, const Element& x);

}  // namespace gauges
