#include "gauges/algebra.hpp"

#include <sstream>

namespace gauges {

Element el_zero(const AlgebraPtr& A) {
  return Element{std::vector<Scalar>(A->dim, Scalar::zero(A->field))};
}

Element el_basis(const AlgebraPtr& A, int i) {
  Element e = el_zero(A);
  e.c[i] = Scalar::one(A->field);
  return e;
}

Element el_unit(const AlgebraPtr& A) { return Element{A->unit}; }

Element el_add(const Element& x, const Element& y) {
  Element r = x;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] + y.c[i];
  return r;
}
Element el_sub(const Element& x, const Element& y) {
  Element r = x;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] - y.c[i];
  return r;
}
Element el_neg(const Element& x) {
  Element r = x;
  for (auto& s : r.c) s = -s;
  return r;
}
Element el_scale(const Scalar& s, const Element& x) {
  Element r = x;
  for (auto& t : r.c) t = s * t;
  return r;
}

Element multiply(const AlgebraPtr& A, const Element& x, const Element& y) {
  if (static_cast<int>(x.c.size()) != A->dim || static_cast<int>(y.c.size()) != A->dim)
    throw RankMismatch("element dimension");
  Element r = el_zero(A);
  for (int i = 0; i < A->dim; ++i) {
    if (x.c[i].is_zero()) continue;
    for (int j = 0; j < A->dim; ++j) {
      if (y.c[j].is_zero()) continue;
      Scalar f = x.c[i] * y.c[j];
      const auto& row = A->table[i][j];
      for (int k = 0; k < A->dim; ++k) {
        if (row[k].is_zero()) continue;
        r.c[k] = r.c[k] + f * row[k];
      }
    }
  }
  return r;
}

bool el_eq(const Element& x, const Element& y) {
  if (x.c.size() != y.c.size()) return false;
  for (size_t i = 0; i < x.c.size(); ++i)
    if (!(x.c[i] == y.c[i])) return false;
  return true;
}

bool el_is_zero(const Element& x) {
  for (const auto& s : x.c)
    if (!s.is_zero()) return false;
  return true;
}

std::string el_str(const Element& x) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < x.c.size(); ++i) os << (i ? ", " : "") << x.c[i].str();
  os << ")";
  return os.str();
}

namespace {

void verify_presentation(const AlgebraPresentation& A) {
  AlgebraPtr P(&A, [](const AlgebraPresentation*) {});  // non-owning view
  // Unit acts as identity.
  Element u{A.unit};
  for (int i = 0; i < A.dim; ++i) {
    Element b = el_basis(P, i);
    if (!el_eq(multiply(P, u, b), b) || !el_eq(multiply(P, b, u), b))
      throw InternalCheckFailed("unit fails on basis element " + A.basis[i]);
  }
  // Associativity on all basis triples.
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j)
      for (int k = 0; k < A.dim; ++k) {
        Element l = multiply(P, multiply(P, el_basis(P, i), el_basis(P, j)), el_basis(P, k));
        Element r = multiply(P, el_basis(P, i), multiply(P, el_basis(P, j), el_basis(P, k)));
        if (!el_eq(l, r))
          throw InternalCheckFailed("associativity fails at basis triple (" +
                                    std::to_string(i) + "," + std::to_string(j) + "," +
                                    std::to_string(k) + ")");
      }
  // Declared center elements commute with the basis.
  for (const auto& z : A.center_basis)
    for (int i = 0; i < A.dim; ++i) {
      Element b = el_basis(P, i);
      if (!el_eq(multiply(P, z, b), multiply(P, b, z)))
        throw InternalCheckFailed("declared center element fails to commute");
    }
}

}  // namespace

BaseChange::BaseChange(const AlgebraPtr& A, std::vector<Element> base)
    : A_(A), base_(std::move(base)) {
  int n = A->dim;
  if (static_cast<int>(base_.size()) != n)
    throw SingularBase("base must have dim elements");
  // Gauss-Jordan inversion of the column matrix of base vectors.
  std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(2 * n, Scalar::zero(A->field)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = base_[j].c[i];
    m[i][n + i] = Scalar::one(A->field);
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!m[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw SingularBase("base vectors are linearly dependent");
    std::swap(m[col], m[piv]);
    Scalar inv = m[col][col].inverse();
    for (int j = 0; j < 2 * n; ++j) m[col][j] = m[col][j] * inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      Scalar f = m[r][col];
      for (int j = 0; j < 2 * n; ++j) m[r][j] = m[r][j] - f * m[col][j];
    }
  }
  inv_.assign(n, std::vector<Scalar>(n, Scalar::zero(A->field)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv_[i][j] = m[i][n + j];
}

std::vector<Scalar> BaseChange::express(const Element& z) const {
  int n = A_->dim;
  if (static_cast<int>(z.c.size()) != n) throw RankMismatch("element dimension");
  std::vector<Scalar> d(n, Scalar::zero(A_->field));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (inv_[i][j].is_zero() || z.c[j].is_zero()) continue;
      d[i] = d[i] + inv_[i][j] * z.c[j];
    }
  return d;
}

AlgebraPtr construct_quaternion(const FieldPtr& F, const Scalar& a, const Scalar& b,
                                ValuationHandle center_handle) {
  if (a.is_zero() || b.is_zero()) throw ZeroParameter("quaternion parameters must be nonzero");
  if (F->coeff.p == 2) throw UnsupportedCharacteristic("characteristic 2");
  auto A = std::make_shared<AlgebraPresentation>();
  A->field = F;
  A->dim = 4;
  A->basis = {"1", "i", "j", "k"};
  Scalar z = Scalar::zero(F), o = Scalar::one(F);
  auto coords = [&](Scalar c0, Scalar c1, Scalar c2, Scalar c3) {
    return std::vector<Scalar>{std::move(c0), std::move(c1), std::move(c2), std::move(c3)};
  };
  A->table.assign(4, std::vector<std::vector<Scalar>>(4));
  Scalar ab = a * b;
  // Row = left factor, column = right factor.
  A->table[0][0] = coords(o, z, z, z);
  A->table[0][1] = coords(z, o, z, z);
  A->table[0][2] = coords(z, z, o, z);
  A->table[0][3] = coords(z, z, z, o);
  A->table[1][0] = coords(z, o, z, z);
  A->table[1][1] = coords(a, z, z, z);
  A->table[1][2] = coords(z, z, z, o);        // ij = k
  A->table[1][3] = coords(z, z, a, z);        // ik = a j
  A->table[2][0] = coords(z, z, o, z);
  A->table[2][1] = coords(z, z, z, -o);       // ji = -k
  A->table[2][2] = coords(b, z, z, z);
  A->table[2][3] = coords(z, -b, z, z);   // jk = -b i
  A->table[3][0] = coords(z, z, z, o);
  A->table[3][1] = coords(z, z, -a, z);       // ki = -a j
  A->table[3][2] = coords(z, b, z, z);        // kj = b i
  A->table[3][3] = coords(-ab, z, z, z);
  A->unit = coords(o, z, z, z);
  A->center_basis = {Element{A->unit}};
  A->center_handles = {std::move(center_handle)};
  verify_presentation(*A);
  A->name = "quaternion";
  return A;
}

AlgebraPtr construct_matrix(const FieldPtr& K, int n,
                            std::vector<ValuationHandle> center_handles) {
  if (n < 1) throw ZeroParameter("matrix size must be >= 1");
  auto A = std::make_shared<AlgebraPresentation>();
  A->field = K;
  A->dim = n * n;
  A->matrix_n = n;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      A->basis.push_back("e" + std::to_string(p + 1) + std::to_string(q + 1));
  auto idx = [n](int p, int q) { return p * n + q; };
  A->table.assign(A->dim, std::vector<std::vector<Scalar>>(
                              A->dim, std::vector<Scalar>(A->dim, Scalar::zero(K))));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          if (q == r) A->table[idx(p, q)][idx(r, s)][idx(p, s)] = Scalar::one(K);
  A->unit.assign(A->dim, Scalar::zero(K));
  for (int p = 0; p < n; ++p) A->unit[idx(p, p)] = Scalar::one(K);

  Element id{A->unit};
  A->center_basis.push_back(id);
  if (K->is_extension()) {
    Element tid = id;
    for (auto& s : tid.c) s = s * Scalar::generator(K);
    A->center_basis.push_back(tid);
  }
  A->center_handles = std::move(center_handles);
  verify_presentation(*A);
  A->name = "M" + std::to_string(n);
  return A;
}

AlgebraPtr construct_product(const std::vector<AlgebraPtr>& factors) {
  if (factors.empty()) throw ZeroParameter("empty product");
  const FieldPtr& F = factors[0]->field;
  for (const auto& f : factors)
    if (!f->field->same(*F)) throw FieldMismatch("product factors over different fields");
  auto A = std::make_shared<AlgebraPresentation>();
  A->field = F;
  for (const auto& f : factors) {
    A->factor_dims.push_back(f->dim);
    A->dim += f->dim;
  }
  A->table.assign(A->dim, std::vector<std::vector<Scalar>>(
                              A->dim, std::vector<Scalar>(A->dim, Scalar::zero(F))));
  A->unit.assign(A->dim, Scalar::zero(F));
  int off = 0;
  for (size_t fidx = 0; fidx < factors.size(); ++fidx) {
    const auto& f = factors[fidx];
    for (int i = 0; i < f->dim; ++i) {
      A->basis.push_back("f" + std::to_string(fidx + 1) + "." + f->basis[i]);
      A->unit[off + i] = f->unit[i];
      for (int j = 0; j < f->dim; ++j)
        for (int k = 0; k < f->dim; ++k) A->table[off + i][off + j][off + k] = f->table[i][j][k];
    }
    off += f->dim;
  }
  // Center: blockwise units of the factors (the declared part used by
  // product gauges); handles inherited from the factors.
  off = 0;
  for (const auto& f : factors) {
    Element e = el_zero(A);
    for (int i = 0; i < f->dim; ++i) e.c[off + i] = f->unit[i];
    A->center_basis.push_back(e);
    for (const auto& h : f->center_handles) A->center_handles.push_back(h);
    off += f->dim;
  }
  verify_presentation(*A);
  A->name = "product";
  return A;
}

static void check_slot(const AlgebraPtr& P, int slot) {
  if (slot < 0 || slot >= static_cast<int>(P->factor_dims.size()))
    throw RankMismatch("factor slot outside the product presentation");
}

Element inject(const AlgebraPtr& P, int slot, const Element& x) {
  check_slot(P, slot);
  Element r = el_zero(P);
  int off = 0;
  for (int s = 0; s < slot; ++s) off += P->factor_dims[s];
  for (size_t i = 0; i < x.c.size(); ++i) r.c[off + i] = x.c[i];
  return r;
}

Element project(const AlgebraPtr& P, int slot, const Element& x) {
  check_slot(P, slot);
  int off = 0;
  for (int s = 0; s < slot; ++s) off += P->factor_dims[s];
  Element r;
  r.c.assign(x.c.begin() + off, x.c.begin() + off + P->factor_dims[slot]);
  return r;
}

Scalar lift_scalar(const FieldPtr& target, const RatScalar& s) {
  return Scalar(target, s);
}

Embedding::Embedding(AlgebraPtr from, AlgebraPtr to, std::vector<Element> basis_images)
    : from_(std::move(from)), to_(std::move(to)), images_(std::move(basis_images)) {
  if (static_cast<int>(images_.size()) != from_->dim)
    throw EmbeddingNotMultiplicative("one image per basis element required");
  for (int i = 0; i < from_->dim; ++i)
    for (int j = 0; j < from_->dim; ++j) {
      Element lhs = apply(Element{from_->table[i][j]});
      Element rhs = multiply(to_, images_[i], images_[j]);
      if (!el_eq(lhs, rhs))
        throw EmbeddingNotMultiplicative("images fail at basis pair (" + from_->basis[i] +
                                         ", " + from_->basis[j] + ")");
    }
}

Embedding Embedding::quaternion_generated(const AlgebraPtr& from, const AlgebraPtr& to,
                                          const Element& image_i, const Element& image_j) {
  if (from->dim != 4) throw EmbeddingNotMultiplicative("source is not a quaternion algebra");
  std::vector<Element> images;
  images.push_back(el_unit(to));
  images.push_back(image_i);
  images.push_back(image_j);
  images.push_back(multiply(to, image_i, image_j));
  return Embedding(from, to, std::move(images));
}

Element Embedding::apply(const Element& x) const {
  Element r = el_zero(to_);
  for (int i = 0; i < from_->dim; ++i) {
    const Scalar& s = x.c[i];
    if (s.is_zero()) continue;
    if (!s.b().is_zero())
      throw UnsupportedScenario("embedding of extension-scalar coordinates");
    Scalar lifted = lift_scalar(to_->field, s.a());
    r = el_add(r, el_scale(lifted, images_[i]));
  }
  return r;
}

AlgebraPtr restrict_scalars(const AlgebraPtr& A, ValuationHandle base_handle) {
  const FieldPtr& K = A->field;
  if (!K->is_extension()) throw UnsupportedScenario("restriction of a base-field algebra");
  auto base = make_base_field(K->coeff, K->rank, K->vars);
  RatScalar u(K->ext->u);
  auto R = std::make_shared<AlgebraPresentation>();
  R->field = base;
  R->dim = 2 * A->dim;
  R->restricted_from = A;
  for (int i = 0; i < A->dim; ++i) {
    R->basis.push_back(A->basis[i]);
    R->basis.push_back("t*" + A->basis[i]);
  }
  auto put = [&](std::vector<Scalar>& row, int l, const Scalar& ks, int tshift) {
    // Adds t^tshift * ks * x_l into base-field coordinates.
    RatScalar a = ks.a(), b = ks.b();
    if (tshift == 1) {
      RatScalar na = b * u, nb = a;
      a = na;
      b = nb;
    }
    row[2 * l] = row[2 * l] + Scalar(base, a);
    row[2 * l + 1] = row[2 * l + 1] + Scalar(base, b);
  };
  R->table.assign(R->dim, std::vector<std::vector<Scalar>>(
                              R->dim, std::vector<Scalar>(R->dim, Scalar::zero(base))));
  RatScalar one = RatScalar::one(K->rank, K->coeff);
  for (int i = 0; i < A->dim; ++i)
    for (int p = 0; p < 2; ++p)
      for (int j = 0; j < A->dim; ++j)
        for (int q = 0; q < 2; ++q) {
          // (t^p x_i)(t^q x_j) = t^(p+q) sum_l c_l x_l with c_l in K.
          std::vector<Scalar>& row = R->table[2 * i + p][2 * j + q];
          int pq = p + q;
          for (int l = 0; l < A->dim; ++l) {
            Scalar c = A->table[i][j][l];
            if (c.is_zero()) continue;
            if (pq == 0)
              put(row, l, c, 0);
            else if (pq == 1)
              put(row, l, c, 1);
            else
              put(row, l, c * Scalar(A->field, u), 0);
          }
        }
  R->unit.assign(R->dim, Scalar::zero(base));
  for (int l = 0; l < A->dim; ++l) {
    R->unit[2 * l] = Scalar(base, A->unit[l].a());
    R->unit[2 * l + 1] = Scalar(base, A->unit[l].b());
  }
  // Center of the restriction contains the center scalars 1 and t.
  Element c1 = el_zero(R), ct = el_zero(R);
  for (int l = 0; l < A->dim; ++l) {
    c1.c[2 * l] = Scalar(base, A->unit[l].a());
    c1.c[2 * l + 1] = Scalar(base, A->unit[l].b());
    Scalar tu = A->unit[l] * Scalar::generator(K);
    ct.c[2 * l] = Scalar(base, tu.a());
    ct.c[2 * l + 1] = Scalar(base, tu.b());
  }
  R->center_basis = {c1, ct};
  R->center_handles = A->center_handles;
  (void)base_handle;
  verify_presentation(*R);
  R->name = A->name + "/F";
  return R;
}

Element to_restricted(const AlgebraPtr& R, const Element& x) {
  const AlgebraPtr& A = R->restricted_from;
  auto base = R->field;
  Element r = el_zero(R);
  for (int l = 0; l < A->dim; ++l) {
    r.c[2 * l] = Scalar(base, x.c[l].a());
    r.c[2 * l + 1] = Scalar(base, x.c[l].b());
  }
  return r;
}

Element from_restricted(const AlgebraPtr& R, const Element& x) {
  const AlgebraPtr& A = R->restricted_from;
  Element r = el_zero(A);
  for (int l = 0; l < A->dim; ++l) {
    if (!x.c[2 * l].b().is_zero() || !x.c[2 * l + 1].b().is_zero())
      throw InternalCheckFailed("restricted coordinates must be base-field scalars");
    r.c[l] = Scalar(A->field, x.c[2 * l].a(), x.c[2 * l + 1].a());
  }
  return r;
}

}  // namespace gauges
