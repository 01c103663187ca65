#include "gauges/scalars.hpp"

#include <algorithm>
#include <sstream>

namespace gauges {

RatScalar::RatScalar(Series num, Series den) : num_(std::move(num)), den_(std::move(den)) {
  if (!num_.is_exact() || !den_.is_exact())
    throw InternalCheckFailed("RatScalar components must be exact");
  if (den_.terms().empty()) throw DivisionByZero("zero denominator");
  normalize();
}

RatScalar::RatScalar(Series num)
    : RatScalar(std::move(num), Series::one(num.rank(), num.field())) {}

void RatScalar::normalize() {
  if (num_.terms().empty()) {
    den_ = Series::one(num_.rank(), num_.field());
    return;
  }
  // Make the denominator's leading term 1 (monomial and coefficient).
  ExpKey e = den_.leading_exp();
  Coeff c = den_.leading_coeff();
  ExpKey neg(e.size());
  for (size_t i = 0; i < e.size(); ++i) neg[i] = -e[i];
  num_ = num_.shifted(neg).scaled(c.inverse());
  den_ = den_.shifted(neg).scaled(c.inverse());
  if (den_.term_count() == 1) {
    den_ = Series::one(num_.rank(), num_.field());
    return;
  }
  // Cheap exact-division attempt to collapse the fraction when possible.
  // Capped hard: a genuine collapse terminates quickly, and fat remainders
  // signal a non-dividing pair.
  if (den_.term_count() > 12) return;
  Series q(num_.rank(), num_.field());
  Series r = num_;
  size_t steps = 0;
  const size_t step_bound = 64;
  const size_t growth_bound = num_.term_count() + 2 * den_.term_count() + 16;
  while (!r.terms().empty() && ++steps <= step_bound &&
         r.term_count() <= growth_bound) {
    ExpKey re = r.leading_exp();
    ExpKey de = den_.leading_exp();
    ExpKey qe(re.size());
    for (size_t i = 0; i < re.size(); ++i) qe[i] = re[i] - de[i];
    Series m = Series::monomial(r.leading_coeff() / den_.leading_coeff(), qe);
    q = q + m;
    r = r - m * den_;
  }
  if (r.terms().empty()) {
    num_ = q;
    den_ = Series::one(num_.rank(), num_.field());
  }
}

RatScalar RatScalar::operator+(const RatScalar& o) const {
  if (den_ == o.den_) return RatScalar(num_ + o.num_, den_);
  return RatScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RatScalar RatScalar::operator-(const RatScalar& o) const { return *this + (-o); }
RatScalar RatScalar::operator*(const RatScalar& o) const {
  return RatScalar(num_ * o.num_, den_ * o.den_);
}
RatScalar RatScalar::operator/(const RatScalar& o) const {
  if (o.is_zero()) throw DivisionByZero("scalar division by zero");
  return RatScalar(num_ * o.den_, den_ * o.num_);
}
RatScalar RatScalar::operator-() const {
  RatScalar r = *this;
  r.num_ = -r.num_;
  return r;
}
RatScalar RatScalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero scalar");
  return RatScalar(den_, num_);
}
bool RatScalar::operator==(const RatScalar& o) const {
  return (num_ * o.den_) == (o.num_ * den_);
}

ExtValue RatScalar::valuation() const {
  if (is_zero()) return ExtValue::infinity();
  return ExtValue(exp_to_value(num_.leading_exp()) - exp_to_value(den_.leading_exp()));
}

Coeff RatScalar::leading_coeff() const {
  if (is_zero()) return Coeff::zero(field());
  return num_.leading_coeff() / den_.leading_coeff();
}

static Value coarse_of_exp(const ExpKey& e, ConvexCut cut) {
  return split_value(exp_to_value(e), cut).coarse;
}

ExtValue RatScalar::coarse_valuation(ConvexCut cut) const {
  if (is_zero()) return ExtValue::infinity();
  return ExtValue(coarse_of_exp(num_.leading_exp(), cut) -
                  coarse_of_exp(den_.leading_exp(), cut));
}

RatScalar RatScalar::residue(ConvexCut cut) const {
  int k = cut.k;
  if (is_zero()) return RatScalar::zero(k, field());
  Value cv = coarse_valuation(cut).finite();
  auto cs = compare(cv, Value::zero(rank() - k));
  if (cs == Ordering::Less) throw NegativeValue("residue of negative coarse value");
  if (cs == Ordering::Greater) return RatScalar::zero(k, field());
  // Shift numerator and denominator to coarse valuation 0, then residue each.
  auto shift_exp = [&](const Series& s) {
    Value c = coarse_of_exp(s.leading_exp(), cut);
    ExpKey e(rank(), 0);
    for (int i = k; i < rank(); ++i) e[i] = -c[i - k].get_num().get_si();
    return s.shifted(e);
  };
  Series ns = shift_exp(num_), ds = shift_exp(den_);
  return RatScalar(ns.residue(cut), ds.residue(cut));
}

Series RatScalar::materialize(const Value& target) const {
  return div(num_, den_, target);
}

std::string RatScalar::str(const std::vector<std::string>& vars) const {
  if (den_.term_count() == 1 && den_.leading_coeff() == Coeff::one(field()) &&
      std::all_of(den_.leading_exp().begin(), den_.leading_exp().end(),
                  [](long x) { return x == 0; }))
    return num_.str(vars);
  return "(" + num_.str(vars) + ") / (" + den_.str(vars) + ")";
}

QuadExt::QuadExt(std::string name_in, Series u_in)
    : name(std::move(name_in)), u(std::move(u_in)), root_lc(Coeff::zero(u.field())) {
  if (u.is_exact_zero()) throw ZeroParameter("extension parameter u = 0");
  if (!u.is_exact()) throw UnsupportedScenario("extension parameter must be exact");
  ExpKey e = u.leading_exp();
  bool even = std::all_of(e.begin(), e.end(), [](long x) { return x % 2 == 0; });
  auto lc = u.leading_coeff().sqrt();
  root_exists = even && lc.has_value();
  if (root_exists) {
    root_lc = *lc;
    root_exp.resize(e.size());
    for (size_t i = 0; i < e.size(); ++i) root_exp[i] = e[i] / 2;
  }
}

Series QuadExt::root(const Value& target) const {
  if (!root_exists) throw NonSquareResidue("extension has no root in the ambient field");
  return hensel_sqrt(u, target);
}

bool ScalarField::same(const ScalarField& o) const {
  if (!(coeff == o.coeff) || rank != o.rank) return false;
  if ((ext == nullptr) != (o.ext == nullptr)) return false;
  if (ext && !(ext->u == o.ext->u)) return false;
  return true;
}

FieldPtr make_base_field(CoeffField coeff, int rank, std::vector<std::string> vars) {
  auto f = std::make_shared<ScalarField>();
  f->coeff = coeff;
  f->rank = rank;
  f->vars = std::move(vars);
  return f;
}

FieldPtr make_extension_field(const FieldPtr& base, std::string name, Series u) {
  if (base->is_extension()) throw UnsupportedScenario("towers of extensions not supported");
  auto f = std::make_shared<ScalarField>(*base);
  f->ext = std::make_shared<QuadExt>(std::move(name), std::move(u));
  return f;
}

Scalar::Scalar(FieldPtr f, RatScalar a) : f_(std::move(f)), a_(std::move(a)) {
  b_ = RatScalar::zero(f_->rank, f_->coeff);
}
Scalar::Scalar(FieldPtr f, RatScalar a, RatScalar b)
    : f_(std::move(f)), a_(std::move(a)), b_(std::move(b)) {
  if (!b_.is_zero() && !f_->is_extension())
    throw FieldMismatch("t-component over the base field");
}

Scalar Scalar::zero(const FieldPtr& f) {
  return Scalar(f, RatScalar::zero(f->rank, f->coeff));
}
Scalar Scalar::one(const FieldPtr& f) {
  return Scalar(f, RatScalar::one(f->rank, f->coeff));
}
Scalar Scalar::constant(const FieldPtr& f, const Coeff& c) {
  return Scalar(f, RatScalar::constant(c, f->rank));
}
Scalar Scalar::generator(const FieldPtr& f) {
  if (!f->is_extension()) throw FieldMismatch("generator of a base field");
  return Scalar(f, RatScalar::zero(f->rank, f->coeff), RatScalar::one(f->rank, f->coeff));
}

static void check_same_field(const Scalar& x, const Scalar& y) {
  if (!x.fieldp()->same(*y.fieldp())) throw FieldMismatch("scalars from different fields");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(*this, o);
  return Scalar(f_, a_ + o.a_, b_ + o.b_);
}
Scalar Scalar::operator-(const Scalar& o) const {
  check_same_field(*this, o);
  return Scalar(f_, a_ - o.a_, b_ - o.b_);
}
Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(*this, o);
  if (b_.is_zero() && o.b_.is_zero()) return Scalar(f_, a_ * o.a_);
  RatScalar u(f_->ext->u);
  return Scalar(f_, a_ * o.a_ + b_ * o.b_ * u, a_ * o.b_ + b_ * o.a_);
}
Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }
Scalar Scalar::operator-() const { return Scalar(f_, -a_, -b_); }
Scalar Scalar::conj() const { return Scalar(f_, a_, -b_); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (b_.is_zero()) return Scalar(f_, a_.inverse());
  RatScalar u(f_->ext->u);
  RatScalar n = a_ * a_ - b_ * b_ * u;
  if (n.is_zero()) throw DivisionByZero("zero divisor in etale extension");
  return Scalar(f_, a_ / n, -(b_ / n));
}

bool Scalar::operator==(const Scalar& o) const {
  check_same_field(*this, o);
  return a_ == o.a_ && b_ == o.b_;
}

std::string Scalar::str() const {
  if (b_.is_zero()) return a_.str(f_->vars);
  std::string t = f_->is_extension() ? "t" : "?";
  return a_.str(f_->vars) + " + (" + b_.str(f_->vars) + ")*" + t;
}

ExtValue handle_valuation(const ValuationHandle& h, const Scalar& z) {
  if (!h.field->same(*z.fieldp())) throw FieldMismatch("handle and scalar fields differ");
  if (!h.field->is_extension()) return z.a().valuation();
  const QuadExt& ext = *h.field->ext;
  if (z.b().is_zero()) return z.a().valuation();
  Value vu_half = exp_to_value(ext.u.leading_exp()).scaled(Rat(1, 2));
  if (z.a().is_zero()) return z.b().valuation() + vu_half;

  // Common-denominator form (P + s Q r) / D with P, Q, D exact.
  Series P = z.a().num() * z.b().den();
  Series Q = z.b().num() * z.a().den();
  Series D = z.a().den() * z.b().den();
  Value vD = exp_to_value(D.leading_exp());
  Value vP = exp_to_value(P.leading_exp());
  Value vQr = exp_to_value(Q.leading_exp()) + vu_half;

  if (!ext.root_exists) {
    // Unique extension: value is half the norm valuation.
    Series N = P * P - Q * Q * ext.u;
    return ExtValue(exp_to_value(N.leading_exp()).scaled(Rat(1, 2)) - vD);
  }
  if (vP != vQr) return ExtValue((vP < vQr ? vP : vQr) - vD);
  Coeff c = P.leading_coeff() +
            (h.sign >= 0 ? Q.leading_coeff() * ext.root_lc : -(Q.leading_coeff() * ext.root_lc));
  if (!c.is_zero()) return ExtValue(vP - vD);
  // Leading terms cancel: use (P + sQr)(P - sQr) = P^2 - Q^2 u, whose second
  // factor has exact valuation vP (its leading coefficients add).
  Series N = P * P - Q * Q * ext.u;
  if (N.terms().empty()) return ExtValue::infinity();  // etale zero divisor
  return ExtValue(exp_to_value(N.leading_exp()) - vP - vD);
}

Coeff handle_leading_coeff(const ValuationHandle& h, const Scalar& z) {
  if (!h.field->is_extension() || z.b().is_zero()) return z.a().leading_coeff();
  const QuadExt& ext = *h.field->ext;
  if (!ext.root_exists)
    throw UnsupportedScenario("leading coefficient needs a rooted extension");
  Coeff rlc = h.sign >= 0 ? ext.root_lc : -ext.root_lc;
  if (z.a().is_zero()) return z.b().leading_coeff() * rlc;
  Series P = z.a().num() * z.b().den();
  Series Q = z.b().num() * z.a().den();
  Series D = z.a().den() * z.b().den();
  Value vu_half = exp_to_value(ext.u.leading_exp()).scaled(Rat(1, 2));
  Value vP = exp_to_value(P.leading_exp());
  Value vQr = exp_to_value(Q.leading_exp()) + vu_half;
  Coeff dc = D.leading_coeff();
  if (vP < vQr) return P.leading_coeff() / dc;
  if (vQr < vP) return Q.leading_coeff() * rlc / dc;
  Coeff c = P.leading_coeff() + Q.leading_coeff() * rlc;
  if (!c.is_zero()) return c / dc;
  Series N = P * P - Q * Q * ext.u;
  if (N.terms().empty()) return Coeff::zero(z.fieldp()->coeff);
  Coeff two = Coeff(Rat(2), z.fieldp()->coeff);
  return N.leading_coeff() / (two * P.leading_coeff()) / dc;
}

ResiduePair residue_pair(const Scalar& z, ConvexCut cut) {
  if (!z.fieldp()->is_extension())
    throw UnsupportedScenario("residue pair of a base-field scalar");
  const QuadExt& ext = *z.fieldp()->ext;
  Value cvu = split_value(exp_to_value(ext.u.leading_exp()), cut).coarse;
  if (!cvu.is_zero())
    throw UnsupportedScenario("extension parameter with nonzero coarse value");
  return ResiduePair{z.a().residue(cut), z.b().residue(cut), ext.u.residue(cut)};
}

ExtensionCount count_extensions_quadratic(const Series& u) {
  if (u.is_exact_zero()) throw ZeroParameter("u = 0");
  if (exact_poly_sqrt(u)) return {2, ExtensionKind::Etale};
  ExpKey e = u.leading_exp();
  for (long x : e)
    if (x % 2 != 0) return {1, ExtensionKind::Ramified};
  if (!u.leading_coeff().sqrt()) return {1, ExtensionKind::Inertial};
  return {2, ExtensionKind::Split};
}

ExtensionCount count_extensions_at_cut(const Series& u, ConvexCut cut) {
  int n = u.rank();
  int k = cut.k;
  if (k == 0) return count_extensions_quadratic(u);
  if (k == n) return {1, ExtensionKind::Inertial};  // trivial coarse valuation
  if (exact_poly_sqrt(u)) return {2, ExtensionKind::Etale};
  ExpKey e = u.leading_exp();
  for (int i = k; i < n; ++i)
    if (e[i] % 2 != 0) return {1, ExtensionKind::Ramified};
  // Normalize the coarse part away and look at the rank-k residue.
  ExpKey sh(n, 0);
  for (int i = k; i < n; ++i) sh[i] = -e[i];
  Series r = u.shifted(sh).residue(cut);
  if (exact_poly_sqrt(r)) return {2, ExtensionKind::Split};
  return {1, ExtensionKind::Inertial};
}

ConvexCut agreement_cut(const ValuationHandle& h1, const ValuationHandle& h2) {
  if (!h1.field->same(*h2.field))
    throw FieldMismatch("agreement cut of handles on different fields");
  int n = h1.field->rank;
  if (!h1.field->is_extension() || h1.sign == h2.sign) return ConvexCut{0};
  const Series& u = h1.field->ext->u;
  for (int k = 0; k <= n; ++k) {
    if (count_extensions_at_cut(u, ConvexCut{k}).count == 1) return ConvexCut{k};
  }
  return ConvexCut{n};
}

Scalar approximate(const std::vector<ValuationHandle>& extensions, size_t k,
                   const std::vector<Value>& deltas) {
  size_t r = extensions.size();
  if (r == 0 || k >= r) throw UnsupportedScenario("bad component index");
  if (deltas.size() != r) throw RankMismatch("one delta per extension required");
  if (r > 2) throw UnsupportedScenario("at most two extensions supported");
  const FieldPtr& f = extensions[0].field;
  int n = f->rank;
  if (!deltas[k].is_zero()) throw UnsupportedScenario("delta_k must be 0");
  // Compatibility: pairwise differences must vanish under the agreement cut.
  for (size_t i = 0; i < r; ++i)
    for (size_t j = i + 1; j < r; ++j) {
      ConvexCut cij = agreement_cut(extensions[i], extensions[j]);
      Value diff = deltas[i] - deltas[j];
      if (!split_value(diff, cij).coarse.is_zero())
        throw UnsupportedScenario("incompatible delta tuple");
    }
  auto satisfies = [&](const Scalar& c) {
    ExtValue vk = handle_valuation(extensions[k], c);
    if (!(vk == ExtValue(Value::zero(n)))) return false;
    Scalar cm1 = c - Scalar::one(f);
    if (!(handle_valuation(extensions[k], cm1) > ExtValue(Value::zero(n)))) return false;
    for (size_t i = 0; i < r; ++i) {
      if (i == k) continue;
      if (!(handle_valuation(extensions[i], c) > ExtValue(deltas[i]))) return false;
    }
    return true;
  };

  if (r == 1) return Scalar::one(f);

  // Candidate monomial multipliers: a small dense box plus long axis strides,
  // ordered by size so the first hit is the simplest witness.
  const long bound = 16;
  std::vector<ExpKey> exps;
  {
    std::vector<ExpKey> box;
    ExpKey e(n, 0);
    auto rec = [&](auto&& self, int idx) -> void {
      if (idx == n) {
        box.push_back(e);
        return;
      }
      for (long v = -3; v <= 3; ++v) {
        e[idx] = v;
        self(self, idx + 1);
      }
    };
    rec(rec, 0);
    std::stable_sort(box.begin(), box.end(), [](const ExpKey& a, const ExpKey& b) {
      long sa = 0, sb = 0;
      for (long x : a) sa += x < 0 ? -x : x;
      for (long x : b) sb += x < 0 ? -x : x;
      return sa < sb;
    });
    exps = std::move(box);
    for (long v = 4; v <= bound; ++v)
      for (int i = 0; i < n; ++i)
        for (int s = -1; s <= 1; s += 2) {
          ExpKey axis(n, 0);
          axis[i] = s * v;
          exps.push_back(axis);
        }
  }

  Scalar half = Scalar::constant(f, Coeff(Rat(1, 2), f->coeff));
  Scalar t = Scalar::generator(f);
  for (long m = 0; m <= bound; ++m) {
    for (int sgn = 0; sgn < 2; ++sgn) {
      Scalar base = (sgn == 0 ? Scalar::one(f) + t : Scalar::one(f) - t) * half;
      Scalar pw = Scalar::one(f);
      for (long i = 0; i < m; ++i) pw = pw * base;
      for (const auto& ee : exps) {
        Scalar cand = pw * Scalar(f, RatScalar(Series::monomial(Coeff::one(f->coeff), ee)));
        if (satisfies(cand)) return cand;
      }
      if (m == 0) break;  // the two signs coincide at m = 0
    }
  }
  throw NotReachable("no approximation element within the configured power bound");
}

std::string kind_name(ExtensionKind k) {
  switch (k) {
    case ExtensionKind::Split: return "split";
    case ExtensionKind::Inertial: return "inertial";
    case ExtensionKind::Ramified: return "ramified";
    case ExtensionKind::Etale: return "etale";
  }
  return "?";
}

}  // namespace gauges
