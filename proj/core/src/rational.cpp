#include "gauges/rational.hpp"

#include <gmp.h>

namespace gauges {

Coeff::Coeff(const Rat& v, CoeffField f) : v_(v), f_(f) { reduce(); }

void Coeff::reduce() {
  v_.canonicalize();
  if (f_.p == 0) return;
  mpz_class p(static_cast<unsigned long>(f_.p));
  // Residue of num/den with den inverted mod p.
  mpz_class num = v_.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = v_.get_den() % p;
  if (den == 0) throw DivisionByZero("denominator divisible by " + std::to_string(f_.p));
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
    throw DivisionByZero("no inverse mod " + std::to_string(f_.p));
  v_ = Rat((num * inv) % p);
}

static void check_fields(const Coeff& a, const Coeff& b) {
  if (!(a.field() == b.field())) throw FieldMismatch("coefficient fields differ");
}

Coeff Coeff::operator+(const Coeff& o) const {
  check_fields(*this, o);
  return Coeff(v_ + o.v_, f_);
}
Coeff Coeff::operator-(const Coeff& o) const {
  check_fields(*this, o);
  return Coeff(v_ - o.v_, f_);
}
Coeff Coeff::operator*(const Coeff& o) const {
  check_fields(*this, o);
  return Coeff(v_ * o.v_, f_);
}
Coeff Coeff::operator/(const Coeff& o) const {
  check_fields(*this, o);
  if (o.is_zero()) throw DivisionByZero("coefficient division by zero");
  return *this * o.inverse();
}
Coeff Coeff::operator-() const { return Coeff(-v_, f_); }

bool Coeff::operator==(const Coeff& o) const {
  return f_ == o.f_ && v_ == o.v_;
}

Coeff Coeff::inverse() const {
  if (is_zero()) throw DivisionByZero("coefficient inverse of zero");
  if (f_.p == 0) return Coeff(1 / v_, f_);
  mpz_class p(static_cast<unsigned long>(f_.p));
  mpz_class inv;
  mpz_class num = v_.get_num();
  mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
  return Coeff(Rat(inv), f_);
}

namespace {

/// Tonelli-Shanks square root mod an odd prime. Returns nullopt for
/// quadratic nonresidues.
std::optional<mpz_class> sqrt_mod_p(const mpz_class& a, const mpz_class& p) {
  if (a == 0) return mpz_class(0);
  mpz_class leg;
  mpz_class e = (p - 1) / 2;
  mpz_powm(leg.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  if (leg != 1) return std::nullopt;  // Euler's criterion
  if (p % 4 == 3) {
    mpz_class r, e4 = (p + 1) / 4;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e4.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  // General case: factor p-1 = q * 2^s with q odd.
  mpz_class q = p - 1;
  unsigned long s = 0;
  while (q % 2 == 0) { q /= 2; ++s; }
  // Find a nonresidue z.
  mpz_class z = 2;
  while (true) {
    mpz_class l;
    mpz_powm(l.get_mpz_t(), z.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (l == p - 1) break;
    ++z;
  }
  mpz_class m(s), c, t, r;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_class e2 = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e2.get_mpz_t(), p.get_mpz_t());
  while (t != 1) {
    mpz_class tt = t;
    unsigned long i = 0;
    while (tt != 1) {
      mpz_class sq = (tt * tt) % p;
      tt = sq;
      ++i;
    }
    mpz_class b = c;
    for (unsigned long j = 0; j + i + 1 < mpz_get_ui(m.get_mpz_t()); ++j) b = (b * b) % p;
    m = mpz_class(i);
    c = (b * b) % p;
    t = (t * c) % p;
    r = (r * b) % p;
  }
  return r;
}

}  // namespace

std::optional<Coeff> Coeff::sqrt() const {
  if (is_zero()) return Coeff::zero(f_);
  if (f_.p == 0) {
    if (v_ < 0) return std::nullopt;
    mpz_class num = v_.get_num(), den = v_.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Coeff(Rat(rn) / Rat(rd), f_);
  }
  mpz_class p(static_cast<unsigned long>(f_.p));
  auto r = sqrt_mod_p(v_.get_num(), p);
  if (!r) return std::nullopt;
  return Coeff(Rat(*r), f_);
}

std::string Coeff::str() const { return rational_str(v_); }

Rat parse_rational(const std::string& s) {
  try {
    Rat r(s);
    r.canonicalize();
    return r;
  } catch (const std::exception&) {
    throw ParseError("bad rational literal '" + s + "'");
  }
}

std::string rational_str(const Rat& r) {
  return r.get_str();
}

}  // namespace gauges
