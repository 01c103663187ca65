#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "gauges/errors.hpp"

namespace gauges {

using Rat = mpq_class;

/// The exact coefficient field of a scenario: the rationals (p == 0) or the
/// prime field GF(p) for an odd prime p.
struct CoeffField {
  unsigned long p = 0;

  bool is_rationals() const { return p == 0; }
  bool operator==(const CoeffField& o) const { return p == o.p; }
};

/// An element of a CoeffField. Rational elements use full mpq arithmetic;
/// GF(p) elements are canonical residues in [0, p).
class Coeff {
public:
  Coeff() = default;
  Coeff(const Rat& v, CoeffField f);
  static Coeff zero(CoeffField f) { return Coeff(Rat(0), f); }
  static Coeff one(CoeffField f) { return Coeff(Rat(1), f); }

  const Rat& value() const { return v_; }
  CoeffField field() const { return f_; }
  bool is_zero() const { return v_ == 0; }

  Coeff operator+(const Coeff& o) const;
  Coeff operator-(const Coeff& o) const;
  Coeff operator*(const Coeff& o) const;
  Coeff operator/(const Coeff& o) const;
  Coeff operator-() const;
  bool operator==(const Coeff& o) const;
  bool operator!=(const Coeff& o) const { return !(*this == o); }

  Coeff inverse() const;

  /// Exact square root when one exists in the field (Tonelli-Shanks on GF(p)).
  std::optional<Coeff> sqrt() const;

  std::string str() const;

private:
  void reduce();
  Rat v_{0};
  CoeffField f_{};
};

/// Parses "p/q" or "p" into an exact rational.
Rat parse_rational(const std::string& s);
std::string rational_str(const Rat& r);

}  // namespace gauges
