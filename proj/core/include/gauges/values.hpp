#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gauges/rational.hpp"

namespace gauges {

enum class Ordering { Less, Equal, Greater };

/// A point of the divisible hull of the reference value group: an exact
/// rational vector of fixed rank, ordered right-to-left lexicographically
/// (the last coordinate dominates).
class Value {
public:
  Value() = default;
  explicit Value(std::vector<Rat> coords) : c_(std::move(coords)) {}
  static Value zero(int rank) { return Value(std::vector<Rat>(rank, Rat(0))); }

  int rank() const { return static_cast<int>(c_.size()); }
  const Rat& operator[](int i) const { return c_[i]; }
  Rat& operator[](int i) { return c_[i]; }
  const std::vector<Rat>& coords() const { return c_; }

  Value operator+(const Value& o) const;
  Value operator-(const Value& o) const;
  Value operator-() const;
  Value scaled(const Rat& m) const;

  bool operator==(const Value& o) const { return c_ == o.c_; }
  bool operator!=(const Value& o) const { return !(*this == o); }
  bool operator<(const Value& o) const;
  bool operator<=(const Value& o) const;
  bool operator>(const Value& o) const { return o < *this; }
  bool operator>=(const Value& o) const { return o <= *this; }

  bool is_zero() const;
  std::string str() const;

private:
  std::vector<Rat> c_;
};

/// Right-to-left lexicographic comparison; throws RankMismatch on unequal
/// ranks.
Ordering compare(const Value& a, const Value& b);

/// The convex subgroup cut: Delta_k = {(a_1..a_k, 0, .., 0)}.
struct ConvexCut {
  int k = 0;
};

struct SplitValue {
  Value coarse;  // rank n-k: image in Gamma/Delta_k (last coordinates)
  Value fine;    // rank k: first coordinates (a residue value when coarse = 0)
};

SplitValue split_value(const Value& a, ConvexCut cut);

/// Re-embeds a coarse value with zero fine part, producing a rank-n value.
Value embed_coarse(const Value& coarse, int rank);

/// Membership in the reference lattice Z^n.
bool lattice_member(const Value& a);

/// Canonical representative of a mod Z^n, each coordinate reduced to [0,1).
Value coset_key(const Value& a);

/// Smallest positive integer m with m*a in the lattice.
unsigned long torsion_multiple(const Value& a);

/// A value or the formal infinity absorbing element.
class ExtValue {
public:
  ExtValue() = default;  // infinity
  ExtValue(Value v) : v_(std::move(v)) {}
  static ExtValue infinity() { return ExtValue(); }

  bool is_infinity() const { return !v_.has_value(); }
  const Value& finite() const;

  ExtValue operator+(const ExtValue& o) const;
  ExtValue operator+(const Value& o) const;
  ExtValue operator-() const;
  bool operator==(const ExtValue& o) const;
  bool operator!=(const ExtValue& o) const { return !(*this == o); }
  bool operator<(const ExtValue& o) const;
  bool operator<=(const ExtValue& o) const;
  bool operator>(const ExtValue& o) const { return o < *this; }
  bool operator>=(const ExtValue& o) const { return o <= *this; }

  /// Sign against zero of matching rank; infinity counts as positive.
  int sign() const;

  std::string str() const;

private:
  std::optional<Value> v_;
};

ExtValue min(const ExtValue& a, const ExtValue& b);

Value parse_value(const std::vector<std::string>& coords);
std::vector<std::string> value_strings(const Value& v);

}  // namespace gauges
