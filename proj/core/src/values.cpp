#include "gauges/values.hpp"

#include <sstream>

namespace gauges {

static void check_rank(const Value& a, const Value& b) {
  if (a.rank() != b.rank())
    throw RankMismatch("value ranks " + std::to_string(a.rank()) + " vs " +
                       std::to_string(b.rank()));
}

Value Value::operator+(const Value& o) const {
  check_rank(*this, o);
  std::vector<Rat> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] + o.c_[i];
  return Value(std::move(r));
}

Value Value::operator-(const Value& o) const {
  check_rank(*this, o);
  std::vector<Rat> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] - o.c_[i];
  return Value(std::move(r));
}

Value Value::operator-() const {
  std::vector<Rat> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
  return Value(std::move(r));
}

Value Value::scaled(const Rat& m) const {
  std::vector<Rat> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * m;
  return Value(std::move(r));
}

Ordering compare(const Value& a, const Value& b) {
  check_rank(a, b);
  for (int i = a.rank() - 1; i >= 0; --i) {
    if (a[i] < b[i]) return Ordering::Less;
    if (a[i] > b[i]) return Ordering::Greater;
  }
  return Ordering::Equal;
}

bool Value::operator<(const Value& o) const { return compare(*this, o) == Ordering::Less; }
bool Value::operator<=(const Value& o) const { return compare(*this, o) != Ordering::Greater; }

bool Value::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

std::string Value::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ", ";
    os << rational_str(c_[i]);
  }
  os << ")";
  return os.str();
}

SplitValue split_value(const Value& a, ConvexCut cut) {
  if (cut.k < 0 || cut.k > a.rank())
    throw RankMismatch("cut " + std::to_string(cut.k) + " outside [0," +
                       std::to_string(a.rank()) + "]");
  std::vector<Rat> fine(a.coords().begin(), a.coords().begin() + cut.k);
  std::vector<Rat> coarse(a.coords().begin() + cut.k, a.coords().end());
  return {Value(std::move(coarse)), Value(std::move(fine))};
}

Value embed_coarse(const Value& coarse, int rank) {
  if (coarse.rank() > rank) throw RankMismatch("coarse rank exceeds target");
  std::vector<Rat> r(rank, Rat(0));
  int k = rank - coarse.rank();
  for (int i = 0; i < coarse.rank(); ++i) r[k + i] = coarse[i];
  return Value(std::move(r));
}

bool lattice_member(const Value& a) {
  for (const auto& x : a.coords())
    if (x.get_den() != 1) return false;
  return true;
}

Value coset_key(const Value& a) {
  std::vector<Rat> r(a.coords());
  for (auto& x : r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    x -= Rat(q);
  }
  return Value(std::move(r));
}

unsigned long torsion_multiple(const Value& a) {
  mpz_class l(1);
  for (const auto& x : a.coords())
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  return mpz_get_ui(l.get_mpz_t());
}

const Value& ExtValue::finite() const {
  if (!v_) throw InternalCheckFailed("finite() on infinity");
  return *v_;
}

ExtValue ExtValue::operator+(const ExtValue& o) const {
  if (is_infinity() || o.is_infinity()) return infinity();
  return ExtValue(*v_ + *o.v_);
}
ExtValue ExtValue::operator+(const Value& o) const {
  if (is_infinity()) return infinity();
  return ExtValue(*v_ + o);
}
ExtValue ExtValue::operator-() const {
  if (is_infinity()) return infinity();
  return ExtValue(-*v_);
}

bool ExtValue::operator==(const ExtValue& o) const {
  if (is_infinity() != o.is_infinity()) return false;
  if (is_infinity()) return true;
  return *v_ == *o.v_;
}
bool ExtValue::operator<(const ExtValue& o) const {
  if (is_infinity()) return false;
  if (o.is_infinity()) return true;
  return *v_ < *o.v_;
}
bool ExtValue::operator<=(const ExtValue& o) const {
  return *this < o || *this == o;
}

int ExtValue::sign() const {
  if (is_infinity()) return 1;
  Value z = Value::zero(v_->rank());
  auto c = compare(*v_, z);
  if (c == Ordering::Less) return -1;
  if (c == Ordering::Greater) return 1;
  return 0;
}

std::string ExtValue::str() const { return is_infinity() ? "inf" : v_->str(); }

ExtValue min(const ExtValue& a, const ExtValue& b) { return a <= b ? a : b; }

Value parse_value(const std::vector<std::string>& coords) {
  std::vector<Rat> r;
  r.reserve(coords.size());
  for (const auto& s : coords) r.push_back(parse_rational(s));
  return Value(std::move(r));
}

std::vector<std::string> value_strings(const Value& v) {
  std::vector<std::string> out;
  out.reserve(v.rank());
  for (const auto& c : v.coords()) out.push_back(rational_str(c));
  return out;
}

}  // namespace gauges
