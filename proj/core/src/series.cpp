#include "gauges/series.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gauges {

namespace {
constexpr size_t kMaxMaterializeSteps = 2000;

std::optional<Value> min_cut(const std::optional<Value>& a, const std::optional<Value>& b) {
  if (!a) return b;
  if (!b) return a;
  return *a <= *b ? a : b;
}
}  // namespace

Value exp_to_value(const ExpKey& e) {
  std::vector<Rat> c(e.size());
  for (size_t i = 0; i < e.size(); ++i) c[i] = Rat(e[i]);
  return Value(std::move(c));
}

bool exp_below(const ExpKey& e, const Value& v) {
  for (size_t i = e.size(); i-- > 0;) {
    Rat ei(static_cast<long>(e[i]));
    if (ei != v[static_cast<int>(i)]) return ei < v[static_cast<int>(i)];
  }
  return false;
}

Series Series::constant(const Coeff& c, int rank) {
  Series s(rank, c.field());
  if (!c.is_zero()) s.terms_[ExpKey(rank, 0)] = c;
  return s;
}

Series Series::monomial(const Coeff& c, const ExpKey& e) {
  Series s(static_cast<int>(e.size()), c.field());
  if (!c.is_zero()) s.terms_[e] = c;
  return s;
}

void Series::set_term(const ExpKey& e, const Coeff& c) {
  if (static_cast<int>(e.size()) != rank_) throw RankMismatch("term exponent rank");
  if (c.is_zero())
    terms_.erase(e);
  else
    terms_[e] = c;
}

void Series::set_cut(std::optional<Value> cut) {
  cut_ = std::move(cut);
  if (cut_) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (!exp_below(it->first, *cut_))
        it = terms_.erase(it);
      else
        ++it;
    }
  }
}

static void check_compat(const Series& a, const Series& b) {
  if (a.rank() != b.rank()) throw RankMismatch("series ranks differ");
  if (!(a.field() == b.field())) throw FieldMismatch("series coefficient fields differ");
}

Series Series::operator+(const Series& o) const {
  check_compat(*this, o);
  Series r(rank_, field_);
  r.terms_ = terms_;
  for (const auto& [e, c] : o.terms_) {
    auto it = r.terms_.find(e);
    if (it == r.terms_.end())
      r.terms_[e] = c;
    else {
      Coeff s = it->second + c;
      if (s.is_zero())
        r.terms_.erase(it);
      else
        it->second = s;
    }
  }
  r.set_cut(min_cut(cut_, o.cut_));
  return r;
}

Series Series::operator-() const {
  Series r(rank_, field_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  r.cut_ = cut_;
  return r;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
  check_compat(*this, o);
  Series r(rank_, field_);
  // Result cut: unknown tail of one operand times leading value of the other.
  std::optional<Value> cut;
  auto low = [](const Series& s) -> std::optional<Value> {
    if (!s.terms().empty()) return exp_to_value(s.terms().begin()->first);
    if (s.cut()) return *s.cut();
    return std::nullopt;  // exact zero
  };
  if (is_exact_zero() || o.is_exact_zero()) return zero(rank_, field_);
  if (cut_) {
    auto lb = low(o);
    if (lb) cut = min_cut(cut, *cut_ + *lb);
  }
  if (o.cut_) {
    auto la = low(*this);
    if (la) cut = min_cut(cut, *o.cut_ + *la);
  }
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      ExpKey e(rank_);
      for (int i = 0; i < rank_; ++i) e[i] = ea[i] + eb[i];
      if (cut && !exp_below(e, *cut)) continue;
      Coeff p = ca * cb;
      auto it = r.terms_.find(e);
      if (it == r.terms_.end()) {
        if (!p.is_zero()) r.terms_[e] = p;
      } else {
        Coeff s = it->second + p;
        if (s.is_zero())
          r.terms_.erase(it);
        else
          it->second = s;
      }
    }
  }
  r.set_cut(cut);
  return r;
}

Series Series::scaled(const Coeff& c) const {
  Series r(rank_, field_);
  if (!c.is_zero())
    for (const auto& [e, t] : terms_) r.terms_[e] = t * c;
  r.cut_ = cut_;
  return r;
}

Series Series::shifted(const ExpKey& sh) const {
  Series r(rank_, field_);
  for (const auto& [e, c] : terms_) {
    ExpKey ne(rank_);
    for (int i = 0; i < rank_; ++i) ne[i] = e[i] + sh[i];
    r.terms_[ne] = c;
  }
  if (cut_) r.cut_ = *cut_ + exp_to_value(sh);
  return r;
}

bool Series::operator==(const Series& o) const {
  return rank_ == o.rank_ && field_ == o.field_ && terms_ == o.terms_ && cut_ == o.cut_;
}

ExtValue Series::valuation() const {
  if (terms_.empty()) {
    if (cut_)
      throw InsufficientPrecision("no stored term below cut " + cut_->str());
    return ExtValue::infinity();
  }
  return ExtValue(exp_to_value(terms_.begin()->first));
}

Coeff Series::leading_coeff() const {
  if (terms_.empty()) {
    if (cut_) throw InsufficientPrecision("leading coefficient below cut unknown");
    return Coeff::zero(field_);
  }
  return terms_.begin()->second;
}

ExpKey Series::leading_exp() const {
  if (terms_.empty()) throw InsufficientPrecision("no leading exponent");
  return terms_.begin()->first;
}

Series Series::truncated(const Value& cut) const {
  Series r = *this;
  r.set_cut(min_cut(cut_, cut));
  return r;
}

Series Series::residue(ConvexCut cut) const {
  int k = cut.k;
  if (k < 0 || k > rank_) throw RankMismatch("residue cut");
  Series r(k, field_);
  for (const auto& [e, c] : terms_) {
    // The coarse part (last n-k coordinates) must be >= 0 in rtl order.
    ExpKey coarse(e.begin() + k, e.end());
    bool zero = true, neg = false;
    for (size_t i = coarse.size(); i-- > 0;) {
      if (coarse[i] != 0) {
        neg = coarse[i] < 0;
        zero = false;
        break;
      }
    }
    if (neg) throw NegativeValue("residue of a term with negative coarse value");
    if (!zero) continue;
    r.terms_[ExpKey(e.begin(), e.begin() + k)] = c;
  }
  if (cut_) {
    SplitValue sp = split_value(*cut_, cut);
    auto csign = compare(sp.coarse, Value::zero(rank_ - k));
    if (csign == Ordering::Greater) {
      // Everything with coarse part 0 lies below the cut: residue is exact.
    } else if (csign == Ordering::Equal) {
      r.cut_ = sp.fine;
    } else {
      throw InsufficientPrecision("cut too coarse to certify residue");
    }
  }
  return r;
}

std::string Series::str(const std::vector<std::string>& vars) const {
  if (terms_.empty() && !cut_) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rat v = c.value();
    if (first) {
      if (v < 0) os << "-";
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    first = false;
    Rat av = abs(v);
    bool all_zero = std::all_of(e.begin(), e.end(), [](long x) { return x == 0; });
    bool coeff_one = (av == 1);
    if (!coeff_one || all_zero) os << rational_str(av);
    bool printed = !coeff_one || all_zero;
    for (int i = 0; i < rank_; ++i) {
      if (e[i] == 0) continue;
      if (printed) os << "*";
      os << vars[i];
      if (e[i] != 1) os << "^" << e[i];
      printed = true;
    }
  }
  if (terms_.empty()) os << "0";
  if (cut_) os << " + O(" << cut_->str() << ")";
  return os.str();
}

Series div(const Series& a, const Series& b, const Value& target) {
  check_compat(a, b);
  if (b.is_exact_zero()) throw DivisionByZero("series division by zero");
  if (b.terms().empty()) throw InsufficientPrecision("divisor has no certain leading term");
  if (a.is_exact_zero()) return Series::zero(a.rank(), a.field());
  const ExpKey be = b.leading_exp();
  const Coeff bc = b.leading_coeff();
  ExpKey neg(be.size());
  for (size_t i = 0; i < be.size(); ++i) neg[i] = -be[i];

  if (b.term_count() == 1 && b.is_exact()) {
    return a.shifted(neg).scaled(bc.inverse());
  }

  // Justified precision of the quotient.
  Value vb = exp_to_value(b.leading_exp());
  Value cutv = target;
  if (a.cut()) {
    Value c1 = *a.cut() - vb;
    if (c1 <= cutv) cutv = c1;
  }
  if (b.cut()) {
    if (a.terms().empty())
      throw InsufficientPrecision("dividend with no certain leading term");
    Value va = exp_to_value(a.leading_exp());
    Value c2 = va + *b.cut() - vb - vb;
    if (c2 <= cutv) cutv = c2;
  }
  std::optional<Value> cut = cutv;

  // Long division by the leading term: each step cancels the current minimal
  // remainder term, so the remainder valuation strictly increases.
  Series q(a.rank(), a.field());
  Series r = a;
  size_t steps = 0;
  bool exact_stop = true;
  while (!r.terms().empty()) {
    ExpKey re = r.leading_exp();
    ExpKey qe(re.size());
    for (size_t i = 0; i < re.size(); ++i) qe[i] = re[i] - be[i];
    if (!exp_below(qe, *cut)) {
      exact_stop = false;
      break;
    }
    Coeff qc = r.leading_coeff() / bc;
    Series m = Series::monomial(qc, qe);
    q = q + m;
    r = r - m * b;
    if (++steps > kMaxMaterializeSteps)
      throw InsufficientPrecision("quotient not materializable below " + cut->str());
  }
  if (!(exact_stop && a.is_exact() && b.is_exact())) q.set_cut(cut);
  return q;
}

Series hensel_sqrt(const Series& u, const Value& target) {
  if (u.is_exact_zero()) throw ZeroParameter("square root of zero series");
  if (u.terms().empty()) throw InsufficientPrecision("no certain leading term");
  ExpKey e = u.leading_exp();
  ExpKey half(e.size());
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] % 2 != 0)
      throw OddExponent("leading exponent " + exp_to_value(e).str() + " not in 2Z^n");
    half[i] = e[i] / 2;
  }
  Coeff c = u.leading_coeff();
  auto rc = c.sqrt();
  if (!rc) throw NonSquareResidue("leading coefficient " + c.str() + " is not a square");

  // Normalize to 1 + h with v(h) > 0 and solve s^2 = 1 + h term by term.
  ExpKey nege(e.size());
  for (size_t i = 0; i < e.size(); ++i) nege[i] = -e[i];
  Series unit = u.shifted(nege).scaled(c.inverse());

  // `target` bounds the final result; the unit-part recursion runs below the
  // correspondingly shifted cut.
  std::optional<Value> cut = target - exp_to_value(half);
  if (u.cut()) {
    Value justified = *u.cut() - exp_to_value(e);
    if (justified <= *cut) cut = justified;
  }

  Series s = Series::one(u.rank(), u.field());
  Series r = unit - s * s;
  Coeff two = Coeff(Rat(2), u.field());
  size_t steps = 0;
  bool exact_stop = true;
  while (!r.terms().empty()) {
    ExpKey re = r.leading_exp();
    if (!exp_below(re, *cut)) {
      exact_stop = false;
      break;
    }
    Series d = Series::monomial(r.leading_coeff() / two, re);
    s = s + d;
    r = r - (s * d + d * s - d * d);  // (s+d)^2 - s^2 with updated s
    if (++steps > kMaxMaterializeSteps)
      throw InsufficientPrecision("square root not materializable below " + cut->str());
  }
  if (!(exact_stop && u.is_exact())) s.set_cut(cut);
  return s.shifted(half).scaled(*rc);
}

std::optional<Series> exact_poly_sqrt(const Series& u) {
  if (!u.is_exact() || u.terms().empty()) return std::nullopt;
  ExpKey e = u.leading_exp();
  for (long x : e)
    if (x % 2 != 0) return std::nullopt;
  auto rc = u.leading_coeff().sqrt();
  if (!rc) return std::nullopt;

  ExpKey nege(e.size()), half(e.size());
  for (size_t i = 0; i < e.size(); ++i) {
    nege[i] = -e[i];
    half[i] = e[i] / 2;
  }
  Series unit = u.shifted(nege).scaled(u.leading_coeff().inverse());
  Series s = Series::one(u.rank(), u.field());
  Series r = unit - s * s;
  Coeff two = Coeff(Rat(2), u.field());
  // A polynomial square root stabilizes quickly; bail out well past any
  // plausible support size.
  size_t bound = 16 + 4 * u.term_count() * u.term_count();
  size_t steps = 0;
  while (!r.terms().empty()) {
    if (++steps > bound) return std::nullopt;
    Series d = Series::monomial(r.leading_coeff() / two, r.leading_exp());
    s = s + d;
    r = r - (s * d + d * s - d * d);
  }
  return s.shifted(half).scaled(*rc);
}

namespace {

struct Tok {
  enum Kind { Num, Ident, Caret, Star, Plus, Minus, End } kind;
  std::string text;
};

std::vector<Tok> lex(const std::string& s) {
  std::vector<Tok> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/'))
        ++j;
      out.push_back({Tok::Num, s.substr(i, j - i)});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i)});
      i = j;
      continue;
    }
    switch (c) {
      case '^': out.push_back({Tok::Caret, "^"}); break;
      case '*': out.push_back({Tok::Star, "*"}); break;
      case '+': out.push_back({Tok::Plus, "+"}); break;
      case '-': out.push_back({Tok::Minus, "-"}); break;
      default: throw ParseError(std::string("unexpected character '") + c + "' in series literal");
    }
    ++i;
  }
  out.push_back({Tok::End, ""});
  return out;
}

}  // namespace

Series parse_series(const std::string& text, int rank,
                    const std::vector<std::string>& vars, CoeffField field) {
  auto toks = lex(text);
  size_t pos = 0;
  Series result = Series::zero(rank, field);

  auto var_index = [&](const std::string& name) -> int {
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return static_cast<int>(i);
    return -1;
  };

  bool first = true;
  while (toks[pos].kind != Tok::End) {
    int sign = 1;
    while (toks[pos].kind == Tok::Plus || toks[pos].kind == Tok::Minus) {
      if (toks[pos].kind == Tok::Minus) sign = -sign;
      ++pos;
    }
    if (!first && sign == 1 && toks[pos].kind == Tok::End)
      throw ParseError("dangling sign in series literal");
    first = false;

    Rat coeff(sign);
    ExpKey e(rank, 0);
    bool any_factor = false;
    while (true) {
      if (toks[pos].kind == Tok::Num) {
        coeff *= parse_rational(toks[pos].text);
        ++pos;
        any_factor = true;
      } else if (toks[pos].kind == Tok::Ident) {
        int vi = var_index(toks[pos].text);
        if (vi < 0)
          throw ParseError("unknown variable '" + toks[pos].text + "' in series literal");
        ++pos;
        long exp = 1;
        if (toks[pos].kind == Tok::Caret) {
          ++pos;
          long es = 1;
          if (toks[pos].kind == Tok::Minus) {
            es = -1;
            ++pos;
          }
          if (toks[pos].kind != Tok::Num)
            throw ParseError("expected integer exponent");
          exp = es * std::stol(toks[pos].text);
          ++pos;
        }
        e[vi] += exp;
        any_factor = true;
      } else {
        break;
      }
      if (toks[pos].kind == Tok::Star) {
        ++pos;
        continue;
      }
      // Juxtaposition of factors is allowed.
      if (toks[pos].kind == Tok::Ident || toks[pos].kind == Tok::Num) continue;
      break;
    }
    if (!any_factor) throw ParseError("empty term in series literal");
    result = result + Series::monomial(Coeff(coeff, field), e);
  }
  return result;
}

}  // namespace gauges
