#pragma once

// Sparse multivariate polynomials with arbitrary-precision integer
// coefficients, kept sorted by degrevlex (variable 0 is the largest).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sstkit/integer.hpp"

namespace sstkit {

using Var = std::uint32_t;

class Monomial {
public:
  using Factor = std::pair<Var, std::uint32_t>;

  Monomial() = default;

  /// Factors in any order; zero exponents are dropped, repeats are merged.
  explicit Monomial(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end());
    for (auto [v, e] : factors) {
      if (e == 0) continue;
      if (!f_.empty() && f_.back().first == v)
        f_.back().second += e;
      else
        f_.emplace_back(v, e);
      degree_ += e;
    }
  }

  static Monomial variable(Var v, std::uint32_t e = 1) { return Monomial({{v, e}}); }

  const std::vector<Factor>& factors() const noexcept { return f_; }
  std::uint32_t degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return f_.empty(); }

  std::uint32_t exponent(Var v) const {
    auto it = std::lower_bound(f_.begin(), f_.end(), Factor{v, 0});
    return it != f_.end() && it->first == v ? it->second : 0;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.f_.reserve(a.f_.size() + b.f_.size());
    auto i = a.f_.begin(), j = b.f_.begin();
    while (i != a.f_.end() || j != b.f_.end()) {
      if (j == b.f_.end() || (i != a.f_.end() && i->first < j->first))
        r.f_.push_back(*i++);
      else if (i == a.f_.end() || j->first < i->first)
        r.f_.push_back(*j++);
      else {
        r.f_.emplace_back(i->first, i->second + j->second);
        ++i, ++j;
      }
    }
    r.degree_ = a.degree_ + b.degree_;
    return r;
  }

  bool divides(const Monomial& b) const {
    if (degree_ > b.degree_) return false;
    auto j = b.f_.begin();
    for (auto [v, e] : f_) {
      while (j != b.f_.end() && j->first < v) ++j;
      if (j == b.f_.end() || j->first != v || j->second < e) return false;
    }
    return true;
  }

  /// b / a, assuming a divides b.
  friend Monomial quotient(const Monomial& b, const Monomial& a) {
    Monomial r;
    auto i = a.f_.begin();
    for (auto [v, e] : b.f_) {
      std::uint32_t d = e;
      if (i != a.f_.end() && i->first == v) d -= (i++)->second;
      if (d) r.f_.emplace_back(v, d);
    }
    r.degree_ = b.degree_ - a.degree_;
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    auto i = a.f_.begin(), j = b.f_.begin();
    while (i != a.f_.end() || j != b.f_.end()) {
      if (j == b.f_.end() || (i != a.f_.end() && i->first < j->first))
        r.f_.push_back(*i++);
      else if (i == a.f_.end() || j->first < i->first)
        r.f_.push_back(*j++);
      else {
        r.f_.emplace_back(i->first, std::max(i->second, j->second));
        ++i, ++j;
      }
    }
    for (auto [v, e] : r.f_) r.degree_ += e;
    return r;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    auto i = a.f_.begin(), j = b.f_.begin();
    while (i != a.f_.end() && j != b.f_.end()) {
      if (i->first == j->first) return false;
      if (i->first < j->first)
        ++i;
      else
        ++j;
    }
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }

  std::string str(const std::function<std::string(Var)>& name) const {
    if (f_.empty()) return "1";
    std::string s;
    for (auto [v, e] : f_) {
      if (!s.empty()) s += '*';
      s += name(v);
      if (e > 1) s += '^' + std::to_string(e);
    }
    return s;
  }

private:
  std::vector<Factor> f_;
  std::uint32_t degree_ = 0;
};

/// Degree first; ties broken by the smallest variable, where the larger
/// exponent makes the monomial smaller. Returns <0, 0, >0.
inline int compare_grevlex(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto i = fa.size(), j = fb.size();
  while (i > 0 && j > 0) {
    auto [va, ea] = fa[i - 1];
    auto [vb, eb] = fb[j - 1];
    if (va == vb) {
      if (ea != eb) return ea < eb ? 1 : -1;
      --i, --j;
    } else {
      return va > vb ? -1 : 1;
    }
  }
  if (i > 0) return -1;
  if (j > 0) return 1;
  return 0;
}

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare_grevlex(a, b) > 0; }
};

struct Term {
  Monomial mono;
  Integer coef;
};

class MultiPoly {
public:
  MultiPoly() = default;
  MultiPoly(long c) {  // NOLINT: implicit constant polynomials read naturally in matrix code
    if (c != 0) terms_.push_back({Monomial(), Integer(c)});
  }
  explicit MultiPoly(const Integer& c) {
    if (c != 0) terms_.push_back({Monomial(), c});
  }

  static MultiPoly variable(Var v) {
    MultiPoly p;
    p.terms_.push_back({Monomial::variable(v), Integer(1)});
    return p;
  }

  /// Terms in any order; like terms are combined, zeros dropped.
  static MultiPoly from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return compare_grevlex(a.mono, b.mono) > 0; });
    MultiPoly p;
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
        p.terms_.back().coef += t.coef;
      else {
        if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
    return p;
  }

  /// Takes terms already sorted strictly decreasing with nonzero coefficients.
  static MultiPoly from_sorted(std::vector<Term> terms) {
    MultiPoly p;
    p.terms_ = std::move(terms);
    return p;
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Integer& leading_coefficient() const { return terms_.front().coef; }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return combine(a, b, false); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return combine(a, b, true); }
  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& b) { return *this = *this + b; }
  MultiPoly& operator-=(const MultiPoly& b) { return *this = *this - b; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coef);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coef);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) out.push_back({s.mono * t.mono, s.coef * t.coef});
    return from_terms(std::move(out));
  }
  MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }

  /// Multiplication by c*m keeps the order, so no re-sort is needed.
  MultiPoly mul_term(const Monomial& m, const Integer& c) const {
    if (c == 0) return {};
    MultiPoly r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
    return r;
  }

  MultiPoly scaled(const Integer& c) const { return mul_term(Monomial(), c); }

  Integer content() const {
    Integer g = 0;
    for (const auto& t : terms_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  /// Divides out the content and makes the leading coefficient positive.
  MultiPoly& make_primitive() {
    if (terms_.empty()) return *this;
    Integer g = content();
    if (terms_.front().coef < 0) g = -g;
    if (g != 1)
      for (auto& t : terms_) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), g.get_mpz_t());
    return *this;
  }

  MultiPoly primitive() const {
    MultiPoly r = *this;
    return r.make_primitive();
  }

  template <class Point>
  Integer evaluate(const Point& point) const {
    Integer sum = 0, prod, pw;
    for (const auto& t : terms_) {
      prod = t.coef;
      for (auto [v, e] : t.mono.factors()) {
        mpz_pow_ui(pw.get_mpz_t(), Integer(point(v)).get_mpz_t(), e);
        prod *= pw;
      }
      sum += prod;
    }
    return sum;
  }

  /// Ring homomorphism sending variable v to image(v).
  template <class Image>
  MultiPoly substitute(const Image& image) const {
    std::map<std::pair<Var, std::uint32_t>, MultiPoly> powers;
    auto power_rec = [&](auto&& self, Var v, std::uint32_t e) -> const MultiPoly& {
      auto key = std::make_pair(v, e);
      auto it = powers.find(key);
      if (it != powers.end()) return it->second;
      MultiPoly r = e == 1 ? MultiPoly(image(v)) : self(self, v, e / 2) * self(self, v, e - e / 2);
      return powers.emplace(key, std::move(r)).first->second;
    };
    auto power = [&](Var v, std::uint32_t e) -> const MultiPoly& { return power_rec(power_rec, v, e); };
    MultiPoly sum;
    std::vector<Term> acc;
    for (const auto& t : terms_) {
      MultiPoly prod(t.coef);
      for (auto [v, e] : t.mono.factors()) {
        prod = prod * power(v, e);
        if (prod.is_zero()) break;
      }
      for (auto& term : prod.terms_) acc.push_back(std::move(term));
    }
    return from_terms(std::move(acc));
  }

  std::vector<Var> variables() const {
    std::vector<Var> vs;
    for (const auto& t : terms_)
      for (auto [v, e] : t.mono.factors()) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
  }

  std::string str(const std::function<std::string(Var)>& name = default_name) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      Integer c = t.coef;
      if (i) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      c = abs(c);
      if (t.mono.is_one())
        s += c.get_str();
      else {
        if (c != 1) s += c.get_str() + "*";
        s += t.mono.str(name);
      }
    }
    return s;
  }

  static std::string default_name(Var v) { return "x" + std::to_string(v); }

private:
  static MultiPoly combine(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    MultiPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      int c = i == a.terms_.end() ? -1 : j == b.terms_.end() ? 1 : compare_grevlex(i->mono, j->mono);
      if (c > 0)
        r.terms_.push_back(*i++);
      else if (c < 0) {
        r.terms_.push_back({j->mono, subtract ? Integer(-j->coef) : j->coef});
        ++j;
      } else {
        Integer s = subtract ? Integer(i->coef - j->coef) : Integer(i->coef + j->coef);
        if (s != 0) r.terms_.push_back({i->mono, std::move(s)});
        ++i, ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

} // namespace sstkit
