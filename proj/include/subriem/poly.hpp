#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "subriem/errors.hpp"
#include "subriem/rational.hpp"

namespace subriem {

/// Exponent vector of a monomial y0^e0 * ... * y(n-1)^e(n-1).
using Exponents = std::vector<std::uint32_t>;

struct Term {
  Exponents exps;
  Rational coef;

  friend bool operator==(const Term &, const Term &) = default;
};

/// Multivariate polynomial with exact rational coefficients over y0..y(n-1).
///
/// Terms are kept sorted by ascending lexicographic exponent order with no
/// zero coefficients, so structural equality is polynomial equality and the
/// lex-leading term is `terms().back()`.
class Poly {
public:
  Poly() = default;
  explicit Poly(std::size_t dim) : dim_(dim) {}

  static Poly constant(std::size_t dim, const Rational &c) {
    Poly p(dim);
    if (!c.is_zero()) p.terms_.push_back({Exponents(dim, 0), c});
    return p;
  }

  static Poly variable(std::size_t dim, std::size_t index) {
    if (index >= dim) throw IndexOutOfRange(index, dim);
    Exponents e(dim, 0);
    e[index] = 1;
    return monomial(dim, std::move(e), Rational(1));
  }

  static Poly monomial(std::size_t dim, Exponents exps, const Rational &c) {
    if (exps.size() != dim) throw DimensionMismatch(exps.size(), dim);
    Poly p(dim);
    if (!c.is_zero()) p.terms_.push_back({std::move(exps), c});
    return p;
  }

  /// Builds a polynomial from arbitrary (unsorted, possibly repeated) terms.
  static Poly from_terms(std::size_t dim, std::vector<Term> terms) {
    for (const auto &t : terms)
      if (t.exps.size() != dim) throw DimensionMismatch(t.exps.size(), dim);
    Poly p(dim);
    p.terms_ = combine(std::move(terms));
    return p;
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Term> &terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && is_unit_monomial(terms_.front().exps));
  }

  Rational constant_term() const {
    if (!terms_.empty() && is_unit_monomial(terms_.front().exps)) return terms_.front().coef;
    return Rational(0);
  }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto &t : terms_) d = std::max(d, degree_of(t.exps));
    return d;
  }

  std::uint32_t degree_in(std::size_t index) const {
    if (index >= dim_) throw IndexOutOfRange(index, dim_);
    std::uint32_t d = 0;
    for (const auto &t : terms_) d = std::max(d, t.exps[index]);
    return d;
  }

  const Term &leading_term() const { return terms_.back(); }

  Poly operator-() const {
    Poly r = *this;
    for (auto &t : r.terms_) t.coef = -t.coef;
    return r;
  }

  Poly &operator+=(const Poly &o) { return *this = merge(*this, o, false); }
  Poly &operator-=(const Poly &o) { return *this = merge(*this, o, true); }
  friend Poly operator+(const Poly &a, const Poly &b) { return merge(a, b, false); }
  friend Poly operator-(const Poly &a, const Poly &b) { return merge(a, b, true); }

  friend Poly operator*(const Poly &a, const Poly &b) {
    check_dims(a, b);
    Poly r(a.dim_);
    if (a.is_zero() || b.is_zero()) return r;
    std::vector<Term> products;
    products.reserve(a.terms_.size() * b.terms_.size());
    for (const auto &s : a.terms_)
      for (const auto &t : b.terms_) products.push_back({add_exps(s.exps, t.exps), s.coef * t.coef});
    r.terms_ = combine(std::move(products));
    return r;
  }
  Poly &operator*=(const Poly &o) { return *this = *this * o; }

  friend Poly operator*(const Rational &c, const Poly &p) {
    Poly r(p.dim_);
    if (c.is_zero()) return r;
    r.terms_ = p.terms_;
    for (auto &t : r.terms_) t.coef *= c;
    return r;
  }

  /// Multiplies by a single monomial; preserves lex order so no re-sort.
  Poly times_term(const Exponents &exps, const Rational &c) const {
    Poly r(dim_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const auto &t : terms_) r.terms_.push_back({add_exps(t.exps, exps), t.coef * c});
    return r;
  }

  Poly pow(unsigned k) const {
    Poly result = constant(dim_, Rational(1));
    Poly base = *this;
    while (k > 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k > 0) base *= base;
    }
    return result;
  }

  /// Ambient partial derivative with respect to y_index.
  Poly partial(std::size_t index) const {
    if (index >= dim_) throw IndexOutOfRange(index, dim_);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto &t : terms_) {
      if (t.exps[index] == 0) continue;
      Term d{t.exps, t.coef * Rational(static_cast<long>(t.exps[index]))};
      --d.exps[index];
      out.push_back(std::move(d));
    }
    Poly r(dim_);
    r.terms_ = combine(std::move(out));
    return r;
  }

  Rational eval(std::span<const Rational> point) const {
    if (point.size() != dim_) throw DimensionMismatch(point.size(), dim_);
    Rational sum(0);
    for (const auto &t : terms_) {
      Rational v = t.coef;
      for (std::size_t i = 0; i < dim_; ++i)
        for (std::uint32_t k = 0; k < t.exps[i]; ++k) v *= point[i];
      sum += v;
    }
    return sum;
  }

  friend bool operator==(const Poly &a, const Poly &b) { return a.dim_ == b.dim_ && a.terms_ == b.terms_; }

  /// Human-readable form, graded by descending total degree, e.g. "1/2*y0^2 - y1*y3".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const Term *> order;
    order.reserve(terms_.size());
    for (const auto &t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [](const Term *a, const Term *b) {
      const auto da = degree_of(a->exps), db = degree_of(b->exps);
      if (da != db) return da > db;
      return a->exps > b->exps;
    });
    std::ostringstream os;
    bool first = true;
    for (const Term *t : order) {
      Rational c = t->coef;
      if (first) {
        if (c.sign() < 0) os << '-';
      } else {
        os << (c.sign() < 0 ? " - " : " + ");
      }
      c = abs(c);
      const bool unit = is_unit_monomial(t->exps);
      bool need_star = false;
      if (!c.is_one() || unit) {
        os << c;
        need_star = true;
      }
      for (std::size_t i = 0; i < t->exps.size(); ++i) {
        if (t->exps[i] == 0) continue;
        if (need_star) os << '*';
        os << 'y' << i;
        if (t->exps[i] > 1) os << '^' << t->exps[i];
        need_star = true;
      }
      first = false;
    }
    return os.str();
  }

  static std::uint32_t degree_of(const Exponents &e) {
    std::uint32_t d = 0;
    for (auto x : e) d += x;
    return d;
  }

private:
  static bool is_unit_monomial(const Exponents &e) {
    return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
  }

  static Exponents add_exps(const Exponents &a, const Exponents &b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
  }

  static void check_dims(const Poly &a, const Poly &b) {
    if (a.dim_ != b.dim_) throw DimensionMismatch(a.dim_, b.dim_);
  }

  static std::vector<Term> combine(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return a.exps < b.exps; });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto &t : terms) {
      if (!out.empty() && out.back().exps == t.exps) {
        out.back().coef += t.coef;
      } else {
        if (!out.empty() && out.back().coef.is_zero()) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().coef.is_zero()) out.pop_back();
    return out;
  }

  static Poly merge(const Poly &a, const Poly &b, bool subtract) {
    check_dims(a, b);
    Poly r(a.dim_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->exps < j->exps)) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->exps < i->exps) {
        r.terms_.push_back({j->exps, subtract ? -j->coef : j->coef});
        ++j;
      } else {
        Rational c = subtract ? i->coef - j->coef : i->coef + j->coef;
        if (!c.is_zero()) r.terms_.push_back({i->exps, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::size_t dim_ = 0;
  std::vector<Term> terms_;
};

/// Exact multivariate division under lex order. Returns the quotient when
/// `divisor` divides `dividend` exactly, std::nullopt otherwise.
inline std::optional<Poly> divide_exact(const Poly &dividend, const Poly &divisor) {
  if (dividend.dim() != divisor.dim()) throw DimensionMismatch(dividend.dim(), divisor.dim());
  if (divisor.is_zero()) throw Error("division by zero polynomial");
  const std::size_t n = dividend.dim();
  const Term &lead = divisor.leading_term();
  std::vector<Term> quotient;
  Poly rest = dividend;
  while (!rest.is_zero()) {
    const Term &top = rest.leading_term();
    Exponents e(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (top.exps[i] < lead.exps[i]) return std::nullopt;
      e[i] = top.exps[i] - lead.exps[i];
    }
    Rational c = top.coef / lead.coef;
    rest -= divisor.times_term(e, c);
    quotient.push_back({std::move(e), std::move(c)});
  }
  return Poly::from_terms(n, std::move(quotient));
}

} // namespace subriem
