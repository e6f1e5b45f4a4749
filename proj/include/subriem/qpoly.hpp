#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subriem/errors.hpp"
#include "subriem/poly.hpp"
#include "subriem/rational.hpp"

namespace subriem {

/// Polynomial function on the unit sphere S^(n-1) in R^n.
///
/// The stored representative is the normal form modulo sum(y_i^2) - 1 in which
/// no monomial is divisible by y0^2; y0^2 is rewritten as 1 - y1^2 - ... - y(n-1)^2.
/// Two QPolys compare equal iff they agree as functions on the sphere.
class QPoly {
public:
  QPoly() = default;
  explicit QPoly(std::size_t dim) : inner_(checked_dim(dim)) {}

  static QPoly reduce(const Poly &p) { return QPoly(normal_form(p), 0); }
  static QPoly constant(std::size_t dim, const Rational &c) { return QPoly(Poly::constant(checked_dim(dim), c), 0); }
  static QPoly variable(std::size_t dim, std::size_t index) { return reduce(Poly::variable(checked_dim(dim), index)); }

  std::size_t dim() const noexcept { return inner_.dim(); }
  const Poly &poly() const noexcept { return inner_; }
  bool is_zero() const noexcept { return inner_.is_zero(); }
  bool is_constant() const { return inner_.is_constant(); }
  Rational constant_term() const { return inner_.constant_term(); }

  QPoly operator-() const { return QPoly(-inner_, 0); }
  friend QPoly operator+(const QPoly &a, const QPoly &b) { return QPoly(a.inner_ + b.inner_, 0); }
  friend QPoly operator-(const QPoly &a, const QPoly &b) { return QPoly(a.inner_ - b.inner_, 0); }
  friend QPoly operator*(const QPoly &a, const QPoly &b) { return reduce(a.inner_ * b.inner_); }
  friend QPoly operator*(const Rational &c, const QPoly &p) { return QPoly(c * p.inner_, 0); }
  QPoly &operator+=(const QPoly &o) { inner_ += o.inner_; return *this; }
  QPoly &operator-=(const QPoly &o) { inner_ -= o.inner_; return *this; }
  QPoly &operator*=(const QPoly &o) { return *this = *this * o; }

  /// Derivative of the normal-form representative as an ambient polynomial, reduced.
  QPoly partial(std::size_t index) const { return reduce(inner_.partial(index)); }

  /// Exact value at a point that lies exactly on the unit sphere.
  Rational eval(std::span<const Rational> point) const {
    if (point.size() != dim()) throw DimensionMismatch(point.size(), dim());
    if (!on_sphere(point)) throw NotOnSphere();
    return inner_.eval(point);
  }

  static bool on_sphere(std::span<const Rational> point) {
    Rational s(0);
    for (const auto &x : point) s += x * x;
    return s.is_one();
  }

  /// Splits the normal form as a + y0*b with a, b free of y0.
  std::pair<Poly, Poly> split() const {
    const std::size_t n = dim();
    std::vector<Term> a, b;
    for (const auto &t : inner_.terms()) {
      if (t.exps[0] == 0) {
        a.push_back(t);
      } else {
        Term u = t;
        u.exps[0] = 0;
        b.push_back(std::move(u));
      }
    }
    return {Poly::from_terms(n, std::move(a)), Poly::from_terms(n, std::move(b))};
  }

  std::string to_string() const { return inner_.to_string(); }

  friend bool operator==(const QPoly &a, const QPoly &b) { return a.inner_ == b.inner_; }

private:
  QPoly(Poly p, int) : inner_(std::move(p)) {}

  static std::size_t checked_dim(std::size_t dim) {
    if (dim < 2) throw Error("sphere polynomials need ambient dimension >= 2");
    return dim;
  }

  static Poly normal_form(const Poly &p) {
    const std::size_t n = checked_dim(p.dim());
    bool reduced = true;
    for (const auto &t : p.terms())
      if (t.exps[0] >= 2) { reduced = false; break; }
    if (reduced) return p;

    // powers[q] = (1 - y1^2 - ... - y(n-1)^2)^q
    std::vector<Poly> powers{Poly::constant(n, Rational(1))};
    Poly complement = Poly::constant(n, Rational(1));
    for (std::size_t i = 1; i < n; ++i) {
      Exponents e(n, 0);
      e[i] = 2;
      complement -= Poly::monomial(n, std::move(e), Rational(1));
    }

    std::vector<Term> out;
    for (const auto &t : p.terms()) {
      if (t.exps[0] < 2) {
        out.push_back(t);
        continue;
      }
      const std::size_t q = t.exps[0] / 2;
      while (powers.size() <= q) powers.push_back(powers.back() * complement);
      Exponents rest = t.exps;
      rest[0] %= 2;
      Poly expanded = powers[q].times_term(rest, t.coef);
      for (const auto &u : expanded.terms()) out.push_back(u);
    }
    return Poly::from_terms(n, std::move(out));
  }

  Poly inner_;
};

/// Exact division in the quotient ring Q[y]/(|y|^2 - 1).
///
/// Writing q = a + y0*b with c = 1 - y1^2 - ..., the conjugate a - y0*b gives
/// q * conj(q) = a^2 - c*b^2 in the y0-free subring, so p/q reduces to two
/// exact divisions there. Returns std::nullopt if q does not divide p.
inline std::optional<QPoly> divide_exact(const QPoly &p, const QPoly &q) {
  if (p.dim() != q.dim()) throw DimensionMismatch(p.dim(), q.dim());
  if (q.is_zero()) throw Error("division by zero on the sphere");
  const std::size_t n = p.dim();
  if (q.is_constant()) return (Rational(1) / q.constant_term()) * p;
  auto [a, b] = q.split();
  Poly complement = Poly::constant(n, Rational(1));
  for (std::size_t i = 1; i < n; ++i) {
    Exponents e(n, 0);
    e[i] = 2;
    complement -= Poly::monomial(n, std::move(e), Rational(1));
  }
  const Poly norm = a * a - complement * b * b;
  const QPoly conj = QPoly::reduce(a - Poly::variable(n, 0) * b);
  auto [u, w] = (p * conj).split();
  auto u_q = divide_exact(u, norm);
  if (!u_q) return std::nullopt;
  auto w_q = divide_exact(w, norm);
  if (!w_q) return std::nullopt;
  return QPoly::reduce(*u_q + Poly::variable(n, 0) * *w_q);
}

} // namespace subriem
