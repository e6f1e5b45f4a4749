// Test-only helpers: expression shorthands, a random expression generator and
// an independent bracket oracle for linear fields that never differentiates.
#pragma once

#include <subriem/subriem.hpp>

#include <random>
#include <string>
#include <vector>

namespace subriem {

// Readable failure messages in assertions.
inline void PrintTo(const Poly &p, std::ostream *os) { *os << p.to_string(); }
inline void PrintTo(const QPoly &p, std::ostream *os) { *os << p.to_string(); }
inline void PrintTo(const VectorField &x, std::ostream *os) { *os << x.to_string(); }
inline void PrintTo(const OneForm &w, std::ostream *os) { *os << w.to_string(); }

} // namespace subriem

namespace subriem::test {

inline Poly P(const std::string &s, std::size_t n) { return parse_expr(s, n); }
inline QPoly Q(const std::string &s, std::size_t n) { return QPoly::reduce(parse_expr(s, n)); }

inline VectorField F(std::size_t n, const std::vector<std::string> &comps) {
  std::vector<Poly> p;
  for (const auto &c : comps) p.push_back(parse_expr(c, n));
  return VectorField::from_polys(p);
}

using Matrix = std::vector<std::vector<Rational>>;

/// Coefficient matrix A of a linear field X = A y, read from the term lists.
/// Returns false when some component is not homogeneous linear.
inline bool linear_matrix(const VectorField &x, Matrix &a) {
  const std::size_t n = x.dim();
  a.assign(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (const auto &t : x[i].poly().terms()) {
      std::size_t deg = 0, var = 0;
      for (std::size_t j = 0; j < n; ++j) {
        deg += t.exps[j];
        if (t.exps[j]) var = j;
      }
      if (deg != 1) return false;
      a[i][var] += t.coef;
    }
  return true;
}

inline Matrix multiply(const Matrix &a, const Matrix &b) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

inline VectorField linear_field(const Matrix &a) {
  const std::size_t n = a.size();
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < n; ++i) {
    Poly p(n);
    for (std::size_t j = 0; j < n; ++j)
      if (!a[i][j].is_zero()) p += a[i][j] * Poly::variable(n, j);
    comps.push_back(p);
  }
  return VectorField::from_polys(comps);
}

/// [Ay, By] = (BA - AB) y.
inline VectorField commutator_oracle(const VectorField &x, const VectorField &y) {
  Matrix a, b;
  if (!linear_matrix(x, a) || !linear_matrix(y, b)) throw Error("oracle needs linear fields");
  Matrix ba = multiply(b, a), ab = multiply(a, b);
  for (std::size_t i = 0; i < ba.size(); ++i)
    for (std::size_t j = 0; j < ba.size(); ++j) ba[i][j] -= ab[i][j];
  return linear_field(ba);
}

inline Rational R(long p, long q = 1) { return Rational(p, q); }

/// Random well-formed expression text exercising every grammar production.
class ExprGen {
public:
  ExprGen(std::uint64_t seed, std::size_t dim) : rng_(seed), dim_(dim) {}

  std::string expr(int depth) {
    std::string s = term(depth);
    for (int k = pick(0, 2); k > 0; --k) s += (pick(0, 1) ? " + " : " - ") + term(depth);
    return s;
  }

private:
  std::string term(int depth) {
    std::string s = unary(depth);
    for (int k = pick(0, 2); k > 0; --k) s += (pick(0, 1) ? "*" : " * ") + unary(depth);
    return s;
  }
  std::string unary(int depth) { return (pick(0, 4) == 0 ? "-" : "") + power(depth); }
  std::string power(int depth) {
    std::string s = primary(depth);
    if (pick(0, 3) == 0) s += "^" + std::to_string(pick(0, 3));
    return s;
  }
  std::string primary(int depth) {
    const int c = depth > 0 ? pick(0, 4) : pick(0, 3);
    if (c <= 1) return "y" + std::to_string(pick(0, static_cast<int>(dim_) - 1));
    if (c == 2) return std::to_string(pick(0, 12));
    if (c == 3) return std::to_string(pick(1, 9)) + "/" + std::to_string(pick(1, 9));
    return "(" + expr(depth - 1) + ")";
  }
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::mt19937_64 rng_;
  std::size_t dim_;
};

} // namespace subriem::test
