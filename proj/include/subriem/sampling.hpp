#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "subriem/qpoly.hpp"
#include "subriem/rational.hpp"
#include "subriem/vfield.hpp"

namespace subriem {

/// Inverse stereographic image of u in Q^(n-1): ((|u|^2 - 1), 2u) / (|u|^2 + 1).
inline std::vector<Rational> stereographic_point(const std::vector<Rational> &u) {
  Rational norm2(0);
  for (const auto &x : u) norm2 += x * x;
  const Rational denom = norm2 + Rational(1);
  std::vector<Rational> p;
  p.reserve(u.size() + 1);
  p.push_back((norm2 - Rational(1)) / denom);
  for (const auto &x : u) p.push_back(Rational(2) * x / denom);
  return p;
}

/// Deterministic generator of exact rational test data on the unit sphere.
class SphereSampler {
public:
  explicit SphereSampler(std::uint64_t seed = 0x5eed) : rng_(seed) {}

  Rational small_rational(long max_num = 9, long max_den = 9) {
    std::uniform_int_distribution<long> num(-max_num, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return Rational(num(rng_), den(rng_));
  }

  /// Random exact sphere point; coordinates are shuffled so no axis is favoured.
  std::vector<Rational> point(std::size_t dim) {
    std::vector<Rational> u;
    for (std::size_t i = 0; i + 1 < dim; ++i) u.push_back(small_rational());
    auto p = stereographic_point(u);
    std::shuffle(p.begin(), p.end(), rng_);
    return p;
  }

  /// Random sphere polynomial with up to `terms` terms of total degree <= max_degree.
  QPoly qpoly(std::size_t dim, unsigned max_degree = 2, std::size_t terms = 3) {
    std::uniform_int_distribution<std::size_t> var(0, dim - 1);
    std::uniform_int_distribution<unsigned> deg(0, max_degree);
    std::vector<Term> out;
    for (std::size_t t = 0; t < terms; ++t) {
      Exponents e(dim, 0);
      const unsigned d = deg(rng_);
      for (unsigned k = 0; k < d; ++k) ++e[var(rng_)];
      out.push_back({std::move(e), small_rational(5, 3)});
    }
    return QPoly::reduce(Poly::from_terms(dim, std::move(out)));
  }

  /// Random ambient field (not necessarily tangent).
  VectorField field(std::size_t dim, unsigned max_degree = 2, std::size_t terms = 2) {
    std::vector<QPoly> c;
    for (std::size_t i = 0; i < dim; ++i) c.push_back(qpoly(dim, max_degree, terms));
    return VectorField(std::move(c));
  }

  /// Random tangent field: Y - <Y,y> y for a random ambient Y.
  VectorField tangent_field(std::size_t dim, unsigned max_degree = 1, std::size_t terms = 2) {
    const VectorField y = field(dim, max_degree, terms);
    const VectorField r = VectorField::radial(dim);
    return y - euclidean_dot(y, r) * r;
  }

  /// Random combination sum_i f_i X_i of the given fields.
  VectorField combination(const std::vector<VectorField> &basis, unsigned max_degree = 1, std::size_t terms = 2) {
    VectorField out(basis.front().dim());
    for (const auto &b : basis) out += qpoly(b.dim(), max_degree, terms) * b;
    return out;
  }

  std::mt19937_64 &engine() noexcept { return rng_; }

private:
  std::mt19937_64 rng_;
};

} // namespace subriem
