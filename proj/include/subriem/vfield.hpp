#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "subriem/errors.hpp"
#include "subriem/qpoly.hpp"

namespace subriem {

/// Ambient vector field sum_i X^i d/dy_i with sphere-polynomial components.
class VectorField {
public:
  VectorField() = default;
  explicit VectorField(std::size_t dim) : comps_(dim, QPoly(dim)) {}
  explicit VectorField(std::vector<QPoly> comps) : comps_(std::move(comps)) {
    for (const auto &c : comps_)
      if (c.dim() != comps_.size()) throw DimensionMismatch(c.dim(), comps_.size());
  }
  static VectorField from_polys(const std::vector<Poly> &comps) {
    std::vector<QPoly> q;
    q.reserve(comps.size());
    for (const auto &p : comps) q.push_back(QPoly::reduce(p));
    return VectorField(std::move(q));
  }
  /// The radial (normal) field y.
  static VectorField radial(std::size_t dim) {
    std::vector<QPoly> q;
    for (std::size_t i = 0; i < dim; ++i) q.push_back(QPoly::variable(dim, i));
    return VectorField(std::move(q));
  }

  std::size_t dim() const noexcept { return comps_.size(); }
  const QPoly &operator[](std::size_t i) const { return comps_.at(i); }
  const std::vector<QPoly> &components() const noexcept { return comps_; }

  bool is_zero() const {
    for (const auto &c : comps_)
      if (!c.is_zero()) return false;
    return true;
  }

  VectorField operator-() const {
    VectorField r = *this;
    for (auto &c : r.comps_) c = -c;
    return r;
  }
  VectorField &operator+=(const VectorField &o) {
    check(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
  }
  VectorField &operator-=(const VectorField &o) {
    check(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    return *this;
  }
  friend VectorField operator+(VectorField a, const VectorField &b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField &b) { return a -= b; }
  friend VectorField operator*(const QPoly &f, const VectorField &x) {
    if (f.dim() != x.dim()) throw DimensionMismatch(f.dim(), x.dim());
    VectorField r = x;
    for (auto &c : r.comps_) c = f * c;
    return r;
  }
  friend VectorField operator*(const Rational &c, const VectorField &x) {
    VectorField r = x;
    for (auto &v : r.comps_) v = c * v;
    return r;
  }

  friend bool operator==(const VectorField &a, const VectorField &b) { return a.comps_ == b.comps_; }

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < comps_.size(); ++i) os << (i ? ", " : "") << comps_[i].to_string();
    os << ')';
    return os.str();
  }

private:
  void check(const VectorField &o) const {
    if (o.dim() != dim()) throw DimensionMismatch(dim(), o.dim());
  }

  std::vector<QPoly> comps_;
};

/// Directional derivative X.f = sum_i X^i * d f / d y_i.
inline QPoly direct_deriv(const VectorField &x, const QPoly &f) {
  if (x.dim() != f.dim()) throw DimensionMismatch(x.dim(), f.dim());
  Poly acc(f.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (x[i].is_zero()) continue;
    Poly d = f.poly().partial(i);
    if (!d.is_zero()) acc += x[i].poly() * d;
  }
  return QPoly::reduce(acc);
}

/// Lie bracket [X,Y] = X o Y - Y o X acting on functions.
inline VectorField lie_bracket(const VectorField &x, const VectorField &y) {
  if (x.dim() != y.dim()) throw DimensionMismatch(x.dim(), y.dim());
  std::vector<QPoly> out;
  out.reserve(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out.push_back(direct_deriv(x, y[i]) - direct_deriv(y, x[i]));
  return VectorField(std::move(out));
}

/// Euclidean inner product <X,Y> = sum_i X^i Y^i.
inline QPoly euclidean_dot(const VectorField &x, const VectorField &y) {
  if (x.dim() != y.dim()) throw DimensionMismatch(x.dim(), y.dim());
  Poly acc(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) acc += x[i].poly() * y[i].poly();
  return QPoly::reduce(acc);
}

inline bool is_tangent(const VectorField &x) { return euclidean_dot(x, VectorField::radial(x.dim())).is_zero(); }

/// 1-form sum_i w_i dy_i.
class OneForm {
public:
  OneForm() = default;
  explicit OneForm(std::size_t dim) : comps_(dim, QPoly(dim)) {}
  explicit OneForm(std::vector<QPoly> comps) : comps_(std::move(comps)) {}

  std::size_t dim() const noexcept { return comps_.size(); }
  const QPoly &operator[](std::size_t i) const { return comps_.at(i); }
  const std::vector<QPoly> &components() const noexcept { return comps_; }

  friend OneForm operator+(const OneForm &a, const OneForm &b) {
    if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
    OneForm r = a;
    for (std::size_t i = 0; i < a.dim(); ++i) r.comps_[i] += b.comps_[i];
    return r;
  }
  friend OneForm operator*(const QPoly &f, const OneForm &w) {
    OneForm r = w;
    for (auto &c : r.comps_) c = f * c;
    return r;
  }
  friend bool operator==(const OneForm &a, const OneForm &b) { return a.comps_ == b.comps_; }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      if (comps_[i].is_zero()) continue;
      os << (first ? "" : " + ") << '(' << comps_[i].to_string() << ")*dy" << i;
      first = false;
    }
    return first ? "0" : os.str();
  }

private:
  std::vector<QPoly> comps_;
};

/// Euclidean flat: components of X reinterpreted as a covector.
inline OneForm flat(const VectorField &x) { return OneForm(x.components()); }

inline QPoly pair(const OneForm &w, const VectorField &x) {
  if (w.dim() != x.dim()) throw DimensionMismatch(w.dim(), x.dim());
  Poly acc(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) acc += w[i].poly() * x[i].poly();
  return QPoly::reduce(acc);
}

/// Symmetric covariant 2-tensor as an n x n matrix of sphere polynomials.
class SymTensor2 {
public:
  SymTensor2() = default;
  explicit SymTensor2(std::size_t dim) : dim_(dim), entries_(dim * dim, QPoly(dim)) {}

  std::size_t dim() const noexcept { return dim_; }
  const QPoly &operator()(std::size_t i, std::size_t j) const { return entries_.at(i * dim_ + j); }

  /// Sets both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, const QPoly &value) {
    entries_.at(i * dim_ + j) = value;
    entries_.at(j * dim_ + i) = value;
  }
  void add(std::size_t i, std::size_t j, const QPoly &value) {
    entries_.at(i * dim_ + j) += value;
    if (i != j) entries_.at(j * dim_ + i) += value;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  friend bool operator==(const SymTensor2 &a, const SymTensor2 &b) { return a.entries_ == b.entries_; }

private:
  std::size_t dim_ = 0;
  std::vector<QPoly> entries_;
};

/// Symmetric product sum_a w_a (x) w_a.
inline SymTensor2 sum_of_squares(const std::vector<OneForm> &forms, std::size_t dim) {
  SymTensor2 g(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) {
      Poly acc(dim);
      for (const auto &w : forms) acc += w[i].poly() * w[j].poly();
      g.set(i, j, QPoly::reduce(acc));
    }
  return g;
}

inline QPoly tensor_apply(const SymTensor2 &g, const VectorField &x, const VectorField &y) {
  if (g.dim() != x.dim()) throw DimensionMismatch(g.dim(), x.dim());
  if (g.dim() != y.dim()) throw DimensionMismatch(g.dim(), y.dim());
  Poly acc(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < g.dim(); ++j) {
      if (y[j].is_zero() || g(i, j).is_zero()) continue;
      acc += g(i, j).poly() * x[i].poly() * y[j].poly();
    }
  }
  return QPoly::reduce(acc);
}

} // namespace subriem
