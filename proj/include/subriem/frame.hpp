#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subriem/errors.hpp"
#include "subriem/linalg.hpp"
#include "subriem/qpoly.hpp"
#include "subriem/sampling.hpp"
#include "subriem/vfield.hpp"

namespace subriem {

inline QMatrix component_matrix(std::span<const VectorField> fields) {
  QMatrix m;
  m.reserve(fields.size());
  for (const auto &f : fields) m.push_back(f.components());
  return m;
}

inline RationalMatrix evaluate(std::span<const VectorField> fields, std::span<const Rational> point) {
  RationalMatrix m;
  m.reserve(fields.size());
  for (const auto &f : fields) {
    std::vector<Rational> row;
    row.reserve(f.dim());
    for (const auto &c : f.components()) row.push_back(c.eval(point));
    m.push_back(std::move(row));
  }
  return m;
}

/// Rank of the k x n component matrix over the fraction field of the sphere's
/// coordinate ring, by fraction-free elimination with sphere-polynomial pivots.
inline std::size_t generic_rank(std::span<const VectorField> fields) {
  if (fields.empty()) return 0;
  return generic_rank(component_matrix(fields));
}

inline std::size_t point_rank(std::span<const VectorField> fields, std::span<const Rational> point) {
  if (fields.empty()) return 0;
  return rank(evaluate(fields, point));
}

struct PointwiseRankReport {
  std::size_t points_checked = 0;
  std::size_t expected_rank = 0;
  std::size_t min_rank = 0;
  std::size_t max_rank = 0;
  /// Sample points where the rank fell below expected_rank.
  std::vector<std::vector<Rational>> drops;

  bool ok() const noexcept { return drops.empty() && max_rank == expected_rank; }
};

/// Evaluates the rank at `count` exact rational sphere points.
inline PointwiseRankReport pointwise_rank_certify(std::span<const VectorField> fields, std::size_t count,
                                                  std::uint64_t seed, std::optional<std::size_t> expected = {}) {
  PointwiseRankReport rep;
  rep.expected_rank = expected ? *expected : generic_rank(fields);
  rep.min_rank = fields.size();
  if (fields.empty()) {
    rep.points_checked = count;
    return rep;
  }
  SphereSampler sampler(seed);
  const std::size_t dim = fields.front().dim();
  for (std::size_t i = 0; i < count; ++i) {
    auto p = sampler.point(dim);
    const std::size_t r = point_rank(fields, p);
    rep.min_rank = std::min(rep.min_rank, r);
    rep.max_rank = std::max(rep.max_rank, r);
    if (r < rep.expected_rank) rep.drops.push_back(std::move(p));
    ++rep.points_checked;
  }
  return rep;
}

/// Exact rank oracle that avoids symbolic elimination when a cheaper exact
/// argument settles the question.
///
/// * A sample point of rank r proves generic rank >= r.
/// * k rows in n columns have rank <= min(k, n); tangent rows have rank <= n - 1.
/// * A candidate equal to a constant combination of independent rows is dependent.
/// Anything left undecided falls through to Bareiss elimination.
class RankOracle {
public:
  explicit RankOracle(std::size_t dim, std::uint64_t seed = 0xC0FFEE, std::size_t probes = 3) : dim_(dim) {
    SphereSampler s(seed);
    for (std::size_t i = 0; i < probes; ++i) points_.push_back(s.point(dim));
  }

  std::size_t rank(std::span<const VectorField> fields, bool all_tangent) const {
    if (fields.empty()) return 0;
    const std::size_t upper = upper_bound(fields.size(), all_tangent);
    std::size_t lower = 0;
    for (const auto &p : points_) lower = std::max(lower, point_rank(fields, p));
    if (lower == upper) return lower;
    ++symbolic_calls_;
    return generic_rank(fields);
  }

  /// `basis` must be independent; decides whether basis + candidate is.
  bool independent(std::span<const VectorField> basis, const VectorField &candidate, bool all_tangent) const {
    if (candidate.is_zero()) return false;
    std::vector<VectorField> ext(basis.begin(), basis.end());
    ext.push_back(candidate);
    for (const auto &p : points_)
      if (point_rank(ext, p) == ext.size()) return true;
    if (ext.size() > upper_bound(ext.size(), all_tangent)) return false;
    if (constant_combination(basis, candidate)) return false;
    ++symbolic_calls_;
    return generic_rank(ext) == ext.size();
  }

  std::size_t symbolic_calls() const noexcept { return symbolic_calls_; }

private:
  std::size_t upper_bound(std::size_t rows, bool all_tangent) const {
    return std::min(rows, all_tangent ? dim_ - 1 : dim_);
  }

  bool constant_combination(std::span<const VectorField> basis, const VectorField &candidate) const {
    for (const auto &p : points_) {
      auto rows = evaluate(basis, p);
      if (subriem::rank(rows) != basis.size()) continue;
      std::vector<Rational> target;
      for (const auto &c : candidate.components()) target.push_back(c.eval(p));
      auto coeffs = solve_in_row_span(rows, target);
      if (!coeffs) return false;
      VectorField rest = candidate;
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (!(*coeffs)[i].is_zero()) rest -= (*coeffs)[i] * basis[i];
      return rest.is_zero();
    }
    return false;
  }

  std::size_t dim_;
  std::vector<std::vector<Rational>> points_;
  mutable std::size_t symbolic_calls_ = 0;
};

inline QMatrix euclidean_gram(std::span<const VectorField> fields) {
  const std::size_t k = fields.size();
  QMatrix g(k, std::vector<QPoly>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) g[i][j] = g[j][i] = euclidean_dot(fields[i], fields[j]);
  return g;
}

inline bool is_identity(const QMatrix &m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      const QPoly &e = m[i][j];
      if (i == j ? !(e.is_constant() && e.constant_term().is_one()) : !e.is_zero()) return false;
    }
  return true;
}

/// Covectors w_i with w_i(F_j) = delta_ij that vanish on the Euclidean
/// orthogonal complement of span{F_j}: w_i = sum_j (G^-1)_ij F_j^flat.
///
/// Throws GramSingular when G is singular, or when G^-1 has entries that are
/// not polynomial on the sphere (such frames have no polynomial dual forms).
inline std::vector<OneForm> dual_basis(std::span<const VectorField> fields) {
  const std::size_t k = fields.size();
  std::vector<OneForm> out;
  if (k == 0) return out;
  const std::size_t dim = fields.front().dim();
  const QMatrix gram = euclidean_gram(fields);
  if (is_identity(gram)) {
    for (const auto &f : fields) out.push_back(flat(f));
    return out;
  }
  const QPoly det = determinant(gram);
  if (det.is_zero()) throw GramSingular("Gram matrix of the frame is singular over the fraction field");
  QMatrix inverse(k, std::vector<QPoly>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      QPoly cof;
      if (k == 1) {
        cof = QPoly::constant(dim, Rational(1));
      } else {
        // cofactor C_ji: delete row j, column i
        QMatrix minor;
        for (std::size_t r = 0; r < k; ++r) {
          if (r == j) continue;
          std::vector<QPoly> row;
          for (std::size_t c = 0; c < k; ++c)
            if (c != i) row.push_back(gram[r][c]);
          minor.push_back(std::move(row));
        }
        cof = determinant(minor);
        if ((i + j) % 2 == 1) cof = -cof;
      }
      auto q = divide_exact(cof, det);
      if (!q) throw GramSingular("inverse Gram matrix is not polynomial on the sphere (det = " + det.to_string() + ")");
      inverse[i][j] = std::move(*q);
    }
  for (std::size_t i = 0; i < k; ++i) {
    OneForm w(dim);
    for (std::size_t j = 0; j < k; ++j)
      if (!inverse[i][j].is_zero()) w = w + inverse[i][j] * flat(fields[j]);
    out.push_back(std::move(w));
  }
  return out;
}

/// Parallelizable distribution on the unit sphere S^(n-1) in R^n.
///
/// Immutable once built. The metric extension is the ambient Euclidean
/// metric, so VM is the Euclidean orthogonal complement of HM in TM.
class PDistribution {
public:
  static PDistribution build(std::vector<VectorField> frame, std::vector<VectorField> vertical = {},
                             std::vector<std::string> names = {}) {
    if (frame.empty()) throw Error("a distribution needs at least one frame field");
    const std::size_t n = frame.front().dim();
    for (const auto &f : frame)
      if (f.dim() != n) throw DimensionMismatch(n, f.dim());
    for (const auto &f : vertical)
      if (f.dim() != n) throw DimensionMismatch(n, f.dim());
    if (frame.size() >= n) throw Error("frame rank must be below the ambient dimension");
    for (std::size_t i = 0; i < frame.size(); ++i)
      if (!is_tangent(frame[i])) throw NotTangent("frame field " + std::to_string(i + 1));
    for (std::size_t i = 0; i < vertical.size(); ++i)
      if (!is_tangent(vertical[i])) throw NotTangent("vertical field " + std::to_string(i + 1));

    PDistribution pd;
    pd.dim_ = n;
    const RankOracle oracle(n);
    const std::size_t r = oracle.rank(frame, true);
    if (r < frame.size()) throw DependentFrame(r, frame.size());

    for (std::size_t i = 0; i < frame.size(); ++i)
      for (std::size_t j = 0; j < vertical.size(); ++j)
        if (!euclidean_dot(frame[i], vertical[j]).is_zero())
          throw Error("vertical field " + std::to_string(j + 1) + " is not orthogonal to frame field " +
                      std::to_string(i + 1));
    if (!vertical.empty()) {
      std::vector<VectorField> all = frame;
      all.insert(all.end(), vertical.begin(), vertical.end());
      if (oracle.rank(all, true) < all.size()) throw DependentFrame(oracle.rank(all, true), all.size());
    }

    if (names.empty())
      for (std::size_t i = 0; i < frame.size(); ++i) names.push_back("X" + std::to_string(i + 1));
    if (names.size() != frame.size()) throw Error("frame names do not match frame size");

    pd.gram_ = euclidean_gram(frame);
    pd.gram_det_ = is_identity(pd.gram_) ? QPoly::constant(n, Rational(1)) : determinant(pd.gram_);
    pd.dual_ = dual_basis(frame);
    pd.metric_ = sum_of_squares(pd.dual_, n);
    if (!vertical.empty()) pd.vertical_dual_ = dual_basis(vertical);
    pd.frame_ = std::move(frame);
    pd.vertical_ = std::move(vertical);
    pd.names_ = std::move(names);
    return pd;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t manifold_dim() const noexcept { return dim_ - 1; }
  std::size_t rank() const noexcept { return frame_.size(); }
  const std::vector<VectorField> &frame() const noexcept { return frame_; }
  const std::vector<VectorField> &vertical_frame() const noexcept { return vertical_; }
  bool has_vertical_frame() const noexcept { return !vertical_.empty(); }
  const std::vector<std::string> &names() const noexcept { return names_; }
  const QMatrix &gram() const noexcept { return gram_; }
  const QPoly &gram_determinant() const noexcept { return gram_det_; }
  const std::vector<OneForm> &dual_forms() const noexcept { return dual_; }
  const SymTensor2 &metric() const noexcept { return metric_; }

  /// Frame + vertical frame spans TM, so every tangent field has coordinates.
  bool has_adapted_basis() const noexcept { return frame_.size() + vertical_.size() == manifold_dim(); }

  /// Nonvanishing of the Gram determinant is certified everywhere when it reduces to a nonzero constant.
  bool constant_gram_certified() const { return gram_det_.is_constant() && !gram_det_.is_zero(); }

  /// Omega_i(Y) for i = 1..k.
  std::vector<QPoly> coordinates(const VectorField &y) const {
    std::vector<QPoly> c;
    c.reserve(dual_.size());
    for (const auto &w : dual_) c.push_back(pair(w, y));
    return c;
  }

  /// Vertical coordinates of vY in the supplied vertical frame.
  std::vector<QPoly> vertical_coordinates(const VectorField &y) const {
    std::vector<QPoly> c;
    for (const auto &w : vertical_dual_) c.push_back(pair(w, y));
    return c;
  }

  VectorField combine(const std::vector<QPoly> &coeffs) const {
    VectorField out(dim_);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (!coeffs[i].is_zero()) out += coeffs[i] * frame_[i];
    return out;
  }

  VectorField h(const VectorField &y) const { return combine(coordinates(y)); }
  VectorField v(const VectorField &y) const { return y - h(y); }
  bool is_horizontal(const VectorField &y) const { return h(y) == y; }

  /// g(Y,Z) = sum_i Omega_i(Y) Omega_i(Z).
  QPoly g(const VectorField &y, const VectorField &z) const {
    QPoly acc(dim_);
    for (const auto &w : dual_) {
      const QPoly a = pair(w, y);
      if (!a.is_zero()) acc += a * pair(w, z);
    }
    return acc;
  }

  /// Sub-distribution spanned by a subset of frame indices (0-based).
  PDistribution subframe(const std::vector<std::size_t> &indices) const {
    std::vector<VectorField> f;
    std::vector<std::string> nm;
    for (auto i : indices) {
      f.push_back(frame_.at(i));
      nm.push_back(names_.at(i));
    }
    return build(std::move(f), {}, std::move(nm));
  }

private:
  PDistribution() = default;

  std::size_t dim_ = 0;
  std::vector<VectorField> frame_;
  std::vector<VectorField> vertical_;
  std::vector<std::string> names_;
  QMatrix gram_;
  QPoly gram_det_;
  std::vector<OneForm> dual_;
  std::vector<OneForm> vertical_dual_;
  SymTensor2 metric_;
};

inline std::vector<OneForm> dual_forms(const PDistribution &pd) { return pd.dual_forms(); }
inline SymTensor2 sr_metric(const PDistribution &pd) { return pd.metric(); }
inline VectorField h_project(const PDistribution &pd, const VectorField &y) { return pd.h(y); }
inline VectorField v_project(const PDistribution &pd, const VectorField &y) { return pd.v(y); }

} // namespace subriem
