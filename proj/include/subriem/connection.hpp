#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "subriem/errors.hpp"
#include "subriem/frame.hpp"
#include "subriem/sampling.hpp"
#include "subriem/vfield.hpp"

namespace subriem {

enum class ConnectionKind { Weitzenbock, Hat, SubRiemannian, Table, Custom };

inline std::string to_string(ConnectionKind k) {
  switch (k) {
  case ConnectionKind::Weitzenbock: return "weitzenbock";
  case ConnectionKind::Hat: return "hat";
  case ConnectionKind::SubRiemannian: return "sr";
  case ConnectionKind::Table: return "table";
  case ConnectionKind::Custom: return "custom";
  }
  return "unknown";
}

/// Linear connection on HM: (direction in TM, horizontal section) -> horizontal section.
class Connection {
public:
  using Rule = std::function<VectorField(const PDistribution &, const VectorField &, const VectorField &)>;

  Connection(ConnectionKind kind, std::shared_ptr<const PDistribution> pd, Rule rule)
      : kind_(kind), pd_(std::move(pd)), rule_(std::move(rule)) {}

  VectorField operator()(const VectorField &direction, const VectorField &section) const {
    return rule_(*pd_, direction, section);
  }

  ConnectionKind kind() const noexcept { return kind_; }
  const PDistribution &pd() const noexcept { return *pd_; }
  std::shared_ptr<const PDistribution> shared_pd() const noexcept { return pd_; }

private:
  ConnectionKind kind_;
  std::shared_ptr<const PDistribution> pd_;
  Rule rule_;
};

namespace detail {

inline std::vector<QPoly> horizontal_coordinates(const PDistribution &pd, const VectorField &z, const char *what) {
  auto c = pd.coordinates(z);
  if (!(pd.combine(c) == z)) throw NotHorizontal(what);
  return c;
}

/// nabla_Y Z = sum_i (Y . Omega_i(Z)) X_i
inline VectorField weitzenbock_rule(const PDistribution &pd, const VectorField &y, const VectorField &z) {
  auto c = horizontal_coordinates(pd, z, "Weitzenbock section argument");
  for (auto &ci : c) ci = direct_deriv(y, ci);
  return pd.combine(c);
}

inline VectorField hat_rule(const PDistribution &pd, const VectorField &y, const VectorField &z) {
  VectorField sum = weitzenbock_rule(pd, y, z) + weitzenbock_rule(pd, z, pd.h(y)) + pd.h(lie_bracket(y, z));
  return Rational(1, 2) * sum;
}

} // namespace detail

/// Horizontal Lie derivative (L_W g)(Y,Z) = W.g(Y,Z) + g(h[Y,W],Z) + g(h[Z,W],Y) for horizontal Y, Z.
inline QPoly hlie(const PDistribution &pd, const VectorField &w, const VectorField &y, const VectorField &z) {
  if (!pd.is_horizontal(y)) throw NotHorizontal("first argument of the horizontal Lie derivative");
  if (!pd.is_horizontal(z)) throw NotHorizontal("second argument of the horizontal Lie derivative");
  return direct_deriv(w, pd.g(y, z)) + pd.g(pd.h(lie_bracket(y, w)), z) + pd.g(pd.h(lie_bracket(z, w)), y);
}

namespace detail {

inline QPoly dot(const std::vector<QPoly> &a, const std::vector<QPoly> &b) {
  QPoly acc(a.empty() ? 2 : a.front().dim());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) acc += a[i] * b[i];
  return acc;
}

/// g(A, B) = sum_m Omega_m(A) Omega_m(B) and Omega_m o h = Omega_m, so every
/// metric pairing below is taken on frame coordinates.
inline VectorField sr_rule(const PDistribution &pd, const VectorField &w, const VectorField &z) {
  const auto zc = horizontal_coordinates(pd, z, "sR connection section argument");
  const auto wc = pd.coordinates(w);
  const VectorField hw = pd.combine(wc);
  const VectorField vw = w - hw;
  const auto &x = pd.frame();
  const std::size_t k = x.size();

  std::vector<QPoly> out(k, QPoly(pd.dim()));
  // 2 hat-nabla_W Z = nabla_W Z + nabla_Z hW + h[W,Z]
  const auto bwz = pd.coordinates(lie_bracket(w, z));
  for (std::size_t i = 0; i < k; ++i) out[i] = direct_deriv(w, zc[i]) + direct_deriv(z, wc[i]) + bwz[i];

  // (L_{X_i} g)(hW, Z) = X_i.g(hW,Z) + g(h[hW,X_i],Z) + g(h[Z,X_i],hW)
  if (!hw.is_zero()) {
    const QPoly gwz = dot(wc, zc);
    for (std::size_t i = 0; i < k; ++i) {
      const QPoly lie = direct_deriv(x[i], gwz) + dot(pd.coordinates(lie_bracket(hw, x[i])), zc) +
                        dot(pd.coordinates(lie_bracket(z, x[i])), wc);
      out[i] -= lie;
    }
  }
  // g(Z, h[vW, X_k])
  if (!vw.is_zero())
    for (std::size_t m = 0; m < k; ++m) out[m] -= dot(zc, pd.coordinates(lie_bracket(vw, x[m])));

  for (auto &c : out) c = Rational(1, 2) * c;
  return pd.combine(out);
}

} // namespace detail

/// The unique connection on HM for which every parallelization section is parallel.
inline Connection weitzenbock(const PDistribution &pd) {
  return Connection(ConnectionKind::Weitzenbock, std::make_shared<const PDistribution>(pd), detail::weitzenbock_rule);
}

/// hat-nabla_Y Z = 1/2 (nabla_Y Z + nabla_Z hY + h[Y,Z]).
inline Connection hat_connection(const PDistribution &pd) {
  return Connection(ConnectionKind::Hat, std::make_shared<const PDistribution>(pd), detail::hat_rule);
}

/// Sub-Riemannian connection:
///   o-nabla_W Z = hat-nabla_W Z - 1/2 (L_{X_i} g)(hW, Z) X_i - 1/2 g(Z, h[vW, X_k]) X_k.
/// The section Z must be horizontal.
inline Connection sr_connection(const PDistribution &pd) {
  return Connection(ConnectionKind::SubRiemannian, std::make_shared<const PDistribution>(pd), detail::sr_rule);
}

/// conn + A for a (tensorial) correction A(W, Z).
inline Connection perturb(const Connection &base, Connection::Rule correction) {
  return Connection(ConnectionKind::Custom, base.shared_pd(),
                    [base, correction = std::move(correction)](const PDistribution &pd, const VectorField &w,
                                                               const VectorField &z) {
                      return base(w, z) + correction(pd, w, z);
                    });
}

/// T(Y,Z) = conn_Y hZ - conn_Z hY - h[Y,Z].
inline VectorField torsion(const Connection &conn, const VectorField &y, const VectorField &z) {
  const auto &pd = conn.pd();
  return conn(y, pd.h(z)) - conn(z, pd.h(y)) - pd.h(lie_bracket(y, z));
}

/// R(Y,Z)W = conn_Y conn_Z W - conn_Z conn_Y W - conn_[Y,Z] W for horizontal W.
inline VectorField curvature(const Connection &conn, const VectorField &y, const VectorField &z,
                             const VectorField &w) {
  return conn(y, conn(z, w)) - conn(z, conn(y, w)) - conn(lie_bracket(y, z), w);
}

/// (conn_W g)(Y,Z) = W.g(Y,Z) - g(conn_W Y, Z) - g(Y, conn_W Z).
inline QPoly metric_defect(const Connection &conn, const VectorField &w, const VectorField &y,
                           const VectorField &z) {
  const auto &pd = conn.pd();
  return direct_deriv(w, pd.g(y, z)) - pd.g(conn(w, y), z) - pd.g(y, conn(w, z));
}

/// Directions used by the property checks: frame, vertical frame, and (when
/// the vertical frame is absent) tangent probes that are not horizontal.
inline std::vector<VectorField> adapted_directions(const PDistribution &pd, SphereSampler &sampler,
                                                   std::size_t extra = 2) {
  std::vector<VectorField> dirs = pd.frame();
  dirs.insert(dirs.end(), pd.vertical_frame().begin(), pd.vertical_frame().end());
  if (!pd.has_adapted_basis())
    for (std::size_t i = 0; i < extra; ++i) dirs.push_back(sampler.tangent_field(pd.dim()));
  return dirs;
}

struct CheckOptions {
  std::size_t random_sections = 3;
  std::uint64_t seed = 0xA11CE;
};

/// Exact check of conn g = 0 on adapted directions, frame pairs and random horizontal sections.
inline bool metric_compat_check(const Connection &conn, const CheckOptions &opts = {}) {
  const auto &pd = conn.pd();
  SphereSampler sampler(opts.seed);
  std::vector<VectorField> sections = pd.frame();
  for (std::size_t i = 0; i < opts.random_sections; ++i) sections.push_back(sampler.combination(pd.frame()));
  for (const auto &w : adapted_directions(pd, sampler))
    for (std::size_t a = 0; a < sections.size(); ++a)
      for (std::size_t b = a; b < sections.size(); ++b)
        if (!metric_defect(conn, w, sections[a], sections[b]).is_zero()) return false;
  return true;
}

/// X is Killing when (L_X g)(X_j, X_k) vanishes for all frame pairs.
inline bool killing_check(const PDistribution &pd, const VectorField &x) {
  const auto &f = pd.frame();
  for (std::size_t j = 0; j < f.size(); ++j)
    for (std::size_t k = j; k < f.size(); ++k)
      if (!hlie(pd, x, f[j], f[k]).is_zero()) return false;
  return true;
}

struct PropertyCheck {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string witness;
};

struct PropertyReport {
  std::string connection;
  std::vector<PropertyCheck> checks;

  bool all_passed() const {
    for (const auto &c : checks)
      if (!c.passed) return false;
    return true;
  }
  const PropertyCheck *find(const std::string &name) const {
    for (const auto &c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Checks the three defining properties of the sub-Riemannian connection:
/// (a) metric, (b) no torsion on HM x HM, (c) g(T(V,Y),Z) symmetric in Y,Z for
/// vertical V. For the sR connection itself also compares T(V, X_k) against
/// the closed form -1/2 (g(X_k, h[V,X_i]) X_i + h[V,X_k]).
inline PropertyReport sr_property_report(const Connection &conn, const CheckOptions &opts = {}) {
  const auto &pd = conn.pd();
  const auto &x = pd.frame();
  if (!pd.has_vertical_frame() && !pd.has_adapted_basis()) throw MissingVerticalFrame();
  SphereSampler sampler(opts.seed);
  PropertyReport rep;
  rep.connection = to_string(conn.kind());

  std::vector<VectorField> sections = x;
  std::vector<std::string> section_names = pd.names();
  for (std::size_t i = 0; i < opts.random_sections; ++i) {
    sections.push_back(sampler.combination(x));
    section_names.push_back("random horizontal #" + std::to_string(i + 1));
  }
  std::vector<VectorField> dirs = x;
  std::vector<std::string> dir_names = pd.names();
  for (std::size_t i = 0; i < pd.vertical_frame().size(); ++i) {
    dirs.push_back(pd.vertical_frame()[i]);
    dir_names.push_back("V" + std::to_string(i + 1));
  }

  PropertyCheck a{"a_metric", true, 0, ""};
  for (std::size_t d = 0; d < dirs.size() && a.passed; ++d)
    for (std::size_t i = 0; i < sections.size() && a.passed; ++i)
      for (std::size_t j = i; j < sections.size() && a.passed; ++j) {
        ++a.cases;
        const QPoly defect = metric_defect(conn, dirs[d], sections[i], sections[j]);
        if (!defect.is_zero()) {
          a.passed = false;
          a.witness = "(nabla_" + dir_names[d] + " g)(" + section_names[i] + "," + section_names[j] +
                      ") = " + defect.to_string();
        }
      }
  rep.checks.push_back(std::move(a));

  PropertyCheck b{"b_horizontal_torsion", true, 0, ""};
  for (std::size_t i = 0; i < sections.size() && b.passed; ++i)
    for (std::size_t j = i + 1; j < sections.size() && b.passed; ++j) {
      ++b.cases;
      const VectorField t = torsion(conn, sections[i], sections[j]);
      if (!t.is_zero()) {
        b.passed = false;
        b.witness = "T(" + section_names[i] + "," + section_names[j] + ") = " + t.to_string();
      }
    }
  rep.checks.push_back(std::move(b));

  PropertyCheck c{"c_vertical_torsion_symmetry", true, 0, ""};
  for (std::size_t v = 0; v < pd.vertical_frame().size() && c.passed; ++v) {
    const VectorField &vf = pd.vertical_frame()[v];
    std::vector<VectorField> tv;
    for (const auto &s : sections) tv.push_back(torsion(conn, vf, s));
    for (std::size_t i = 0; i < sections.size() && c.passed; ++i)
      for (std::size_t j = i + 1; j < sections.size() && c.passed; ++j) {
        ++c.cases;
        const QPoly lhs = pd.g(tv[i], sections[j]);
        const QPoly rhs = pd.g(tv[j], sections[i]);
        if (!(lhs == rhs)) {
          c.passed = false;
          c.witness = "g(T(V" + std::to_string(v + 1) + "," + section_names[i] + ")," + section_names[j] +
                      ") = " + lhs.to_string() + " but g(T(V" + std::to_string(v + 1) + "," + section_names[j] +
                      ")," + section_names[i] + ") = " + rhs.to_string();
        }
      }
  }
  rep.checks.push_back(std::move(c));

  if (conn.kind() == ConnectionKind::SubRiemannian) {
    PropertyCheck d{"closed_form_vertical_torsion", true, 0, ""};
    for (std::size_t v = 0; v < pd.vertical_frame().size() && d.passed; ++v) {
      const VectorField &vf = pd.vertical_frame()[v];
      std::vector<VectorField> hb;
      for (const auto &xi : x) hb.push_back(pd.h(lie_bracket(vf, xi)));
      for (std::size_t k = 0; k < x.size() && d.passed; ++k) {
        ++d.cases;
        VectorField closed = hb[k];
        for (std::size_t i = 0; i < x.size(); ++i) closed += pd.g(x[k], hb[i]) * x[i];
        closed = Rational(-1, 2) * closed;
        const VectorField direct = torsion(conn, vf, x[k]);
        if (!(closed == direct)) {
          d.passed = false;
          d.witness = "T(V" + std::to_string(v + 1) + "," + pd.names()[k] + ") = " + direct.to_string() +
                      " but closed form gives " + closed.to_string();
        }
      }
    }
    rep.checks.push_back(std::move(d));
  }
  return rep;
}

/// Coefficients gamma[a][j][i] with conn(B_a, X_j) = sum_i gamma[a][j][i] X_i
/// over the adapted basis B = (X_1..X_k, V_1..V_m).
struct CoefficientTable {
  std::vector<std::string> directions;
  std::vector<std::string> sections;
  std::vector<std::vector<std::vector<QPoly>>> gamma;

  friend bool operator==(const CoefficientTable &, const CoefficientTable &) = default;
};

inline std::vector<std::string> adapted_basis_names(const PDistribution &pd) {
  std::vector<std::string> names = pd.names();
  for (std::size_t i = 0; i < pd.vertical_frame().size(); ++i) names.push_back("V" + std::to_string(i + 1));
  return names;
}

inline CoefficientTable coefficient_table(const Connection &conn) {
  const auto &pd = conn.pd();
  CoefficientTable t;
  t.directions = adapted_basis_names(pd);
  t.sections = pd.names();
  std::vector<VectorField> basis = pd.frame();
  basis.insert(basis.end(), pd.vertical_frame().begin(), pd.vertical_frame().end());
  for (const auto &b : basis) {
    std::vector<std::vector<QPoly>> row;
    for (const auto &xj : pd.frame()) row.push_back(pd.coordinates(conn(b, xj)));
    t.gamma.push_back(std::move(row));
  }
  return t;
}

/// Structure functions c[a][j][i] = Omega_i([B_a, X_j]).
inline std::vector<std::vector<std::vector<QPoly>>> structure_functions(const PDistribution &pd) {
  std::vector<VectorField> basis = pd.frame();
  basis.insert(basis.end(), pd.vertical_frame().begin(), pd.vertical_frame().end());
  std::vector<std::vector<std::vector<QPoly>>> c;
  for (const auto &b : basis) {
    std::vector<std::vector<QPoly>> row;
    for (const auto &xj : pd.frame()) row.push_back(pd.coordinates(lie_bracket(b, xj)));
    c.push_back(std::move(row));
  }
  return c;
}

/// sR-connection coefficients assembled from structure functions alone:
///   horizontal a:  gamma = 1/2 c[a][j][i] - 1/2 (c[a][i][j] + c[j][i][a])
///   vertical a:    gamma = 1/2 c[a][j][i] - 1/2 c[a][i][j]
/// using g(X_i, X_j) = delta_ij, nabla X_i = 0 and hV = 0.
inline CoefficientTable sr_coefficients_from_structure(const PDistribution &pd) {
  const std::size_t k = pd.rank();
  const auto c = structure_functions(pd);
  const Rational half(1, 2);
  CoefficientTable t;
  t.directions = adapted_basis_names(pd);
  t.sections = pd.names();
  for (std::size_t a = 0; a < c.size(); ++a) {
    std::vector<std::vector<QPoly>> row;
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<QPoly> coeffs;
      for (std::size_t i = 0; i < k; ++i) {
        QPoly g = c[a][j][i] - c[a][i][j];
        if (a < k) g = g - c[j][i][a];
        coeffs.push_back(half * g);
      }
      row.push_back(std::move(coeffs));
    }
    t.gamma.push_back(std::move(row));
  }
  return t;
}

/// Connection rebuilt from a coefficient table:
///   conn(W, Z) = sum_i (W . z^i) X_i + sum_{a,j} w^a z^j gamma[a][j][i] X_i,
/// with w^a the coordinates of W in the adapted basis. Needs frame + vertical frame to span TM.
inline Connection table_connection(const PDistribution &pd, CoefficientTable table) {
  if (!pd.has_adapted_basis()) throw MissingVerticalFrame();
  auto rule = [table = std::move(table)](const PDistribution &p, const VectorField &w, const VectorField &z) {
    const auto zc = detail::horizontal_coordinates(p, z, "table connection section argument");
    auto wc = p.coordinates(w);
    const auto vc = p.vertical_coordinates(w);
    VectorField rebuilt = p.combine(wc);
    for (std::size_t m = 0; m < vc.size(); ++m) rebuilt += vc[m] * p.vertical_frame()[m];
    if (!(rebuilt == w)) throw NotTangent("table connection direction argument");
    wc.insert(wc.end(), vc.begin(), vc.end());
    const std::size_t k = p.rank();
    std::vector<QPoly> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(direct_deriv(w, zc[i]));
    for (std::size_t a = 0; a < wc.size(); ++a) {
      if (wc[a].is_zero()) continue;
      for (std::size_t j = 0; j < k; ++j) {
        if (zc[j].is_zero()) continue;
        const QPoly wz = wc[a] * zc[j];
        for (std::size_t i = 0; i < k; ++i)
          if (!table.gamma[a][j][i].is_zero()) out[i] += wz * table.gamma[a][j][i];
      }
    }
    return p.combine(out);
  };
  return Connection(ConnectionKind::Table, std::make_shared<const PDistribution>(pd), std::move(rule));
}

} // namespace subriem
