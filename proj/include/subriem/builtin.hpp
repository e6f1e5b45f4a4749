#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "subriem/bracketgen.hpp"
#include "subriem/errors.hpp"
#include "subriem/frame.hpp"
#include "subriem/parser.hpp"
#include "subriem/vfield.hpp"

namespace subriem::builtin {

namespace detail {

inline VectorField field(std::size_t dim, const std::vector<std::string> &components) {
  std::vector<Poly> polys;
  for (const auto &c : components) polys.push_back(parse_expr(c, dim));
  return VectorField::from_polys(polys);
}

inline OneForm form(std::size_t dim, const std::vector<std::string> &components) {
  std::vector<QPoly> comps;
  for (const auto &c : components) comps.push_back(QPoly::reduce(parse_expr(c, dim)));
  return OneForm(std::move(comps));
}

/// One summand c * (s1 dy_i dy_j + s2 dy_k dy_l + ...) of a displayed quadratic differential.
struct DisplayTerm {
  std::string coefficient;
  std::vector<std::tuple<int, std::size_t, std::size_t>> products;
};

/// dy_i dy_j is the symmetric product, so an off-diagonal summand contributes half its
/// coefficient to each of g_ij and g_ji.
inline SymTensor2 quadratic_display(std::size_t dim, const std::vector<DisplayTerm> &terms) {
  SymTensor2 g(dim);
  for (const auto &t : terms) {
    const QPoly c = QPoly::reduce(parse_expr(t.coefficient, dim));
    for (const auto &[sign, i, j] : t.products) {
      const Rational w = i == j ? Rational(sign) : Rational(sign, 2);
      g.add(i, j, w * c);
    }
  }
  return g;
}

} // namespace detail

/// Unit-quaternion frame of S^3 in R^4.
inline std::vector<VectorField> s3() {
  return {
      detail::field(4, {"-y2", "y3", "y0", "-y1"}),
      detail::field(4, {"-y3", "-y2", "y1", "y0"}),
      detail::field(4, {"-y1", "y0", "-y3", "y2"}),
  };
}

/// Octonionic frame of S^7 in R^8.
inline std::vector<VectorField> s7() {
  return {
      detail::field(8, {"-y2", "y3", "y0", "-y1", "-y6", "y7", "y4", "-y5"}),
      detail::field(8, {"-y3", "-y2", "y1", "y0", "y7", "y6", "-y5", "-y4"}),
      detail::field(8, {"-y4", "y5", "y6", "-y7", "y0", "-y1", "-y2", "y3"}),
      detail::field(8, {"-y5", "-y4", "-y7", "-y6", "y1", "y0", "y3", "y2"}),
      detail::field(8, {"-y6", "y7", "-y4", "y5", "y2", "-y3", "y0", "-y1"}),
      detail::field(8, {"-y7", "-y6", "y5", "y4", "-y3", "-y2", "y1", "y0"}),
      detail::field(8, {"-y1", "y0", "-y3", "y2", "-y5", "y4", "-y7", "y6"}),
  };
}

inline std::vector<VectorField> frame_of(const std::string &example) {
  if (example == "s3") return s3();
  if (example == "s7") return s7();
  throw InputError("unknown builtin example '" + example + "' (expected s3 or s7)");
}

/// HM spanned by all but the last frame field, VM by the last.
inline PDistribution default_distribution(const std::string &example) {
  auto f = frame_of(example);
  std::vector<VectorField> vertical{f.back()};
  f.pop_back();
  return PDistribution::build(std::move(f), std::move(vertical));
}

enum class Trust { TheoremConsistent, TableReported };

inline std::string to_string(Trust t) {
  return t == Trust::TheoremConsistent ? "theorem-consistent" : "table-reported";
}

/// Expected classification row for a sub-frame.
struct ClassificationExpect {
  std::vector<std::size_t> subset; // 0-based
  bool bracket_generating = false;
  Step step;
  std::vector<std::size_t> ranks;
  std::vector<std::vector<Commutator>> independent_commutators;
  std::size_t rows_of_same_rank = 0;
};

using FixtureValue = std::variant<VectorField, OneForm, SymTensor2, Step, bool, std::size_t, ClassificationExpect>;

/// Quantities a fixture may name. Arguments are 0-based indices into the full frame.
enum class Quantity {
  Form,              // args {i}: Omega_i
  Metric,            // sr metric of the default distribution
  Bracket,           // args {i, j}: [X_i, X_j]
  Weitzenbock,       // args {a, j}: nabla_{X_a} X_j
  Torsion,           // args {i, j}: T(X_i, X_j)
  SrConnection,      // args {a, j}
  SrConnectionForm,  // args {a, j}: o-nabla as displayed in dy-form
  SrTorsion,         // args {i, j}
  SrCurvature,       // args {a, b, c}: o-R(X_a, X_b) X_c
  SrAntisymmetry,    // args {}: o-nabla_{X_i} X_j = -o-nabla_{X_j} X_i on HM
  StepOf,            // args subset: step and flag ranks
  StructureCount,    // args {rank}: number of bracket-generating sub-frames of that rank
  Killing,           // args {i}
  Classification,    // one table row
};

inline std::string to_string(Quantity q) {
  switch (q) {
  case Quantity::Form: return "form";
  case Quantity::Metric: return "metric";
  case Quantity::Bracket: return "bracket";
  case Quantity::Weitzenbock: return "weitzenbock";
  case Quantity::Torsion: return "torsion";
  case Quantity::SrConnection: return "sr_connection";
  case Quantity::SrConnectionForm: return "sr_connection_form";
  case Quantity::SrTorsion: return "sr_torsion";
  case Quantity::SrCurvature: return "sr_curvature";
  case Quantity::SrAntisymmetry: return "sr_antisymmetry";
  case Quantity::StepOf: return "step";
  case Quantity::StructureCount: return "structure_count";
  case Quantity::Killing: return "killing";
  case Quantity::Classification: return "classification";
  }
  return "unknown";
}

struct Fixture {
  std::string id;
  Quantity quantity;
  std::vector<std::size_t> args;
  FixtureValue expected;
  Trust trust;
  std::string source;
};

struct FixtureSet {
  std::string example;
  std::size_t dim = 0;
  std::vector<Fixture> fixtures;
};

namespace detail {

inline VectorField combo(const std::vector<VectorField> &f, std::vector<std::pair<Rational, std::size_t>> terms) {
  VectorField out(f.front().dim());
  for (const auto &[c, i] : terms) out += c * f[i];
  return out;
}

inline std::vector<Commutator> comms(std::initializer_list<std::pair<std::size_t, std::size_t>> one_based) {
  std::vector<Commutator> out;
  for (auto [i, j] : one_based) out.push_back({i - 1, j - 1});
  return out;
}

inline std::vector<std::size_t> range(std::size_t n) {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < n; ++i) r.push_back(i);
  return r;
}

inline SymTensor2 s3_metric_display() {
  return quadratic_display(4, {
      {"y2^2 + y3^2", {{1, 0, 0}, {1, 1, 1}}},
      {"y1^2 + y0^2", {{1, 2, 2}, {1, 3, 3}}},
      {"2*(y0*y3 - y1*y2)", {{1, 0, 3}, {-1, 1, 2}}},
      {"-2*(y1*y3 - y0*y2)", {{1, 0, 2}, {-1, 1, 3}}},
  });
}

inline SymTensor2 s7_metric_display() {
  return quadratic_display(8, {
      {"1 - y0^2 - y1^2", {{1, 0, 0}, {1, 1, 1}}},
      {"1 - y2^2 - y3^2", {{1, 2, 2}, {1, 3, 3}}},
      {"1 - y4^2 - y5^2", {{1, 4, 4}, {1, 5, 5}}},
      {"1 - y6^2 - y7^2", {{1, 6, 6}, {1, 7, 7}}},
      {"2*(-y1*y6 + y7*y0)", {{1, 6, 1}, {-1, 7, 0}}},
      {"2*(-y3*y0 + y2*y1)", {{1, 3, 0}, {-1, 1, 2}}},
      {"2*(-y0*y5 + y1*y4)", {{1, 0, 5}, {-1, 4, 1}}},
      {"-2*(y7*y1 + y6*y0)", {{1, 6, 0}, {1, 7, 1}}},
      {"-2*(y1*y3 + y2*y0)", {{1, 3, 1}, {-1, 0, 2}}},
      {"-2*(y7*y5 + y6*y4)", {{1, 5, 7}, {1, 4, 6}}},
      {"-2*(y7*y3 + y2*y6)", {{1, 2, 6}, {-1, 3, 7}}},
      {"2*(-y3*y4 + y5*y2)", {{1, 4, 3}, {-1, 2, 5}}},
      {"2*(-y6*y5 + y7*y4)", {{1, 6, 5}, {-1, 4, 7}}},
      {"2*(-y2*y7 + y3*y6)", {{1, 2, 7}, {-1, 3, 6}}},
      {"-2*(y3*y5 + y4*y2)", {{1, 2, 4}, {1, 3, 5}}},
      {"-2*(y1*y5 + y0*y4)", {{1, 4, 0}, {1, 3, 5}}},
  });
}

inline FixtureSet s3_fixtures() {
  const auto f = s3();
  const auto TC = Trust::TheoremConsistent;
  const auto TR = Trust::TableReported;
  const std::size_t n = 4;
  FixtureSet s{"s3", n, {}};
  auto &v = s.fixtures;
  v.push_back({"Omega1", Quantity::Form, {0}, form(n, {"-y2", "y3", "y0", "-y1"}), TC, "S^3 parallelization forms"});
  v.push_back({"Omega2", Quantity::Form, {1}, form(n, {"-y3", "-y2", "y1", "y0"}), TC, "S^3 parallelization forms"});
  v.push_back({"g", Quantity::Metric, {}, s3_metric_display(), TR, "S^3 sub-Riemannian metric display"});
  v.push_back({"[X1,X2]", Quantity::Bracket, {0, 1}, combo(f, {{2, 2}}), TR, "S^3 frame display, X3 = 1/2 [X1,X2]"});
  v.push_back({"[X1,X3]", Quantity::Bracket, {0, 2}, combo(f, {{2, 1}}), TR, "S^3 remark, X2 = 1/2 [X1,X3]"});
  v.push_back({"[X2,X3]", Quantity::Bracket, {1, 2}, combo(f, {{2, 0}}), TR, "S^3 remark, X1 = 1/2 [X2,X3]"});
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t j = 0; j < 2; ++j)
      v.push_back({"nabla_X" + std::to_string(a + 1) + " X" + std::to_string(j + 1), Quantity::Weitzenbock, {a, j},
                   VectorField(n), TC, "S^3 Weitzenbock coefficients"});
  v.push_back({"T(X1,X2)", Quantity::Torsion, {0, 1}, VectorField(n), TC, "S^3 Weitzenbock torsion"});
  v.push_back({"T(X1,X3)", Quantity::Torsion, {0, 2}, combo(f, {{-2, 1}}), TC, "S^3 Weitzenbock torsion"});
  v.push_back({"T(X2,X3)", Quantity::Torsion, {1, 2}, combo(f, {{2, 0}}), TC, "S^3 Weitzenbock torsion"});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      v.push_back({"o-nabla_X" + std::to_string(i + 1) + " X" + std::to_string(j + 1), Quantity::SrConnection,
                   {i, j}, VectorField(n), TR, "S^3 sR-connection coefficients"});
  v.push_back({"o-nabla_X3 X1", Quantity::SrConnection, {2, 0}, combo(f, {{-3, 1}}), TR,
               "S^3 sR-connection coefficients"});
  v.push_back({"o-nabla_X3 X2", Quantity::SrConnection, {2, 1}, combo(f, {{3, 0}}), TR,
               "S^3 sR-connection coefficients"});
  v.push_back({"o-T(X1,X2)", Quantity::SrTorsion, {0, 1}, VectorField(n), TR, "S^3 sR torsion (implied zero)"});
  v.push_back({"o-T(X1,X3)", Quantity::SrTorsion, {0, 2}, combo(f, {{1, 1}}), TR, "S^3 sR torsion"});
  v.push_back({"o-T(X2,X3)", Quantity::SrTorsion, {1, 2}, combo(f, {{-1, 0}}), TR, "S^3 sR torsion"});
  v.push_back({"o-R(X1,X2)X1", Quantity::SrCurvature, {0, 1, 0}, combo(f, {{6, 1}}), TR, "S^3 sR curvature"});
  v.push_back({"o-R(X1,X2)X2", Quantity::SrCurvature, {0, 1, 1}, combo(f, {{-6, 0}}), TR, "S^3 sR curvature"});
  v.push_back({"step{X1,X2}", Quantity::StepOf, {0, 1}, Step::finite_step(2), TC, "S^3 bracket generating of step 2"});
  v.push_back({"step{X1,X3}", Quantity::StepOf, {0, 2}, Step::finite_step(2), TC, "S^3 remark, other structures"});
  v.push_back({"step{X2,X3}", Quantity::StepOf, {1, 2}, Step::finite_step(2), TC, "S^3 remark, other structures"});
  v.push_back({"#rank-2 structures", Quantity::StructureCount, {2}, std::size_t{3}, TC,
               "S^3 remark, exactly three structures"});
  return s;
}

inline FixtureSet s7_fixtures() {
  const auto f = s7();
  const auto TC = Trust::TheoremConsistent;
  const auto TR = Trust::TableReported;
  const std::size_t n = 8;
  FixtureSet s{"s7", n, {}};
  auto &v = s.fixtures;
  const std::vector<std::vector<std::string>> omegas = {
      {"-y2", "y3", "y0", "-y1", "-y6", "y7", "y4", "-y5"},
      {"-y3", "-y2", "y1", "y0", "y7", "y6", "-y5", "-y4"},
      {"-y4", "y5", "y6", "-y7", "y0", "-y1", "-y2", "y3"},
      {"-y5", "-y4", "-y7", "-y6", "y1", "y0", "y3", "y2"},
      {"-y6", "y7", "-y4", "y5", "y2", "-y3", "y0", "-y1"},
      {"-y7", "-y6", "y5", "y4", "-y3", "-y2", "y1", "y0"},
  };
  for (std::size_t i = 0; i < omegas.size(); ++i)
    v.push_back({"Omega" + std::to_string(i + 1), Quantity::Form, {i}, form(n, omegas[i]), TC,
                 "S^7 parallelization forms"});
  v.push_back({"g", Quantity::Metric, {}, s7_metric_display(), TR, "S^7 sub-Riemannian metric display"});
  for (std::size_t a = 0; a < 7; ++a)
    for (std::size_t j = 0; j < 6; ++j)
      v.push_back({"nabla_X" + std::to_string(a + 1) + " X" + std::to_string(j + 1), Quantity::Weitzenbock, {a, j},
                   VectorField(n), TC, "S^7 Weitzenbock coefficients"});
  const VectorField t17 = field(n, {"2*y3", "2*y2", "-2*y1", "-2*y0", "2*y7", "2*y6", "-2*y5", "-2*y4"});
  const VectorField t67 = field(n, {"-2*y6", "2*y7", "2*y4", "-2*y5", "-2*y2", "2*y3", "2*y0", "-2*y1"});
  v.push_back({"T(X1,X7)", Quantity::Torsion, {0, 6}, t17, TC, "S^7 Weitzenbock torsion display"});
  v.push_back({"T(X6,X7)", Quantity::Torsion, {5, 6}, t67, TC, "S^7 Weitzenbock torsion display"});
  v.push_back({"o-nabla antisymmetric on HM", Quantity::SrAntisymmetry, {}, true, TR, "S^7 sR-connection properties"});
  // Relations o-nabla_X7 X_i = 3/2 T(X_i,X7) and o-T(X_i,X7) = -1/2 T(X_i,X7)
  // are stored against T(X_i,X7) = -h[X_i,X7], which the torsion fixtures above corroborate.
  for (std::size_t i = 0; i < 6; ++i) {
    const VectorField t = -(lie_bracket(f[i], f[6]));
    const std::string xi = "X" + std::to_string(i + 1);
    v.push_back({"o-nabla_X7 " + xi, Quantity::SrConnection, {6, i}, Rational(3, 2) * t, TR,
                 "S^7 sR-connection properties, 3/2 T(" + xi + ",X7)"});
    v.push_back({"o-T(" + xi + ",X7)", Quantity::SrTorsion, {i, 6}, Rational(-1, 2) * t, TR,
                 "S^7 sR torsion, -1/2 T(" + xi + ",X7)"});
  }
  const std::string s47 = "(y7^2 + y6^2 + y5^2 + y4^2)";
  const std::string s03 = "(y0^2 + y1^2 + y2^2 + y3^2)";
  const OneForm nabla12 = form(n, {"2*" + s47 + "*y1", "-2*" + s47 + "*y0", "2*" + s47 + "*y3", "-2*" + s47 + "*y2",
                                   "2*" + s03 + "*y5", "-2*" + s03 + "*y4", "2*" + s03 + "*y7", "-2*" + s03 + "*y6"});
  v.push_back({"o-nabla_X1 X2", Quantity::SrConnectionForm, {0, 1}, nabla12, TR, "S^7 sR-connection example (dy-form)"});
  v.push_back({"-o-nabla_X2 X1", Quantity::SrConnectionForm, {1, 0}, QPoly::constant(n, Rational(-1)) * nabla12, TR,
               "S^7 sR-connection example (dy-form)"});
  for (std::size_t i = 0; i < 6; ++i)
    v.push_back({"Killing X" + std::to_string(i + 1), Quantity::Killing, {i}, true, TC, "S^7 Killing sections"});

  auto row = [&](std::size_t r, bool bg, Step st, std::vector<std::size_t> ranks,
                 std::vector<std::vector<Commutator>> sets, std::size_t count) {
    ClassificationExpect e{range(r), bg, st, std::move(ranks), std::move(sets), count};
    std::string id = "table row {X1..X" + std::to_string(r) + "}";
    v.push_back({id, Quantity::Classification, range(r), e, TC, "S^7 classification table"});
  };
  std::vector<std::vector<Commutator>> r6;
  for (auto c : comms({{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {2, 4}, {2, 5},
                       {2, 6}, {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}}))
    r6.push_back({c});
  row(6, true, Step::finite_step(2), {6, 7}, r6, 7);
  row(5, true, Step::finite_step(2), {5, 7},
      {comms({{1, 2}, {1, 3}}), comms({{1, 2}, {2, 3}}), comms({{1, 2}, {1, 4}}), comms({{1, 2}, {2, 4}}),
       comms({{1, 2}, {3, 4}}), comms({{1, 2}, {1, 5}}), comms({{1, 2}, {2, 5}}), comms({{1, 2}, {3, 5}}),
       comms({{1, 2}, {4, 5}})},
      21);
  row(4, true, Step::finite_step(2), {4, 7},
      {comms({{1, 2}, {1, 3}, {2, 3}}), comms({{1, 2}, {1, 3}, {1, 4}}), comms({{1, 2}, {1, 3}, {3, 4}}),
       comms({{1, 2}, {1, 3}, {2, 4}})},
      35);
  row(3, false, Step::infinite(6), {3, 6, 6}, {comms({{1, 2}, {1, 3}, {2, 3}})}, 35);
  row(2, false, Step::infinite(3), {2, 3, 3}, {comms({{1, 2}})}, 21);
  return s;
}

} // namespace detail

/// Paper-reported values with a trust level. Theorem-consistent fixtures must
/// be reproduced exactly; table-reported ones are compared and any mismatch is
/// reported as a discrepancy.
inline FixtureSet fixtures(const std::string &example) {
  if (example == "s3") return detail::s3_fixtures();
  if (example == "s7") return detail::s7_fixtures();
  throw InputError("unknown builtin example '" + example + "' (expected s3 or s7)");
}

} // namespace subriem::builtin
