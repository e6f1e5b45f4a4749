#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "subriem/bracketgen.hpp"
#include "subriem/builtin.hpp"
#include "subriem/connection.hpp"
#include "subriem/frame.hpp"

namespace subriem {

/// Renders Y as a combination of an orthonormal frame when it is one, else as components.
inline std::string frame_expression(const VectorField &y, const std::vector<VectorField> &frame,
                                    const std::vector<std::string> &names) {
  if (y.is_zero()) return "0";
  VectorField rebuilt(y.dim());
  std::vector<QPoly> c;
  for (const auto &x : frame) {
    c.push_back(euclidean_dot(y, x));
    rebuilt += c.back() * x;
  }
  if (!(rebuilt == y)) return y.to_string();
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    std::string coef;
    bool negative = false;
    if (c[i].is_constant()) {
      Rational r = c[i].constant_term();
      negative = r.sign() < 0;
      if (negative) r = -r;
      coef = r.is_one() ? "" : r.to_string() + "*";
    } else {
      coef = "(" + c[i].to_string() + ")*";
    }
    if (out.empty())
      out = (negative ? "-" : "") + coef + names[i];
    else
      out += (negative ? " - " : " + ") + coef + names[i];
  }
  return out;
}

inline std::string symtensor_string(const SymTensor2 &g) {
  std::string out;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i; j < g.dim(); ++j) {
      if (g(i, j).is_zero()) continue;
      if (!out.empty()) out += "; ";
      out += "g" + std::to_string(i) + std::to_string(j) + " = " + g(i, j).to_string();
    }
  return out.empty() ? "0" : out;
}

struct FixtureOutcome {
  std::string id;
  std::string quantity;
  std::string trust;
  std::string source;
  std::string expected;
  std::string computed;
  bool equal = false;
  std::string note;
};

struct SecondPathResult {
  bool agrees = true;
  std::size_t cases = 0;
  std::string witness;
};

struct VerifyResult {
  std::string example;
  std::vector<FixtureOutcome> outcomes;
  PropertyReport sr_properties;
  SecondPathResult second_path;

  /// Theorem-consistent mismatches, failing sR properties or path disagreement.
  bool ok() const {
    for (const auto &o : outcomes)
      if (!o.equal && o.trust == builtin::to_string(builtin::Trust::TheoremConsistent)) return false;
    return sr_properties.all_passed() && second_path.agrees;
  }
  std::vector<const FixtureOutcome *> discrepancies() const {
    std::vector<const FixtureOutcome *> out;
    for (const auto &o : outcomes)
      if (!o.equal) out.push_back(&o);
    return out;
  }
};

namespace detail {

inline std::vector<std::vector<std::string>> commutator_sets(const std::vector<std::vector<Commutator>> &sets) {
  std::vector<std::vector<std::string>> out;
  for (const auto &s : sets) {
    std::vector<std::string> labels;
    for (const auto &c : s) labels.push_back(c.label());
    std::sort(labels.begin(), labels.end());
    out.push_back(std::move(labels));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string sets_string(const std::vector<std::vector<std::string>> &sets) {
  std::string out;
  for (const auto &s : sets) {
    if (!out.empty()) out += ", ";
    out += "(";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i];
    out += ")";
  }
  return out;
}

inline std::string ranks_string(const std::vector<std::size_t> &r) {
  std::string out = "[";
  for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + std::to_string(r[i]);
  return out + "]";
}

/// Compares the operational sR connection with the coefficient-table reconstruction
/// built from structure functions alone, on every basis pair and on o-T, o-R of the frame.
inline SecondPathResult compare_paths(const PDistribution &pd, const Connection &sr, std::size_t max_curvature) {
  SecondPathResult res;
  const auto operational = coefficient_table(sr);
  const auto structural = sr_coefficients_from_structure(pd);
  ++res.cases;
  if (!(operational == structural)) {
    res.agrees = false;
    res.witness = "coefficient tables differ";
    return res;
  }
  const Connection table = table_connection(pd, structural);
  std::vector<VectorField> basis = pd.frame();
  basis.insert(basis.end(), pd.vertical_frame().begin(), pd.vertical_frame().end());
  const auto names = adapted_basis_names(pd);
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b) {
      ++res.cases;
      if (!(torsion(sr, basis[a], basis[b]) == torsion(table, basis[a], basis[b]))) {
        res.agrees = false;
        res.witness = "o-T(" + names[a] + "," + names[b] + ") differs";
        return res;
      }
    }
  std::size_t done = 0;
  for (std::size_t a = 0; a < basis.size() && done < max_curvature; ++a)
    for (std::size_t b = a + 1; b < basis.size() && done < max_curvature; ++b)
      for (std::size_t c = 0; c < pd.rank() && done < max_curvature; ++c, ++done) {
        ++res.cases;
        if (!(curvature(sr, basis[a], basis[b], pd.frame()[c]) == curvature(table, basis[a], basis[b], pd.frame()[c]))) {
          res.agrees = false;
          res.witness = "o-R(" + names[a] + "," + names[b] + ")" + names[c] + " differs";
          return res;
        }
      }
  return res;
}

} // namespace detail

/// Recomputes every fixture of a builtin example from the engine and compares.
/// Computed values are authoritative; table-reported mismatches become discrepancies.
inline VerifyResult verify_example(const std::string &example) {
  using builtin::Quantity;
  const auto set = builtin::fixtures(example);
  const auto full = builtin::frame_of(example);
  std::vector<std::string> full_names;
  for (std::size_t i = 0; i < full.size(); ++i) full_names.push_back("X" + std::to_string(i + 1));
  const PDistribution pd = builtin::default_distribution(example);
  const Connection w = weitzenbock(pd);
  const Connection sr = sr_connection(pd);
  auto fe = [&](const VectorField &y) { return frame_expression(y, full, full_names); };

  VerifyResult res;
  res.example = example;
  std::vector<std::optional<ClassificationTable>> tables(full.size() + 1);
  auto table_of_rank = [&](std::size_t r) -> const ClassificationTable & {
    if (!tables[r]) tables[r] = classify_subframes(full, {r});
    return *tables[r];
  };

  for (const auto &fx : set.fixtures) {
    FixtureOutcome o{fx.id, builtin::to_string(fx.quantity), builtin::to_string(fx.trust), fx.source, "", "", false, ""};
    const auto &a = fx.args;
    auto vector_case = [&](const VectorField &computed) {
      const auto &e = std::get<VectorField>(fx.expected);
      o.expected = fe(e);
      o.computed = fe(computed);
      o.equal = e == computed;
    };
    switch (fx.quantity) {
    case Quantity::Form: {
      const auto &e = std::get<OneForm>(fx.expected);
      const OneForm c = pd.dual_forms().at(a[0]);
      o.expected = e.to_string();
      o.computed = c.to_string();
      o.equal = e == c;
      break;
    }
    case Quantity::Metric: {
      const auto &e = std::get<SymTensor2>(fx.expected);
      const SymTensor2 &c = pd.metric();
      o.equal = e == c;
      SymTensor2 de(e.dim()), dc(e.dim());
      for (std::size_t i = 0; i < e.dim(); ++i)
        for (std::size_t j = i; j < e.dim(); ++j)
          if (!(e(i, j) == c(i, j))) {
            de.set(i, j, e(i, j));
            dc.set(i, j, c(i, j));
            o.note += (o.note.empty() ? "differing entries: " : ", ") + ("g" + std::to_string(i) + std::to_string(j));
          }
      o.expected = o.equal ? symtensor_string(e) : symtensor_string(de);
      o.computed = o.equal ? symtensor_string(c) : symtensor_string(dc);
      break;
    }
    case Quantity::Bracket: vector_case(lie_bracket(full[a[0]], full[a[1]])); break;
    case Quantity::Weitzenbock: vector_case(w(full[a[0]], full[a[1]])); break;
    case Quantity::Torsion: vector_case(torsion(w, full[a[0]], full[a[1]])); break;
    case Quantity::SrConnection: vector_case(sr(full[a[0]], full[a[1]])); break;
    case Quantity::SrTorsion: vector_case(torsion(sr, full[a[0]], full[a[1]])); break;
    case Quantity::SrCurvature: vector_case(curvature(sr, full[a[0]], full[a[1]], full[a[2]])); break;
    case Quantity::SrConnectionForm: {
      const auto &e = std::get<OneForm>(fx.expected);
      const VectorField c = sr(full[a[0]], full[a[1]]);
      const bool literal = flat(c) == e;
      const bool dual = VectorField(e.components()) == c;
      o.expected = e.to_string();
      o.computed = flat(c).to_string();
      o.equal = literal && dual;
      o.note = std::string("literal 1-form comparison ") + (literal ? "equal" : "differs") +
               "; Euclidean-dual vector comparison " + (dual ? "equal" : "differs");
      break;
    }
    case Quantity::SrAntisymmetry: {
      bool all = true;
      for (std::size_t i = 0; i < pd.rank() && all; ++i)
        for (std::size_t j = i + 1; j < pd.rank() && all; ++j) {
          const VectorField s = sr(full[i], full[j]) + sr(full[j], full[i]);
          if (!s.is_zero()) {
            all = false;
            o.note = "o-nabla_X" + std::to_string(i + 1) + " X" + std::to_string(j + 1) + " + o-nabla_X" +
                     std::to_string(j + 1) + " X" + std::to_string(i + 1) + " = " + fe(s);
          }
        }
      o.expected = "true";
      o.computed = all ? "true" : "false";
      o.equal = all == std::get<bool>(fx.expected);
      break;
    }
    case Quantity::StepOf: {
      const auto rep = flag(PDistribution::build([&] {
        std::vector<VectorField> f;
        for (auto i : a) f.push_back(full[i]);
        return f;
      }()));
      const auto &e = std::get<Step>(fx.expected);
      o.expected = e.to_string();
      o.computed = rep.verdict.to_string() + " (ranks " + detail::ranks_string(rep.ranks()) + ")";
      o.equal = rep.verdict == e;
      break;
    }
    case Quantity::StructureCount: {
      std::size_t count = 0;
      for (const auto &row : table_of_rank(a[0]).rows) count += row.bracket_generating() ? 1 : 0;
      const auto e = std::get<std::size_t>(fx.expected);
      o.expected = std::to_string(e);
      o.computed = std::to_string(count);
      o.equal = count == e;
      break;
    }
    case Quantity::Killing: {
      const bool c = killing_check(pd, full[a[0]]);
      o.expected = std::get<bool>(fx.expected) ? "true" : "false";
      o.computed = c ? "true" : "false";
      o.equal = c == std::get<bool>(fx.expected);
      break;
    }
    case Quantity::Classification: {
      const auto &e = std::get<builtin::ClassificationExpect>(fx.expected);
      const auto &tab = table_of_rank(e.subset.size());
      const ClassificationRow *row = nullptr;
      for (const auto &r : tab.rows)
        if (r.subset == e.subset) row = &r;
      const auto es = detail::commutator_sets(e.independent_commutators);
      const auto cs = detail::commutator_sets(row->independent_commutators);
      auto render = [](bool bg, const Step &st, const std::vector<std::size_t> &ranks, const auto &sets,
                       std::size_t count) {
        return std::string(bg ? "bracket generating" : "not bracket generating") + ", step " + st.to_string() +
               ", ranks " + detail::ranks_string(ranks) + ", commutators " + detail::sets_string(sets) + ", " +
               std::to_string(count) + " sub-frames of this rank";
      };
      o.expected = render(e.bracket_generating, e.step, e.ranks, es, e.rows_of_same_rank);
      o.computed = render(row->bracket_generating(), row->flag.verdict, row->flag.ranks(), cs, tab.rows.size());
      o.equal = e.bracket_generating == row->bracket_generating() && e.step == row->flag.verdict &&
                e.ranks == row->flag.ranks() && es == cs && e.rows_of_same_rank == tab.rows.size();
      break;
    }
    }
    res.outcomes.push_back(std::move(o));
  }
  res.sr_properties = sr_property_report(sr);
  res.second_path = detail::compare_paths(pd, sr, example == "s3" ? 64 : 12);
  return res;
}

} // namespace subriem
