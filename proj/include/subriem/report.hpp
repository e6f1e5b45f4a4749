#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "subriem/bracketgen.hpp"
#include "subriem/connection.hpp"
#include "subriem/frame.hpp"
#include "subriem/verify.hpp"

namespace subriem::report {

using json = nlohmann::ordered_json;

inline constexpr const char *schema_version = "1.0";
inline constexpr const char *tool_version = "1.0.0";
inline constexpr const char *metric_extension =
    "VM is the Euclidean orthogonal complement of HM in TS^(n-1); G is the ambient Euclidean metric";
inline constexpr const char *bracket_convention = "[X,Y] = X o Y - Y o X acting on functions";

/// The five top-level keys every report carries, in order.
inline const std::vector<std::string> &top_level_keys() {
  static const std::vector<std::string> keys{"name", "inputs", "results", "provenance", "discrepancies"};
  return keys;
}

inline json provenance(const std::string &source) {
  return json{{"schema_version", schema_version},
              {"tool", "subriem"},
              {"tool_version", tool_version},
              {"source", source},
              {"assumptions", {{"metric_extension", metric_extension}, {"bracket_convention", bracket_convention}}}};
}

inline json make(const std::string &name, json inputs, json results, const std::string &source,
                 json discrepancies = json::array()) {
  json r = json::object();
  r["name"] = name;
  r["inputs"] = std::move(inputs);
  r["results"] = std::move(results);
  r["provenance"] = provenance(source);
  r["discrepancies"] = std::move(discrepancies);
  return r;
}

inline json field_json(const VectorField &x) {
  json a = json::array();
  for (const auto &c : x.components()) a.push_back(c.to_string());
  return a;
}

inline json distribution_json(const PDistribution &pd, const std::string &name) {
  json h = json::array(), v = json::array();
  for (const auto &x : pd.frame()) h.push_back(field_json(x));
  for (const auto &x : pd.vertical_frame()) v.push_back(field_json(x));
  return json{{"name", name}, {"ambient_dim", pd.dim()}, {"manifold", "unit_sphere"},
              {"names", pd.names()}, {"horizontal", h}, {"vertical", v}};
}

inline json step_json(const Step &s) { return s.finite ? json(s.value) : json("infinite"); }

inline json flag_json(const FlagReport &f) {
  json levels = json::array();
  for (const auto &l : f.levels)
    levels.push_back({{"s", l.s}, {"generic_rank", l.generic_rank}, {"spanning", l.labels},
                      {"pointwise_rank_ok", l.pointwise_rank_ok}, {"points_checked", l.points_checked}});
  return json{{"step", step_json(f.verdict)}, {"ranks", f.ranks()}, {"target_rank", f.target_rank},
              {"bracket_generating", f.verdict.finite}, {"pointwise_certified", f.pointwise_ok()},
              {"levels", levels}};
}

inline json property_json(const PropertyReport &p) {
  json checks = json::array();
  for (const auto &c : p.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"cases", c.cases}, {"witness", c.witness}});
  return json{{"connection", p.connection}, {"all_passed", p.all_passed()}, {"checks", checks}};
}

inline json classification_json(const ClassificationTable &t) {
  json rows = json::array();
  for (const auto &r : t.rows) {
    json subset = json::array();
    for (auto i : r.subset) subset.push_back("X" + std::to_string(i + 1));
    json sets = json::array();
    for (const auto &s : r.independent_commutators) {
      json one = json::array();
      for (const auto &c : s) one.push_back(c.label());
      sets.push_back(one);
    }
    rows.push_back({{"subset", subset}, {"rank", r.rank}, {"involutive", r.involutive},
                    {"bracket_generating", r.bracket_generating()}, {"step", step_json(r.flag.verdict)},
                    {"ranks", r.flag.ranks()}, {"independent_commutators", sets}, {"completions", r.completions}});
  }
  return json{{"manifold_dim", t.manifold_dim}, {"frame_size", t.frame_size}, {"row_count", t.rows.size()},
              {"rows", rows}};
}

inline json outcome_json(const FixtureOutcome &o) {
  return json{{"id", o.id},           {"quantity", o.quantity}, {"trust", o.trust},   {"source", o.source},
              {"expected", o.expected}, {"computed", o.computed}, {"equal", o.equal}, {"note", o.note}};
}

inline json verify_json(const VerifyResult &v) {
  json fixtures = json::array();
  std::size_t equal = 0;
  for (const auto &o : v.outcomes) {
    fixtures.push_back(outcome_json(o));
    equal += o.equal ? 1 : 0;
  }
  json disc = json::array();
  for (const auto *o : v.discrepancies()) disc.push_back(outcome_json(*o));
  json results{{"example", v.example},
               {"passed", v.ok()},
               {"fixtures_total", v.outcomes.size()},
               {"fixtures_equal", equal},
               {"fixtures", fixtures},
               {"sr_properties", property_json(v.sr_properties)},
               {"second_path", {{"agrees", v.second_path.agrees},
                                {"cases", v.second_path.cases},
                                {"witness", v.second_path.witness}}}};
  json r = make("verify", json{{"example", v.example}}, std::move(results), "builtin example " + v.example,
                std::move(disc));
  r["provenance"]["trust_policy"] =
      "theorem-consistent fixtures must match exactly; table-reported fixtures are compared and mismatches "
      "listed as discrepancies; computed values are authoritative";
  return r;
}

} // namespace subriem::report
