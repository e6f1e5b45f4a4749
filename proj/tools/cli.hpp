#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "subriem/subriem.hpp"

namespace subriem::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { Ok = 0, InputFailure = 1, VerificationFailure = 2 };

struct Options {
  std::string spec;
  std::string example;
  std::vector<std::size_t> horizontal;
  std::string format = "json";
  std::string kind = "sr";
  std::vector<std::size_t> ranks;
};

/// Raw fields of the requested distribution before validation.
struct Input {
  std::string name;
  std::string source;
  std::size_t dim = 0;
  std::vector<VectorField> horizontal;
  std::vector<VectorField> vertical;
  std::vector<std::string> horizontal_names;
  std::vector<std::string> vertical_names;
  json inputs;
};

inline Input resolve(const Options &o) {
  if (o.spec.empty() == o.example.empty()) throw InputError("exactly one of --spec or --example is required");
  Input in;
  if (!o.spec.empty()) {
    if (!o.horizontal.empty()) throw InputError("--horizontal selects builtin frame fields and needs --example");
    const DistributionSpec s = load_spec(o.spec);
    in.name = s.name.empty() ? o.spec : s.name;
    in.source = "spec file " + o.spec;
    in.dim = s.ambient_dim;
    in.horizontal = spec_fields(s.horizontal, s.ambient_dim);
    in.vertical = spec_fields(s.vertical, s.ambient_dim);
    in.horizontal_names = s.names;
    if (in.horizontal_names.empty())
      for (std::size_t i = 0; i < in.horizontal.size(); ++i) in.horizontal_names.push_back("X" + std::to_string(i + 1));
    for (std::size_t i = 0; i < in.vertical.size(); ++i) in.vertical_names.push_back("V" + std::to_string(i + 1));
    in.inputs = json{{"spec", o.spec}, {"spec_name", s.name}};
  } else {
    const auto full = builtin::frame_of(o.example);
    std::vector<std::size_t> h = o.horizontal;
    if (h.empty())
      for (std::size_t i = 1; i < full.size(); ++i) h.push_back(i);
    std::sort(h.begin(), h.end());
    if (std::adjacent_find(h.begin(), h.end()) != h.end()) throw InputError("--horizontal lists a field twice");
    for (auto i : h)
      if (i == 0 || i > full.size())
        throw InputError("--horizontal index " + std::to_string(i) + " outside 1.." + std::to_string(full.size()));
    if (h.size() >= full.size()) throw InputError("--horizontal must leave at least one field vertical");
    for (std::size_t i = 1; i <= full.size(); ++i) {
      const bool is_h = std::binary_search(h.begin(), h.end(), i);
      (is_h ? in.horizontal : in.vertical).push_back(full[i - 1]);
      (is_h ? in.horizontal_names : in.vertical_names).push_back("X" + std::to_string(i));
    }
    in.name = o.example;
    for (const auto &n : in.horizontal_names) in.name += "_" + n;
    in.source = "builtin example " + o.example;
    in.dim = full.front().dim();
    in.inputs = json{{"example", o.example}, {"horizontal", in.horizontal_names}, {"vertical", in.vertical_names}};
  }
  return in;
}

inline PDistribution build(const Input &in) {
  return PDistribution::build(in.horizontal, in.vertical, in.horizontal_names);
}

inline json fields_json(const std::vector<VectorField> &f, const std::vector<std::string> &names) {
  json out = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back({{"name", names[i]}, {"components", report::field_json(f[i])}});
  return out;
}

/// Adapted basis with display names: frame, then vertical frame.
inline std::pair<std::vector<VectorField>, std::vector<std::string>> basis_of(const Input &in) {
  std::vector<VectorField> b = in.horizontal;
  b.insert(b.end(), in.vertical.begin(), in.vertical.end());
  std::vector<std::string> n = in.horizontal_names;
  n.insert(n.end(), in.vertical_names.begin(), in.vertical_names.end());
  return {b, n};
}

inline json entry(const std::string &lhs, const VectorField &v, const std::vector<VectorField> &basis,
                  const std::vector<std::string> &names) {
  return json{{"lhs", lhs}, {"value", frame_expression(v, basis, names)}, {"components", report::field_json(v)}};
}

inline Connection make_connection(const PDistribution &pd, const std::string &kind) {
  if (kind == "weitzenbock") return weitzenbock(pd);
  if (kind == "hat") return hat_connection(pd);
  return sr_connection(pd);
}

inline std::string prefix(const std::string &kind) {
  return kind == "weitzenbock" ? "" : (kind == "hat" ? "hat-" : "o-");
}

// ---------------------------------------------------------------- commands

struct Outcome {
  json report;
  int code = Ok;
};

inline Outcome cmd_check(const Input &in) {
  json h = json::array();
  bool tangent = true;
  for (std::size_t i = 0; i < in.horizontal.size(); ++i) {
    const bool t = is_tangent(in.horizontal[i]);
    tangent = tangent && t;
    h.push_back({{"name", in.horizontal_names[i]}, {"tangent", t}});
  }
  const bool rank_ok = in.horizontal.size() < in.dim;
  const std::size_t r = generic_rank(in.horizontal);
  const bool independent = r == in.horizontal.size();
  const QMatrix gram = euclidean_gram(in.horizontal);
  const bool orthonormal = is_identity(gram);
  const QPoly det = determinant(gram);
  const auto pointwise = pointwise_rank_certify(in.horizontal, 20, 0x5EED, in.horizontal.size());
  bool dual_polynomial = independent;
  if (independent) {
    try {
      (void)dual_basis(in.horizontal);
    } catch (const GramSingular &) {
      dual_polynomial = false;
    }
  }

  json v = json::array();
  bool vertical_ok = true;
  for (std::size_t j = 0; j < in.vertical.size(); ++j) {
    const bool t = is_tangent(in.vertical[j]);
    bool orth = true;
    for (const auto &x : in.horizontal) orth = orth && euclidean_dot(x, in.vertical[j]).is_zero();
    vertical_ok = vertical_ok && t && orth;
    v.push_back({{"name", in.vertical_names[j]}, {"tangent", t}, {"orthogonal_to_horizontal", orth}});
  }
  bool adapted_independent = true;
  if (!in.vertical.empty()) {
    auto [basis, names] = basis_of(in);
    adapted_independent = generic_rank(basis) == basis.size();
    vertical_ok = vertical_ok && adapted_independent;
  }
  const bool passed = tangent && rank_ok && independent && dual_polynomial && vertical_ok;
  json results{{"passed", passed},
               {"horizontal", h},
               {"rank_below_ambient", rank_ok},
               {"generic_rank", r},
               {"independent", independent},
               {"pointwise_rank_ok", pointwise.ok()},
               {"points_checked", pointwise.points_checked},
               {"orthonormal", orthonormal},
               {"gram_determinant", det.to_string()},
               {"constant_gram_certified", det.is_constant() && !det.is_zero()},
               {"dual_forms_polynomial", dual_polynomial},
               {"vertical", v},
               {"adapted_basis_independent", adapted_independent}};
  return {report::make("check", in.inputs, std::move(results), in.source), passed ? Ok : VerificationFailure};
}

inline Outcome cmd_step(const Input &in, bool full_flag) {
  const PDistribution pd = build(in);
  const FlagReport f = flag(pd);
  json results = report::flag_json(f);
  results["involutive"] = is_involutive(pd);
  if (!full_flag) results.erase("levels");
  return {report::make(full_flag ? "flag" : "step", in.inputs, std::move(results), in.source)};
}

inline Outcome cmd_metric(const Input &in) {
  const PDistribution pd = build(in);
  json entries = json::array();
  const auto &g = pd.metric();
  for (std::size_t i = 0; i < pd.dim(); ++i)
    for (std::size_t j = i; j < pd.dim(); ++j)
      if (!g(i, j).is_zero())
        entries.push_back({{"i", i}, {"j", j}, {"value", g(i, j).to_string()}});
  json forms = json::array();
  for (std::size_t i = 0; i < pd.rank(); ++i) {
    json comps = json::array();
    for (const auto &c : pd.dual_forms()[i].components()) comps.push_back(c.to_string());
    forms.push_back({{"name", "Omega" + in.horizontal_names[i].substr(1)},
                     {"value", pd.dual_forms()[i].to_string()},
                     {"components", comps}});
  }
  bool orthonormal = true;
  for (std::size_t i = 0; i < pd.rank(); ++i)
    for (std::size_t j = 0; j < pd.rank(); ++j) {
      const QPoly gij = pd.g(pd.frame()[i], pd.frame()[j]);
      const QPoly oij = pair(pd.dual_forms()[i], pd.frame()[j]);
      const Rational delta(i == j ? 1 : 0);
      orthonormal = orthonormal && gij == QPoly::constant(pd.dim(), delta) && oij == QPoly::constant(pd.dim(), delta);
    }
  json results{{"forms", forms}, {"metric_entries", entries}, {"frame_g_orthonormal_and_dual", orthonormal},
               {"convention", "g = sum_ij g_ij dy_i dy_j with g_ij = g_ji"}};
  return {report::make("metric", in.inputs, std::move(results), in.source), orthonormal ? Ok : VerificationFailure};
}

inline Outcome cmd_connection(const Input &in, const std::string &kind) {
  const PDistribution pd = build(in);
  const Connection conn = make_connection(pd, kind);
  auto [basis, names] = basis_of(in);
  json coeffs = json::array();
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t j = 0; j < pd.rank(); ++j)
      coeffs.push_back(entry(prefix(kind) + "nabla_" + names[a] + " " + names[j], conn(basis[a], pd.frame()[j]),
                             basis, names));
  json results{{"kind", kind}, {"coefficients", coeffs}, {"metric_compatible", metric_compat_check(conn)}};
  int code = Ok;
  try {
    const auto props = sr_property_report(conn);
    results["properties"] = report::property_json(props);
    if (kind == "sr" && !props.all_passed()) code = VerificationFailure;
  } catch (const MissingVerticalFrame &) {
    results["properties"] = nullptr;
    results["properties_note"] = "vertical frame not supplied; property (c) needs one";
  }
  return {report::make("connection", in.inputs, std::move(results), in.source), code};
}

inline Outcome cmd_torsion(const Input &in, const std::string &kind) {
  const PDistribution pd = build(in);
  const Connection conn = make_connection(pd, kind);
  auto [basis, names] = basis_of(in);
  json entries = json::array();
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b)
      entries.push_back(entry(prefix(kind) + "T(" + names[a] + "," + names[b] + ")", torsion(conn, basis[a], basis[b]),
                              basis, names));
  return {report::make("torsion", in.inputs, json{{"kind", kind}, {"components", entries}}, in.source)};
}

inline Outcome cmd_curvature(const Input &in, const std::string &kind) {
  const PDistribution pd = build(in);
  const Connection conn = make_connection(pd, kind);
  auto [basis, names] = basis_of(in);
  json entries = json::array();
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b)
      for (std::size_t c = 0; c < pd.rank(); ++c)
        entries.push_back(entry(prefix(kind) + "R(" + names[a] + "," + names[b] + ")" + names[c],
                                curvature(conn, basis[a], basis[b], pd.frame()[c]), basis, names));
  return {report::make("curvature", in.inputs, json{{"kind", kind}, {"components", entries}}, in.source)};
}

inline Outcome cmd_killing(const Input &in) {
  const PDistribution pd = build(in);
  auto [basis, names] = basis_of(in);
  json fields = json::array();
  for (std::size_t a = 0; a < basis.size(); ++a) fields.push_back({{"name", names[a]}, {"killing", killing_check(pd, basis[a])}});
  json results{{"fields", fields},
               {"operator", "horizontal Lie derivative (L_W g)(Y,Z) = W.g(Y,Z) + g(h[Y,W],Z) + g(h[Z,W],Y)"}};
  return {report::make("killing", in.inputs, std::move(results), in.source)};
}

inline Outcome cmd_classify(const Input &in, std::vector<std::size_t> ranks) {
  auto [basis, names] = basis_of(in);
  (void)build(in);
  if (ranks.empty())
    for (std::size_t r = 1; r < basis.size(); ++r) ranks.push_back(r);
  for (auto r : ranks)
    if (r == 0 || r > basis.size() || r >= in.dim)
      throw InputError("--rank " + std::to_string(r) + " outside 1.." + std::to_string(std::min(basis.size(), in.dim - 1)));
  const ClassificationTable t = classify_subframes(basis, ranks);
  json results = report::classification_json(t);
  // Row subsets index the whole parallelization (frame, then vertical fields).
  for (auto &row : results["rows"]) {
    json subset = json::array();
    for (const auto &label : row["subset"]) subset.push_back(names[std::stoul(label.get<std::string>().substr(1)) - 1]);
    row["subset"] = subset;
  }
  results["ranks"] = ranks;
  return {report::make("classify", in.inputs, std::move(results), in.source)};
}

inline Outcome cmd_verify(const Options &o) {
  if (o.example.empty() || !o.spec.empty()) throw InputError("verify needs --example s3|s7");
  const VerifyResult v = verify_example(o.example);
  return {report::verify_json(v), v.ok() ? Ok : VerificationFailure};
}

// ---------------------------------------------------------------- text output

inline std::string scalar_text(const json &j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

inline void text_value(std::ostream &os, const json &j, const std::string &indent) {
  if (j.is_object()) {
    if (j.contains("lhs") && j.contains("value")) {
      os << indent << j["lhs"].get<std::string>() << " = " << j["value"].get<std::string>() << '\n';
      return;
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_primitive() || (it.value().is_array() && std::all_of(it.value().begin(), it.value().end(),
                                                                              [](const json &e) { return e.is_primitive(); }))) {
        os << indent << it.key() << ": ";
        if (it.value().is_array()) {
          os << '[';
          bool first = true;
          for (const auto &e : it.value()) {
            os << (first ? "" : ", ") << scalar_text(e);
            first = false;
          }
          os << "]\n";
        } else {
          os << scalar_text(it.value()) << '\n';
        }
      } else {
        os << indent << it.key() << ":\n";
        text_value(os, it.value(), indent + "  ");
      }
    }
  } else if (j.is_array()) {
    for (const auto &e : j) {
      if (e.is_object() && !(e.contains("lhs") && e.contains("value"))) {
        os << indent << "-\n";
        text_value(os, e, indent + "  ");
      } else if (e.is_primitive()) {
        os << indent << "- " << scalar_text(e) << '\n';
      } else {
        text_value(os, e, indent);
      }
    }
  } else {
    os << indent << scalar_text(j) << '\n';
  }
}

inline void classify_text(std::ostream &os, const json &results) {
  for (const auto &row : results["rows"]) {
    std::string subset, comms, ranks;
    for (const auto &s : row["subset"]) subset += (subset.empty() ? "" : ",") + s.get<std::string>();
    for (const auto &set : row["independent_commutators"]) {
      std::string one;
      for (const auto &c : set) one += (one.empty() ? "" : ",") + c.get<std::string>();
      comms += (comms.empty() ? "(" : " (") + one + ")";
    }
    for (const auto &r : row["ranks"]) ranks += (ranks.empty() ? "" : ",") + r.dump();
    os << '{' << subset << "}  rank " << row["rank"].dump() << "  BG " << (row["bracket_generating"].get<bool>() ? "yes" : "no")
       << "  step " << scalar_text(row["step"]) << "  ranks [" << ranks << "]  commutators " << (comms.empty() ? "-" : comms)
       << '\n';
  }
  os << "rows: " << results["row_count"].dump() << '\n';
}

inline void render_text(std::ostream &os, const json &r) {
  os << "== " << r["name"].get<std::string>() << " ==\n";
  os << "source: " << r["provenance"]["source"].get<std::string>() << '\n';
  if (r["name"] == "classify") {
    classify_text(os, r["results"]);
  } else if (r["name"] == "verify") {
    const auto &res = r["results"];
    for (const auto &f : res["fixtures"])
      os << (f["equal"].get<bool>() ? "  equal   " : "  DIFFERS ") << '[' << f["trust"].get<std::string>() << "] "
         << f["id"].get<std::string>() << ": computed " << f["computed"].get<std::string>()
         << (f["equal"].get<bool>() ? "" : "; reported " + f["expected"].get<std::string>()) << '\n';
    os << "sr properties:\n";
    text_value(os, res["sr_properties"], "  ");
    os << "second path agrees: " << (res["second_path"]["agrees"].get<bool>() ? "yes" : "no") << " ("
       << res["second_path"]["cases"].dump() << " cases)\n";
    os << "verdict: " << (res["passed"].get<bool>() ? "pass" : "FAIL") << '\n';
  } else {
    text_value(os, r["results"], "");
  }
  if (!r["discrepancies"].empty()) {
    os << "discrepancies (" << r["discrepancies"].size() << "):\n";
    for (const auto &d : r["discrepancies"])
      os << "  " << d["id"].get<std::string>() << ": computed " << d["computed"].get<std::string>() << " vs reported "
         << d["expected"].get<std::string>() << (d["note"].get<std::string>().empty() ? "" : " (" + d["note"].get<std::string>() + ")")
         << '\n';
  }
  os << "assumptions: " << report::metric_extension << "; " << report::bracket_convention << '\n';
}

// ---------------------------------------------------------------- entry point

/// Runs one command. Exit codes: 0 success, 1 input error, 2 verification failure.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Parallelizable distributions on spheres: brackets, metrics, connections"};
  app.name("subriem");
  app.require_subcommand(1, 1);
  Options o;

  auto common = [&](CLI::App *sc) {
    sc->add_option("--spec", o.spec, "distribution spec file");
    sc->add_option("--example", o.example, "builtin example")->check(CLI::IsMember({"s3", "s7"}));
    sc->add_option("--horizontal", o.horizontal, "1-based builtin fields spanning HM (rest is VM)")->delimiter(',');
    sc->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto with_kind = [&](CLI::App *sc) {
    common(sc);
    sc->add_option("--kind", o.kind, "connection")->check(CLI::IsMember({"weitzenbock", "sr", "hat"}));
  };
  auto *check = app.add_subcommand("check", "tangency, independence and orthonormality");
  auto *stp = app.add_subcommand("step", "step of the distribution");
  auto *flg = app.add_subcommand("flag", "bracket flag with generic ranks");
  auto *met = app.add_subcommand("metric", "parallelization forms and sub-Riemannian metric");
  auto *con = app.add_subcommand("connection", "connection coefficients on the adapted basis");
  auto *tor = app.add_subcommand("torsion", "torsion on adapted basis pairs");
  auto *cur = app.add_subcommand("curvature", "curvature on adapted basis pairs");
  auto *kil = app.add_subcommand("killing", "Killing test for each basis field");
  auto *cls = app.add_subcommand("classify", "classify sub-frames of the parallelization");
  auto *ver = app.add_subcommand("verify", "compare a builtin example against its reported values");
  for (auto *sc : {check, stp, flg, met, kil, ver}) common(sc);
  for (auto *sc : {con, tor, cur}) with_kind(sc);
  common(cls);
  cls->add_option("--rank", o.ranks, "sub-frame ranks (default: all proper)")->delimiter(',');

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return InputFailure;
  }

  Outcome result;
  try {
    if (ver->parsed()) {
      result = cmd_verify(o);
    } else {
      const Input in = resolve(o);
      if (check->parsed()) result = cmd_check(in);
      else if (stp->parsed()) result = cmd_step(in, false);
      else if (flg->parsed()) result = cmd_step(in, true);
      else if (met->parsed()) result = cmd_metric(in);
      else if (con->parsed()) result = cmd_connection(in, o.kind);
      else if (tor->parsed()) result = cmd_torsion(in, o.kind);
      else if (cur->parsed()) result = cmd_curvature(in, o.kind);
      else if (kil->parsed()) result = cmd_killing(in);
      else result = cmd_classify(in, o.ranks);
    }
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return InputFailure;
  }

  if (o.format == "text")
    render_text(out, result.report);
  else
    out << result.report.dump(2) << '\n';
  return result.code;
}

} // namespace subriem::cli
