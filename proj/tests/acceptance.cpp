// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every check is exact; random cases come from fixed seeds.
#include "support.hpp"

#include <cli.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace subriem;
using namespace subriem::test;

namespace {

/// A criterion returns the empty string on success, otherwise the reason.
struct Criterion {
  int number;
  std::string title;
  std::function<std::string()> check;
};

/// Collects failure reasons; only the first few are kept verbatim.
class Failures {
public:
  void add(const std::string &why) {
    if (count_++ < 4) text_ += (text_.empty() ? "" : "; ") + why;
  }
  void expect(bool ok, const std::string &why) {
    if (!ok) add(why);
  }
  std::string str() const {
    if (count_ <= 4) return text_;
    return text_ + "; and " + std::to_string(count_ - 4) + " more";
  }

private:
  std::size_t count_ = 0;
  std::string text_;
};

std::string name_of(std::size_t i) { return "X" + std::to_string(i + 1); }

std::string ranks_text(const std::vector<std::size_t> &r) {
  std::string s = "[";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + "]";
}

/// Commutator sets as an unordered collection of label lists.
std::set<std::vector<std::string>> as_set(const std::vector<std::vector<Commutator>> &sets) {
  std::set<std::vector<std::string>> out;
  for (const auto &set : sets) {
    std::vector<std::string> labels;
    for (const auto &c : set) labels.push_back(c.label());
    out.insert(labels);
  }
  return out;
}

QPoly constant(std::size_t n, long v) { return QPoly::constant(n, Rational(v)); }

std::string metric_reproduction() {
  Failures f;
  const std::pair<const char *, SymTensor2> displays[] = {{"s3", builtin::detail::s3_metric_display()},
                                                          {"s7", builtin::detail::s7_metric_display()}};
  for (const auto &[ex, shown] : displays) {
    const SymTensor2 g = sr_metric(builtin::default_distribution(ex));
    std::string differing;
    std::string sample;
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = i; j < g.dim(); ++j)
        if (!(g(i, j) == shown(i, j))) {
          const std::string entry = "g" + std::to_string(i) + std::to_string(j);
          differing += (differing.empty() ? "" : " ") + entry;
          if (sample.empty())
            sample = entry + " displayed " + shown(i, j).to_string() + ", computed " + g(i, j).to_string();
        }
    f.expect(differing.empty(), std::string(ex) + " differs at " + differing + " (" + sample + ")");
  }
  return f.str();
}

std::string orthonormality() {
  Failures f;
  for (const auto *ex : {"s3", "s7"}) {
    const auto pd = builtin::default_distribution(ex);
    const auto &x = pd.frame();
    const auto &omega = pd.dual_forms();
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) {
        const QPoly delta = constant(pd.dim(), i == j ? 1 : 0);
        const std::string at = std::string(ex) + " (" + name_of(i) + "," + name_of(j) + ")";
        f.expect(pd.g(x[i], x[j]) == delta, "g " + at);
        f.expect(tensor_apply(sr_metric(pd), x[i], x[j]) == delta, "metric tensor " + at);
        f.expect(pair(omega[i], x[j]) == delta, "Omega " + at);
      }
  }
  return f.str();
}

std::string step_results() {
  Failures f;
  const auto s3 = builtin::s3();
  for (const auto &fx : builtin::fixtures("s3").fixtures) {
    if (fx.quantity == builtin::Quantity::StepOf) {
      std::vector<VectorField> sub;
      for (auto i : fx.args) sub.push_back(s3[i]);
      const Step got = step(PDistribution::build(sub));
      f.expect(got == std::get<Step>(fx.expected), fx.id + " is " + got.to_string());
    }
    if (fx.quantity == builtin::Quantity::StructureCount) {
      std::size_t generating = 0;
      for (const auto &row : classify_subframes(s3, {fx.args.front()}).rows)
        generating += row.bracket_generating() && row.flag.verdict == Step::finite_step(2);
      f.expect(generating == std::get<std::size_t>(fx.expected),
               "S^3 has " + std::to_string(generating) + " step-2 rank-2 structures");
    }
  }

  const auto table = classify_subframes(builtin::s7(), {6, 5, 4, 3, 2});
  std::size_t rows_checked = 0;
  for (const auto &fx : builtin::fixtures("s7").fixtures) {
    if (fx.quantity != builtin::Quantity::Classification) continue;
    const auto &want = std::get<builtin::ClassificationExpect>(fx.expected);
    const auto rows = table.rows_of_rank(want.subset.size());
    const ClassificationRow *row = nullptr;
    for (const auto *r : rows)
      if (r->subset == want.subset) row = r;
    if (!row) {
      f.add(fx.id + " missing");
      continue;
    }
    ++rows_checked;
    f.expect(row->bracket_generating() == want.bracket_generating, fx.id + " bracket generating");
    f.expect(row->flag.verdict == want.step, fx.id + " step " + row->flag.verdict.to_string());
    f.expect(row->flag.ranks() == want.ranks, fx.id + " ranks " + ranks_text(row->flag.ranks()));
    f.expect(as_set(row->independent_commutators) == as_set(want.independent_commutators),
             fx.id + " commutator sets");
    f.expect(rows.size() == want.rows_of_same_rank, fx.id + " rank count " + std::to_string(rows.size()));
  }
  f.expect(rows_checked == 5, "checked " + std::to_string(rows_checked) + " of 5 table rows");

  // Stabilizing ranks of the non-generating rows, stated independently of the fixtures.
  const auto first = [&](std::size_t r) { return table.rows_of_rank(r).front(); };
  f.expect(first(3)->flag.verdict == Step::infinite(6), "{X1,X2,X3} does not stabilize at 6");
  f.expect(first(2)->flag.verdict == Step::infinite(3), "{X1,X2} does not stabilize at 3");
  f.expect(first(6)->flag.verdict == Step::finite_step(2), "rank 6 is not step 2");
  f.expect(first(5)->flag.verdict == Step::finite_step(2), "{X1..X5} is not step 2");
  f.expect(first(4)->flag.verdict == Step::finite_step(2), "{X1..X4} is not step 2");
  return f.str();
}

std::string weitzenbock_checks() {
  Failures f;
  SphereSampler s(0xACC4);
  for (const auto *ex : {"s3", "s7"}) {
    const auto pd = builtin::default_distribution(ex);
    const auto nabla = weitzenbock(pd);
    for (const auto &y : builtin::frame_of(ex))
      for (std::size_t i = 0; i < pd.rank(); ++i)
        f.expect(nabla(y, pd.frame()[i]).is_zero(), std::string(ex) + " nabla " + name_of(i) + " nonzero");
    f.expect(metric_compat_check(nabla), std::string(ex) + " nabla g nonzero");
    for (int c = 0; c < 25; ++c) {
      const auto y = s.tangent_field(pd.dim()), z = s.tangent_field(pd.dim());
      const auto w = s.combination(pd.frame());
      f.expect(curvature(nabla, y, z, w).is_zero(), std::string(ex) + " curvature case " + std::to_string(c));
    }
    for (const auto &fx : builtin::fixtures(ex).fixtures) {
      if (fx.quantity != builtin::Quantity::Torsion) continue;
      const auto full = builtin::frame_of(ex);
      const auto got = torsion(nabla, full[fx.args[0]], full[fx.args[1]]);
      f.expect(got == std::get<VectorField>(fx.expected), std::string(ex) + " " + fx.id + " = " + got.to_string());
    }
  }
  // S^3 torsion table, written out here as well as in the fixtures.
  const auto x = builtin::s3();
  const auto nabla = weitzenbock(builtin::default_distribution("s3"));
  f.expect(torsion(nabla, x[0], x[1]).is_zero(), "T(X1,X2) nonzero");
  f.expect(torsion(nabla, x[0], x[2]) == Rational(-2) * x[1], "T(X1,X3) is not -2 X2");
  f.expect(torsion(nabla, x[1], x[2]) == Rational(2) * x[0], "T(X2,X3) is not 2 X1");
  return f.str();
}

std::string sr_property_suite() {
  Failures f;
  for (const auto *ex : {"s3", "s7"}) {
    const auto rep = sr_property_report(sr_connection(builtin::default_distribution(ex)));
    for (const auto *name :
         {"a_metric", "b_horizontal_torsion", "c_vertical_torsion_symmetry", "closed_form_vertical_torsion"}) {
      const auto *c = rep.find(name);
      if (!c)
        f.add(std::string(ex) + " " + name + " not run");
      else
        f.expect(c->passed && c->cases > 0, std::string(ex) + " " + name + ": " + c->witness);
    }
  }
  return f.str();
}

std::string levi_civita_degeneration() {
  Failures f;
  const auto x = builtin::s3();
  const auto pd = PDistribution::build(x);
  const auto sr = sr_connection(pd);
  SphereSampler s(0xACC6);
  std::vector<VectorField> probes = x;
  for (int c = 0; c < 5; ++c) probes.push_back(s.tangent_field(4));
  for (std::size_t a = 0; a < probes.size(); ++a)
    for (std::size_t b = 0; b < probes.size(); ++b)
      f.expect(torsion(sr, probes[a], probes[b]).is_zero(),
               "torsion nonzero on probes " + std::to_string(a) + "," + std::to_string(b));
  f.expect(metric_compat_check(sr), "not metric");
  f.expect(sr_property_report(sr).all_passed(), "property suite fails");
  return f.str();
}

std::string killing_sections() {
  Failures f;
  for (const auto *ex : {"s3", "s7"}) {
    const auto pd = builtin::default_distribution(ex);
    const auto full = builtin::frame_of(ex);
    for (std::size_t i = 0; i < full.size(); ++i)
      f.expect(killing_check(pd, full[i]), std::string(ex) + " " + name_of(i) + " is not Killing");
  }
  return f.str();
}

std::string discrepancy_reporting() {
  Failures f;
  std::ostringstream out, err;
  const int code = cli::run({"verify", "--example", "s3", "--format", "json"}, out, err);
  f.expect(code == 0, "exit code " + std::to_string(code) + ": " + err.str());
  const auto j = cli::json::parse(out.str());
  const auto &res = j["results"];
  f.expect(res["passed"].get<bool>(), "verdict is not pass");
  f.expect(res["sr_properties"]["all_passed"].get<bool>(), "sR properties fail");
  f.expect(res["second_path"]["agrees"].get<bool>(),
           "second path disagrees: " + res["second_path"]["witness"].get<std::string>());
  f.expect(res["second_path"]["cases"].get<std::size_t>() > 0, "second path ran no cases");

  std::set<std::string> logged;
  for (const auto &d : j["discrepancies"]) logged.insert(d["id"].get<std::string>());
  std::size_t table_reported_unequal = 0;
  for (const auto &o : res["fixtures"]) {
    const auto id = o["id"].get<std::string>();
    if (o["equal"].get<bool>()) continue;
    f.expect(o["trust"] == "table-reported", id + " is theorem-consistent and unequal");
    ++table_reported_unequal;
    f.expect(logged.count(id) == 1, id + " has no discrepancy record");
  }
  f.expect(logged.size() == table_reported_unequal, "discrepancy records do not match unequal fixtures");

  bool saw = false;
  for (const auto &d : j["discrepancies"])
    if (d["id"] == "o-nabla_X3 X1") {
      saw = true;
      f.expect(d["expected"] == "-3*X2" && d["computed"] == "-2*X2",
               "o-nabla_X3 X1 record " + d["expected"].dump() + " vs " + d["computed"].dump());
    }
  f.expect(saw, "no record for o-nabla_X3 X1");
  for (const auto *q : {"sr_connection", "sr_torsion", "sr_curvature"}) {
    bool present = false;
    for (const auto &o : res["fixtures"]) present = present || o["quantity"] == q;
    f.expect(present, std::string("no ") + q + " fixture was computed");
  }
  return f.str();
}

std::string property_algebra() {
  Failures f;
  constexpr int cases = 100;
  auto tally = [&](const std::string &law, int failed) {
    f.expect(failed == 0, law + " failed " + std::to_string(failed) + "/" + std::to_string(cases));
  };

  SphereSampler s(0xACC9);
  int antisym = 0, jacobi = 0, leibniz = 0;
  for (int c = 0; c < cases; ++c) {
    const auto x = s.tangent_field(4, 1, 2), y = s.tangent_field(4, 1, 2), z = s.tangent_field(4, 1, 2);
    const auto g = s.qpoly(4, 2, 3);
    antisym += !(lie_bracket(x, y) + lie_bracket(y, x)).is_zero();
    jacobi += !(lie_bracket(lie_bracket(x, y), z) + lie_bracket(lie_bracket(y, z), x) +
                lie_bracket(lie_bracket(z, x), y))
                   .is_zero();
    leibniz += !(lie_bracket(x, g * y) == direct_deriv(x, g) * y + g * lie_bracket(x, y));
  }
  tally("bracket antisymmetry", antisym);
  tally("Jacobi", jacobi);
  tally("bracket Leibniz", leibniz);

  int idempotent = 0;
  const auto s3 = builtin::default_distribution("s3");
  const auto s7 = builtin::default_distribution("s7");
  for (int c = 0; c < cases; ++c) {
    const auto &pd = c % 2 ? s7 : s3;
    const auto y = s.tangent_field(pd.dim(), 2, 2);
    const auto hy = pd.h(y), vy = pd.v(y);
    idempotent += !(pd.h(hy) == hy && pd.v(vy) == vy && hy + vy == y);
  }
  tally("projector idempotence", idempotent);

  for (const auto &conn : {weitzenbock(s3), hat_connection(s3), sr_connection(s3)}) {
    int lz = 0, tensorial = 0;
    for (int c = 0; c < cases; ++c) {
      const auto w = s.tangent_field(4);
      const auto z = s.combination(s3.frame());
      const auto g = s.qpoly(4, 2, 2);
      const auto base = conn(w, z);
      lz += !(conn(w, g * z) == direct_deriv(w, g) * z + g * base);
      tensorial += !(conn(g * w, z) == g * base);
    }
    tally(to_string(conn.kind()) + " connection Leibniz", lz);
    tally(to_string(conn.kind()) + " connection tensoriality", tensorial);
  }

  const auto sr = sr_connection(s3);
  const auto full = builtin::s3();
  int curv = 0;
  for (int c = 0; c < cases; ++c) {
    const auto y = s.combination(full, 1, 1), z = s.combination(full, 1, 1);
    const auto w = s.combination(s3.frame());
    const auto r = curvature(sr, y, z, w);
    curv += !(curvature(sr, z, y, w) == -r);
  }
  tally("curvature antisymmetry", curv);
  return f.str();
}

std::string parser_and_cli_contract() {
  Failures f;
  int round_trips = 0;
  for (std::size_t n : {3u, 4u, 8u, 4u}) {
    ExprGen gen(0xACC10 + n + round_trips, n);
    for (int c = 0; c < 50; ++c, ++round_trips) {
      const std::string text = gen.expr(2);
      const Poly p = parse_expr(text, n);
      const std::string printed = print_expr(p);
      const Poly q = parse_expr(printed, n);
      f.expect(p == q && print_expr(q) == printed, "round trip of '" + text + "' gave '" + printed + "'");
    }
  }
  f.expect(round_trips == 200, "ran " + std::to_string(round_trips) + " round trips");

  const std::string specs = std::string(SUBRIEM_SOURCE_DIR) + "/specs/";
  const std::vector<std::pair<std::vector<std::string>, int>> contract{
      {{"step", "--example", "s3"}, 0},
      {{"verify", "--example", "s3"}, 0},
      {{"step", "--example", "s15"}, 1},
      {{"step", "--spec", specs + "does_not_exist.spec"}, 1},
      {{"step", "--example", "s3", "--format", "xml"}, 1},
      {{"bogus"}, 1},
      {{"check", "--spec", specs + "s2_rotation.spec"}, 2},
  };
  for (const auto &[args, want] : contract) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    std::string cmd;
    for (const auto &a : args) cmd += (cmd.empty() ? "" : " ") + a;
    f.expect(code == want, "'" + cmd + "' exited " + std::to_string(code) + ", expected " + std::to_string(want));
  }

  const std::string python = SUBRIEM_PYTHON;
  if (python.empty()) {
    f.add("no Python interpreter for schema validation");
    return f.str();
  }
  const auto log = std::filesystem::temp_directory_path() / "subriem_acceptance_schema.log";
  const std::string command = "\"" + python + "\" \"" + SUBRIEM_SOURCE_DIR + "/tests/validate_reports.py\" \"" +
                              SUBRIEM_TOOL_PATH + "\" \"" + SUBRIEM_SOURCE_DIR + "\" > \"" + log.string() +
                              "\" 2>&1";
  f.expect(std::system(command.c_str()) == 0, "schema validation failed, see " + log.string());
  return f.str();
}

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "metric reproduction", metric_reproduction},
      {2, "orthonormality and duality", orthonormality},
      {3, "step results", step_results},
      {4, "Weitzenbock connection", weitzenbock_checks},
      {5, "sR connection property suite", sr_property_suite},
      {6, "Levi-Civita degeneration", levi_civita_degeneration},
      {7, "Killing sections", killing_sections},
      {8, "discrepancy reporting", discrepancy_reporting},
      {9, "property-based algebra suite", property_algebra},
      {10, "parser round trip and CLI contract", parser_and_cli_contract},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string why;
    try {
      why = c.check();
    } catch (const std::exception &e) {
      why = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, " (%.1fs)", secs);
    if (why.empty()) {
      std::cout << "PASS criterion " << c.number << ": " << c.title << timing << '\n';
    } else {
      ++failed;
      std::cout << "FAIL criterion " << c.number << ": " << c.title << timing << ": " << why << '\n';
    }
    std::cout.flush();
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
