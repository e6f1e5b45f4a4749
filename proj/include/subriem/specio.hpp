#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "subriem/errors.hpp"
#include "subriem/frame.hpp"
#include "subriem/parser.hpp"
#include "subriem/vfield.hpp"

namespace subriem {

/// Malformed spec file; the message carries the 1-based line number.
class SpecError : public InputError {
public:
  SpecError(std::size_t line, const std::string &message)
      : InputError("spec line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

struct DistributionSpec {
  std::string name;
  std::size_t ambient_dim = 0;
  std::string manifold = "unit_sphere";
  std::vector<std::vector<std::string>> horizontal;
  std::vector<std::vector<std::string>> vertical;
  std::vector<std::string> names;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// "[a, b, c]" -> {"a", "b", "c"}; commas inside parentheses do not split.
inline std::vector<std::string> bracket_list(std::string_view v, std::size_t line) {
  v = trim(v);
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') throw SpecError(line, "expected a bracketed list");
  v = v.substr(1, v.size() - 2);
  std::vector<std::string> out;
  if (trim(v).empty()) return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= v.size(); ++i) {
    if (i == v.size() || (v[i] == ',' && depth == 0)) {
      const auto item = trim(v.substr(start, i - start));
      if (item.empty()) throw SpecError(line, "empty list entry");
      out.emplace_back(item);
      start = i + 1;
    } else if (v[i] == '(') {
      ++depth;
    } else if (v[i] == ')') {
      --depth;
    }
  }
  return out;
}

} // namespace detail

/// Parses the line-oriented spec format:
///   # comment
///   name = <identifier>
///   ambient_dim = <n>
///   manifold = unit_sphere
///   horizontal = [e_0, ..., e_(n-1)]     (one line per frame field, in order)
///   vertical = [e_0, ..., e_(n-1)]       (optional, one line per field)
///   names = [X1, X2, ...]                (optional)
inline DistributionSpec parse_spec(std::string_view text) {
  DistributionSpec spec;
  bool have_dim = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw SpecError(line_no, "expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (key == "name") {
      spec.name = std::string(value);
    } else if (key == "ambient_dim") {
      std::size_t n = 0;
      const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
      if (ec != std::errc() || p != value.data() + value.size() || n < 2)
        throw SpecError(line_no, "ambient_dim must be an integer >= 2");
      spec.ambient_dim = n;
      have_dim = true;
    } else if (key == "manifold") {
      if (value != "unit_sphere") throw SpecError(line_no, "only manifold = unit_sphere is supported");
      spec.manifold = std::string(value);
    } else if (key == "horizontal" || key == "vertical") {
      auto entries = detail::bracket_list(value, line_no);
      if (!have_dim) throw SpecError(line_no, "ambient_dim must precede field definitions");
      if (entries.size() != spec.ambient_dim)
        throw SpecError(line_no, "field has " + std::to_string(entries.size()) + " components, expected " +
                                     std::to_string(spec.ambient_dim));
      for (const auto &e : entries) {
        try {
          (void)parse_expr(e, spec.ambient_dim);
        } catch (const ParseError &err) {
          throw SpecError(line_no, "in '" + e + "': " + err.what());
        }
      }
      (key == "horizontal" ? spec.horizontal : spec.vertical).push_back(std::move(entries));
    } else if (key == "names") {
      spec.names = detail::bracket_list(value, line_no);
    } else {
      throw SpecError(line_no, "unknown key '" + key + "'");
    }
    if (end == text.size()) break;
  }
  if (!have_dim) throw SpecError(line_no, "missing ambient_dim");
  if (spec.horizontal.empty()) throw SpecError(line_no, "no horizontal fields");
  if (!spec.names.empty() && spec.names.size() != spec.horizontal.size())
    throw SpecError(line_no, "names has " + std::to_string(spec.names.size()) + " entries for " +
                                 std::to_string(spec.horizontal.size()) + " horizontal fields");
  return spec;
}

inline DistributionSpec load_spec(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

inline std::string write_spec(const DistributionSpec &spec) {
  std::ostringstream os;
  if (!spec.name.empty()) os << "name = " << spec.name << '\n';
  os << "ambient_dim = " << spec.ambient_dim << '\n' << "manifold = " << spec.manifold << '\n';
  auto list = [&](const char *key, const std::vector<std::string> &items) {
    os << key << " = [";
    for (std::size_t i = 0; i < items.size(); ++i) os << (i ? ", " : "") << items[i];
    os << "]\n";
  };
  for (const auto &f : spec.horizontal) list("horizontal", f);
  for (const auto &f : spec.vertical) list("vertical", f);
  if (!spec.names.empty()) list("names", spec.names);
  return os.str();
}

inline std::vector<VectorField> spec_fields(const std::vector<std::vector<std::string>> &defs, std::size_t dim) {
  std::vector<VectorField> out;
  for (const auto &d : defs) {
    std::vector<Poly> polys;
    for (const auto &e : d) polys.push_back(parse_expr(e, dim));
    out.push_back(VectorField::from_polys(polys));
  }
  return out;
}

/// Builds the distribution; engine errors (tangency, dependence, ...) propagate unchanged.
inline PDistribution to_distribution(const DistributionSpec &spec) {
  return PDistribution::build(spec_fields(spec.horizontal, spec.ambient_dim),
                              spec_fields(spec.vertical, spec.ambient_dim), spec.names);
}

} // namespace subriem
