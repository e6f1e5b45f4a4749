#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "subriem/frame.hpp"
#include "subriem/vfield.hpp"

namespace subriem {

/// Verdict of the flag D^1 c D^2 c ...: finite step r, or infinite step with
/// the rank at which the flag stabilized.
struct Step {
  bool finite = false;
  std::size_t value = 0;

  static Step finite_step(std::size_t r) { return {true, r}; }
  static Step infinite(std::size_t stabilized_rank) { return {false, stabilized_rank}; }

  std::string to_string() const { return finite ? std::to_string(value) : "infinite"; }
  friend bool operator==(const Step &, const Step &) = default;
};

struct FlagLevel {
  std::size_t s = 0;
  std::vector<VectorField> spanning;
  std::vector<std::string> labels;
  std::size_t generic_rank = 0;
  bool pointwise_rank_ok = false;
  std::size_t points_checked = 0;
};

struct FlagReport {
  std::vector<FlagLevel> levels;
  Step verdict;
  std::size_t target_rank = 0;

  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> r;
    for (const auto &l : levels) r.push_back(l.generic_rank);
    return r;
  }
  bool pointwise_ok() const {
    return std::all_of(levels.begin(), levels.end(), [](const FlagLevel &l) { return l.pointwise_rank_ok; });
  }
};

struct FlagOptions {
  std::size_t sample_points = 20;
  std::uint64_t seed = 0xF1A6;
};

/// Bracket flag D^(s+1) = D^s + [D, D^s], pruned to an independent spanning set.
///
/// Brackets are taken between frame fields and the fields added at the
/// previous level; brackets with older fields already lie in D^s. Candidates
/// are visited frame-index-major so the earliest generated field is kept.
inline FlagReport flag(const PDistribution &pd, const FlagOptions &opts = {}) {
  const RankOracle oracle(pd.dim());
  FlagReport rep;
  rep.target_rank = pd.manifold_dim();
  const auto &frame = pd.frame();
  const auto &names = pd.names();

  std::vector<VectorField> span = frame;
  std::vector<std::string> labels = names;
  // Frame index of each newly added field, or npos for bracket fields.
  std::vector<std::size_t> new_frame_index;
  for (std::size_t i = 0; i < frame.size(); ++i) new_frame_index.push_back(i);
  std::size_t begin_new = 0;

  auto certify = [&](FlagLevel &level) {
    auto pw = pointwise_rank_certify(level.spanning, opts.sample_points, opts.seed + level.s, level.generic_rank);
    level.pointwise_rank_ok = pw.ok();
    level.points_checked = pw.points_checked;
  };

  FlagLevel first{1, span, labels, span.size(), false, 0};
  certify(first);
  rep.levels.push_back(std::move(first));
  if (span.size() == rep.target_rank) {
    rep.verdict = Step::finite_step(1);
    return rep;
  }

  for (std::size_t s = 1;; ++s) {
    const std::size_t end_new = span.size();
    std::vector<std::size_t> next_frame_index;
    for (std::size_t i = 0; i < frame.size() && span.size() < rep.target_rank; ++i) {
      for (std::size_t j = begin_new; j < end_new && span.size() < rep.target_rank; ++j) {
        const std::size_t fj = new_frame_index[j - begin_new];
        if (fj != static_cast<std::size_t>(-1) && fj <= i) continue; // zero or minus an earlier bracket
        VectorField c = lie_bracket(frame[i], span[j]);
        if (!oracle.independent(span, c, true)) continue;
        span.push_back(std::move(c));
        labels.push_back("[" + names[i] + "," + labels[j] + "]");
        next_frame_index.push_back(static_cast<std::size_t>(-1));
      }
    }
    FlagLevel level{s + 1, span, labels, span.size(), false, 0};
    certify(level);
    const std::size_t prev_rank = rep.levels.back().generic_rank;
    rep.levels.push_back(std::move(level));
    if (span.size() == rep.target_rank) {
      rep.verdict = Step::finite_step(s + 1);
      return rep;
    }
    if (span.size() == prev_rank) {
      rep.verdict = Step::infinite(prev_rank);
      return rep;
    }
    begin_new = end_new;
    new_frame_index = std::move(next_frame_index);
  }
}

inline Step step(const PDistribution &pd) { return flag(pd).verdict; }

/// Involutive iff every pairwise frame bracket is horizontal.
inline bool is_involutive(const PDistribution &pd) {
  const auto &f = pd.frame();
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (!pd.v(lie_bracket(f[i], f[j])).is_zero()) return false;
  return true;
}

struct Commutator {
  std::size_t i = 0; // 0-based indices into the full frame
  std::size_t j = 0;
  std::string label() const { return "X" + std::to_string(i + 1) + std::to_string(j + 1); }
  friend bool operator==(const Commutator &, const Commutator &) = default;
};

struct ClassificationRow {
  std::vector<std::size_t> subset; // 0-based
  std::size_t rank = 0;
  FlagReport flag;
  bool involutive = false;
  /// Sets of commutators X_ij (i<j in the subset) that complete the subset:
  /// a greedy lexicographic prefix of independent commutators one short of
  /// the manifold dimension, extended by each remaining commutator that
  /// reaches it. When no completion exists, the single greedy prefix.
  std::vector<std::vector<Commutator>> independent_commutators;
  std::size_t completions = 0;

  bool bracket_generating() const { return flag.verdict.finite; }
};

struct ClassificationTable {
  std::size_t manifold_dim = 0;
  std::size_t frame_size = 0;
  std::vector<ClassificationRow> rows;

  std::vector<const ClassificationRow *> rows_of_rank(std::size_t r) const {
    std::vector<const ClassificationRow *> out;
    for (const auto &row : rows)
      if (row.rank == r) out.push_back(&row);
    return out;
  }
};

namespace detail {

inline std::vector<std::vector<std::size_t>> subsets_lex(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return out;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline ClassificationRow classify_one(const std::vector<VectorField> &full, const std::vector<std::size_t> &subset) {
  ClassificationRow row;
  row.subset = subset;
  row.rank = subset.size();
  std::vector<VectorField> fields;
  std::vector<std::string> names;
  for (auto i : subset) {
    fields.push_back(full[i]);
    names.push_back("X" + std::to_string(i + 1));
  }
  const std::size_t dim = full.front().dim();
  const std::size_t target = dim - 1;
  const PDistribution pd = PDistribution::build(fields, {}, names);
  row.flag = flag(pd);
  row.involutive = is_involutive(pd);

  const RankOracle oracle(dim);
  std::vector<std::pair<Commutator, VectorField>> comms;
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = a + 1; b < subset.size(); ++b)
      comms.push_back({{subset[a], subset[b]}, lie_bracket(full[subset[a]], full[subset[b]])});

  std::vector<VectorField> base = fields;
  std::vector<Commutator> prefix;
  std::vector<bool> used(comms.size(), false);
  for (std::size_t c = 0; c < comms.size() && base.size() + 1 < target; ++c) {
    if (!oracle.independent(base, comms[c].second, true)) continue;
    base.push_back(comms[c].second);
    prefix.push_back(comms[c].first);
    used[c] = true;
  }
  if (base.size() + 1 == target) {
    for (std::size_t c = 0; c < comms.size(); ++c) {
      if (used[c] || !oracle.independent(base, comms[c].second, true)) continue;
      auto set = prefix;
      set.push_back(comms[c].first);
      row.independent_commutators.push_back(std::move(set));
    }
  }
  row.completions = row.independent_commutators.size();
  if (row.independent_commutators.empty() && !prefix.empty()) row.independent_commutators.push_back(prefix);
  return row;
}

} // namespace detail

/// Classifies every sub-frame of the requested ranks, in lexicographic order.
/// Per-subset work is independent and may run on `threads` workers; the
/// table order does not depend on scheduling.
inline ClassificationTable classify_subframes(const std::vector<VectorField> &full_frame,
                                              const std::vector<std::size_t> &ranks, unsigned threads = 0) {
  if (full_frame.empty()) throw Error("empty frame");
  ClassificationTable table;
  table.manifold_dim = full_frame.front().dim() - 1;
  table.frame_size = full_frame.size();
  std::vector<std::vector<std::size_t>> subsets;
  for (auto r : ranks) {
    if (r == 0 || r > full_frame.size()) throw Error("requested rank " + std::to_string(r) + " out of range");
    for (auto &s : detail::subsets_lex(full_frame.size(), r)) subsets.push_back(std::move(s));
  }
  table.rows.resize(subsets.size());
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, subsets.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < subsets.size(); i = next++)
        table.rows[i] = detail::classify_one(full_frame, subsets[i]);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = subsets.size();
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return table;
}

} // namespace subriem
