#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace subriem;
using namespace subriem::test;

namespace {

PDistribution sub(const std::vector<VectorField> &full, std::vector<std::size_t> one_based) {
  std::vector<VectorField> f;
  for (auto i : one_based) f.push_back(full[i - 1]);
  return PDistribution::build(std::move(f));
}

using Ranks = std::vector<std::size_t>;

} // namespace

TEST(Flag, S3H12StepTwo) {
  auto rep = flag(sub(builtin::s3(), {1, 2}));
  EXPECT_EQ(rep.verdict, Step::finite_step(2));
  EXPECT_EQ(rep.ranks(), (Ranks{2, 3}));
  EXPECT_EQ(rep.target_rank, 3u);
}

TEST(Flag, S7RankSixStepTwo) {
  auto rep = flag(sub(builtin::s7(), {1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(rep.verdict, Step::finite_step(2));
  EXPECT_EQ(rep.ranks(), (Ranks{6, 7}));
}

TEST(Flag, S7PairStabilizesAtThree) {
  auto rep = flag(sub(builtin::s7(), {1, 2}));
  EXPECT_EQ(rep.verdict, Step::infinite(3));
  EXPECT_EQ(rep.ranks(), (Ranks{2, 3, 3}));
}

TEST(Step, Examples) {
  EXPECT_EQ(step(sub(builtin::s3(), {1, 3})), Step::finite_step(2));
  EXPECT_FALSE(step(sub(builtin::s7(), {1, 2, 3})).finite);
  EXPECT_EQ(step(sub(builtin::s3(), {1})), Step::infinite(1));
}

TEST(Involutive, Examples) {
  EXPECT_FALSE(is_involutive(sub(builtin::s3(), {1, 2})));
  EXPECT_TRUE(is_involutive(sub(builtin::s3(), {1})));
  EXPECT_FALSE(is_involutive(sub(builtin::s7(), {1, 2, 3, 4, 5, 6})));
}

TEST(Step, InvariantUnderReorderAndScaling) {
  SphereSampler s(31);
  const auto full = builtin::s7();
  for (const auto &subset : std::vector<std::vector<std::size_t>>{{0, 1}, {0, 2, 4}, {1, 3, 5, 6}, {0, 1, 2, 3, 4}}) {
    std::vector<VectorField> f;
    for (auto i : subset) f.push_back(full[i]);
    const auto base = flag(PDistribution::build(f));
    auto g = f;
    std::reverse(g.begin(), g.end());
    for (auto &x : g) {
      Rational c = s.small_rational();
      if (c.is_zero()) c = R(3);
      x = c * x;
    }
    const auto moved = flag(PDistribution::build(g));
    EXPECT_EQ(moved.verdict, base.verdict);
    EXPECT_EQ(moved.ranks(), base.ranks());
  }
}

TEST(Flag, RanksMonotoneBoundedAndCertified) {
  const auto full = builtin::s7();
  for (std::size_t k = 1; k < full.size(); ++k)
    for (const auto &subset : detail::subsets_lex(full.size(), k)) {
      std::vector<VectorField> f;
      for (auto i : subset) f.push_back(full[i]);
      const auto rep = flag(PDistribution::build(f));
      const auto r = rep.ranks();
      EXPECT_TRUE(std::is_sorted(r.begin(), r.end()));
      EXPECT_LE(r.back(), rep.target_rank);
      EXPECT_TRUE(rep.pointwise_ok());
      for (const auto &l : rep.levels) EXPECT_GE(l.points_checked, 20u);
      if (rep.verdict.finite) {
        EXPECT_EQ(r.back(), rep.target_rank);
        EXPECT_EQ(rep.verdict.value, r.size());
        if (r.size() > 1) EXPECT_LT(r[r.size() - 2], rep.target_rank);
      } else {
        ASSERT_GE(r.size(), 2u);
        EXPECT_EQ(r[r.size() - 1], r[r.size() - 2]);
        EXPECT_LT(r.back(), rep.target_rank);
        EXPECT_EQ(rep.verdict.value, r.back());
      }
    }
}

TEST(Flag, NonConstantCoefficients) {
  // X1 and X2 + y1 X1 span the same plane field; the Gram determinant is 1.
  auto x = builtin::s3();
  auto pd = PDistribution::build({x[0], x[1] + Q("y1", 4) * x[0]});
  EXPECT_FALSE(is_identity(pd.gram()));
  auto rep = flag(pd);
  EXPECT_EQ(rep.verdict, Step::finite_step(2));
  EXPECT_TRUE(rep.pointwise_ok());
}

TEST(Classify, S3RankTwoHasThreeStepTwoStructures) {
  auto t = classify_subframes(builtin::s3(), {2});
  ASSERT_EQ(t.rows.size(), 3u);
  for (const auto &row : t.rows) {
    EXPECT_EQ(row.flag.verdict, Step::finite_step(2));
    EXPECT_FALSE(row.involutive);
  }
}

TEST(Classify, S7RankSixRow) {
  auto t = classify_subframes(builtin::s7(), {6});
  ASSERT_EQ(t.rows.size(), 7u);
  const auto &row = t.rows.front();
  EXPECT_EQ(row.subset, (Ranks{0, 1, 2, 3, 4, 5}));
  EXPECT_TRUE(row.bracket_generating());
  EXPECT_EQ(row.flag.verdict, Step::finite_step(2));
  // Every X_ij, 1 <= i < j <= 6, completes the frame on its own.
  ASSERT_EQ(row.independent_commutators.size(), 15u);
  std::vector<std::string> labels;
  for (const auto &set : row.independent_commutators) {
    ASSERT_EQ(set.size(), 1u);
    labels.push_back(set.front().label());
  }
  EXPECT_EQ(labels.front(), "X12");
  EXPECT_EQ(labels.back(), "X56");
}

TEST(Classify, FullS7TableShape) {
  std::vector<std::size_t> ranks{6, 5, 4, 3, 2};
  auto t = classify_subframes(builtin::s7(), ranks);
  const std::vector<std::size_t> counts{7, 21, 35, 35, 21};
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    auto rows = t.rows_of_rank(ranks[i]);
    ASSERT_EQ(rows.size(), counts[i]);
    for (const auto *row : rows) {
      if (ranks[i] >= 4) {
        EXPECT_EQ(row->flag.verdict, Step::finite_step(2)) << ranks[i];
      } else {
        EXPECT_FALSE(row->flag.verdict.finite);
        EXPECT_EQ(row->flag.verdict.value, ranks[i] == 3 ? 6u : 3u);
      }
      if (row->involutive) EXPECT_FALSE(row->flag.verdict.finite);
    }
  }
  auto first = [&](std::size_t r) { return t.rows_of_rank(r).front(); };
  EXPECT_EQ(first(5)->subset, (Ranks{0, 1, 2, 3, 4}));
  EXPECT_EQ(first(5)->flag.ranks(), (Ranks{5, 7}));
  EXPECT_EQ(first(4)->flag.ranks(), (Ranks{4, 7}));
  EXPECT_EQ(first(3)->flag.ranks(), (Ranks{3, 6, 6}));
  EXPECT_EQ(first(2)->flag.ranks(), (Ranks{2, 3, 3}));
  // A completion reaches rank 7: two commutators for rank 5, three for rank 4.
  for (const auto &set : first(5)->independent_commutators) EXPECT_EQ(set.size(), 2u);
  for (const auto &set : first(4)->independent_commutators) EXPECT_EQ(set.size(), 3u);
}

TEST(Classify, LexOrderIndependentOfThreads) {
  auto a = classify_subframes(builtin::s7(), {3}, 1);
  auto b = classify_subframes(builtin::s7(), {3}, 4);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].subset, b.rows[i].subset);
    EXPECT_EQ(a.rows[i].flag.verdict, b.rows[i].flag.verdict);
    EXPECT_EQ(a.rows[i].independent_commutators, b.rows[i].independent_commutators);
  }
  EXPECT_TRUE(std::is_sorted(a.rows.begin(), a.rows.end(),
                             [](const auto &x, const auto &y) { return x.subset < y.subset; }));
}

TEST(Classify, RejectsBadRank) {
  EXPECT_THROW(classify_subframes(builtin::s3(), {0}), Error);
  EXPECT_THROW(classify_subframes(builtin::s3(), {4}), Error);
}
