#include "qlie/quasilie.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace qlie;
using testing_support::to_oracle;

TEST(Trees, Enumeration) {
  EXPECT_EQ(enumerate_rooted_trees(1, 2, false), (std::vector<std::string>{"(1,1)"}));
  EXPECT_EQ(enumerate_rooted_trees(2, 2, false).size(), 4u);
  EXPECT_EQ(enumerate_rooted_trees(2, 3, false).size(), 16u);
  EXPECT_EQ(enumerate_rooted_trees(2, 3, true).size(), 32u);
  for (const auto& c : enumerate_rooted_trees(3, 4, false)) EXPECT_EQ(RootedTree::parse(c).code(), c);
  EXPECT_THROW(RootedTree::parse("(1,2"), std::invalid_argument);
  EXPECT_THROW(RootedTree::parse("(1;2)"), std::invalid_argument);
  EXPECT_THROW(RootLabeledTree::parse("(1,2)"), std::invalid_argument);
}

TEST(Lprime, Examples) {
  EXPECT_EQ(group_structure(lprime_presentation(1, 2)), (AbelianStructure{0, {2}}));
  EXPECT_EQ(group_structure(lprime_presentation(2, 2)), (AbelianStructure{1, {2, 2}}));
  for (unsigned n = 1; n <= 3; ++n) EXPECT_EQ(group_structure(lprime_presentation(n, 1)), (AbelianStructure{n, {}}));
}

TEST(Lprime, MatchesOracle) {
  for (unsigned k = 1; k <= 4; ++k) EXPECT_EQ(to_oracle(group_structure(lprime_presentation(1, k))), oracle::structure(oracle::lprime(1, k)));
  for (unsigned k = 1; k <= 4; ++k) EXPECT_EQ(to_oracle(group_structure(lprime_presentation(2, k))), oracle::structure(oracle::lprime(2, k)));
}

TEST(Gamma, Examples) {
  EXPECT_EQ(group_structure(kernel_gamma(1, 2).group), (AbelianStructure{0, {2}}));
  EXPECT_EQ(group_structure(kernel_gamma(2, 2).group), (AbelianStructure{0, {2, 2}}));
  EXPECT_TRUE(group_structure(kernel_gamma(2, 3).group).trivial());
  // K_4 is the image of L_2 / 2L_2, which vanishes in rank one
  EXPECT_TRUE(group_structure(kernel_gamma(1, 4).group).trivial());
  EXPECT_EQ(oracle::k_group(1, 4), (oracle::Group{0, {}}));
  for (unsigned k = 1; k <= 5; ++k) EXPECT_TRUE(is_surjective(gamma_hom(2, k)));
}

TEST(Gamma, KernelMatchesOracle) {
  for (unsigned k = 1; k <= 4; ++k) EXPECT_EQ(to_oracle(group_structure(kernel_gamma(1, k).group)), oracle::k_group(1, k));
  for (unsigned k = 1; k <= 3; ++k) EXPECT_EQ(to_oracle(group_structure(kernel_gamma(2, k).group)), oracle::k_group(2, k));
}

TEST(Square, Examples) {
  PresentedHom s1 = square_hom(1, 1);
  EXPECT_TRUE(check_induced_hom(s1));
  EXPECT_TRUE(check_exact(s1, gamma_hom(1, 2)));
  PresentedHom s2 = square_hom(2, 1);
  EXPECT_TRUE(is_injective(s2));
  EXPECT_TRUE(check_exact(s2, gamma_hom(2, 2)));
  // ((1,1),(1,1)) vanishes in L'_4
  Presentation l4 = lprime_presentation(1, 4);
  EXPECT_TRUE(l4.canonical().is_zero(l4.canonical().coordinates({{l4.require_index("((1,1),(1,1))"), 1}})));
}

TEST(Betaprime, Examples) {
  PresentedHom b = betaprime_hom(2, 1);
  std::size_t src = b.source.require_index("1@(1,2)");
  EXPECT_EQ(b.lift.at(b.target.require_index("(1,(1,2))"), src), 1);
  for (unsigned k = 0; k <= 4; ++k) {
    PresentedHom bk = betaprime_hom(2, k);
    EXPECT_TRUE(check_induced_hom(bk)) << k;
    EXPECT_TRUE(is_surjective(bk)) << k;
  }
  PresentedHom b10 = betaprime_hom(1, 0);
  EXPECT_TRUE(is_surjective(b10));
  EXPECT_EQ(group_structure(hom_kernel(b10).group), (AbelianStructure{1, {}}));
}

TEST(Dprime, Examples) {
  EXPECT_EQ(group_structure(dprime_group(2, 2).group), (AbelianStructure{1, {}}));
  EXPECT_EQ(group_structure(dprime_group(1, 0).group), (AbelianStructure{1, {}}));
  // degree one, rank one: D'_1 = H (x) K_2 = Z/2
  EXPECT_EQ(group_structure(dprime_group(1, 1).group), (AbelianStructure{0, {2}}));
  for (unsigned k = 1; k <= 4; ++k)
    EXPECT_EQ(group_structure(dprime_group(2, k).group).free_rank, d_group(2, k).first.free_rank);
}

TEST(Dprime, MatchesOracle) {
  for (unsigned k = 1; k <= 3; ++k) EXPECT_EQ(to_oracle(group_structure(dprime_group(1, k).group)), oracle::dprime_group(1, k));
  for (unsigned k = 1; k <= 2; ++k) EXPECT_EQ(to_oracle(group_structure(dprime_group(2, k).group)), oracle::dprime_group(2, k));
}

TEST(Snake, SmallCases) {
  for (auto [n, k] : {std::pair{1u, 1u}, {1u, 2u}, {2u, 2u}, {2u, 3u}}) {
    VerificationReport r = snake_verify(n, k);
    for (const auto& j : r.joints) EXPECT_TRUE(j.passed) << n << "," << k << " " << j.name << ": " << j.witness;
  }
}

TEST(GammaSuite, SmallCases) {
  for (unsigned k = 1; k <= 4; ++k) {
    VerificationReport r = lemma_quasi_verify(2, k);
    EXPECT_TRUE(r.passed()) << k;
  }
}

TEST(Memo, ConcurrentConstructionIsShared) {
  std::vector<std::thread> ts;
  std::vector<Presentation> out(8);
  for (int i = 0; i < 8; ++i) ts.emplace_back([&, i] { out[i] = lprime_presentation(3, 3); });
  for (auto& t : ts) t.join();
  for (int i = 1; i < 8; ++i) EXPECT_TRUE(out[i].same_as(out[0]));
}
