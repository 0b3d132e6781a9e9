#include <gtest/gtest.h>

#include <set>

#include "rotortree/errors.hpp"
#include "rotortree/verify.hpp"

using namespace rotortree;

TEST(Suites, NamesRoundTrip) {
  for (Suite s : {Suite::Kernels, Suite::Machines, Suite::Decomposition, Suite::Forcing, Suite::Bounds, Suite::All}) {
    EXPECT_EQ(parse_suite(suite_name(s)), s);
  }
  EXPECT_THROW(parse_suite("kernal"), Error);
}

TEST(Suites, EveryCriterionIsRegisteredOnce) {
  std::set<std::string> ids;
  for (const auto& entry : all_checks()) EXPECT_TRUE(ids.insert(entry.id).second) << entry.id;
  for (int i = 1; i <= 11; ++i) EXPECT_TRUE(ids.count("C" + std::to_string(i))) << i;
  EXPECT_THROW(run_check("C12"), Error);
}

TEST(Corpus, DeterministicAndEven) {
  auto a = random_even_corpus(10, 99);
  auto b = random_even_corpus(10, 99);
  auto c = random_even_corpus(10, 100);
  ASSERT_EQ(a.size(), 10u);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_TRUE(a[i].even());
    EXPECT_GT(a[i].occupied(), 0u);
    for (const auto& [v, n] : a[i].chips()) {
      EXPECT_EQ(v.depth() % 2, 0u);
      EXPECT_LE(v.depth(), 4u);
      EXPECT_GE(n, 1);
      EXPECT_LE(n, 50);
    }
    if (!(a[i] == c[i])) differs = true;
  }
  EXPECT_TRUE(differs);
}

TEST(Checks, KernelSuitePasses) {
  for (const CheckResult& r : run_suite(Suite::Kernels)) {
    EXPECT_TRUE(r.passed) << r.id << ": " << r.detail;
    EXPECT_GT(r.checks, 0u);
  }
}
