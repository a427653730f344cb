#include <gtest/gtest.h>

#include <cmath>

#include "seplab/profile.hpp"

using namespace seplab;

namespace {

ProfileOptions exact_options(unsigned threads = 0) {
  ProfileOptions o;
  o.threads = threads;
  return o;
}

std::vector<std::pair<double, double>> synthetic(GrowthClass cls) {
  std::vector<std::pair<double, double>> out;
  for (double n : {16.0, 64.0, 256.0, 1024.0, 4096.0}) {
    double c = 0;
    switch (cls) {
      case GrowthClass::bounded: c = 3; break;
      case GrowthClass::logarithmic: c = 1 + 2 * std::log(n); break;
      case GrowthClass::power: c = 0.7 * std::pow(n, 0.5); break;
      case GrowthClass::power_times_log: c = std::pow(n, 0.5) * std::log(n); break;
      case GrowthClass::n_over_log: c = 2 * n / std::log2(n); break;
      case GrowthClass::linear: c = n / 5; break;
    }
    out.emplace_back(n, c);
  }
  return out;
}

}  // namespace

TEST(Profile, BinaryTreesCutOne) {
  auto c = run_profile(FamilySpec::parse("binary_tree"), 2, 8, exact_options());
  ASSERT_EQ(c.points.size(), 7u);
  EXPECT_FALSE(c.truncation.has_value());
  for (auto& p : c.points) {
    EXPECT_EQ(p.cut, 1u) << p.param;
    EXPECT_TRUE(p.certified);
    EXPECT_EQ(bound_kind(p), "lower");
  }
}

TEST(Profile, SierpinskiAtMostThree) {
  auto c = run_profile(FamilySpec::parse("sierpinski"), 1, 5, exact_options());
  ASSERT_EQ(c.points.size(), 5u);
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    EXPECT_LE(c.points[i].cut, 3u);
    if (i) EXPECT_GT(c.points[i].n, c.points[i - 1].n);
  }
}

TEST(Profile, GridCutsGrowAndMatchSide) {
  auto c = run_profile(FamilySpec::parse("grid"), 2, 5, exact_options());
  ASSERT_EQ(c.points.size(), 4u);
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    EXPECT_EQ(c.points[i].n, std::size_t(c.points[i].param * c.points[i].param));
    if (i) EXPECT_GE(c.points[i].cut, c.points[i - 1].cut);
  }
}

TEST(Profile, DeterministicAcrossThreadCounts) {
  auto fam = FamilySpec::parse("comb");
  auto a = run_profile(fam, 2, 5, exact_options(1));
  auto b = run_profile(fam, 2, 5, exact_options(4));
  EXPECT_EQ(a.points, b.points);
}

TEST(Profile, BudgetTruncatesOrLabelsUpper) {
  ProfileOptions o;
  o.budget = 1;
  auto c = run_profile(FamilySpec::parse("grid"), 6, 7, o);
  for (auto& p : c.points) {
    if (!p.certified) EXPECT_EQ(bound_kind(p), "upper");
  }
  if (c.points.size() < 2) ASSERT_TRUE(c.truncation.has_value());
}

TEST(Profile, CapacityErrorEndsTheCurve) {
  // bag separators need an exact treewidth, which stops at 5x5
  ProfileOptions o;
  o.method = ProfileMethod::parse("constructive:bag");
  auto c = run_profile(FamilySpec::parse("grid"), 2, 6, o);
  ASSERT_TRUE(c.truncation.has_value());
  EXPECT_EQ(c.points.size(), 3u);
  EXPECT_NE(c.truncation->find("parameter 5"), std::string::npos);
}

TEST(Profile, ConstructiveMethods) {
  ProfileOptions o;
  o.method = ProfileMethod::parse("constructive:ttree");
  auto t = run_profile(FamilySpec::parse("tree_product_ball"), 3, 5, o);
  ASSERT_EQ(t.points.size(), 3u);
  for (auto& p : t.points) {
    EXPECT_EQ(p.method, "constructive:ttree");
    EXPECT_FALSE(p.certified);
  }
  o.method = ProfileMethod::parse("constructive:hyperplane");
  auto g = run_profile(FamilySpec::parse("grid"), 3, 6, o);
  ASSERT_EQ(g.points.size(), 4u);
  for (auto& p : g.points) EXPECT_EQ(p.cut, std::size_t(p.param));
  EXPECT_THROW(ProfileMethod::parse("constructive:magic"), InputError);
}

TEST(Profile, InstanceShapes) {
  EXPECT_EQ(profile_instance(FamilySpec::parse("grid"), 4).str(), "grid:4:4");
  EXPECT_EQ(profile_instance(FamilySpec::parse("grid:3"), 4).str(), "grid:4:4:4");
  EXPECT_EQ(profile_instance(FamilySpec::parse("comb"), 5).str(), "comb:5:5");
  EXPECT_EQ(profile_instance(FamilySpec::parse("binary_tree"), 5).str(), "binary_tree:5");
  EXPECT_THROW(profile_instance(FamilySpec::parse("grid:9"), 2), InputError);
  EXPECT_THROW(run_profile(FamilySpec::parse("grid"), 5, 4), InputError);
}

TEST(Fit, SquareRoot) {
  std::vector<std::pair<double, double>> pts;
  for (double n : {16.0, 64.0, 256.0, 1024.0}) pts.emplace_back(n, std::sqrt(n));
  auto f = fit_growth(pts);
  EXPECT_EQ(f.best.cls, GrowthClass::power);
  ASSERT_TRUE(f.best.alpha.has_value());
  EXPECT_NEAR(*f.best.alpha, 0.5, 0.01);
}

TEST(Fit, ConstantIsBounded) {
  std::vector<std::pair<double, double>> pts;
  for (double n : {10.0, 100.0, 1000.0, 10000.0}) pts.emplace_back(n, 4.0);
  EXPECT_EQ(fit_growth(pts).best.cls, GrowthClass::bounded);
}

TEST(Fit, NOverLogBeatsPower) {
  std::vector<std::pair<double, double>> pts;
  for (double n : {16.0, 64.0, 256.0, 1024.0, 4096.0}) pts.emplace_back(n, n / std::log2(n));
  auto f = fit_growth(pts);
  EXPECT_EQ(f.best.cls, GrowthClass::n_over_log);
  double power_residual = 0;
  for (auto& m : f.all)
    if (m.cls == GrowthClass::power) power_residual = m.residual;
  EXPECT_LT(f.best.residual, power_residual);
}

TEST(Fit, SelfConsistentOnEveryClass) {
  for (auto& [cls, name] : growth_class_names()) {
    auto f = fit_growth(synthetic(cls));
    EXPECT_EQ(f.best.cls, cls) << name << " fitted as " << to_string(f.best.cls);
    EXPECT_NE(f.runner_up.cls, f.best.cls);
    for (auto [n, c] : synthetic(cls)) EXPECT_NEAR(f.best.predict(n) / c, 1.0, 1e-6) << name;
  }
}

TEST(Fit, Errors) {
  std::vector<std::pair<double, double>> three{{4, 1}, {8, 2}, {16, 3}};
  EXPECT_THROW(fit_growth(three), InputError);
  std::vector<std::pair<double, double>> zero{{4, 1}, {8, 0}, {16, 3}, {32, 4}};
  EXPECT_THROW(fit_growth(zero), InputError);
}
