#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fbm/errors.hpp"
#include "fbm/forcing.hpp"

using namespace fbm;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p.string();
}

}  // namespace

TEST(Polynomial, ArithmeticAndTrimming) {
  const Polynomial p({1.0, -2.0, 0.0, 0.0});
  EXPECT_EQ(p.degree(), 1);
  EXPECT_DOUBLE_EQ(p(3.0), -5.0);
  const Polynomial q = p * Polynomial({0.0, 1.0});
  EXPECT_EQ(q.degree(), 2);
  EXPECT_DOUBLE_EQ(q(2.0), -6.0);
  EXPECT_DOUBLE_EQ(q.derivative()(1.0), -3.0);
  EXPECT_TRUE((p * 0.0).is_zero());
  EXPECT_DOUBLE_EQ(Polynomial::monomial(3, 2.0)(2.0), 16.0);
}

TEST(Forcing, BuiltinProfileMeetsHypotheses) {
  const Forcing f = Forcing::builtin(Polynomial({1.0, 0.5}), Polynomial({1.0, 0.5}));
  EXPECT_EQ(f.check_hypotheses().status, HypothesisStatus::satisfied);
  EXPECT_NEAR(f(0.5, 2.0), std::pow(0.5, 7) * 1.25 * 2.0, 1e-16);
}

TEST(Forcing, ViolationsNamed) {
  const Forcing low = Forcing::separable(Polynomial({0.0, 0.0, 1.0, -1.0}), Polynomial({1.0}));
  const auto r = low.check_hypotheses();
  EXPECT_EQ(r.status, HypothesisStatus::violated);
  EXPECT_NE(r.detail.find("d^2f/dx^2(0)"), std::string::npos) << r.detail;
  EXPECT_EQ(to_string(r.status), "not-satisfied");
}

TEST(Forcing, ZeroAndTabulatedStatus) {
  EXPECT_EQ(Forcing::zero().check_hypotheses().status, HypothesisStatus::satisfied);
  EXPECT_EQ(Forcing::zero()(0.3, 0.1), 0.0);
  EXPECT_TRUE(Forcing::separable(Polynomial({0.0}), Polynomial({1.0})).kind == Forcing::Kind::zero);
  TabulatedField tab{{0.0, 1.0}, {0.0, 1.0}, {0.0, 0.0, 0.0, 0.0}};
  const auto r = Forcing::tabulated(tab).check_hypotheses();
  EXPECT_EQ(r.status, HypothesisStatus::unverifiable);
  EXPECT_EQ(r.detail, "tabulated forcing, proceeding");
}

TEST(TabulatedField, BilinearAndClamped) {
  TabulatedField tab{{0.0, 0.5, 1.0}, {-1.0, 1.0}, {0, 1, 2, 10, 11, 12}};
  EXPECT_DOUBLE_EQ(tab(0.25, 0.0), 0.5 * (0.5 + 10.5));
  EXPECT_DOUBLE_EQ(tab(1.0, 1.0), 12.0);
  EXPECT_DOUBLE_EQ(tab(2.0, 5.0), 12.0);
}

TEST(TabulatedField, CsvRoundTripAnyRowOrder) {
  const std::string path = write_temp("fbm_tab_ok.csv", "x,t,f\n1,1,4\n0,0,1\n1,0,2\n0,1,3\n");
  const TabulatedField tab = TabulatedField::load_csv(path);
  EXPECT_EQ(tab.xs.size(), 2u);
  EXPECT_DOUBLE_EQ(tab.at(0, 1), 3.0);
  EXPECT_DOUBLE_EQ(tab(0.5, 0.5), 2.5);
}

TEST(TabulatedField, CsvErrorsCarryLine) {
  try {
    TabulatedField::load_csv(write_temp("fbm_tab_bad.csv", "x,t,f\n0,0,1\n0,1,oops\n"));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
  EXPECT_THROW(TabulatedField::load_csv(write_temp("fbm_tab_hdr.csv", "a,b,c\n")), ConfigError);
  EXPECT_THROW(TabulatedField::load_csv(write_temp("fbm_tab_gap.csv", "x,t,f\n0,0,1\n1,0,1\n0,1,1\n")),
               ConfigError);
  EXPECT_THROW(TabulatedField::load_csv("/nonexistent/fbm.csv"), ConfigError);
}
