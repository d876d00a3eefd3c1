#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "fixture.hpp"
#include "jitlab/core/error.hpp"
#include "jitlab/model/design.hpp"
#include "jitlab/model/logistic.hpp"
#include "jitlab/model/model_io.hpp"
#include "jitlab/model/pruning.hpp"
#include "jitlab/model/spline.hpp"
#include "jitlab/stats/ranks.hpp"

using namespace jitlab;
using namespace jitlab::model;
using namespace std::string_literals;

namespace {

// Textbook restricted cubic term j for knots t (0-based j < k - 2).
double rcs_oracle(double x, const std::vector<double>& t, std::size_t j) {
  const std::size_t k = t.size();
  auto pos3 = [](double v) { return std::pow(std::max(v, 0.0), 3); };
  const double raw = pos3(x - t[j]) - pos3(x - t[k - 2]) * (t[k - 1] - t[j]) / (t[k - 1] - t[k - 2]) +
                     pos3(x - t[k - 1]) * (t[k - 2] - t[j]) / (t[k - 1] - t[k - 2]);
  return raw / std::pow(t[k - 1] - t[0], 2);
}

double oracle_log_likelihood(const std::vector<double>& x, const std::vector<bool>& y, double a, double b) {
  double ll = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double eta = a + b * x[i];
    ll += (y[i] ? eta : 0.0) - std::log1p(std::exp(eta));
  }
  return ll;
}

// Coarse-to-fine grid search over (intercept, slope).
std::pair<double, double> grid_search_mle(const std::vector<double>& x, const std::vector<bool>& y) {
  double ca = 0, cb = 0, step = 0.25;
  double half = 5.0;
  while (step > 1e-6) {
    double best = -1e300, ba = ca, bb = cb;
    for (double a = ca - half; a <= ca + half + 1e-12; a += step) {
      for (double b = cb - half; b <= cb + half + 1e-12; b += step) {
        const double ll = oracle_log_likelihood(x, y, a, b);
        if (ll > best) {
          best = ll;
          ba = a;
          bb = b;
        }
      }
    }
    ca = ba;
    cb = bb;
    half = 2 * step;
    step /= 5;
  }
  return {ca, cb};
}

PropertyData columns(const std::vector<std::string>& names, const std::vector<std::vector<double>>& cols) {
  return PropertyData{names, cols};
}

}  // namespace

TEST(Spline, KnotsAtDefaultQuantiles) {
  std::vector<double> v;
  for (int i = 0; i <= 100; ++i) v.push_back(i);
  EXPECT_EQ(rcs_knots(v, 3), (std::vector<double>{5, 35, 65, 95}));
  EXPECT_TRUE(rcs_knots(v, 1).empty());
  EXPECT_THROW(rcs_knots(std::vector<double>{}, 3), DataError);
}

TEST(Spline, BinaryPropertyIsLinearOnly) {
  const std::vector<double> v = {0, 1, 1, 0, 1, 0, 0, 1};
  const auto b = rcs_basis(v, 3);
  EXPECT_TRUE(b.knots.empty());
  ASSERT_EQ(b.columns.size(), 1u);
  EXPECT_EQ(b.columns[0], v);
}

TEST(Spline, NonlinearTermsVanishBelowFirstKnot) {
  const std::vector<double> knots = {2, 4, 6, 8};
  for (double x : {-10.0, 0.0, 1.999, 2.0}) {
    const auto t = rcs_terms(x, knots);
    ASSERT_EQ(t.size(), 3u);
    EXPECT_EQ(t[0], x);
    EXPECT_EQ(t[1], 0.0);
    EXPECT_EQ(t[2], 0.0);
  }
}

TEST(Spline, MatchesDirectFormulaAtProbes) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0, 100);
  std::vector<double> v(200);
  for (auto& x : v) x = u(rng);
  const auto knots = rcs_knots(v, 3);
  ASSERT_EQ(knots.size(), 4u);
  for (double x : {knots[0] - 3, knots[1] + 0.5, 50.0, knots[2] + 7, knots[3] + 20}) {
    const auto t = rcs_terms(x, knots);
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(t[j + 1], rcs_oracle(x, knots, j), 1e-12);
  }
}

TEST(Spline, ContinuousWithTwoContinuousDerivativesAtKnots) {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> u(0, 100);
  std::vector<double> v(300);
  for (auto& x : v) x = u(rng);
  for (int df : {2, 3, 4, 6}) {
    const auto knots = rcs_knots(v, df);
    ASSERT_EQ(knots.size(), static_cast<std::size_t>(df + 1));
    for (std::size_t term = 1; term < knots.size() - 1; ++term) {
      auto f = [&](double x) { return rcs_terms(x, knots)[term]; };
      auto d1 = [&](double x) { return (f(x + 1e-7) - f(x - 1e-7)) / 2e-7; };
      // Second differences stay on one side of the knot and are extrapolated
      // to it (each piece is cubic, so f'' is linear there).
      auto d2 = [&](double x) { return (f(x + 5e-3) - 2 * f(x) + f(x - 5e-3)) / 2.5e-5; };
      for (double t : knots) {
        EXPECT_NEAR(f(t - 1e-6), f(t + 1e-6), 1e-5);
        EXPECT_NEAR(d1(t - 1e-6), d1(t + 1e-6), 1e-5);
        const double left = 2 * d2(t - 1e-2) - d2(t - 2e-2);
        const double right = 2 * d2(t + 1e-2) - d2(t + 2e-2);
        EXPECT_NEAR(left, right, 1e-5);
      }
      // Linear beyond the last knot.
      EXPECT_NEAR(d2(knots.back() + 5), 0.0, 1e-5);
    }
  }
}

TEST(Collinearity, DuplicateAndNegatedColumnsDropped) {
  const std::vector<double> x1 = {1, 5, 2, 8, 3, 9, 4};
  std::vector<double> neg;
  for (double v : x1) neg.push_back(-v);
  const std::vector<double> other = {3, 1, 4, 1, 5, 9, 2};
  const auto r = collinearity_filter(columns({"la", "ld", "nf", "ent"}, {x1, x1, neg, other}));
  EXPECT_EQ(r.retained, (std::vector<std::string>{"la", "ent"}));
  ASSERT_EQ(r.dropped.size(), 2u);
  EXPECT_EQ(r.dropped[0].kept_partner, "la");
}

TEST(Collinearity, IndependentColumnsAllRetained) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<std::vector<double>> cols(5, std::vector<double>(1000));
  for (auto& c : cols)
    for (auto& v : c) v = u(rng);
  double worst = 0;
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = i + 1; j < cols.size(); ++j) worst = std::max(worst, std::abs(stats::spearman(cols[i], cols[j])));
  ASSERT_LT(worst, 0.7);
  EXPECT_EQ(collinearity_filter(columns({"a", "b", "c", "d", "e"}, cols)).retained.size(), 5u);
}

TEST(Collinearity, ConstantColumnDroppedWithWarning) {
  const auto r = collinearity_filter(columns({"la", "nf"}, {{1, 2, 3}, {4, 4, 4}}));
  EXPECT_EQ(r.retained, (std::vector<std::string>{"la"}));
  EXPECT_EQ(r.constant, (std::vector<std::string>{"nf"}));
}

TEST(Collinearity, InvariantUnderMonotoneTransform) {
  std::mt19937 rng(10);
  std::normal_distribution<double> n(0, 1);
  std::vector<std::vector<double>> cols(4, std::vector<double>(100));
  for (auto& c : cols)
    for (auto& v : c) v = n(rng);
  for (std::size_t i = 0; i < 100; ++i) cols[2][i] = cols[0][i] + 0.3 * cols[2][i];
  auto transformed = cols;
  for (auto& v : transformed[2]) v = std::exp(v);
  EXPECT_EQ(collinearity_filter(columns({"a", "b", "c", "d"}, cols)).retained,
            collinearity_filter(columns({"a", "b", "c", "d"}, transformed)).retained);
}

TEST(Redundancy, ExactLinearDependenceDropsOne) {
  std::mt19937 rng(12);
  std::normal_distribution<double> n(0, 1);
  std::vector<double> x1(80), x2(80), x3(80);
  for (int i = 0; i < 80; ++i) {
    x1[i] = n(rng);
    x2[i] = n(rng);
    x3[i] = x1[i] + x2[i];
  }
  const auto r = redundancy_filter(columns({"x1", "x2", "x3"}, {x1, x2, x3}), 0.9, RedundancyTransform::kRaw);
  ASSERT_EQ(r.dropped.size(), 1u);
  EXPECT_EQ(r.dropped[0].property, "x3");
  EXPECT_NEAR(r.dropped[0].r2, 1.0, 1e-9);
}

TEST(Redundancy, IndependentColumnsKept) {
  std::mt19937 rng(13);
  std::normal_distribution<double> n(0, 1);
  std::vector<std::vector<double>> cols(4, std::vector<double>(200));
  for (auto& c : cols)
    for (auto& v : c) v = n(rng);
  for (std::size_t t = 0; t < cols.size(); ++t) ASSERT_LT(r_squared(cols, t), 0.9);
  EXPECT_TRUE(redundancy_filter(columns({"a", "b", "c", "d"}, cols)).dropped.empty());
}

TEST(Redundancy, OneDropPerDependentTriple) {
  std::mt19937 rng(14);
  std::normal_distribution<double> n(0, 1);
  std::vector<std::vector<double>> cols(6, std::vector<double>(300));
  for (int i = 0; i < 300; ++i) {
    cols[0][i] = n(rng);
    cols[1][i] = n(rng);
    cols[2][i] = cols[0][i] + cols[1][i] + 0.05 * n(rng);
    cols[3][i] = n(rng);
    cols[4][i] = n(rng);
    cols[5][i] = cols[3][i] - cols[4][i] + 0.05 * n(rng);
  }
  const auto r = redundancy_filter(columns({"a", "b", "c", "d", "e", "f"}, cols), 0.9, RedundancyTransform::kRaw);
  ASSERT_EQ(r.dropped.size(), 2u);
  int first = 0, second = 0;
  for (const auto& d : r.dropped) ("abc"s.find(d.property) != std::string::npos ? first : second)++;
  EXPECT_EQ(first, 1);
  EXPECT_EQ(second, 1);
}

TEST(Redundancy, TooFewRowsThrows) {
  EXPECT_THROW(redundancy_filter(columns({"a", "b", "c"}, {{1, 2}, {3, 4}, {5, 7}})), DataError);
}

TEST(Logistic, InterceptOnlyIsLogitOfBaseRate) {
  const Eigen::MatrixXd x(10, 0);
  const std::vector<bool> y = {true, true, true, false, false, false, false, false, false, false};
  const auto fit = fit_logistic(x, y);
  EXPECT_TRUE(fit.converged);
  EXPECT_NEAR(fit.coefficients(0), std::log(3.0 / 7.0), 1e-6);
  const auto p = predict_probabilities(x, fit.coefficients);
  for (double v : p) EXPECT_NEAR(v, 0.3, 1e-9);
}

TEST(Logistic, MatchesGridSearchOracle) {
  std::mt19937 rng(15);
  std::normal_distribution<double> n(0, 1);
  std::vector<double> xs(20);
  std::vector<bool> y(20);
  Eigen::MatrixXd x(20, 1);
  for (int i = 0; i < 20; ++i) {
    xs[i] = n(rng);
    x(i, 0) = xs[i];
    y[i] = std::uniform_real_distribution<double>(0, 1)(rng) < 1 / (1 + std::exp(-(0.3 + 1.2 * xs[i])));
  }
  const auto fit = fit_logistic(x, y);
  const auto [a, b] = grid_search_mle(xs, y);
  EXPECT_NEAR(fit.coefficients(0), a, 1e-4);
  EXPECT_NEAR(fit.coefficients(1), b, 1e-4);
}

TEST(Logistic, ScoreVanishesAtOptimum) {
  std::mt19937 rng(16);
  std::normal_distribution<double> n(0, 1);
  Eigen::MatrixXd x(300, 3);
  std::vector<bool> y(300);
  for (int i = 0; i < 300; ++i) {
    for (int j = 0; j < 3; ++j) x(i, j) = n(rng) * (j + 1) + 10 * j;
    y[i] = n(rng) + 0.5 * x(i, 0) - 0.2 * x(i, 2) + 4 > 0;
  }
  const auto fit = fit_logistic(x, y);
  ASSERT_TRUE(fit.converged);
  // Independent gradient: X'(y - p)
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(4);
  double mean_p = 0;
  for (int i = 0; i < 300; ++i) {
    const double eta = fit.coefficients(0) + x.row(i).dot(fit.coefficients.tail(3));
    const double p = 1 / (1 + std::exp(-eta));
    mean_p += p / 300;
    const double r = (y[i] ? 1.0 : 0.0) - p;
    grad(0) += r;
    for (int j = 0; j < 3; ++j) grad(j + 1) += r * x(i, j);
  }
  EXPECT_LT(grad.lpNorm<Eigen::Infinity>(), 1e-6);
  EXPECT_NEAR(mean_p, std::count(y.begin(), y.end(), true) / 300.0, 1e-9);
  EXPECT_LT((score(x, y, fit.coefficients) - grad).lpNorm<Eigen::Infinity>(), 1e-9);
}

TEST(Logistic, ScoreMatchesFiniteDifferences) {
  std::mt19937 rng(17);
  std::normal_distribution<double> n(0, 1);
  Eigen::MatrixXd x(50, 2);
  std::vector<bool> y(50);
  for (int i = 0; i < 50; ++i) {
    x(i, 0) = n(rng);
    x(i, 1) = n(rng);
    y[i] = i % 3 == 0;
  }
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd beta(3);
    beta << n(rng), n(rng), n(rng);
    const auto g = score(x, y, beta);
    for (int k = 0; k < 3; ++k) {
      Eigen::VectorXd hi = beta, lo = beta;
      hi(k) += 1e-6;
      lo(k) -= 1e-6;
      const double fd = (log_likelihood(x, y, hi) - log_likelihood(x, y, lo)) / 2e-6;
      EXPECT_NEAR(g(k), fd, 1e-5 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(Logistic, SymmetricPredictorHasZeroIntercept) {
  Eigen::MatrixXd x(8, 1);
  x << -4, -3, -2, -1, 1, 2, 3, 4;
  const std::vector<bool> y = {false, false, true, false, true, false, true, true};
  const auto fit = fit_logistic(x, y);
  EXPECT_NEAR(fit.coefficients(0), 0.0, 1e-8);
  EXPECT_GT(fit.coefficients(1), 0.0);
}

TEST(Logistic, SeparationIsFlagged) {
  Eigen::MatrixXd x(6, 1);
  x << 1, 2, 3, 4, 5, 6;
  const std::vector<bool> y = {false, false, false, true, true, true};
  const auto fit = fit_logistic(x, y);
  EXPECT_TRUE(fit.separation);
  EXPECT_FALSE(fit.converged);
}

TEST(Logistic, SeparationFlaggedOnLargeScalePredictor) {
  Eigen::MatrixXd x(6, 1);
  x << 1000, 2000, 3000, 4000, 5000, 6000;
  const auto fit = fit_logistic(x, {false, false, false, true, true, true});
  EXPECT_TRUE(fit.separation);
}

TEST(Logistic, WellDeterminedSplineFitIsNotFlagged) {
  const auto rows = test::synthetic_rows(1, 2000, 1.5, 8);
  const auto m = train_model(rows);
  EXPECT_FALSE(m.fit.separation);
  EXPECT_TRUE(m.fit.converged);
}

TEST(Logistic, RejectsSingleClassAndRankDeficiency) {
  Eigen::MatrixXd x(4, 1);
  x << 1, 2, 3, 4;
  EXPECT_THROW(fit_logistic(x, {true, true, true, true}), DataError);
  Eigen::MatrixXd dup(4, 2);
  dup << 1, 1, 2, 2, 3, 3, 4, 4;
  EXPECT_THROW(fit_logistic(dup, {true, false, true, false}), DataError);
}

TEST(Logistic, CovarianceIsSymmetricPositiveSemidefinite) {
  const auto rows = test::synthetic_rows(1, 400, 1.5, 3);
  const auto m = train_model(rows);
  const auto& cov = m.fit.covariance;
  ASSERT_EQ(cov.rows(), m.fit.coefficients.size());
  EXPECT_LT((cov - cov.transpose()).lpNorm<Eigen::Infinity>(), 1e-9 * cov.lpNorm<Eigen::Infinity>());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-9 * eig.eigenvalues().maxCoeff());
}

TEST(Predict, ZeroCoefficientsGiveOneHalfAndMonotone) {
  Eigen::MatrixXd x(3, 1);
  x << -1, 0, 2;
  for (double p : predict_probabilities(x, Eigen::VectorXd::Zero(2))) EXPECT_DOUBLE_EQ(p, 0.5);
  Eigen::VectorXd beta(2);
  beta << 0.1, 0.7;
  const auto p = predict_probabilities(x, beta);
  EXPECT_LT(p[0], p[1]);
  EXPECT_LT(p[1], p[2]);
}

TEST(Predict, ColumnMismatchThrows) {
  const auto rows = test::synthetic_rows(1, 300, 1.5, 4);
  const auto m = train_model(rows);
  DesignSpec other = m.spec;
  other.terms.pop_back();
  EXPECT_THROW(predict(m, build_design(other, rows)), DataError);
  const auto p = predict(m, rows);
  for (double v : p) {
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(Model, RoundTripsThroughJson) {
  const auto rows = test::synthetic_rows(1, 300, 1.5, 5);
  const auto m = train_model(rows);
  const auto back = model_from_json(to_json(m));
  EXPECT_EQ(back.spec, m.spec);
  EXPECT_EQ(back.fit.coefficients, m.fit.coefficients);
  EXPECT_EQ(predict(back, rows), predict(m, rows));
  EXPECT_EQ(to_json(back).dump(), to_json(m).dump());
}

TEST(Design, TermMapCoversEveryColumnOnce) {
  const auto rows = test::synthetic_rows(1, 300, 1.5, 6);
  const auto data = property_data(rows, {"la", "ld", "nf", "ent"});
  const auto spec = make_design_spec(data, 3);
  const auto d = build_design(spec, data);
  std::vector<int> seen(static_cast<std::size_t>(d.x.cols()), 0);
  for (const auto& [p, cols] : d.term_map)
    for (auto c : cols) ++seen[static_cast<std::size_t>(c)];
  for (int s : seen) EXPECT_EQ(s, 1);
  EXPECT_EQ(d.family_map.at(Family::kSize), (std::vector<std::string>{"la", "ld"}));
  EXPECT_EQ(d.column_names.front(), "la");
  EXPECT_EQ(d.column_names[1], "la'");
}
