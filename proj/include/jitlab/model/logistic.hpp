#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "jitlab/model/design.hpp"
#include "jitlab/model/pruning.hpp"

namespace jitlab::model {

struct LogisticOptions {
  int max_iterations = 25;
  double tolerance = 1e-8;   // on the largest coefficient change
  double ridge = 1e-8;       // added to the information diagonal
  double separation = 15.0;  // |coefficient| flagging separation
  double saturation = 30.0;  // |linear predictor| at which a fitted probability is numerically 0 or 1
};

struct LogisticFit {
  Eigen::VectorXd coefficients;  // intercept first
  Eigen::MatrixXd covariance;
  bool converged = false;
  bool separation = false;
  int iterations = 0;
  double deviance = 0.0;
  std::size_t n = 0;
  std::size_t positives = 0;
};

// Maximum likelihood by iteratively reweighted least squares. `x` excludes
// the intercept. Internally each column is centred and scaled to unit
// variance; convergence is judged on that scale and the results are mapped
// back. Separation is flagged when a reported coefficient exceeds
// `separation` or a fitted probability saturates. Throws DataError for single-class outcomes,
// mismatched sizes or a rank-deficient design.
LogisticFit fit_logistic(const Eigen::MatrixXd& x, const std::vector<bool>& y, const LogisticOptions& options = {});

double log_likelihood(const Eigen::MatrixXd& x, const std::vector<bool>& y, const Eigen::VectorXd& beta);
// Gradient of log_likelihood with respect to beta (intercept first).
Eigen::VectorXd score(const Eigen::MatrixXd& x, const std::vector<bool>& y, const Eigen::VectorXd& beta);

std::vector<double> predict_probabilities(const Eigen::MatrixXd& x, const Eigen::VectorXd& beta);

struct FittedModel {
  DesignSpec spec;
  LogisticFit fit;
  std::vector<std::string> candidates;  // properties offered to pruning
  CollinearityResult collinearity;
  RedundancyResult redundancy;

  std::vector<std::string> column_names() const;  // with "(Intercept)"
  // Columns of the coefficient vector (intercept = 0) per property.
  std::map<std::string, std::vector<Eigen::Index>> term_map() const;
  std::map<Family, std::vector<std::string>> family_map() const;
};

// Throws DataError when the design does not match the model's terms.
std::vector<double> predict(const FittedModel& model, const DesignMatrix& design);
std::vector<double> predict(const FittedModel& model, const std::vector<metrics::ChangeMetrics>& rows);

struct ModelOptions {
  std::vector<std::string> properties = all_properties();
  double rho_threshold = 0.7;
  double r2_threshold = 0.9;
  RedundancyTransform redundancy_transform = RedundancyTransform::kRank;
  int df = 3;
  LogisticOptions logistic;
};

// Pruning, spline expansion with knots from `rows`, and the fit.
FittedModel train_model(const std::vector<metrics::ChangeMetrics>& rows, const ModelOptions& options = {});

std::vector<bool> outcomes(const std::vector<metrics::ChangeMetrics>& rows);

}  // namespace jitlab::model
