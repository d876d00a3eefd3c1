#include "jitlab/model/logistic.hpp"

#include <cmath>
#include <spdlog/spdlog.h>

#include "jitlab/core/error.hpp"

namespace jitlab::model {
namespace {

Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd z(x.rows(), x.cols() + 1);
  z.col(0).setOnes();
  z.rightCols(x.cols()) = x;
  return z;
}

Eigen::VectorXd as_vector(const std::vector<bool>& y) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i) v(static_cast<Eigen::Index>(i)) = y[i] ? 1.0 : 0.0;
  return v;
}

double inv_logit(double eta) {
  return eta >= 0.0 ? 1.0 / (1.0 + std::exp(-eta)) : std::exp(eta) / (1.0 + std::exp(eta));
}

// log(1 + exp(eta)) without overflow.
double softplus(double eta) { return eta > 0.0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta)); }

double loglik_full(const Eigen::MatrixXd& z, const Eigen::VectorXd& y, const Eigen::VectorXd& beta) {
  const Eigen::VectorXd eta = z * beta;
  double ll = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) ll += y(i) * eta(i) - softplus(eta(i));
  return ll;
}

}  // namespace

double log_likelihood(const Eigen::MatrixXd& x, const std::vector<bool>& y, const Eigen::VectorXd& beta) {
  return loglik_full(with_intercept(x), as_vector(y), beta);
}

Eigen::VectorXd score(const Eigen::MatrixXd& x, const std::vector<bool>& y, const Eigen::VectorXd& beta) {
  const Eigen::MatrixXd z = with_intercept(x);
  const Eigen::VectorXd eta = z * beta;
  Eigen::VectorXd resid = as_vector(y);
  for (Eigen::Index i = 0; i < eta.size(); ++i) resid(i) -= inv_logit(eta(i));
  return z.transpose() * resid;
}

std::vector<double> predict_probabilities(const Eigen::MatrixXd& x, const Eigen::VectorXd& beta) {
  if (beta.size() != x.cols() + 1) throw DataError("coefficient count does not match design columns");
  const Eigen::VectorXd eta = (x * beta.tail(x.cols())).array() + beta(0);
  std::vector<double> out(static_cast<std::size_t>(eta.size()));
  for (Eigen::Index i = 0; i < eta.size(); ++i) out[static_cast<std::size_t>(i)] = inv_logit(eta(i));
  return out;
}

LogisticFit fit_logistic(const Eigen::MatrixXd& x, const std::vector<bool>& y, const LogisticOptions& options) {
  if (static_cast<std::size_t>(x.rows()) != y.size()) throw DataError("design rows and outcomes differ in length");
  LogisticFit fit;
  fit.n = y.size();
  for (bool v : y) fit.positives += v ? 1 : 0;
  if (fit.positives == 0 || fit.positives == fit.n) {
    throw DataError("logistic fit needs both outcomes (" + std::to_string(fit.positives) + " of " +
                    std::to_string(fit.n) + " positive)");
  }
  const Eigen::Index p = x.cols();
  if (design_rank(x) < p + 1) throw DataError("design matrix is rank deficient");

  // Standardised parameterisation: z = [1 | (x - m) / s].
  Eigen::VectorXd m = x.colwise().mean().transpose();
  Eigen::VectorXd s(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double sd = std::sqrt((x.col(j).array() - m(j)).square().sum() / static_cast<double>(x.rows()));
    s(j) = sd > 0.0 ? sd : 1.0;
  }
  Eigen::MatrixXd z(x.rows(), p + 1);
  z.col(0).setOnes();
  for (Eigen::Index j = 0; j < p; ++j) z.col(j + 1) = (x.col(j).array() - m(j)) / s(j);
  const Eigen::VectorXd yv = as_vector(y);

  Eigen::VectorXd gamma = Eigen::VectorXd::Zero(p + 1);
  const double rate = static_cast<double>(fit.positives) / static_cast<double>(fit.n);
  gamma(0) = std::log(rate / (1.0 - rate));
  double ll = loglik_full(z, yv, gamma);

  Eigen::MatrixXd info;
  auto information = [&](const Eigen::VectorXd& g) {
    const Eigen::VectorXd eta = z * g;
    Eigen::VectorXd w(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      const double mu = inv_logit(eta(i));
      w(i) = mu * (1.0 - mu);
    }
    Eigen::MatrixXd h = z.transpose() * w.asDiagonal() * z;
    h.diagonal().array() += options.ridge;
    return h;
  };

  for (fit.iterations = 1; fit.iterations <= options.max_iterations; ++fit.iterations) {
    const Eigen::VectorXd eta = z * gamma;
    Eigen::VectorXd resid = yv;
    for (Eigen::Index i = 0; i < eta.size(); ++i) resid(i) -= inv_logit(eta(i));
    info = information(gamma);
    Eigen::VectorXd step = info.ldlt().solve(z.transpose() * resid);

    // Step halving guards against overshooting.
    Eigen::VectorXd next = gamma + step;
    double next_ll = loglik_full(z, yv, next);
    for (int h = 0; h < 30 && next_ll < ll - 1e-12 * std::abs(ll); ++h) {
      step /= 2.0;
      next = gamma + step;
      next_ll = loglik_full(z, yv, next);
    }
    gamma = next;
    ll = next_ll;
    if (step.cwiseAbs().maxCoeff() < options.tolerance) {
      fit.converged = true;
      break;
    }
  }
  fit.iterations = std::min(fit.iterations, options.max_iterations);
  info = information(gamma);

  // Back to the caller's scale: beta = A gamma.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p + 1, p + 1);
  a(0, 0) = 1.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    a(j + 1, j + 1) = 1.0 / s(j);
    a(0, j + 1) = -m(j) / s(j);
  }
  fit.coefficients = a * gamma;
  const Eigen::MatrixXd cov_gamma = info.ldlt().solve(Eigen::MatrixXd::Identity(p + 1, p + 1));

  const double max_eta = (z * gamma).cwiseAbs().maxCoeff();
  if (fit.coefficients.cwiseAbs().maxCoeff() > options.separation || max_eta > options.saturation) {
    fit.separation = true;
    fit.converged = false;
    spdlog::warn("logistic fit: a coefficient exceeds {} in magnitude or a fitted probability is 0 or 1; the outcome "
                 "is (quasi-)separated",
                 options.separation);
  }
  fit.covariance = a * cov_gamma * a.transpose();
  fit.covariance = (fit.covariance + fit.covariance.transpose()) / 2.0;
  fit.deviance = -2.0 * ll;
  return fit;
}

std::vector<std::string> FittedModel::column_names() const {
  std::vector<std::string> out{"(Intercept)"};
  for (auto& n : spec.column_names()) out.push_back(std::move(n));
  return out;
}

std::map<std::string, std::vector<Eigen::Index>> FittedModel::term_map() const {
  std::map<std::string, std::vector<Eigen::Index>> out;
  Eigen::Index c = 1;
  for (const auto& t : spec.terms) {
    auto& cols = out[t.property];
    for (std::size_t j = 0; j < t.width(); ++j) cols.push_back(c++);
  }
  return out;
}

std::map<Family, std::vector<std::string>> FittedModel::family_map() const {
  std::map<Family, std::vector<std::string>> out;
  for (const auto& t : spec.terms) out[family_of(t.property)].push_back(t.property);
  return out;
}

std::vector<double> predict(const FittedModel& model, const DesignMatrix& design) {
  if (design.column_names != model.spec.column_names()) throw DataError("design columns do not match the model terms");
  return predict_probabilities(design.x, model.fit.coefficients);
}

std::vector<double> predict(const FittedModel& model, const std::vector<metrics::ChangeMetrics>& rows) {
  return predict(model, build_design(model.spec, rows));
}

std::vector<bool> outcomes(const std::vector<metrics::ChangeMetrics>& rows) {
  std::vector<bool> y;
  y.reserve(rows.size());
  for (const auto& r : rows) y.push_back(r.is_bic);
  return y;
}

FittedModel train_model(const std::vector<metrics::ChangeMetrics>& rows, const ModelOptions& options) {
  FittedModel model;
  model.candidates = options.properties;
  const auto data = property_data(rows, options.properties);
  model.collinearity = collinearity_filter(data, options.rho_threshold);
  const auto survivors = data.select(model.collinearity.retained);
  model.redundancy = redundancy_filter(survivors, options.r2_threshold, options.redundancy_transform);
  const auto kept = survivors.select(model.redundancy.retained);
  model.spec = make_design_spec(kept, options.df);
  const auto design = build_design(model.spec, kept);
  model.fit = fit_logistic(design.x, outcomes(rows), options.logistic);
  return model;
}

}  // namespace jitlab::model
