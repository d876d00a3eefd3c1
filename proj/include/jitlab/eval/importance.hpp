#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "jitlab/model/logistic.hpp"

namespace jitlab::eval {

struct WaldTest {
  double chi2 = 0.0;
  int df = 0;
  double p = 1.0;
  bool testable = true;  // false when the covariance block is singular
};

// beta_S' V_SS^-1 beta_S over the coefficient indices S.
WaldTest wald_test(const Eigen::VectorXd& beta, const Eigen::MatrixXd& covariance,
                   std::span<const Eigen::Index> indices);

// Denominator of the normalised score: the sum of the family statistics, or
// one joint test of every non-intercept term.
enum class Normalization { kFamilySum, kJointTotal };

struct FamilyScore {
  model::Family family = model::Family::kSize;
  WaldTest wald;
  std::optional<double> normalized;  // absent for untestable families
};

struct FamilyImportance {
  int period = 0;
  std::vector<FamilyScore> families;  // every family, taxonomy order
  double total = 0.0;                 // the normalisation denominator

  const FamilyScore& at(model::Family f) const;
};

// Families whose properties were all pruned score W = 0 with df = 0.
FamilyImportance family_importance(const model::FittedModel& model, int period = 0,
                                   Normalization normalization = Normalization::kFamilySum);

// FIS(f, train) - FIS(f, future) on normalised scores; absent when either
// side is untestable. Throws DataError when the family sets differ.
std::map<model::Family, std::optional<double>> fis_diff(const FamilyImportance& train,
                                                        const FamilyImportance& future);

}  // namespace jitlab::eval
