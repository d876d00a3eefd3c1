#include "jitlab/eval/importance.hpp"

#include "jitlab/core/error.hpp"
#include "jitlab/stats/distributions.hpp"

namespace jitlab::eval {

WaldTest wald_test(const Eigen::VectorXd& beta, const Eigen::MatrixXd& covariance,
                   std::span<const Eigen::Index> indices) {
  WaldTest t;
  t.df = static_cast<int>(indices.size());
  if (indices.empty()) return t;
  const auto k = static_cast<Eigen::Index>(indices.size());
  Eigen::VectorXd b(k);
  Eigen::MatrixXd v(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    b(i) = beta(indices[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < k; ++j) {
      v(i, j) = covariance(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(v);
  if (!lu.isInvertible()) {
    t.testable = false;
    return t;
  }
  t.chi2 = std::max(0.0, b.dot(lu.solve(b)));
  t.p = stats::chi2_upper_tail(t.chi2, t.df);
  return t;
}

const FamilyScore& FamilyImportance::at(model::Family f) const {
  for (const auto& s : families) {
    if (s.family == f) return s;
  }
  throw DataError("family " + std::string(model::to_string(f)) + " missing from importance");
}

FamilyImportance family_importance(const model::FittedModel& model, int period, Normalization normalization) {
  FamilyImportance out;
  out.period = period;
  const auto terms = model.term_map();
  const auto families = model.family_map();
  std::vector<Eigen::Index> all;
  for (auto f : model::kFamilies) {
    std::vector<Eigen::Index> idx;
    if (auto it = families.find(f); it != families.end()) {
      for (const auto& p : it->second) {
        const auto& cols = terms.at(p);
        idx.insert(idx.end(), cols.begin(), cols.end());
      }
    }
    all.insert(all.end(), idx.begin(), idx.end());
    out.families.push_back({f, wald_test(model.fit.coefficients, model.fit.covariance, idx), std::nullopt});
  }

  if (normalization == Normalization::kFamilySum) {
    for (const auto& s : out.families) {
      if (s.wald.testable) out.total += s.wald.chi2;
    }
  } else {
    out.total = wald_test(model.fit.coefficients, model.fit.covariance, all).chi2;
  }
  for (auto& s : out.families) {
    if (!s.wald.testable) continue;
    s.normalized = out.total > 0.0 ? s.wald.chi2 / out.total : 0.0;
  }
  return out;
}

std::map<model::Family, std::optional<double>> fis_diff(const FamilyImportance& train,
                                                        const FamilyImportance& future) {
  if (train.families.size() != future.families.size()) throw DataError("importance family sets differ");
  std::map<model::Family, std::optional<double>> out;
  for (std::size_t i = 0; i < train.families.size(); ++i) {
    const auto& a = train.families[i];
    const auto& b = future.families[i];
    if (a.family != b.family) throw DataError("importance family sets differ");
    out[a.family] = a.normalized && b.normalized ? std::optional<double>(*a.normalized - *b.normalized)
                                                 : std::nullopt;
  }
  return out;
}

}  // namespace jitlab::eval
