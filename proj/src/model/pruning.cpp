#include "jitlab/model/pruning.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <spdlog/spdlog.h>

#include "jitlab/core/error.hpp"
#include "jitlab/stats/ranks.hpp"

namespace jitlab::model {
namespace {

bool is_constant(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

}  // namespace

CollinearityResult collinearity_filter(const PropertyData& data, double threshold) {
  if (data.rows() < 2) throw DataError("collinearity filter needs at least 2 observations");
  CollinearityResult out;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < data.names.size(); ++i) {
    if (is_constant(data.columns[i])) {
      spdlog::warn("property {} is constant; dropped", data.names[i]);
      out.constant.push_back(data.names[i]);
      continue;
    }
    bool keep = true;
    for (auto k : kept) {
      const double rho = stats::spearman(data.columns[i], data.columns[k]);
      if (std::abs(rho) > threshold) {
        out.dropped.push_back({data.names[i], data.names[k], rho});
        keep = false;
        break;
      }
    }
    if (keep) {
      kept.push_back(i);
      out.retained.push_back(data.names[i]);
    }
  }
  return out;
}

double r_squared(const std::vector<std::vector<double>>& columns, std::size_t target) {
  const auto n = static_cast<Eigen::Index>(columns.at(target).size());
  const auto p = static_cast<Eigen::Index>(columns.size());
  Eigen::MatrixXd x(n, p);
  Eigen::VectorXd y(n);
  x.col(0).setOnes();
  Eigen::Index c = 1;
  for (Eigen::Index j = 0; j < p; ++j) {
    const auto& col = columns[static_cast<std::size_t>(j)];
    Eigen::Map<const Eigen::VectorXd> v(col.data(), n);
    if (static_cast<std::size_t>(j) == target) {
      y = v;
    } else {
      x.col(c++) = v;
    }
  }
  const Eigen::VectorXd beta = x.colPivHouseholderQr().solve(y);
  const double ss_res = (y - x * beta).squaredNorm();
  const double ss_tot = (y.array() - y.mean()).matrix().squaredNorm();
  if (ss_tot == 0.0) return 1.0;
  return std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
}

RedundancyResult redundancy_filter(const PropertyData& data, double r2_threshold, RedundancyTransform transform) {
  if (data.rows() < data.names.size()) {
    throw DataError("redundancy filter needs at least as many observations (" + std::to_string(data.rows()) +
                    ") as properties (" + std::to_string(data.names.size()) + ")");
  }
  std::vector<std::string> names = data.names;
  std::vector<std::vector<double>> columns;
  for (const auto& col : data.columns) {
    columns.push_back(transform == RedundancyTransform::kRank ? stats::mid_ranks(col) : col);
  }

  RedundancyResult out;
  while (names.size() >= 2) {
    std::size_t worst = 0;
    double worst_r2 = -1.0;
    for (std::size_t j = 0; j < names.size(); ++j) {
      const double r2 = r_squared(columns, j);
      if (r2 >= worst_r2) {
        worst = j;
        worst_r2 = r2;
      }
    }
    if (worst_r2 < r2_threshold) break;
    out.dropped.push_back({names[worst], worst_r2});
    names.erase(names.begin() + static_cast<std::ptrdiff_t>(worst));
    columns.erase(columns.begin() + static_cast<std::ptrdiff_t>(worst));
  }
  out.retained = std::move(names);
  return out;
}

}  // namespace jitlab::model
