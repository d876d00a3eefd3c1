#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "jitlab/metrics/change_metrics.hpp"
#include "jitlab/model/properties.hpp"

namespace jitlab::model {

// One property's contribution to the model: its linear column plus
// restricted cubic terms when it has knots.
struct DesignTerm {
  std::string property;
  std::vector<double> knots;  // empty: linear only

  std::size_t width() const { return knots.empty() ? 1 : knots.size() - 1; }
  bool operator==(const DesignTerm&) const = default;
};

struct DesignSpec {
  std::vector<DesignTerm> terms;
  int df = 3;

  std::size_t columns() const;
  // "la", "la'", "la''", ... (no intercept)
  std::vector<std::string> column_names() const;
  std::vector<std::string> properties() const;
  bool operator==(const DesignSpec&) const = default;
};

// Knots are placed on `data`, which is normally the training set.
DesignSpec make_design_spec(const PropertyData& data, int df = 3);

struct DesignMatrix {
  Eigen::MatrixXd x;  // no intercept column
  std::vector<std::string> column_names;
  std::map<std::string, std::vector<Eigen::Index>> term_map;     // property -> columns of x
  std::map<Family, std::vector<std::string>> family_map;         // family -> properties
};

// Evaluates `spec` on `data`, which must carry every property of the spec.
DesignMatrix build_design(const DesignSpec& spec, const PropertyData& data);
DesignMatrix build_design(const DesignSpec& spec, const std::vector<metrics::ChangeMetrics>& rows);

// Column rank of [1 | x].
Eigen::Index design_rank(const Eigen::MatrixXd& x);

}  // namespace jitlab::model
