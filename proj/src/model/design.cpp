#include "jitlab/model/design.hpp"

#include "jitlab/core/error.hpp"
#include "jitlab/model/spline.hpp"

namespace jitlab::model {

std::size_t DesignSpec::columns() const {
  std::size_t n = 0;
  for (const auto& t : terms) n += t.width();
  return n;
}

std::vector<std::string> DesignSpec::column_names() const {
  std::vector<std::string> out;
  for (const auto& t : terms) {
    std::string name = t.property;
    for (std::size_t j = 0; j < t.width(); ++j) {
      out.push_back(name);
      name += '\'';
    }
  }
  return out;
}

std::vector<std::string> DesignSpec::properties() const {
  std::vector<std::string> out;
  for (const auto& t : terms) out.push_back(t.property);
  return out;
}

DesignSpec make_design_spec(const PropertyData& data, int df) {
  DesignSpec spec;
  spec.df = df;
  for (std::size_t i = 0; i < data.names.size(); ++i) {
    spec.terms.push_back({data.names[i], rcs_knots(data.columns[i], df)});
  }
  return spec;
}

DesignMatrix build_design(const DesignSpec& spec, const PropertyData& data) {
  DesignMatrix d;
  const auto n = static_cast<Eigen::Index>(data.rows());
  d.x.resize(n, static_cast<Eigen::Index>(spec.columns()));
  d.column_names = spec.column_names();
  Eigen::Index c = 0;
  for (const auto& term : spec.terms) {
    const auto& values = data.column(term.property);
    if (static_cast<Eigen::Index>(values.size()) != n) throw DataError("property columns differ in length");
    auto& cols = d.term_map[term.property];
    for (std::size_t j = 0; j < term.width(); ++j) cols.push_back(c + static_cast<Eigen::Index>(j));
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto t = rcs_terms(values[static_cast<std::size_t>(i)], term.knots);
      for (std::size_t j = 0; j < term.width(); ++j) d.x(i, c + static_cast<Eigen::Index>(j)) = t[j];
    }
    c += static_cast<Eigen::Index>(term.width());
    d.family_map[family_of(term.property)].push_back(term.property);
  }
  return d;
}

DesignMatrix build_design(const DesignSpec& spec, const std::vector<metrics::ChangeMetrics>& rows) {
  return build_design(spec, property_data(rows, spec.properties()));
}

Eigen::Index design_rank(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd full(x.rows(), x.cols() + 1);
  full.col(0).setOnes();
  full.rightCols(x.cols()) = x;
  // Scale columns so the rank threshold is not dominated by units.
  for (Eigen::Index j = 0; j < full.cols(); ++j) {
    const double norm = full.col(j).norm();
    if (norm > 0.0) full.col(j) /= norm;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(full);
  qr.setThreshold(1e-10);
  return qr.rank();
}

}  // namespace jitlab::model
