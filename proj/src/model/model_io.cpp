#include "jitlab/model/model_io.hpp"

#include <fstream>

#include "jitlab/core/error.hpp"

namespace jitlab::model {

using nlohmann::json;

json to_json(const FittedModel& model) {
  const auto& fit = model.fit;
  json terms = json::array();
  for (const auto& t : model.spec.terms) {
    terms.push_back({{"property", t.property}, {"family", to_string(family_of(t.property))}, {"knots", t.knots}});
  }
  json cov = json::array();
  for (Eigen::Index i = 0; i < fit.covariance.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < fit.covariance.cols(); ++j) row.push_back(fit.covariance(i, j));
    cov.push_back(std::move(row));
  }
  json families = json::object();
  for (const auto& [f, props] : model.family_map()) families[std::string(to_string(f))] = props;
  json collinear = json::array();
  for (const auto& d : model.collinearity.dropped) {
    collinear.push_back({{"property", d.property}, {"kept_partner", d.kept_partner}, {"rho", d.rho}});
  }
  json redundant = json::array();
  for (const auto& d : model.redundancy.dropped) redundant.push_back({{"property", d.property}, {"r2", d.r2}});

  return {{"df", model.spec.df},
          {"terms", terms},
          {"columns", model.column_names()},
          {"coefficients", std::vector<double>(fit.coefficients.data(), fit.coefficients.data() + fit.coefficients.size())},
          {"covariance", cov},
          {"families", families},
          {"converged", fit.converged},
          {"separation", fit.separation},
          {"iterations", fit.iterations},
          {"deviance", fit.deviance},
          {"n", fit.n},
          {"positives", fit.positives},
          {"pruning",
           {{"candidates", model.candidates},
            {"constant", model.collinearity.constant},
            {"collinear", collinear},
            {"redundant", redundant}}}};
}

FittedModel model_from_json(const json& j) {
  FittedModel model;
  model.spec.df = j.at("df").get<int>();
  for (const auto& t : j.at("terms")) {
    model.spec.terms.push_back({t.at("property").get<std::string>(), t.at("knots").get<std::vector<double>>()});
  }
  const auto coef = j.at("coefficients").get<std::vector<double>>();
  if (coef.size() != model.spec.columns() + 1) throw DataError("model coefficients do not match its terms");
  model.fit.coefficients = Eigen::Map<const Eigen::VectorXd>(coef.data(), static_cast<Eigen::Index>(coef.size()));
  const auto& cov = j.at("covariance");
  const auto k = static_cast<Eigen::Index>(coef.size());
  if (static_cast<Eigen::Index>(cov.size()) != k) throw DataError("model covariance has the wrong shape");
  model.fit.covariance.resize(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    const auto row = cov.at(static_cast<std::size_t>(r)).get<std::vector<double>>();
    if (static_cast<Eigen::Index>(row.size()) != k) throw DataError("model covariance has the wrong shape");
    for (Eigen::Index c = 0; c < k; ++c) model.fit.covariance(r, c) = row[static_cast<std::size_t>(c)];
  }
  model.fit.converged = j.at("converged").get<bool>();
  model.fit.separation = j.value("separation", false);
  model.fit.iterations = j.value("iterations", 0);
  model.fit.deviance = j.value("deviance", 0.0);
  model.fit.n = j.value("n", std::size_t{0});
  model.fit.positives = j.value("positives", std::size_t{0});
  if (j.contains("pruning")) {
    const auto& p = j.at("pruning");
    model.candidates = p.value("candidates", std::vector<std::string>{});
    model.collinearity.constant = p.value("constant", std::vector<std::string>{});
    for (const auto& d : p.value("collinear", json::array())) {
      model.collinearity.dropped.push_back(
          {d.at("property").get<std::string>(), d.at("kept_partner").get<std::string>(), d.at("rho").get<double>()});
    }
    for (const auto& d : p.value("redundant", json::array())) {
      model.redundancy.dropped.push_back({d.at("property").get<std::string>(), d.at("r2").get<double>()});
    }
  }
  model.collinearity.retained.clear();
  model.redundancy.retained = model.spec.properties();
  return model;
}

void write_model(const std::filesystem::path& path, const FittedModel& model) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << to_json(model).dump(2) << '\n';
}

FittedModel read_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return model_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace jitlab::model
