#pragma once

#include <filesystem>

#include "json.hpp"
#include "jitlab/model/logistic.hpp"

namespace jitlab::model {

nlohmann::json to_json(const FittedModel& model);
FittedModel model_from_json(const nlohmann::json& j);

void write_model(const std::filesystem::path& path, const FittedModel& model);
FittedModel read_model(const std::filesystem::path& path);

}  // namespace jitlab::model
