#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "jitlab/core/error.hpp"

namespace jitlab::jsonl {

// Calls `fn` once per nonblank line of a newline-delimited JSON file.
inline void for_each(const std::filesystem::path& path, const std::function<void(const nlohmann::json&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    try {
      fn(j);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

template <typename T, typename ToJson>
void write(const std::filesystem::path& path, const std::vector<T>& items, ToJson&& to_json) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& item : items) out << to_json(item).dump() << '\n';
}

}  // namespace jitlab::jsonl
