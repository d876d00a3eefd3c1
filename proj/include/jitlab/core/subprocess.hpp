#pragma once

#include <map>
#include <string>
#include <vector>

namespace jitlab {

struct ProcessResult {
  int exit_code = -1;
  std::string out;
  std::string err;

  bool ok() const { return exit_code == 0; }
};

// Runs argv[0] (looked up on PATH) with the given arguments and extra
// environment entries. No shell is involved. Both pipes are drained
// concurrently so large outputs cannot deadlock.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::map<std::string, std::string>& extra_env = {},
                          const std::string& stdin_data = {});

}  // namespace jitlab
