#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace dioph::cli {

/// Output directory plus the bookkeeping that ends up in manifest.json.
class RunContext {
 public:
  RunContext(std::string command, std::filesystem::path out_dir);

  /// Writes `name` under the output directory and records it in the manifest.
  void write(const std::string& name, const std::string& contents);

  nlohmann::ordered_json& config() { return config_; }
  nlohmann::ordered_json& results() { return results_; }

  /// manifest.json: command, config, versions, outputs, wall time.
  void finish(int exit_status);

  /// error.json with one entry per problem, then the manifest.
  void fail(const std::string& kind, const std::vector<std::string>& messages, int exit_status);

 private:
  std::string command_;
  std::filesystem::path out_dir_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> outputs_;
  nlohmann::ordered_json config_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json results_ = nlohmann::ordered_json::object();
};

}  // namespace dioph::cli
