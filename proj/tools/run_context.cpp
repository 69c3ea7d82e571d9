#include "run_context.hpp"

#include <fstream>
#include <stdexcept>

#include "dioph/rng.hpp"

#ifndef DIOPH_VERSION
#define DIOPH_VERSION "unknown"
#endif

namespace dioph::cli {

using nlohmann::ordered_json;

RunContext::RunContext(std::string command, std::filesystem::path out_dir)
    : command_(std::move(command)), out_dir_(std::move(out_dir)), start_(std::chrono::steady_clock::now()) {
  std::filesystem::create_directories(out_dir_);
}

void RunContext::write(const std::string& name, const std::string& contents) {
  const auto path = out_dir_ / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  outputs_.push_back(name);
}

void RunContext::finish(int exit_status) {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  ordered_json m;
  m["command"] = command_;
  m["exit_status"] = exit_status;
  m["config"] = config_;
  m["results"] = results_;
  m["rng"] = CounterRng::kAlgorithm;
  m["versions"] = {{"dioph", DIOPH_VERSION}, {"compiler", __VERSION__}, {"cplusplus", __cplusplus}};
  m["outputs"] = outputs_;
  m["wall_seconds"] = wall;
  std::ofstream out(out_dir_ / "manifest.json", std::ios::binary);
  out << m.dump(2) << '\n';
}

void RunContext::fail(const std::string& kind, const std::vector<std::string>& messages, int exit_status) {
  ordered_json e;
  e["command"] = command_;
  e["kind"] = kind;
  e["exit_status"] = exit_status;
  e["errors"] = messages;
  write("error.json", e.dump(2) + "\n");
  finish(exit_status);
}

}  // namespace dioph::cli
