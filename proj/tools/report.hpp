#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"
#include "psts/error.hpp"

namespace psts::cli {

enum ExitCode : int {
  kOk = 0,
  kNo = 1,
  kUnknown = 2,
  kInputError = 3,
};

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Exit status for a library error surfacing at the top level.
int exit_code_for(ErrorKind kind);

/// Uniform machine-readable record of one invocation. Field order is fixed
/// so reports diff cleanly; only "elapsed_ms" varies between identical runs.
class RunReport {
 public:
  explicit RunReport(std::string command);

  void set_input(std::string_view bytes) { digest_ = fnv1a_hex(bytes); }
  void set_outcome(std::string outcome) { outcome_ = std::move(outcome); }
  void set_nodes(std::uint64_t nodes) { nodes_ = nodes; }
  nlohmann::ordered_json& result() { return result_; }

  nlohmann::ordered_json to_json() const;

 private:
  std::string command_;
  std::string digest_;
  std::string outcome_ = "ok";
  std::uint64_t nodes_ = 0;
  nlohmann::ordered_json result_ = nlohmann::ordered_json::object();
  std::chrono::steady_clock::time_point start_;
};

}  // namespace psts::cli
