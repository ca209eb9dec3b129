#include "report.hpp"

#include <cstdio>

#ifndef PSTS_VERSION
#define PSTS_VERSION "0.0.0"
#endif

namespace psts::cli {

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSequenceableSystem:
      return kNo;
    case ErrorKind::BudgetExhausted:
    case ErrorKind::NoAdmissibleLabeling:
    case ErrorKind::ResidualNotAdmissible:
    case ErrorKind::RepairFailed:
    case ErrorKind::VerificationFailure:
      return kUnknown;
    case ErrorKind::CertificateFailure:
      return kNo;
    default:
      return kInputError;
  }
}

RunReport::RunReport(std::string command)
    : command_(std::move(command)), digest_(fnv1a_hex("")), start_(std::chrono::steady_clock::now()) {}

nlohmann::ordered_json RunReport::to_json() const {
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  nlohmann::ordered_json j;
  j["command"] = command_;
  j["version"] = PSTS_VERSION;
  j["input_digest"] = digest_;
  j["outcome"] = outcome_;
  j["result"] = result_;
  j["nodes"] = nodes_;
  j["elapsed_ms"] = ms;
  return j;
}

}  // namespace psts::cli
