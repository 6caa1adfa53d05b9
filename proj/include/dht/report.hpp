#pragma once

#include <optional>
#include <string>

#include "dht/io.hpp"

namespace dht {

enum class ExitStatus { Ok = 0, VerificationFailed = 1, Usage = 2, Budget = 3, FileNotFound = 4 };

inline const char* exit_status_name(ExitStatus s) {
  switch (s) {
    case ExitStatus::Ok: return "ok";
    case ExitStatus::VerificationFailed: return "verification-failed";
    case ExitStatus::Usage: return "usage";
    case ExitStatus::Budget: return "budget-exceeded";
    case ExitStatus::FileNotFound: return "file-not-found";
  }
  return "unknown";
}

/// Exit status for a library error.
inline ExitStatus status_for(Errc c) {
  switch (c) {
    case Errc::BudgetExceeded:
    case Errc::CapExceeded: return ExitStatus::Budget;
    case Errc::FileNotFound: return ExitStatus::FileNotFound;
    default: return ExitStatus::Usage;
  }
}

/// Result of one command. Field order is fixed by insertion; timing is kept
/// out of the structured form unless asked for, so identical runs produce
/// identical bytes.
struct Report {
  std::string command;
  Json results = Json::object();
  Json budget = Json::object();
  ExitStatus status = ExitStatus::Ok;
  std::string error;
  std::optional<double> elapsed_ms;

  int exit_code() const { return static_cast<int>(status); }

  void fail_verification(const std::string& why) {
    status = ExitStatus::VerificationFailed;
    if (error.empty()) error = why;
  }
};

enum class ReportFormat { Human, Structured };

inline Json report_json(const Report& r) {
  Json j;
  j["command"] = r.command;
  j["results"] = r.results;
  j["budget"] = r.budget;
  j["status"] = exit_status_name(r.status);
  j["exit_code"] = r.exit_code();
  if (!r.error.empty()) j["error"] = r.error;
  if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
  return j;
}

namespace detail {

inline std::string human_value(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline void human_lines(std::string& out, const Json& j, const std::string& prefix) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.value().is_object()) human_lines(out, it.value(), prefix + it.key() + ".");
    else out += prefix + it.key() + ": " + human_value(it.value()) + "\n";
  }
}

}  // namespace detail

inline std::string emit_report(const Report& r, ReportFormat fmt) {
  if (fmt == ReportFormat::Structured) return dump(report_json(r));
  std::string out = "$ " + r.command + "\n";
  detail::human_lines(out, r.results, "");
  detail::human_lines(out, r.budget, "budget.");
  if (!r.error.empty()) out += "error: " + r.error + "\n";
  if (r.elapsed_ms) out += "elapsed_ms: " + std::to_string(*r.elapsed_ms) + "\n";
  out += std::string("status: ") + exit_status_name(r.status) + "\n";
  return out;
}

}  // namespace dht
