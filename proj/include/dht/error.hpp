#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace dht {

enum class Errc {
  UnknownVertex,
  InvalidSize,
  NotATree,
  Disconnected,
  DuplicateEdge,
  DuplicateVertex,
  SelfLoop,
  InvalidLabel,
  NotAGraphMap,
  DomainMismatch,
  RadiusViolation,
  InvalidContraction,
  InvalidCertificate,
  DimensionMismatch,
  BasepointMismatch,
  CapExceeded,
  InvalidParameter,
  ModeMismatch,
  BudgetExceeded,
  AxisOutOfRange,
  SeedNotClosedWalk,
  InvalidLevel,
  SeamViolation,
  NotAdjacent,
  NotAPath,
  MovePreconditionFailed,
  GirthViolation,
  WellDefinednessViolation,
  ParseError,
  FileNotFound,
};

inline const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::InvalidSize: return "InvalidSize";
    case Errc::NotATree: return "NotATree";
    case Errc::Disconnected: return "Disconnected";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::DuplicateVertex: return "DuplicateVertex";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::InvalidLabel: return "InvalidLabel";
    case Errc::NotAGraphMap: return "NotAGraphMap";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::RadiusViolation: return "RadiusViolation";
    case Errc::InvalidContraction: return "InvalidContraction";
    case Errc::InvalidCertificate: return "InvalidCertificate";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::BasepointMismatch: return "BasepointMismatch";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::ModeMismatch: return "ModeMismatch";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::AxisOutOfRange: return "AxisOutOfRange";
    case Errc::SeedNotClosedWalk: return "SeedNotClosedWalk";
    case Errc::InvalidLevel: return "InvalidLevel";
    case Errc::SeamViolation: return "SeamViolation";
    case Errc::NotAdjacent: return "NotAdjacent";
    case Errc::NotAPath: return "NotAPath";
    case Errc::MovePreconditionFailed: return "MovePreconditionFailed";
    case Errc::GirthViolation: return "GirthViolation";
    case Errc::WellDefinednessViolation: return "WellDefinednessViolation";
    case Errc::ParseError: return "ParseError";
    case Errc::FileNotFound: return "FileNotFound";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Outcome of a check. On failure `reason` says what broke and the optional
/// fields locate it (stage index of a certificate, offending edge by label).
struct Verdict {
  bool ok = true;
  std::string reason;
  std::optional<std::size_t> stage;
  std::optional<std::pair<std::string, std::string>> edge;

  explicit operator bool() const noexcept { return ok; }

  static Verdict pass() { return {}; }

  static Verdict fail(std::string why) {
    Verdict v;
    v.ok = false;
    v.reason = std::move(why);
    return v;
  }

  static Verdict fail(std::string why, std::pair<std::string, std::string> where,
                      std::optional<std::size_t> at_stage = std::nullopt) {
    Verdict v = fail(std::move(why));
    v.edge = std::move(where);
    v.stage = at_stage;
    return v;
  }

  std::string describe() const {
    if (ok) return "ok";
    std::string out = reason;
    if (stage) out += " (stage " + std::to_string(*stage) + ")";
    if (edge) out += " at {" + edge->first + ", " + edge->second + "}";
    return out;
  }
};

}  // namespace dht
