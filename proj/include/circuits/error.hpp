#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace circuits {

enum class Errc {
  ZeroVector,
  DimensionMismatch,
  NotPointed,
  PointNotInPolyhedron,
  InvalidDimensions,
  NotInKernel,
  InconsistentPoint,
  NotStrictlyFeasible,
  NotAPolytope,
  IsAlreadyCircuit,
  IdenticalEndpoints,
  Parse,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotPointed: return "NotPointed";
    case Errc::PointNotInPolyhedron: return "PointNotInPolyhedron";
    case Errc::InvalidDimensions: return "InvalidDimensions";
    case Errc::NotInKernel: return "NotInKernel";
    case Errc::InconsistentPoint: return "InconsistentPoint";
    case Errc::NotStrictlyFeasible: return "NotStrictlyFeasible";
    case Errc::NotAPolytope: return "NotAPolytope";
    case Errc::IsAlreadyCircuit: return "IsAlreadyCircuit";
    case Errc::IdenticalEndpoints: return "IdenticalEndpoints";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace circuits
