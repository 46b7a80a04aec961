#pragma once

#include <stdexcept>
#include <string>

namespace specdim {

/// Error codes name the violated contract, not the call site.
enum class Err {
    InvalidGrid,
    UnknownName,
    BadParams,
    BadInterval,
    GenerationUnavailable,
    NonMonotoneVerdicts,
    UnsupportedDensity,
    PoleProximity,
    GaugeNotSubLinear,
    UnresolvedLevelSet,
    NotProbability,
    NotAtomic,
    LengthNotReached,
    NonInvertible,
    BadProfile,
    ScaleNotMaterializable,
    Resonance,
    NotSummable,
    HypothesisFailed,
    BoxTooSmall,
    LeakageExceeded,
    NotUpH,
    BadConfig,
    IoFailure,
};

class Error : public std::runtime_error {
  public:
    Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Err code() const { return code_; }

  private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Err code, const std::string& what) {
    if (!ok) fail(code, what);
}

}  // namespace specdim
