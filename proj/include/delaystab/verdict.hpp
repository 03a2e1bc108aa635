#pragma once

#include <optional>
#include <string_view>

namespace delaystab {

enum class Stability { stable, unstable, marginal };

/// Which test produced a verdict.
enum class Method { jury, oracle, derivative };

struct StabilityVerdict {
    Stability status = Stability::marginal;
    Method method = Method::jury;
    /// Jury: 1-based index of the first failed condition (or the first one at
    /// equality for a marginal verdict).
    std::optional<int> failed_condition;
    /// Oracle: spectral radius. Derivative: |f'(x*)|.
    std::optional<double> modulus;
};

/// Strict-inequality tolerance shared by every verdict.
inline constexpr double verdict_tolerance = 1e-12;

/// Classifies a root modulus against the unit circle.
inline Stability classify_modulus(double modulus) {
    if (modulus < 1.0 - verdict_tolerance) {
        return Stability::stable;
    }
    if (modulus > 1.0 + verdict_tolerance) {
        return Stability::unstable;
    }
    return Stability::marginal;
}

constexpr std::string_view to_string(Stability s) {
    switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::marginal: return "marginal";
    }
    return "?";
}

constexpr std::string_view to_string(Method m) {
    switch (m) {
    case Method::jury: return "jury";
    case Method::oracle: return "oracle";
    case Method::derivative: return "derivative";
    }
    return "?";
}

} // namespace delaystab
