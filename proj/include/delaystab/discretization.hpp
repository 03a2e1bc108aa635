#pragma once

#include <cmath>

#include "delaystab/error.hpp"
#include "delaystab/verdict.hpp"

namespace delaystab {

enum class Scheme { forward, ratio };

/// Logistic ODE discretized with step h.
struct SchemeParams {
    double r = 0.0;
    double K = 1.0;
    double h = 1.0;
    Scheme scheme = Scheme::forward;

    void validate() const {
        if (!std::isfinite(r)) {
            throw InvalidArgument("r must be finite");
        }
        if (!(K > 0.0) || !std::isfinite(K)) {
            throw InvalidArgument("K must be positive and finite");
        }
        if (!(h > 0.0) || !std::isfinite(h)) {
            throw InvalidArgument("h must be positive and finite");
        }
    }
};

/// x -> (rh + 1) x - (rh / K) x^2, evaluated as x + rh x (1 - x / K).
inline double forward_step(const SchemeParams& p, double x) {
    if (p.scheme != Scheme::forward) {
        throw InvalidArgument("forward_step called with a ratio scheme");
    }
    const double rh = p.r * p.h;
    return x + rh * x * (1.0 - x / p.K);
}

/// x -> (1 + rh) x / (1 + (rh / K) x); the pole at x = -K / (rh) is an error.
inline double ratio_step(const SchemeParams& p, double x) {
    if (p.scheme != Scheme::ratio) {
        throw InvalidArgument("ratio_step called with a forward scheme");
    }
    const double rh = p.r * p.h;
    const double denominator = 1.0 + (rh / p.K) * x;
    if (std::abs(denominator) <= 1e-12) {
        throw PoleError("ratio_step: denominator vanishes");
    }
    return (1.0 + rh) * x / denominator;
}

inline double scheme_step(const SchemeParams& p, double x) {
    return p.scheme == Scheme::forward ? forward_step(p, x) : ratio_step(p, x);
}

struct SchemeStability {
    StabilityVerdict trivial;    ///< X = 0
    StabilityVerdict nontrivial; ///< X = K
};

/// Classifies both fixed points by |f'(x*)| against 1.
inline SchemeStability scheme_stability(const SchemeParams& p) {
    p.validate();
    const double rh = p.r * p.h;
    const double at_zero = 1.0 + rh;
    const double at_capacity = p.scheme == Scheme::forward ? 1.0 - rh : 1.0 / (1.0 + rh);

    auto verdict = [](double derivative) {
        StabilityVerdict v;
        v.method = Method::derivative;
        v.modulus = std::abs(derivative);
        v.status = classify_modulus(std::abs(derivative));
        return v;
    };
    return {verdict(at_zero), verdict(at_capacity)};
}

} // namespace delaystab
