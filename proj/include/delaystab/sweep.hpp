#pragma once

#include <cmath>
#include <vector>

#include "delaystab/delay_map.hpp"
#include "delaystab/error.hpp"
#include "delaystab/jury.hpp"
#include "delaystab/verdict.hpp"

namespace delaystab {

/// Stability of (K, ..., K) for the given delay and rate. K does not enter
/// the linearization.
inline StabilityVerdict is_stable_nontrivial(int tau, double r, Method method = Method::jury) {
    const DelayParams params{r, 1.0, tau};
    params.validate();
    const Polynomial p = char_poly(params, FixedPoint::nontrivial);
    return method == Method::oracle ? oracle_verdict(p) : jury_verdict(p);
}

struct BoundaryPoint {
    int tau = 0;
    double r_critical = 0.0;
    double bracket_width = 0.0;
    Method method = Method::jury;
};

struct BoundaryTable {
    std::vector<BoundaryPoint> points;
    bool monotone_decreasing = false;
};

inline constexpr double default_boundary_tol = 1e-10;

/**
 * Upper end f(tau) of the open stability range (0, f(tau)) by bisection on
 * the verdict. Marginal counts as unstable. The upper bracket doubles from
 * 0.1 up to a cap of 4; r = 0 is the stable-side end when 0.1 is already
 * unstable.
 */
inline BoundaryPoint critical_r(int tau, double tol = default_boundary_tol, Method method = Method::jury) {
    if (!(tol > 0.0)) {
        throw InvalidArgument("critical_r: tol must be positive");
    }
    if (tau < 0) {
        throw InvalidArgument("critical_r: tau must be non-negative");
    }
    constexpr double cap = 4.0;
    auto stable = [&](double r) { return is_stable_nontrivial(tau, r, method).status == Stability::stable; };

    double lo = 0.0;
    double hi = 0.1;
    while (stable(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > cap) {
            throw BracketingError("critical_r: no loss of stability below r = 4 for tau = " + std::to_string(tau));
        }
    }
    while (hi - lo >= tol) {
        const double mid = 0.5 * (lo + hi);
        (stable(mid) ? lo : hi) = mid;
    }
    return {tau, 0.5 * (lo + hi), hi - lo, method};
}

/// critical_r for tau = 0..tau_max; monotone when every step drops by more than 10 tol.
inline BoundaryTable boundary_table(int tau_max, double tol = default_boundary_tol, Method method = Method::jury) {
    if (tau_max < 0) {
        throw InvalidArgument("boundary_table: tau_max must be non-negative");
    }
    BoundaryTable table;
    table.points.reserve(static_cast<std::size_t>(tau_max) + 1);
    for (int tau = 0; tau <= tau_max; ++tau) {
        table.points.push_back(critical_r(tau, tol, method));
    }
    table.monotone_decreasing = true;
    for (std::size_t i = 1; i < table.points.size(); ++i) {
        if (!(table.points[i].r_critical < table.points[i - 1].r_critical - 10.0 * tol)) {
            table.monotone_decreasing = false;
        }
    }
    return table;
}

} // namespace delaystab
