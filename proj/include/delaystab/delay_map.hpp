#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "delaystab/error.hpp"
#include "delaystab/polynomial.hpp"

namespace delaystab {

/// Parameters of x_{n+1} = x_n + r x_n (1 - x_{n-tau} / K).
struct DelayParams {
    double r = 0.0;
    double K = 1.0;
    int tau = 0;

    void validate() const {
        if (!std::isfinite(r)) {
            throw InvalidArgument("r must be finite");
        }
        if (!(K > 0.0) || !std::isfinite(K)) {
            throw InvalidArgument("K must be positive and finite");
        }
        if (tau < 0) {
            throw InvalidArgument("tau must be non-negative");
        }
    }

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(tau) + 1; }
};

/// History (x_{n-tau}, ..., x_n), oldest first.
struct StateVector {
    std::vector<double> history;

    static StateVector constant(std::size_t length, double value) {
        return StateVector{std::vector<double>(length, value)};
    }

    friend bool operator==(const StateVector&, const StateVector&) = default;
};

enum class FixedPoint { trivial, nontrivial };

inline StateVector step(const DelayParams& params, const StateVector& state) {
    const auto& h = state.history;
    if (h.size() != params.dimension()) {
        throw InvalidArgument("state length must be tau + 1");
    }
    const double current = h.back();
    const double delayed = h.front();
    StateVector next;
    next.history.reserve(h.size());
    next.history.assign(h.begin() + 1, h.end());
    next.history.push_back(current + params.r * current * (1.0 - delayed / params.K));
    return next;
}

struct Sample {
    long step = 0;
    double x = 0.0;
};

/**
 * Samples start with the initial history at steps -tau..0 and continue with
 * one sample per applied step. If |x| exceeds 1e12 K or turns non-finite the
 * run stops after recording the offending sample and `diverged` is set.
 */
struct Trajectory {
    DelayParams params;
    std::vector<Sample> samples;
    bool diverged = false;
};

inline Trajectory simulate(const DelayParams& params, const StateVector& init, long n_steps) {
    params.validate();
    if (n_steps < 0) {
        throw InvalidArgument("n_steps must be non-negative");
    }
    if (init.history.size() != params.dimension()) {
        throw InvalidArgument("initial history must have tau + 1 entries");
    }
    for (double v : init.history) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("initial history must be finite");
        }
    }

    Trajectory traj;
    traj.params = params;
    traj.samples.reserve(init.history.size() + static_cast<std::size_t>(n_steps));
    for (std::size_t i = 0; i < init.history.size(); ++i) {
        traj.samples.push_back({static_cast<long>(i) - params.tau, init.history[i]});
    }

    const double limit = 1e12 * params.K;
    StateVector state = init;
    for (long n = 1; n <= n_steps; ++n) {
        state = step(params, state);
        const double x = state.history.back();
        traj.samples.push_back({n, x});
        if (!std::isfinite(x) || std::abs(x) > limit) {
            traj.diverged = true;
            break;
        }
    }
    return traj;
}

/// (0, ..., 0) and (K, ..., K), each of length tau + 1.
inline std::pair<StateVector, StateVector> fixed_points(const DelayParams& params) {
    return {StateVector::constant(params.dimension(), 0.0), StateVector::constant(params.dimension(), params.K)};
}

/// Dense row-major square matrix; row i is the gradient of the i-th updated component.
class JacobianMatrix {
public:
    explicit JacobianMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<double> entries_;
};

inline JacobianMatrix jacobian(const DelayParams& params, FixedPoint point) {
    const std::size_t n = params.dimension();
    const double c = point == FixedPoint::trivial ? 0.0 : params.K;
    JacobianMatrix J(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        J(i, i + 1) = 1.0;
    }
    // With tau = 0 both partials land on the same entry and add up.
    J(n - 1, 0) += -params.r * c / params.K;
    J(n - 1, n - 1) += 1.0 + params.r * (1.0 - c / params.K);
    return J;
}

/**
 * det(λI - J) in closed form. Trivial point: λ^tau (λ - (1 + r)).
 * Non-trivial point: λ^{tau+1} - λ^tau + r.
 */
inline Polynomial char_poly(const DelayParams& params, FixedPoint point) {
    std::vector<double> coeffs(params.dimension() + 1, 0.0);
    coeffs[0] = 1.0;
    if (point == FixedPoint::trivial) {
        coeffs[1] = -(1.0 + params.r);
    } else {
        coeffs[1] -= 1.0;
        coeffs.back() += params.r;
    }
    return Polynomial(std::move(coeffs));
}

struct OpenInterval {
    double lower = 0.0;
    double upper = 0.0;

    bool contains(double v) const noexcept { return lower < v && v < upper; }
    friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

/**
 * Range of r for which the trivial fixed point is stable. J(X1) is upper
 * triangular with eigenvalues 0 (tau times) and 1 + r; the zeros are always
 * inside the unit circle, so the range is {r : -1 < 1 + r < 1}.
 */
inline OpenInterval trivial_stability_range(int tau) {
    if (tau < 0) {
        throw InvalidArgument("tau must be non-negative");
    }
    const DelayParams probe{0.0, 1.0, tau};
    const JacobianMatrix J = jacobian(probe, FixedPoint::trivial);
    const std::size_t last = J.size() - 1;
    // Diagonal entry is offset + r with offset = J at r = 0.
    const double offset = J(last, last);
    return {-1.0 - offset, 1.0 - offset};
}

} // namespace delaystab
