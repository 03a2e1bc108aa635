#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "delaystab/error.hpp"

namespace delaystab {

using Complex = std::complex<double>;

/**
 * Real polynomial stored with descending powers: coeffs()[0] multiplies
 * the highest power and degree() == coeffs().size() - 1.
 *
 * Construction only requires a non-empty coefficient list; a zero leading
 * coefficient is rejected later by the operations that need it.
 */
class Polynomial {
public:
    explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) {
            throw InvalidArgument("polynomial needs at least one coefficient");
        }
    }

    Polynomial(std::initializer_list<double> coeffs) : Polynomial(std::vector<double>(coeffs)) {}

    std::span<const double> coeffs() const noexcept { return coeffs_; }
    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    double leading() const noexcept { return coeffs_.front(); }
    double operator[](std::size_t i) const { return coeffs_[i]; }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<double> coeffs_;
};

/// Horner evaluation.
inline Complex eval(const Polynomial& p, Complex z) {
    Complex acc{0.0, 0.0};
    for (double c : p.coeffs()) {
        acc = acc * z + c;
    }
    return acc;
}

inline double eval(const Polynomial& p, double x) {
    double acc = 0.0;
    for (double c : p.coeffs()) {
        acc = acc * x + c;
    }
    return acc;
}

/// Flips all signs when the leading coefficient is negative.
inline Polynomial normalize_leading(const Polynomial& p) {
    if (p.leading() == 0.0) {
        throw DegeneratePolynomial();
    }
    if (p.leading() > 0.0) {
        return p;
    }
    std::vector<double> flipped(p.coeffs().begin(), p.coeffs().end());
    for (double& c : flipped) {
        c = -c;
    }
    return Polynomial(std::move(flipped));
}

struct RootSet {
    std::vector<Complex> roots;
    double residual = 0.0; ///< max |P(root)|
    int iterations = 0;
};

struct RootOptions {
    double tolerance = 1e-12;
    int max_iterations = 1000;
};

/// Thrown by roots() when the iteration cap is reached; carries the best iterate.
class RootNonConvergence : public NumericFailure {
public:
    explicit RootNonConvergence(RootSet best)
        : NumericFailure("root finder did not converge (residual " + std::to_string(best.residual) + ")"),
          best_(std::move(best)) {}

    const RootSet& best() const noexcept { return best_; }

private:
    RootSet best_;
};

namespace detail {

struct HornerResult {
    Complex value;
    Complex derivative;
    double noise; ///< rounding-error bound for |value|
};

inline HornerResult horner_with_derivative(std::span<const double> a, Complex z) {
    Complex p{0.0, 0.0};
    Complex dp{0.0, 0.0};
    double bound = 0.0;
    const double az = std::abs(z);
    for (double c : a) {
        dp = dp * z + p;
        p = p * z + c;
        bound = bound * az + std::abs(c);
    }
    return {p, dp, 8.0 * std::numeric_limits<double>::epsilon() * bound};
}

inline double max_residual(const Polynomial& p, std::span<const Complex> roots) {
    double worst = 0.0;
    for (const Complex& z : roots) {
        worst = std::max(worst, std::abs(eval(p, z)));
    }
    return worst;
}

} // namespace detail

/**
 * All complex roots by Aberth–Ehrlich simultaneous iteration.
 *
 * Starting points sit on the Cauchy-bound circle 1 + max|a_i/a_0|, equally
 * spaced and rotated by a fixed irrational phase. A root is settled when its
 * correction drops below tolerance (scaled by max(1, |z|)) or when |P(z)| is
 * already at Horner rounding level. Multiple roots converge with reduced
 * accuracy; nothing is polished.
 */
inline RootSet roots(const Polynomial& p, RootOptions options = {}) {
    if (p.leading() == 0.0) {
        throw DegeneratePolynomial();
    }
    const std::size_t n = p.degree();
    if (n == 0) {
        throw InvalidArgument("roots: polynomial degree must be at least 1");
    }
    const auto a = p.coeffs();

    double cauchy = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        cauchy = std::max(cauchy, std::abs(a[i] / a[0]));
    }
    const double radius = 1.0 + cauchy;
    constexpr double phase = 0.5 * std::numbers::sqrt2; // irrational offset breaks symmetry

    RootSet result;
    result.roots.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + phase;
        result.roots[k] = std::polar(radius, angle);
    }
    if (n == 1) {
        result.roots[0] = Complex{-a[1] / a[0], 0.0};
        result.residual = detail::max_residual(p, result.roots);
        return result;
    }

    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        bool all_settled = true;
        for (std::size_t i = 0; i < n; ++i) {
            Complex& z = result.roots[i];
            const auto h = detail::horner_with_derivative(a, z);
            if (std::abs(h.value) <= h.noise) {
                continue;
            }
            const Complex newton = h.value / h.derivative;
            Complex repulsion{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    repulsion += 1.0 / (z - result.roots[j]);
                }
            }
            Complex correction = newton / (1.0 - newton * repulsion);
            if (!std::isfinite(correction.real()) || !std::isfinite(correction.imag())) {
                // Derivative vanished or two iterates collided; nudge off the spot.
                correction = Complex{options.tolerance, options.tolerance} * std::max(1.0, std::abs(z)) * 1e3;
            }
            z -= correction;
            all_settled = all_settled && std::abs(correction) < options.tolerance * std::max(1.0, std::abs(z));
        }
        result.iterations = iter;
        if (all_settled) {
            result.residual = detail::max_residual(p, result.roots);
            return result;
        }
    }
    result.residual = detail::max_residual(p, result.roots);
    throw RootNonConvergence(std::move(result));
}

/// Largest root modulus.
inline double spectral_radius(const Polynomial& p) {
    const RootSet rs = roots(p);
    double rho = 0.0;
    for (const Complex& z : rs.roots) {
        rho = std::max(rho, std::abs(z));
    }
    return rho;
}

} // namespace delaystab
