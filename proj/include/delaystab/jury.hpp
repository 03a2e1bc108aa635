#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "delaystab/error.hpp"
#include "delaystab/polynomial.hpp"
#include "delaystab/verdict.hpp"

namespace delaystab {

/**
 * Jury stability table in determinant form.
 *
 * rows[0] is the polynomial (descending powers). Each following row is one
 * entry shorter:
 *
 *     rows[j+1][k] = 2^e * (rows[j][m] * rows[j][k+1] - rows[j][m-1-k] * rows[j][0])
 *
 * with m the last index of rows[j] and e = scale_exponents[j+1]. Entries of
 * row j are homogeneous of degree 2^j in the coefficients, so long tables
 * under- or overflow; e is non-zero only when the raw row's largest entry
 * leaves [2^-100, 2^100], and it brings that entry back to [0.5, 1). Power of
 * two scaling is exact and no condition depends on the scale of a row.
 * Reduction stops at a 3-entry row.
 */
struct JuryTable {
    std::vector<std::vector<double>> rows;
    std::vector<int> scale_exponents; ///< same length as rows, 0 for rows[0]
};

struct ConditionResult {
    int index = 0; ///< 1-based
    std::string description;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
    /// Signed, scale-relative distance from equality; positive means the
    /// strict inequality holds.
    double margin = 0.0;
};

namespace detail {

inline double max_abs(const std::vector<double>& row) {
    double worst = 0.0;
    for (double v : row) {
        worst = std::max(worst, std::abs(v));
    }
    return worst;
}

inline std::vector<double> reduce_row(const std::vector<double>& row, int& exponent) {
    const std::size_t m = row.size() - 1;
    std::vector<double> next(m);
    for (std::size_t k = 0; k < m; ++k) {
        next[k] = row[m] * row[k + 1] - row[m - 1 - k] * row[0];
    }
    exponent = 0;
    const double peak = max_abs(next);
    if (peak != 0.0 && (peak < 0x1p-100 || peak > 0x1p100)) {
        std::frexp(peak, &exponent);
        exponent = -exponent;
        for (double& v : next) {
            v = std::ldexp(v, exponent);
        }
    }
    return next;
}

inline double relative_gap(double larger_side, double smaller_side) {
    const double scale = std::max(std::abs(larger_side), std::abs(smaller_side));
    return scale == 0.0 ? 0.0 : (larger_side - smaller_side) / scale;
}

} // namespace detail

/// Builds the full table; requires degree >= 2 and a positive leading coefficient.
inline JuryTable jury_table(const Polynomial& p) {
    if (p.leading() == 0.0) {
        throw DegeneratePolynomial();
    }
    if (p.leading() < 0.0) {
        throw InvalidArgument("jury_table: leading coefficient must be positive (normalize first)");
    }
    if (p.degree() < 2) {
        throw TableNotApplicable();
    }
    JuryTable table;
    table.rows.emplace_back(p.coeffs().begin(), p.coeffs().end());
    table.scale_exponents.push_back(0);
    while (table.rows.back().size() > 3) {
        const auto& row = table.rows.back();
        // The input row may end in zero (root at the origin); reduced rows may not.
        if (table.rows.size() > 1 && std::abs(row.back()) <= verdict_tolerance * detail::max_abs(row)) {
            throw SingularTable(table.rows.size() - 1);
        }
        int exponent = 0;
        auto next = detail::reduce_row(row, exponent);
        table.rows.push_back(std::move(next));
        table.scale_exponents.push_back(exponent);
    }
    return table;
}

/**
 * Jury conditions for a polynomial with positive leading coefficient.
 *
 * Degree m gives m + 1 results: P(1) > 0, (-1)^m P(-1) > 0, |a_m| < a_0 and
 * then |last| > |first| for each reduced row of the table. Degree 1 only
 * gets the first two. Margins are relative to the magnitudes being compared
 * (Σ|a_i| for the two evaluations) so they are invariant under scaling of p.
 */
inline std::vector<ConditionResult> jury_conditions(const Polynomial& p) {
    if (p.leading() == 0.0) {
        throw DegeneratePolynomial();
    }
    if (p.leading() < 0.0) {
        throw InvalidArgument("jury_conditions: leading coefficient must be positive (normalize first)");
    }
    const std::size_t m = p.degree();
    if (m == 0) {
        throw InvalidArgument("jury_conditions: polynomial degree must be at least 1");
    }

    double abs_sum = 0.0;
    for (double c : p.coeffs()) {
        abs_sum += std::abs(c);
    }

    std::vector<ConditionResult> out;
    auto push = [&out](std::string description, double lhs, double rhs, double margin) {
        ConditionResult c;
        c.index = static_cast<int>(out.size()) + 1;
        c.description = std::move(description);
        c.lhs = lhs;
        c.rhs = rhs;
        c.margin = margin;
        c.satisfied = margin > verdict_tolerance;
        out.push_back(std::move(c));
    };

    const double at_one = eval(p, 1.0);
    push("P(1) > 0", at_one, 0.0, at_one / abs_sum);
    const double at_minus_one = (m % 2 == 0 ? 1.0 : -1.0) * eval(p, -1.0);
    push("(-1)^m P(-1) > 0", at_minus_one, 0.0, at_minus_one / abs_sum);
    if (m == 1) {
        return out;
    }

    push("|a_m| < a_0", std::abs(p[m]), p[0], detail::relative_gap(p[0], std::abs(p[m])));

    const JuryTable table = jury_table(p);
    for (std::size_t j = 1; j < table.rows.size(); ++j) {
        const auto& row = table.rows[j];
        const double last = std::abs(row.back());
        const double first = std::abs(row.front());
        push("row " + std::to_string(j + 1) + ": |last| > |first|", last, first, detail::relative_gap(last, first));
    }
    return out;
}

/// Verdict from the root oracle alone.
inline StabilityVerdict oracle_verdict(const Polynomial& p) {
    StabilityVerdict v;
    v.method = Method::oracle;
    const double rho = spectral_radius(p);
    v.modulus = rho;
    v.status = classify_modulus(rho);
    return v;
}

/**
 * Stability of all roots via the Jury conditions. Any clearly violated
 * condition makes the verdict unstable; otherwise a condition within
 * tolerance of equality makes it marginal. A singular table is handed to the
 * root oracle.
 */
inline StabilityVerdict jury_verdict(const Polynomial& p) {
    const Polynomial q = normalize_leading(p);
    if (q.degree() == 0) {
        return {Stability::stable, Method::jury, std::nullopt, std::nullopt};
    }
    std::vector<ConditionResult> conditions;
    try {
        conditions = jury_conditions(q);
    } catch (const SingularTable&) {
        return oracle_verdict(q);
    }

    StabilityVerdict v;
    v.method = Method::jury;
    v.status = Stability::stable;
    for (const auto& c : conditions) {
        if (c.margin < -verdict_tolerance) {
            v.status = Stability::unstable;
            v.failed_condition = c.index;
            return v;
        }
    }
    for (const auto& c : conditions) {
        if (!c.satisfied) {
            v.status = Stability::marginal;
            v.failed_condition = c.index;
            return v;
        }
    }
    return v;
}

struct InductionReport {
    int tau = 0;
    double r = 0.0;
    int rows_checked = 0;
    bool sparse_pattern_holds = false;
    bool recurrences_hold = false;
    double max_discrepancy = 0.0;
};

/**
 * Checks the coefficient structure of the Jury table of λ^{τ+1} - λ^τ + r.
 *
 * The first reduced row must be (-r, 0, ..., 0, 1, r² - 1). Every reduced row
 * may be non-zero only at positions 0, m-1 and m, and consecutive reduced rows
 * must satisfy
 *
 *     next[0]    = -row[m-1] * row[0]
 *     next[m-2]  =  row[m]   * row[m-1]
 *     next[m-1]  =  row[m]^2 - row[0]^2
 *
 * Failures are reported through the flags, not thrown.
 */
inline InductionReport verify_sparse_induction(int tau, double r) {
    if (tau < 2) {
        throw InvalidArgument("verify_sparse_induction: tau must be at least 2");
    }
    if (!std::isfinite(r)) {
        throw InvalidArgument("verify_sparse_induction: r must be finite");
    }
    constexpr double tolerance = 1e-9;

    InductionReport report;
    report.tau = tau;
    report.r = r;

    std::vector<double> coeffs(static_cast<std::size_t>(tau) + 2, 0.0);
    coeffs[0] = 1.0;
    coeffs[1] = -1.0;
    coeffs.back() = r;

    JuryTable table;
    try {
        table = jury_table(Polynomial(std::move(coeffs)));
    } catch (const SingularTable&) {
        return report;
    }

    bool pattern = true;
    double discrepancy = 0.0;
    auto track = [&discrepancy](double got, double want) {
        discrepancy = std::max(discrepancy, std::abs(got - want));
    };

    const auto& first = table.rows[1];
    for (std::size_t k = 0; k < first.size(); ++k) {
        double want = 0.0;
        if (k == 0) {
            want = -r;
        } else if (k + 2 == first.size()) {
            want = 1.0;
        } else if (k + 1 == first.size()) {
            want = r * r - 1.0;
        }
        track(first[k], want);
    }

    for (std::size_t j = 1; j < table.rows.size(); ++j) {
        const auto& row = table.rows[j];
        const std::size_t m = row.size() - 1;
        ++report.rows_checked;
        for (std::size_t k = 1; k + 1 < m; ++k) {
            if (std::abs(row[k]) > tolerance) {
                pattern = false;
            }
        }
        if (j + 1 < table.rows.size()) {
            const auto& next = table.rows[j + 1];
            const int e = table.scale_exponents[j + 1];
            track(next[0], std::ldexp(-row[m - 1] * row[0], e));
            track(next[m - 2], std::ldexp(row[m] * row[m - 1], e));
            track(next[m - 1], std::ldexp(row[m] * row[m] - row[0] * row[0], e));
        }
    }

    report.sparse_pattern_holds = pattern;
    report.max_discrepancy = discrepancy;
    report.recurrences_hold = discrepancy <= tolerance;
    return report;
}

} // namespace delaystab
