// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "delaystab/delaystab.hpp"

using namespace delaystab;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit_s;
    std::function<Outcome()> check;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

Outcome table_two() {
    std::ostringstream out, err;
    const int code = cli::run({"boundary", "--tau-max", "3"}, out, err);
    if (code != 0) {
        return fail("boundary exited with " + std::to_string(code) + ": " + err.str());
    }
    const auto j = nlohmann::json::parse(out.str());
    const double expected[] = {2.0, 1.0, 0.618034, 0.445042};
    std::string detail;
    for (int tau = 0; tau < 4; ++tau) {
        const double got = j["points"][tau]["r_critical"].get<double>();
        detail += "f(" + std::to_string(tau) + ")=" + fmt_double(got) + " ";
        if (std::abs(got - expected[tau]) > 1e-5) {
            return fail(detail + "differs from " + fmt_double(expected[tau]));
        }
    }
    return {true, detail};
}

Outcome table_one() {
    for (int tau = 0; tau <= 5; ++tau) {
        const OpenInterval range = trivial_stability_range(tau);
        if (range.lower != -2.0 || range.upper != 0.0) {
            return fail("tau " + std::to_string(tau) + " range (" + fmt_double(range.lower) + ", " +
                        fmt_double(range.upper) + ")");
        }
        auto check = [&](double r, Stability want) -> bool {
            const Polynomial p = char_poly(DelayParams{r, 1.0, tau}, FixedPoint::trivial);
            return jury_verdict(p).status == want && oracle_verdict(p).status == want;
        };
        if (!check(-1.0, Stability::stable) || !check(-2.1, Stability::unstable) ||
            !check(0.1, Stability::unstable)) {
            return fail("verdict mismatch at tau " + std::to_string(tau));
        }
    }
    return {true, "range (-2, 0) for tau 0..5; jury and oracle agree at r = -1, -2.1, 0.1"};
}

Outcome conjecture() {
    const BoundaryTable t = boundary_table(15);
    if (!t.monotone_decreasing) {
        return fail("monotone_decreasing flag is false");
    }
    double min_gap = 1e300;
    for (std::size_t i = 1; i < t.points.size(); ++i) {
        min_gap = std::min(min_gap, t.points[i - 1].r_critical - t.points[i].r_critical);
    }
    if (!(min_gap > 1e-4)) {
        return fail("smallest decrease " + fmt_double(min_gap));
    }
    return {true, "f(15)=" + fmt_double(t.points.back().r_critical) + ", smallest decrease " + fmt_double(min_gap)};
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(2009);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_int_distribution<std::size_t> degree(2, 8);
    int checked = 0, agree = 0, stable = 0, fallbacks = 0;
    while (checked < 1000) {
        const std::size_t m = degree(rng);
        std::vector<double> c(m + 1);
        c[0] = std::abs(coeff(rng));
        if (c[0] == 0.0) {
            continue;
        }
        for (std::size_t i = 1; i <= m; ++i) {
            c[i] = coeff(rng);
        }
        const Polynomial p(std::move(c));
        const double rho = spectral_radius(p);
        if (std::abs(rho - 1.0) <= 1e-6) {
            continue;
        }
        const StabilityVerdict v = jury_verdict(p);
        const Stability want = rho < 1.0 ? Stability::stable : Stability::unstable;
        agree += v.status == want;
        stable += want == Stability::stable;
        fallbacks += v.method == Method::oracle;
        ++checked;
    }
    const std::string detail = std::to_string(agree) + "/1000 agree (" + std::to_string(stable) + " stable, " +
                               std::to_string(fallbacks) + " oracle fallbacks)";
    return agree == 1000 ? Outcome{true, detail} : fail(detail);
}

Outcome induction() {
    double worst = 0.0;
    int runs = 0;
    for (int tau = 2; tau <= 10; ++tau) {
        const double f = critical_r(tau).r_critical;
        for (int i = 1; i <= 20; ++i) {
            const double r = f * i / 21.0;
            const InductionReport rep = verify_sparse_induction(tau, r);
            worst = std::max(worst, rep.max_discrepancy);
            ++runs;
            if (!rep.sparse_pattern_holds || !rep.recurrences_hold || rep.max_discrepancy > 1e-9) {
                return fail("tau " + std::to_string(tau) + " r " + fmt_double(r));
            }
        }
    }
    return {true, std::to_string(runs) + " runs, max discrepancy " + fmt_double(worst)};
}

Outcome discretization_claims() {
    for (double h : {0.1, 0.5, 1.0, 2.0}) {
        const double edge = 2.0 / h;
        const auto below = scheme_stability(SchemeParams{edge - 1e-6, 1.0, h, Scheme::forward}).nontrivial.status;
        const auto above = scheme_stability(SchemeParams{edge + 1e-6, 1.0, h, Scheme::forward}).nontrivial.status;
        if (below != Stability::stable || above != Stability::unstable) {
            return fail("forward scheme does not flip at 2/h for h = " + fmt_double(h));
        }
    }
    for (int i = 0; i <= 60; ++i) {
        const double r = std::pow(10.0, -3.0 + 0.1 * i);
        if (scheme_stability(SchemeParams{r, 1.0, 1.0, Scheme::ratio}).nontrivial.status != Stability::stable) {
            return fail("ratio scheme unstable at r = " + fmt_double(r));
        }
    }
    return {true, "forward flips at 2/h for h in {0.1,0.5,1,2}; ratio stable on 61-point grid [1e-3,1e3]"};
}

Outcome blowflies() {
    const DelayParams params{0.106, 2800.0, 17};
    const Trajectory t = simulate(params, StateVector::constant(18, 1400.0), 2000);
    if (t.diverged) {
        return fail("trajectory diverged");
    }
    for (const auto& s : t.samples) {
        if (!std::isfinite(s.x) || !(s.x > 0.0)) {
            return fail("non-positive or non-finite sample at step " + std::to_string(s.step));
        }
    }
    const std::size_t n = 500;
    double mean = 0.0;
    for (std::size_t i = t.samples.size() - n; i < t.samples.size(); ++i) {
        mean += t.samples[i].x;
    }
    mean /= n;
    double var = 0.0;
    for (std::size_t i = t.samples.size() - n; i < t.samples.size(); ++i) {
        var += (t.samples[i].x - mean) * (t.samples[i].x - mean);
    }
    const double sd = std::sqrt(var / n);
    const std::string detail = "std of last 500 = " + fmt_double(sd) + " (threshold 28)";
    return sd > 0.01 * params.K ? Outcome{true, detail} : fail(detail);
}

Outcome jacobian_check() {
    std::mt19937_64 rng(1959);
    std::uniform_real_distribution<double> rate(-2.5, 2.5), log_capacity(-2.0, 4.0);
    std::uniform_int_distribution<int> delay(0, 12);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const DelayParams params{rate(rng), std::pow(10.0, log_capacity(rng)), delay(rng)};
        const auto [zero, full] = fixed_points(params);
        for (auto [point, state] : {std::pair{FixedPoint::trivial, zero}, std::pair{FixedPoint::nontrivial, full}}) {
            const JacobianMatrix J = jacobian(params, point);
            const double h = 1e-6 * params.K;
            for (std::size_t j = 0; j < J.size(); ++j) {
                StateVector plus = state, minus = state;
                plus.history[j] += h;
                minus.history[j] -= h;
                const auto fp = step(params, plus).history;
                const auto fm = step(params, minus).history;
                for (std::size_t i = 0; i < J.size(); ++i) {
                    const double fd = (fp[i] - fm[i]) / (2.0 * h);
                    const double err = std::abs(fd - J(i, j)) / std::max(1.0, std::abs(J(i, j)));
                    worst = std::max(worst, err);
                }
            }
        }
    }
    const std::string detail = "max relative error " + fmt_double(worst);
    return worst <= 1e-6 ? Outcome{true, detail} : fail(detail);
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Table 2 reproduction (boundary --tau-max 3)", 5.0, table_two},
        {2, "Table 1 reproduction (trivial range, tau 0..5)", 1.0, table_one},
        {3, "Monotone decrease of f(tau), tau 0..15", 30.0, conjecture},
        {4, "Jury vs root-oracle equivalence (1000 polynomials)", 10.0, oracle_equivalence},
        {5, "Sparse-row induction, tau 2..10, 20-point r grid", 5.0, induction},
        {6, "Forward/ratio discretization stability claims", 1.0, discretization_claims},
        {7, "Blowflies parameters oscillate", 1.0, blowflies},
        {8, "Analytic Jacobian vs central differences", 2.0, jacobian_check},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.passed && elapsed >= c.time_limit_s) {
            o = fail(o.detail + "; took " + fmt_double(elapsed) + " s, limit " + fmt_double(c.time_limit_s) + " s");
        }
        failures += !o.passed;
        std::printf("[%s] %d. %s: %s (%.3f s)\n", o.passed ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), elapsed);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
