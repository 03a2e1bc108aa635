#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "delaystab/delaystab.hpp"

namespace delaystab::cli {
namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    double r = 0.0;
    double K = 1.0;
    double h = 1.0;
    int tau = 0;
    int tau_max = 0;
    double tol = default_boundary_tol;
    std::optional<double> x0;
    std::string history;
    long steps = 0;
    std::string simulate_format = "csv";
    std::string boundary_format = "json";
    std::string out;
    std::string point = "nontrivial";
    std::string method = "jury";
    std::string scheme = "forward";
    std::string coeffs;
};

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw UsageError(fmt::format("--{} must be a finite number", name));
    }
}

std::string full(double v) { return fmt::format("{:.17g}", v); }

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw UsageError("cannot open output file " + path);
    }
    file << text;
}

Method parse_method(const std::string& name) { return name == "oracle" ? Method::oracle : Method::jury; }

Json verdict_json(const StabilityVerdict& v) {
    Json j;
    j["status"] = std::string(to_string(v.status));
    j["method"] = std::string(to_string(v.method));
    j["failed_condition"] = v.failed_condition ? Json(*v.failed_condition) : Json(nullptr);
    j["modulus"] = v.modulus ? Json(*v.modulus) : Json(nullptr);
    return j;
}

Json conditions_json(const std::vector<ConditionResult>& conditions) {
    Json arr = Json::array();
    for (const auto& c : conditions) {
        arr.push_back({{"index", c.index},
                       {"description", c.description},
                       {"lhs", c.lhs},
                       {"rhs", c.rhs},
                       {"satisfied", c.satisfied},
                       {"margin", c.margin}});
    }
    return arr;
}

Json roots_json(const Polynomial& p) {
    Json arr = Json::array();
    for (const Complex& z : roots(p).roots) {
        arr.push_back({{"re", z.real()}, {"im", z.imag()}, {"modulus", std::abs(z)}});
    }
    return arr;
}

std::vector<double> to_vector(const Polynomial& p) { return {p.coeffs().begin(), p.coeffs().end()}; }

int do_simulate(const Options& o, std::ostream& out, std::ostream& err) {
    require_finite(o.r, "r");
    require_finite(o.K, "K");
    const DelayParams params{o.r, o.K, o.tau};
    params.validate();
    if (o.steps < 0) {
        throw UsageError("--steps must be non-negative");
    }

    StateVector init;
    if (!o.history.empty()) {
        if (o.x0) {
            throw UsageError("give either --x0 or --history, not both");
        }
        init.history = parse_number_list(o.history);
        if (init.history.size() != params.dimension()) {
            throw UsageError(fmt::format("--history needs tau + 1 = {} entries", params.dimension()));
        }
    } else if (o.x0) {
        require_finite(*o.x0, "x0");
        init = StateVector::constant(params.dimension(), *o.x0);
    } else {
        throw UsageError("one of --x0 or --history is required");
    }

    const Trajectory traj = simulate(params, init, o.steps);

    std::string text;
    if (o.simulate_format == "json") {
        Json j;
        j["r"] = o.r;
        j["K"] = o.K;
        j["tau"] = o.tau;
        j["diverged"] = traj.diverged;
        Json samples = Json::array();
        for (const auto& s : traj.samples) {
            samples.push_back({{"step", s.step}, {"x", s.x}});
        }
        j["samples"] = std::move(samples);
        text = j.dump(2) + "\n";
    } else {
        text = "step,x\n";
        for (const auto& s : traj.samples) {
            text += fmt::format("{},{}\n", s.step, full(s.x));
        }
    }
    emit(text, o.out, out);

    if (traj.diverged) {
        err << "simulate: trajectory diverged at step " << traj.samples.back().step << "\n";
        return numeric_error;
    }
    return ok;
}

int do_stability(const Options& o, std::ostream& out) {
    require_finite(o.r, "r");
    require_finite(o.K, "K");
    const DelayParams params{o.r, o.K, o.tau};
    params.validate();
    const FixedPoint point = o.point == "trivial" ? FixedPoint::trivial : FixedPoint::nontrivial;
    const Polynomial p = char_poly(params, point);
    const Method method = parse_method(o.method);
    const StabilityVerdict verdict = method == Method::oracle ? oracle_verdict(p) : jury_verdict(p);

    Json j;
    j["tau"] = o.tau;
    j["r"] = o.r;
    j["point"] = o.point;
    j["char_poly"] = to_vector(p);
    j["verdict"] = verdict_json(verdict);
    if (verdict.method == Method::jury) {
        j["conditions"] = conditions_json(jury_conditions(normalize_leading(p)));
    } else {
        j["roots"] = roots_json(p);
    }
    if (point == FixedPoint::trivial) {
        const OpenInterval range = trivial_stability_range(o.tau);
        j["stable_range"] = {{"lower", range.lower}, {"upper", range.upper}};
    }
    emit(j.dump(2) + "\n", o.out, out);
    return ok;
}

int do_boundary(const Options& o, std::ostream& out) {
    require_finite(o.tol, "tol");
    if (!(o.tol > 0.0)) {
        throw UsageError("--tol must be positive");
    }
    const BoundaryTable table = boundary_table(o.tau_max, o.tol, parse_method(o.method));

    std::string text;
    if (o.boundary_format == "csv") {
        text = "tau,r_critical,bracket_width,method\n";
        for (const auto& pt : table.points) {
            text += fmt::format("{},{},{},{}\n", pt.tau, full(pt.r_critical), full(pt.bracket_width),
                                to_string(pt.method));
        }
        text += fmt::format("# monotone_decreasing,{}\n", table.monotone_decreasing);
    } else {
        Json points = Json::array();
        for (const auto& pt : table.points) {
            points.push_back({{"tau", pt.tau},
                              {"r_critical", pt.r_critical},
                              {"bracket_width", pt.bracket_width},
                              {"method", std::string(to_string(pt.method))}});
        }
        Json j;
        j["monotone_decreasing"] = table.monotone_decreasing;
        j["points"] = std::move(points);
        text = j.dump(2) + "\n";
    }
    emit(text, o.out, out);
    return ok;
}

std::string tuple_label(const char* name, int tau, const char* entry) {
    if (tau == 0) {
        return fmt::format("{} = {}", name, entry);
    }
    std::string s = fmt::format("{} = ({}", name, entry);
    for (int i = 0; i < tau; ++i) {
        s += fmt::format(", {}", entry);
    }
    return s + ")";
}

int do_tables(const Options& o, std::ostream& out) {
    constexpr int tau_max = 5;
    std::string text = "Table 1: stability of the trivial fixed point\n";
    text += fmt::format("{:<5} {:<28} {}\n", "tau", "fixed point", "range of stability");
    for (int tau = 0; tau <= tau_max; ++tau) {
        const OpenInterval range = trivial_stability_range(tau);
        text += fmt::format("{:<5} {:<28} {:g} < r < {:g}\n", tau, tuple_label("X1", tau, "0"), range.lower,
                            range.upper);
    }
    text += "\nTable 2: stability of the non-trivial fixed point\n";
    text += fmt::format("{:<5} {:<28} {}\n", "tau", "fixed point", "range of stability");
    const BoundaryTable table = boundary_table(tau_max);
    for (const auto& pt : table.points) {
        text += fmt::format("{:<5} {:<28} 0 < r < {:.6f}\n", pt.tau, tuple_label("X2", pt.tau, "K"), pt.r_critical);
    }
    text += fmt::format("\nmonotone decreasing: {}\n", table.monotone_decreasing ? "yes" : "no");
    emit(text, o.out, out);
    return ok;
}

int do_jury(const Options& o, std::ostream& out) {
    const std::vector<double> raw = parse_number_list(o.coeffs);
    if (raw.size() < 2) {
        throw UsageError("--coeffs needs at least two coefficients");
    }
    const Polynomial input(raw);
    const Polynomial p = normalize_leading(input);

    Json j;
    j["input"] = raw;
    j["normalized"] = to_vector(p);
    if (p.degree() < 2) {
        j["table"] = nullptr;
        j["table_error"] = "not applicable: degree < 2";
        j["conditions"] = conditions_json(jury_conditions(p));
    } else {
        try {
            j["table"] = jury_table(p).rows;
            j["conditions"] = conditions_json(jury_conditions(p));
        } catch (const SingularTable& e) {
            j["table"] = nullptr;
            j["table_error"] = e.what();
            j["conditions"] = nullptr;
        }
    }
    const StabilityVerdict verdict = jury_verdict(p);
    j["verdict"] = verdict_json(verdict);
    if (verdict.method == Method::oracle) {
        j["roots"] = roots_json(p);
    }
    emit(j.dump(2) + "\n", o.out, out);
    return ok;
}

int do_discretize(const Options& o, std::ostream& out) {
    require_finite(o.r, "r");
    require_finite(o.h, "h");
    require_finite(o.K, "K");
    const SchemeParams params{o.r, o.K, o.h, o.scheme == "ratio" ? Scheme::ratio : Scheme::forward};
    params.validate();
    const SchemeStability s = scheme_stability(params);

    Json j;
    j["scheme"] = o.scheme;
    j["r"] = o.r;
    j["h"] = o.h;
    j["K"] = o.K;
    j["fixed_points"] = Json::array({{{"x", 0.0}, {"verdict", verdict_json(s.trivial)}},
                                     {{"x", o.K}, {"verdict", verdict_json(s.nontrivial)}}});
    emit(j.dump(2) + "\n", o.out, out);
    return ok;
}

} // namespace

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw InvalidArgument("not a number: '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) {
            throw InvalidArgument("not a number: '" + item + "'");
        }
        if (!std::isfinite(v)) {
            throw InvalidArgument("non-finite value: '" + item + "'");
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw InvalidArgument("empty number list");
    }
    return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Stability analysis of the delayed logistic map", "delaystab"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    const auto formats = CLI::IsMember({"csv", "json"});
    const auto methods = CLI::IsMember({"jury", "oracle"});

    auto* simulate_cmd = app.add_subcommand("simulate", "Iterate the delayed logistic map");
    simulate_cmd->add_option("--r", o.r, "Reproduction rate")->required();
    simulate_cmd->add_option("--K", o.K, "Carrying capacity")->required();
    simulate_cmd->add_option("--tau", o.tau, "Delay in steps")->required();
    simulate_cmd->add_option("--x0", o.x0, "Constant initial history value");
    simulate_cmd->add_option("--history", o.history, "Explicit initial history \"v0,...,v_tau\" (oldest first)");
    simulate_cmd->add_option("--steps", o.steps, "Number of steps")->required();
    simulate_cmd->add_option("--format", o.simulate_format, "Output format")->check(formats)->default_val("csv");
    simulate_cmd->add_option("--out", o.out, "Output file (default stdout)");

    auto* stability_cmd = app.add_subcommand("stability", "Stability of a fixed point");
    stability_cmd->add_option("--tau", o.tau, "Delay in steps")->required();
    stability_cmd->add_option("--r", o.r, "Reproduction rate")->required();
    stability_cmd->add_option("--K", o.K, "Carrying capacity")->default_val(1.0);
    stability_cmd->add_option("--point", o.point, "Fixed point")
        ->check(CLI::IsMember({"trivial", "nontrivial"}))
        ->required();
    stability_cmd->add_option("--method", o.method, "Test")->check(methods)->default_val("jury");
    stability_cmd->add_option("--out", o.out, "Output file (default stdout)");

    auto* boundary_cmd = app.add_subcommand("boundary", "Stability boundary f(tau) of the non-trivial point");
    boundary_cmd->add_option("--tau-max", o.tau_max, "Largest delay")->required();
    boundary_cmd->add_option("--tol", o.tol, "Bisection tolerance")->default_val(default_boundary_tol);
    boundary_cmd->add_option("--method", o.method, "Test")->check(methods)->default_val("jury");
    boundary_cmd->add_option("--format", o.boundary_format, "Output format")->check(formats)->default_val("json");
    boundary_cmd->add_option("--out", o.out, "Output file (default stdout)");

    auto* tables_cmd = app.add_subcommand("tables", "Stability tables for tau = 0..5");
    tables_cmd->add_option("--out", o.out, "Output file (default stdout)");

    auto* jury_cmd = app.add_subcommand("jury", "Jury table and conditions of a polynomial");
    jury_cmd->add_option("--coeffs", o.coeffs, "Coefficients \"c0,c1,...,cm\", highest power first")->required();
    jury_cmd->add_option("--out", o.out, "Output file (default stdout)");

    auto* discretize_cmd = app.add_subcommand("discretize", "Fixed-point stability of a logistic discretization");
    discretize_cmd->add_option("--scheme", o.scheme, "Scheme")
        ->check(CLI::IsMember({"forward", "ratio"}))
        ->required();
    discretize_cmd->add_option("--r", o.r, "Rate")->required();
    discretize_cmd->add_option("--h", o.h, "Step size")->required();
    discretize_cmd->add_option("--K", o.K, "Carrying capacity")->required();
    discretize_cmd->add_option("--out", o.out, "Output file (default stdout)");

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("delaystab");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) {
        argv.push_back(s.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return ok;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return usage_error;
    }

    try {
        if (simulate_cmd->parsed()) {
            return do_simulate(o, out, err);
        }
        if (stability_cmd->parsed()) {
            return do_stability(o, out);
        }
        if (boundary_cmd->parsed()) {
            return do_boundary(o, out);
        }
        if (tables_cmd->parsed()) {
            return do_tables(o, out);
        }
        if (jury_cmd->parsed()) {
            return do_jury(o, out);
        }
        if (discretize_cmd->parsed()) {
            return do_discretize(o, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return usage_error;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const NumericFailure& e) {
        err << "numeric failure: " << e.what() << "\n";
        return numeric_error;
    }
    return usage_error;
}

} // namespace delaystab::cli
