// Command-line surface for the correlated-random-walk spectral toolkit.
//
// Exit codes form a stable contract: 0 success, 1 invariant failure,
// 2 validation error, 3 parse error, 4 assumption violation.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crw/config_io.hpp"
#include "crw/crw.hpp"

namespace {

using namespace crw;

enum class LogLevel { Off = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
    const char* env = std::getenv("CRW_LOG");
    if (!env) return LogLevel::Off;
    const std::string v(env);
    if (v == "debug") return LogLevel::Debug;
    if (v == "info") return LogLevel::Info;
    return LogLevel::Off;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) std::cerr << "[info] " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::Debug) std::cerr << "[debug] " << msg << "\n";
}

std::string fmt15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string join15(const std::vector<double>& vs, const char* sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += sep;
        out += fmt15(vs[i]);
    }
    return out;
}

RunReport make_report(const std::string& command, const PathCRWModel& model) {
    RunReport r;
    r.command = command;
    r.n = model.n;
    r.nu2 = model.family.nu2;
    r.digest = coin_digest(model);
    return r;
}

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const RunReport& report, bool as_json, const std::string& text) {
    if (as_json)
        std::cout << report.to_json().dump(2) << "\n";
    else
        std::cout << text;
}

WalkerState parse_init(const std::string& spec_str, const PathCRWModel& model) {
    const auto comma = spec_str.find(',');
    if (comma == std::string::npos) throw ParseError("--init expects \"x,L\" or \"x,R\"");
    std::size_t x = 0;
    try {
        x = std::stoul(spec_str.substr(0, comma));
    } catch (const std::exception&) {
        throw ParseError("--init vertex is not a number: " + spec_str);
    }
    const std::string side = spec_str.substr(comma + 1);
    if (x > model.n) throw ParseError("--init vertex out of range");
    if (side != "L" && side != "R") throw ParseError("--init side must be L or R");
    return {x, side == "L" ? Side::L : Side::R};
}

// --------------------------------------------------------------------------

int cmd_validate(const std::string& config, bool as_json) {
    Stopwatch clock;
    const PathCRWModel model = load_model(config);
    RunReport report = make_report("validate", model);
    report.results = model_to_json(model);
    report.results["nu2"] = model.family.nu2;
    report.wall_time_ms = clock.ms();

    std::string text = "valid model: n = " + std::to_string(model.n) +
                       ", nu2 = " + fmt15(model.family.nu2) + "\n";
    for (std::size_t x = 0; x <= model.n; ++x)
        text += "  vertex " + std::to_string(x) + ": p_L = " +
                fmt15(model.family.coins[x].p_L) + ", p_R = " +
                fmt15(model.family.coins[x].p_R) + "\n";
    emit(report, as_json, text);
    return 0;
}

int cmd_spectrum(const std::string& config, bool as_json, bool as_csv, bool dump_b,
                 bool dump_pi, bool dump_j) {
    Stopwatch clock;
    const PathCRWModel model = load_model(config);
    RunReport report = make_report("spectrum", model);

    const TridiagonalB b = build_B(model);
    const PiVector pi = build_pi(b);
    const SymTridiagonalJ j = build_J(b, pi);
    const std::vector<EigenPairB> eig_b = eigs_B(model);
    std::vector<double> lambdas;
    for (const EigenPairB& p : eig_b) lambdas.push_back(p.lambda);
    const Assumption2Report a2 = check_assumption2(lambdas, model.family.nu2);

    report.results["spec_B"] = lambdas;
    json a2_json = {{"applies", a2.applies},
                    {"threshold", a2.threshold},
                    {"pass", a2.pass},
                    {"items", json::array()}};
    for (const Assumption2Item& item : a2.items)
        a2_json["items"].push_back({{"lambda", item.lambda}, {"pass", item.pass}});
    report.results["assumption2"] = a2_json;
    if (dump_b) report.results["B"] = matrix_to_json(b.dense());
    if (dump_pi) report.results["pi"] = pi.pi;
    if (dump_j) report.results["J"] = matrix_to_json(j.dense());

    std::string text = "Spec(B): " + join15(lambdas) + "\n";
    text += a2.applies ? "assumption 2: threshold = " + fmt15(a2.threshold) +
                             (a2.pass ? ", pass\n" : ", FAIL\n")
                       : "assumption 2: vacuous (nu2 > 0)\n";
    if (!a2.pass) {
        for (const Assumption2Item& item : a2.items)
            if (!item.pass)
                text += "  offending lambda = " + fmt15(item.lambda) + " (|lambda| <= " +
                        fmt15(a2.threshold) + ")\n";
        report.passed = false;
        report.wall_time_ms = clock.ms();
        emit(report, as_json, text);
        std::cerr << "error: " << AssumptionViolatedError(a2.offending(), a2.threshold).what()
                  << "\n";
        return 4;
    }

    const SpectralDecomposition decomp = full_decomposition(model);
    json spec_u = json::array();
    for (const EigenPairU& p : decomp.pairs)
        spec_u.push_back(
            {{"mu", p.mu}, {"tag", to_string(p.tag)}, {"source_index", p.source_index}});
    report.results["spec_U"] = spec_u;
    report.wall_time_ms = clock.ms();

    if (as_csv) {
        std::string csv = "mu,tag,source_index\n";
        for (const EigenPairU& p : decomp.pairs)
            csv += fmt15(p.mu) + "," + to_string(p.tag) + "," +
                   std::to_string(p.source_index) + "\n";
        std::cout << csv;
        return 0;
    }
    text += "Spec(U):\n";
    for (const EigenPairU& p : decomp.pairs)
        text += "  mu = " + fmt15(p.mu) + "  (" + to_string(p.tag) + ", m = " +
                std::to_string(p.source_index) + ")\n";
    if (dump_b) text += "B = " + matrix_to_json(b.dense()).dump() + "\n";
    if (dump_pi) text += "pi = " + json(pi.pi).dump() + "\n";
    if (dump_j) text += "J = " + matrix_to_json(j.dense()).dump() + "\n";
    emit(report, as_json, text);
    return 0;
}

int cmd_limit(const std::string& config, bool as_json) {
    Stopwatch clock;
    const PathCRWModel model = load_model(config);
    RunReport report = make_report("limit", model);

    const Distribution closed = limiting_distribution(model);

    // Cross-check: power iteration on U until the state stops moving.
    StateVector state = basis_state(model, 0, Side::L);
    for (std::size_t iter = 0; iter < 2000000; ++iter) {
        const StateVector next = apply_U(model, state);
        double change = 0.0;
        for (std::size_t i = 0; i < state.size(); ++i)
            change = std::max(change, std::abs(next[i] - state[i]));
        state = next;
        if (change < 1e-15) {
            log_debug("power iteration settled after " + std::to_string(iter + 1) + " steps");
            break;
        }
    }
    const Distribution iterated = marginal(state);
    double diff = 0.0;
    for (std::size_t x = 0; x < closed.size(); ++x)
        diff = std::max(diff, std::abs(closed[x] - iterated[x]));

    report.results = {{"p_inf", closed}, {"power_iteration", iterated}, {"max_abs_diff", diff}};
    report.wall_time_ms = clock.ms();
    std::string text = "p_inf:            " + join15(closed) + "\n";
    text += "power iteration:  " + join15(iterated) + "\n";
    text += "max abs diff:     " + fmt15(diff) + "\n";
    emit(report, as_json, text);
    return 0;
}

int cmd_evolve(const std::string& config, std::uint64_t t, const std::string& init,
               const std::string& method, bool as_json) {
    Stopwatch clock;
    const PathCRWModel model = load_model(config);
    RunReport report = make_report("evolve", model);
    const WalkerState start = parse_init(init, model);
    const StateVector phi = basis_state(model, start.x, start.j);

    std::optional<Distribution> spectral, dense;
    if (method == "spectral" || method == "both")
        spectral = marginal(evolve_spectral(full_decomposition(model), phi, t));
    if (method == "dense" || method == "both") dense = marginal(evolve_dense(model, phi, t));

    report.results = {{"t", t}, {"init", init}, {"method", method}};
    std::string text;
    if (spectral) {
        report.results["marginal"] = *spectral;
        text += "marginal (spectral): " + join15(*spectral) + "\n";
    }
    if (dense) {
        report.results[spectral ? "marginal_dense" : "marginal"] = *dense;
        text += "marginal (dense):    " + join15(*dense) + "\n";
    }
    if (spectral && dense) {
        double dev = 0.0;
        for (std::size_t x = 0; x < spectral->size(); ++x)
            dev = std::max(dev, std::abs((*spectral)[x] - (*dense)[x]));
        report.results["max_deviation"] = dev;
        text += "max deviation:       " + fmt15(dev) + "\n";
    }
    report.wall_time_ms = clock.ms();
    emit(report, as_json, text);
    return 0;
}

int cmd_simulate(const std::string& config, std::uint64_t walkers, std::uint64_t t,
                 std::uint64_t seed, const std::string& init, const std::string& format,
                 const std::string& out_path, bool as_json) {
    Stopwatch clock;
    const PathCRWModel model = load_model(config);
    RunReport report = make_report("simulate", model);

    SimConfig cfg;
    cfg.walkers = walkers;
    cfg.t = t;
    cfg.seed = seed;
    cfg.initial = parse_init(init, model);

    const Distribution hist = empirical_distribution(model, cfg);
    const Distribution exact =
        marginal(evolve_dense(model, basis_state(model, cfg.initial.x, cfg.initial.j), t));
    const double tv = total_variation(hist, exact);
    log_info("TV(empirical, dense) = " + fmt15(tv));

    report.results = {{"walkers", walkers},      {"t", t},
                      {"seed", seed},            {"histogram", hist},
                      {"dense_marginal", exact}, {"tv_to_dense", tv}};
    report.wall_time_ms = clock.ms();

    std::string payload;
    if (format == "csv")
        payload = distribution_to_csv(hist);
    else
        payload = json({{"histogram", hist}, {"tv_to_dense", tv}}).dump(2) + "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot open output path: " + out_path);
        out << payload;
        emit(report, as_json,
             "histogram written to " + out_path + "; TV to dense = " + fmt15(tv) + "\n");
    } else {
        emit(report, as_json, payload + "TV to dense = " + fmt15(tv) + "\n");
    }
    return 0;
}

int cmd_verify(const std::string& config, std::size_t n_max, std::size_t count,
               std::uint64_t seed, bool as_json) {
    Stopwatch clock;
    RunReport report;
    report.command = "verify";
    json models = json::array();
    std::string text;
    bool all_pass = true;

    const auto run_one = [&](const PathCRWModel& model, const std::string& label) {
        std::vector<CheckResult> results = verify_model(model, seed);
        bool pass = true;
        json checks = json::array();
        for (const CheckResult& r : results) {
            checks.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
            log_debug(label + " " + r.name + (r.pass ? " pass " : " FAIL ") + r.detail);
            if (!r.pass) {
                text += "  FAILED " + r.name + ": " + r.detail + "\n";
                pass = false;
            }
        }
        models.push_back({{"n", model.n},
                          {"nu2", model.family.nu2},
                          {"coins_hash", coin_digest(model)},
                          {"pass", pass},
                          {"checks", checks}});
        text = "[" + std::string(pass ? "PASS" : "FAIL") + "] " + label + " n=" +
               std::to_string(model.n) + " nu2=" + fmt15(model.family.nu2) + "\n" + text;
        std::cout << text;
        text.clear();
        all_pass = all_pass && pass;
    };

    if (!config.empty()) {
        run_one(load_model(config), "config");
    } else {
        std::mt19937_64 rng(seed);
        std::size_t skipped = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const int sign = i % 2 == 0 ? 1 : -1;
            const PathCRWModel model = random_admissible_model(rng, n_max, sign, &skipped);
            run_one(model, "model " + std::to_string(i + 1) + "/" + std::to_string(count));
        }
        report.results["skipped_draws"] = skipped;
        log_info("skipped " + std::to_string(skipped) + " inadmissible draws");
        std::cout << "(" << skipped << " inadmissible draws regenerated)\n";
    }

    report.results["models"] = models;
    report.passed = all_pass;
    report.wall_time_ms = clock.ms();
    std::cout << (all_pass ? "verify: all invariants hold\n" : "verify: FAILURES above\n");
    if (as_json) std::cout << report.to_json().dump(2) << "\n";
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral toolkit for correlated random walks on the path"};
    app.require_subcommand(1);

    std::string config, init = "0,L", method = "spectral", format = "json", out_path;
    std::uint64_t t = 0, walkers = 100000, seed = 1;
    std::size_t n_max = 8, count = 20;
    bool as_json = false, as_csv = false, dump_b = false, dump_pi = false, dump_j = false;
    bool random_sweep = false;

    CLI::App* validate = app.add_subcommand("validate", "Load and validate a model config");
    validate->add_option("config", config)->required();
    validate->add_flag("--json", as_json);

    CLI::App* spectrum =
        app.add_subcommand("spectrum", "Spec(B), assumption report, and Spec(U) with tags");
    spectrum->add_option("config", config)->required();
    spectrum->add_flag("--json", as_json);
    spectrum->add_flag("--csv", as_csv);
    spectrum->add_flag("--dump-B", dump_b);
    spectrum->add_flag("--dump-pi", dump_pi);
    spectrum->add_flag("--dump-J", dump_j);

    CLI::App* limit =
        app.add_subcommand("limit", "Closed-form limiting distribution with cross-check");
    limit->add_option("config", config)->required();
    limit->add_flag("--json", as_json);

    CLI::App* evolve = app.add_subcommand("evolve", "Vertex marginal after t steps");
    evolve->add_option("config", config)->required();
    evolve->add_option("--t", t)->required();
    evolve->add_option("--init", init, "start state as x,L or x,R");
    evolve->add_option("--method", method)->check(CLI::IsMember({"spectral", "dense", "both"}));
    evolve->add_flag("--json", as_json);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo histogram vs exact");
    simulate->add_option("config", config)->required();
    simulate->add_option("--walkers", walkers);
    simulate->add_option("--t", t);
    simulate->add_option("--seed", seed);
    simulate->add_option("--init", init, "start state as x,L or x,R");
    simulate->add_option("--out", format, "stdout format")
        ->check(CLI::IsMember({"csv", "json"}));
    simulate->add_option("--out-path", out_path, "write the histogram to a file");
    simulate->add_flag("--json", as_json);

    CLI::App* verify =
        app.add_subcommand("verify", "Run the full invariant suite on one or many models");
    CLI::Option* verify_config = verify->add_option("config", config);
    verify->add_flag("--random", random_sweep, "random sweep (default when no config given)")
        ->excludes(verify_config);
    verify->add_option("--n-max", n_max);
    verify->add_option("--count", count);
    verify->add_option("--seed", seed);
    verify->add_flag("--json", as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (validate->parsed()) return cmd_validate(config, as_json);
        if (spectrum->parsed())
            return cmd_spectrum(config, as_json, as_csv, dump_b, dump_pi, dump_j);
        if (limit->parsed()) return cmd_limit(config, as_json);
        if (evolve->parsed()) return cmd_evolve(config, t, init, method, as_json);
        if (simulate->parsed())
            return cmd_simulate(config, walkers, t, seed, init, format, out_path, as_json);
        if (verify->parsed()) return cmd_verify(config, n_max, count, seed, as_json);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const AssumptionViolatedError& e) {
        std::cerr << "assumption violated: " << e.what() << "\n";
        return 4;
    } catch (const ComplexRootsError& e) {
        std::cerr << "assumption violated: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
