// vpl: command-line laboratory for variational prime-distribution sums.
// Subcommands: sieve, char-table, variation, bdh, gaps, large-sieve, accept.
// Exit codes: 0 ok, 1 domain error / bad usage, 2 resource refusal,
// 3 acceptance failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vpl/accept.hpp"
#include "vpl/config.hpp"
#include "vpl/dirichlet.hpp"
#include "vpl/gaps.hpp"
#include "vpl/largesieve.hpp"
#include "vpl/report.hpp"
#include "vpl/rng.hpp"
#include "vpl/sieve.hpp"
#include "vpl/theorems.hpp"
#include "vpl/variation.hpp"

namespace {

using vpl::RunConfig;

// Cache resolution order: explicit --prime-cache path, then VPL_CACHE_DIR
// keyed by limit, else sieve without touching disk.
vpl::PrimeStore resolve_store(const RunConfig& cfg, std::uint64_t limit) {
    if (!cfg.prime_cache.empty()) {
        return vpl::load_or_sieve(limit, cfg.prime_cache);
    }
    if (const char* dir = std::getenv("VPL_CACHE_DIR")) {
        const std::filesystem::path path =
            std::filesystem::path(dir) / ("primes_" + std::to_string(limit) + ".bin");
        std::filesystem::create_directories(dir);
        return vpl::load_or_sieve(limit, path);
    }
    return vpl::sieve_primes(limit);
}

std::ostream& open_out(const RunConfig& cfg, std::ofstream& file) {
    if (cfg.out.empty()) return std::cout;
    file.open(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open output file " + cfg.out);
    return file;
}

std::vector<vpl::cplx> parse_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw vpl::DomainError("variation: cannot open input " + path);
    std::vector<vpl::cplx> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double re = 0.0, im = 0.0;
        if (!(ss >> re)) throw vpl::DomainError("variation: bad line: " + line);
        ss >> im;
        values.push_back({re, im});
    }
    return values;
}

std::string fd(double v) { return vpl::format_double(v); }

// ------------------------------------------------------------------
int cmd_sieve(const RunConfig& cfg) {
    const auto store = resolve_store(cfg, cfg.limit);
    std::ofstream file;
    auto& out = open_out(cfg, file);
    vpl::CsvWriter csv(out);
    csv.row({"limit", "count", "theta", "psi"});
    const double x = static_cast<double>(store.limit);
    csv.row({std::to_string(store.limit), std::to_string(store.primes.size()),
             fd(vpl::theta(store, x)), fd(vpl::psi(store, x))});
    return 0;
}

int cmd_char_table(const RunConfig& cfg) {
    auto group = vpl::character_group(cfg.q);
    std::ofstream file;
    auto& out = open_out(cfg, file);
    vpl::CsvWriter csv(out);
    csv.row({"q", "char_index", "exponents", "conductor", "is_primitive",
             "gauss_sum_re", "gauss_sum_im", "gauss_sum_abs2"});
    for (std::uint64_t idx = 0; idx < group->character_count(); ++idx) {
        auto chi = vpl::character_by_index(group, idx);
        const bool primitive = chi.is_primitive();
        if (cfg.primitive_only && !primitive) continue;
        std::string exps;
        for (std::size_t j = 0; j < chi.exponents().size(); ++j) {
            if (j) exps += ';';
            exps += std::to_string(chi.exponents()[j]);
        }
        const vpl::cplx tau = vpl::gauss_sum(chi);
        csv.row({std::to_string(cfg.q), std::to_string(idx), exps,
                 std::to_string(chi.conductor()), primitive ? "1" : "0",
                 fd(tau.real()), fd(tau.imag()), fd(std::norm(tau))});
    }
    return 0;
}

int cmd_variation(const RunConfig& cfg) {
    if (cfg.input.empty()) throw vpl::DomainError("variation: --input is required");
    const auto values = parse_value_file(cfg.input);
    const bool is_real = std::all_of(values.begin(), values.end(),
                                     [](vpl::cplx v) { return v.imag() == 0.0; });

    vpl::VariationResult res;
    if (cfg.algo == "oracle") {
        res = vpl::variation_oracle(values, cfg.r);
    } else if (cfg.algo == "dp") {
        res = vpl::variation_dp(values, cfg.r);
    } else if (cfg.algo == "pruned") {
        if (!is_real) {
            throw vpl::DomainError(
                "variation: extrema pruning requires real input");
        }
        std::vector<double> reals(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) reals[i] = values[i].real();
        res = vpl::variation_pruned_real(reals, cfg.r);
    } else {
        throw vpl::DomainError("variation: unknown algo " + cfg.algo);
    }

    nlohmann::json j;
    j["value"] = res.value;
    j["power_sum"] = res.power_sum;
    j["r"] = cfg.r;
    j["length"] = res.partition.length;
    j["algorithm"] = vpl::to_string(res.algorithm);
    j["breakpoints"] = res.partition.breakpoints;

    std::ofstream file;
    auto& out = open_out(cfg, file);
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_bdh(const RunConfig& cfg) {
    if (cfg.x <= 0.0 || cfg.Q <= 0.0) {
        throw vpl::DomainError("bdh: --x and --Q are required and positive");
    }
    const auto mode =
        cfg.weights == "psi" ? vpl::WeightMode::psi : vpl::WeightMode::theta;
    if (cfg.weights != "psi" && cfg.weights != "theta") {
        throw vpl::DomainError("bdh: weights must be theta or psi");
    }
    const bool variational = cfg.theorem == "1.4" || cfg.theorem == "1.5";
    if (variational && mode == vpl::WeightMode::psi) {
        throw vpl::DomainError("bdh: theorems 1.4/1.5 are theta-weighted only");
    }

    const auto store = resolve_store(cfg, static_cast<std::uint64_t>(cfg.x));
    const std::uint64_t budget = cfg.budget ? cfg.budget : vpl::kDefaultDpBudget;

    if (variational) {
        const std::uint64_t predicted =
            cfg.theorem == "1.4"
                ? vpl::var_bdh_cost_estimate(store, cfg.x, cfg.Q)
                : vpl::var_bdh_shared_cost_estimate(store, cfg.x, cfg.Q);
        std::cerr << "predicted DP cost: " << predicted
                  << " candidate-pair ops (budget " << budget << ")\n";
    }

    const auto start = std::chrono::steady_clock::now();
    vpl::BdhReport rep;
    if (cfg.theorem == "1.1") rep = vpl::bdh_sum(store, cfg.x, cfg.Q, mode);
    else if (cfg.theorem == "1.2") rep = vpl::montgomery_sum(store, cfg.x, cfg.Q, mode);
    else if (cfg.theorem == "1.3") rep = vpl::uchiyama_sum(store, cfg.x, cfg.Q, mode);
    else if (cfg.theorem == "1.4") rep = vpl::var_bdh_sum(store, cfg.x, cfg.Q, budget);
    else if (cfg.theorem == "1.5") rep = vpl::var_bdh_shared_partition(store, cfg.x, cfg.Q, budget);
    else throw vpl::DomainError("bdh: unknown theorem tag " + cfg.theorem);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();

    // Q1 = ln^(A+1)(x), a diagnostic threshold only.
    const double q1_diag = std::pow(std::log(cfg.x), cfg.A + 1.0);

    std::ofstream file;
    auto& out = open_out(cfg, file);
    vpl::CsvWriter csv(out);
    csv.row({"x", "Q", "theorem", "weight_mode", "lhs", "bound_form", "ratio",
             "q1_diag", "elapsed_ms"});
    csv.row({fd(rep.x), fd(rep.Q), vpl::to_string(rep.theorem),
             vpl::to_string(rep.weight_mode), fd(rep.lhs), fd(rep.bound_form),
             fd(rep.ratio), fd(q1_diag), std::to_string(ms)});
    return 0;
}

int cmd_gaps(const RunConfig& cfg) {
    if (cfg.x <= 0.0) throw vpl::DomainError("gaps: --x is required and positive");
    const auto store = resolve_store(cfg, static_cast<std::uint64_t>(cfg.x));
    std::ofstream file;
    auto& out = open_out(cfg, file);
    vpl::CsvWriter csv(out);
    csv.row({"quantity", "x", "Q", "q", "a", "value", "normalizer", "ratio"});

    auto emit = [&](const std::string& quantity, double x, const std::string& Q,
                    const std::string& q, const std::string& a, double value,
                    double normalizer) {
        csv.row({quantity, fd(x), Q, q, a, fd(value), fd(normalizer),
                 fd(value / normalizer)});
    };

    const double lx = std::log(cfg.x);
    if (cfg.quantity == "single") {
        emit("single", cfg.x, "", "", "", vpl::gap_square_sum(store, cfg.x),
             cfg.x * lx);
    } else if (cfg.quantity == "ap") {
        emit("ap", cfg.x, "", std::to_string(cfg.q), std::to_string(cfg.a),
             vpl::gap_square_sum_ap(store, cfg.x, cfg.q, cfg.a),
             cfg.x * lx / static_cast<double>(vpl::euler_phi(cfg.q)));
    } else if (cfg.quantity == "avg") {
        const auto rep = vpl::erdos_avg_sum(store, cfg.x, cfg.Q);
        emit("avg", cfg.x, fd(cfg.Q), "", "", rep.value, rep.normalizer);
    } else if (cfg.quantity == "cg") {
        // Ratio trend over decades up to x, for inspection against 193/192.
        for (double xx : {1e4, 1e5, 1e6, 1e7}) {
            if (xx > cfg.x) break;
            emit("cg", xx, "", "", "", vpl::gap_square_sum(store, xx),
                 xx * std::log(xx));
        }
        std::cerr << "comparison constant 193/192 = "
                  << fd(vpl::kCheerGoldstonConstant) << "\n";
    } else if (cfg.quantity == "asym") {
        const std::uint64_t budget =
            cfg.budget ? cfg.budget : vpl::kDefaultDpBudget;
        emit("asym", cfg.x, "", "", "", vpl::asym_quantity(store, cfg.x, budget),
             cfg.x * lx);
    } else {
        throw vpl::DomainError("gaps: unknown quantity " + cfg.quantity);
    }
    return 0;
}

int cmd_large_sieve(const RunConfig& cfg) {
    if (cfg.N == 0) throw vpl::DomainError("large-sieve: --N is required");
    if (cfg.experiment != "gauss" && cfg.Q < 1.0) {
        throw vpl::DomainError("large-sieve: --Q is required");
    }
    std::vector<vpl::cplx> coeffs;
    if (cfg.coeffs == "pm1") {
        const vpl::CounterRng rng(cfg.seed, 0);
        coeffs.resize(cfg.N);
        for (std::uint64_t j = 0; j < cfg.N; ++j) coeffs[j] = {rng.pm1(j + 1), 0.0};
    } else if (cfg.coeffs == "gauss") {
        const vpl::CounterRng rng(cfg.seed, 0);
        coeffs.resize(cfg.N);
        for (std::uint64_t j = 0; j < cfg.N; ++j) coeffs[j] = {rng.normal(j + 1), 0.0};
    } else if (cfg.coeffs.rfind("file:", 0) == 0) {
        coeffs = parse_value_file(cfg.coeffs.substr(5));
    } else {
        throw vpl::DomainError("large-sieve: coeffs must be pm1, gauss, or file:<path>");
    }
    const auto poly = vpl::make_trig_polynomial(0, std::move(coeffs));
    const double N = static_cast<double>(poly.N);
    const double Q = static_cast<double>(cfg.Q);
    const double lx = std::log(std::max(N, 2.0));
    const std::uint64_t budget =
        cfg.budget ? cfg.budget : vpl::kLargeSieveDpBudget;

    double lhs = 0.0, bound = 0.0, se = 0.0;
    const auto Qi = static_cast<std::uint64_t>(cfg.Q);
    if (cfg.experiment == "classic") {
        lhs = vpl::classic_large_sieve_lhs(poly, Qi);
        bound = (N + Q * Q) * poly.energy;
    } else if (cfg.experiment == "maximal") {
        lhs = vpl::maximal_large_sieve_lhs(poly, Qi);
        bound = lx * lx * (N + Q * Q) * poly.energy;
    } else if (cfg.experiment == "var") {
        lhs = vpl::var_large_sieve_lhs(poly, Qi, budget);
        bound = lx * lx * (N + Q * Q) * poly.energy;
    } else if (cfg.experiment == "points") {
        const auto pts = vpl::farey_points(Qi);
        lhs = vpl::var_at_points(poly, pts, cfg.r);
        bound = (N + 1.0 / pts.delta + 1.0) * poly.energy *
                (cfg.r == 2.0 ? lx : 1.0);
    } else if (cfg.experiment == "gauss") {
        const auto res =
            vpl::gaussian_lower_bound_experiment(cfg.N, cfg.trials, cfg.seed);
        lhs = res.mean;
        se = res.stderr_;
        bound = N * std::log(std::log(N));
    } else {
        throw vpl::DomainError("large-sieve: unknown experiment " + cfg.experiment);
    }

    std::ofstream file;
    auto& out = open_out(cfg, file);
    vpl::CsvWriter csv(out);
    csv.row({"experiment", "N", "Q", "r", "seed", "lhs", "bound_form", "ratio",
             "stderr"});
    csv.row({cfg.experiment, std::to_string(poly.N), std::to_string(Qi),
             fd(cfg.r), std::to_string(cfg.seed), fd(lhs), fd(bound),
             fd(lhs / bound), fd(se)});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;

    // --config fills defaults first; explicit flags override below.
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            std::ifstream in(argv[i + 1]);
            if (!in) {
                std::cerr << "cannot open config file " << argv[i + 1] << "\n";
                return 1;
            }
            try {
                nlohmann::json j;
                in >> j;
                cfg = j.get<RunConfig>();
            } catch (const std::exception& e) {
                std::cerr << "bad config file: " << e.what() << "\n";
                return 1;
            }
        }
    }

    CLI::App app{"vpl: exact variational prime-distribution sums at desk scale"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override)");
    app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
    app.add_option("--prime-cache", cfg.prime_cache,
                   "prime cache file (else VPL_CACHE_DIR/primes_<limit>.bin)");

    auto* sieve = app.add_subcommand("sieve", "sieve primes and report theta/psi");
    sieve->add_option("--limit", cfg.limit, "sieve limit (>= 2)");
    sieve->add_option("--out", cfg.out, "output CSV path (default stdout)");

    auto* chart = app.add_subcommand("char-table", "Dirichlet character table");
    chart->add_option("--q", cfg.q, "modulus");
    chart->add_flag("--primitive-only", cfg.primitive_only,
                    "emit only primitive characters");
    chart->add_option("--out", cfg.out, "output CSV path");

    auto* variation = app.add_subcommand("variation", "r-variation of a sequence");
    variation->add_option("--input", cfg.input,
                          "CSV of values, one per line (re or re,im)");
    variation->add_option("--r", cfg.r, "variation exponent r >= 1");
    variation->add_option("--algo", cfg.algo, "oracle | dp | pruned");
    variation->add_option("--out", cfg.out, "output JSON path");

    auto* bdh = app.add_subcommand("bdh", "progression deviation sums");
    bdh->add_option("--x", cfg.x, "endpoint x");
    bdh->add_option("--Q", cfg.Q, "modulus bound Q");
    bdh->add_option("--theorem", cfg.theorem, "1.1 | 1.2 | 1.3 | 1.4 | 1.5");
    bdh->add_option("--weights", cfg.weights, "theta | psi (1.1-1.3 only)");
    bdh->add_option("--A", cfg.A, "exponent for the Q1 diagnostic column");
    bdh->add_option("--budget", cfg.budget, "DP budget in candidate-pair ops");
    bdh->add_option("--out", cfg.out, "output CSV path");

    auto* gaps = app.add_subcommand("gaps", "prime-gap square sums");
    gaps->add_option("--x", cfg.x, "endpoint x");
    gaps->add_option("--Q", cfg.Q, "modulus bound (avg quantity)");
    gaps->add_option("--quantity", cfg.quantity, "single | ap | avg | cg | asym");
    gaps->add_option("--q", cfg.q, "modulus (ap quantity)");
    gaps->add_option("--a", cfg.a, "residue (ap quantity)");
    gaps->add_option("--budget", cfg.budget, "DP budget (asym quantity)");
    gaps->add_option("--out", cfg.out, "output CSV path");

    auto* ls = app.add_subcommand("large-sieve", "large-sieve experiments");
    ls->add_option("--N", cfg.N, "coefficient count");
    ls->add_option("--Q", cfg.Q, "modulus / Farey bound");
    ls->add_option("--r", cfg.r, "variation exponent (points experiment)");
    ls->add_option("--coeffs", cfg.coeffs, "pm1 | gauss | file:<path>");
    ls->add_option("--trials", cfg.trials, "Monte Carlo trials (gauss)");
    ls->add_option("--seed", cfg.seed, "RNG seed");
    ls->add_option("--experiment", cfg.experiment,
                   "classic | maximal | var | points | gauss");
    ls->add_option("--budget", cfg.budget, "DP budget in candidate-pair ops");
    ls->add_option("--out", cfg.out, "output CSV path");

    auto* accept = app.add_subcommand("accept", "run the acceptance suite");
    accept->add_flag("--quick", cfg.quick, "desk-scale subset");
    accept->add_flag("--record", cfg.record,
                     "print measured regression constants instead of asserting");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif

    try {
        cfg.validate();
        if (sieve->parsed()) { cfg.command = "sieve"; return cmd_sieve(cfg); }
        if (chart->parsed()) { cfg.command = "char-table"; return cmd_char_table(cfg); }
        if (variation->parsed()) { cfg.command = "variation"; return cmd_variation(cfg); }
        if (bdh->parsed()) { cfg.command = "bdh"; return cmd_bdh(cfg); }
        if (gaps->parsed()) { cfg.command = "gaps"; return cmd_gaps(cfg); }
        if (ls->parsed()) { cfg.command = "large-sieve"; return cmd_large_sieve(cfg); }
        if (accept->parsed()) {
            cfg.command = "accept";
            const int failures =
                vpl::run_acceptance({cfg.quick, cfg.record}, std::cout);
            return failures == 0 ? 0 : 3;
        }
    } catch (const vpl::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const vpl::CheckError& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
