#include "antopt/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "antopt/acs.hpp"
#include "antopt/dps.hpp"
#include "antopt/mbmp.hpp"
#include "antopt/pharaoh.hpp"
#include "antopt/sbsam.hpp"

namespace antopt {

std::optional<Algorithm> algorithm_from_string(const std::string& s) {
    if (s == "acs") return Algorithm::Acs;
    if (s == "pas") return Algorithm::Pas;
    if (s == "sbsam") return Algorithm::Sbsam;
    if (s == "mbmp") return Algorithm::Mbmp;
    return std::nullopt;
}

std::optional<Problem> problem_from_string(const std::string& s) {
    if (s == "tsp") return Problem::Tsp;
    if (s == "mbmp") return Problem::Mbmp;
    if (s == "lop") return Problem::Lop;
    if (s == "route") return Problem::Route;
    return std::nullopt;
}

const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Acs: return "acs";
        case Algorithm::Pas: return "pas";
        case Algorithm::Sbsam: return "sbsam";
        case Algorithm::Mbmp: return "mbmp";
    }
    return "?";
}

const char* to_string(Problem p) {
    switch (p) {
        case Problem::Tsp: return "tsp";
        case Problem::Mbmp: return "mbmp";
        case Problem::Lop: return "lop";
        case Problem::Route: return "route";
    }
    return "?";
}

namespace {

bool compatible(Algorithm a, Problem p) {
    switch (a) {
        case Algorithm::Acs: return p == Problem::Tsp;
        case Algorithm::Pas: return p == Problem::Tsp || p == Problem::Route;
        case Algorithm::Sbsam: return p == Problem::Tsp || p == Problem::Lop;
        case Algorithm::Mbmp: return p == Problem::Mbmp;
    }
    return false;
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for parameter " + key);
    }
}

int to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for parameter " + key);
    }
}

bool apply_acs_param(AcsParams& p, const std::string& k, const std::string& v) {
    if (k == "q0") p.q0 = to_double(k, v);
    else if (k == "alpha") p.alpha = to_double(k, v);
    else if (k == "beta") p.beta = to_double(k, v);
    else if (k == "rho_local") p.rho_local = to_double(k, v);
    else if (k == "rho_global") p.rho_global = to_double(k, v);
    else if (k == "inner_rate") p.inner_rate = to_double(k, v);
    else if (k == "target_cost") p.target_cost = to_double(k, v);
    else if (k == "half_life") p.species.half_life = to_double(k, v);
    else if (k == "species") {
        if (v == "acs") p.species = SpeciesProfile::acs();
        else if (v == "pharaoh") p.species = SpeciesProfile::pharaoh();
        else if (v == "lasius") p.species = SpeciesProfile::lasius();
        else throw ConfigError("unknown species: " + v);
    } else return false;
    return true;
}

AcsParams make_acs_params(const ExperimentConfig& cfg) {
    AcsParams p;
    if (cfg.iterations > 0) p.max_iterations = cfg.iterations;
    if (cfg.ants > 0) p.n_ants = cfg.ants;
    p.threads = cfg.threads;
    return p;
}

struct RunOutput {
    std::vector<TraceRow> trace;
    double best_cost = 0.0;
    std::uint64_t dropped_ants = 0;
};

RunOutput run_once(const ExperimentConfig& cfg, std::uint64_t run_seed) {
    RunOutput out;
    switch (cfg.algorithm) {
        case Algorithm::Acs: {
            AcsParams p = make_acs_params(cfg);
            for (auto& [k, v] : cfg.params)
                if (!apply_acs_param(p, k, v))
                    throw ConfigError("unknown parameter: " + k);
            auto g = load_tsp_file(cfg.instance_path);
            auto r = solve_acs(g, p, run_seed);
            out.trace = std::move(r.trace);
            out.best_cost = r.best.cost;
            return out;
        }
        case Algorithm::Pas: {
            if (cfg.problem == Problem::Route) {
                DpsParams p;
                if (cfg.ants > 0) p.ants_per_demand = cfg.ants;
                int iterations = cfg.iterations > 0 ? cfg.iterations : 500;
                for (auto& [k, v] : cfg.params) {
                    if (k == "explore_eps") p.explore_eps = to_double(k, v);
                    else if (k == "exploit_eps") p.exploit_eps = to_double(k, v);
                    else if (k == "bad_factor") p.bad_factor = to_double(k, v);
                    else if (k == "neg_amount") p.neg_amount = to_double(k, v);
                    else if (k == "rho_global") p.rho_global = to_double(k, v);
                    else if (k == "block_threshold") p.block_threshold = to_double(k, v);
                    else if (k == "max_hops_factor") p.max_hops_factor = to_int(k, v);
                    else if (k == "half_life") p.species.half_life = to_double(k, v);
                    else throw ConfigError("unknown parameter: " + k);
                }
                auto net = load_network_file(cfg.instance_path);
                std::vector<std::pair<int, int>> demands;
                if (!cfg.demands_path.empty())
                    demands = load_demands_file(cfg.demands_path, net);
                auto r = run_routing(net, std::move(demands), p, run_seed,
                                     iterations);
                out.trace = std::move(r.trace);
                out.best_cost = r.overlay_cost;
                out.dropped_ants = r.dropped_ants;
                return out;
            }
            PasParams p;
            p.acs = make_acs_params(cfg);
            p.acs.species = SpeciesProfile::pharaoh();
            for (auto& [k, v] : cfg.params) {
                if (k == "bad_factor") p.bad_factor = to_double(k, v);
                else if (k == "uturn_prob") p.uturn_prob = to_double(k, v);
                else if (k == "neg_amount") p.neg_amount = to_double(k, v);
                else if (k == "exploit_q0") p.exploit_q0 = to_double(k, v);
                else if (k == "block_threshold") p.block_threshold = to_double(k, v);
                else if (!apply_acs_param(p.acs, k, v))
                    throw ConfigError("unknown parameter: " + k);
            }
            auto g = load_tsp_file(cfg.instance_path);
            auto r = solve_pas(g, p, run_seed);
            out.trace = std::move(r.trace);
            out.best_cost = r.best.cost;
            return out;
        }
        case Algorithm::Sbsam: {
            SbsamParams p;
            p.acs = make_acs_params(cfg);
            p.acs.species = SpeciesProfile::lasius();
            for (auto& [k, v] : cfg.params) {
                if (k == "xi") p.xi = to_double(k, v);
                else if (k == "virtual_weight") p.virtual_weight = to_double(k, v);
                else if (k == "psl") {
                    try {
                        p.psl_distribution = PslDistribution::parse(v);
                    } catch (const std::invalid_argument& e) {
                        throw ConfigError(e.what());
                    }
                } else if (!apply_acs_param(p.acs, k, v))
                    throw ConfigError("unknown parameter: " + k);
            }
            SolveResult r;
            if (cfg.problem == Problem::Lop) {
                auto m = load_lop_file(cfg.instance_path);
                r = solve_sbsam(m, p, run_seed);
            } else {
                auto g = load_tsp_file(cfg.instance_path);
                r = solve_sbsam(g, p, run_seed);
            }
            out.trace = std::move(r.trace);
            out.best_cost = r.best.cost;
            return out;
        }
        case Algorithm::Mbmp: {
            AcsParams p = make_acs_params(cfg);
            int refine_rounds = -1;
            for (auto& [k, v] : cfg.params) {
                if (k == "refine_rounds") refine_rounds = to_int(k, v);
                else if (!apply_acs_param(p, k, v))
                    throw ConfigError("unknown parameter: " + k);
            }
            auto pattern = load_matrix_file(cfg.instance_path);
            auto r = solve_mbmp(pattern, p, refine_rounds, run_seed);
            out.trace = std::move(r.trace);
            out.best_cost = r.best.cost;
            return out;
        }
    }
    throw ConfigError("unhandled algorithm");
}

double round9(double v) { return std::round(v * 1e9) / 1e9; }

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    if (!compatible(cfg.algorithm, cfg.problem))
        throw CompatibilityError(std::string("algorithm ") +
                                 to_string(cfg.algorithm) +
                                 " does not support problem " +
                                 to_string(cfg.problem));
    if (cfg.repeats < 1) throw ConfigError("repeats must be positive");
    if (cfg.threads < 1) throw ConfigError("threads must be positive");
    if (!cfg.demands_path.empty() && cfg.problem != Problem::Route)
        throw ConfigError("a demands file only applies to routing");

    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream csv;
    csv << "run,iteration,best_cost,mean_cost,uturns,blocked_edges\n";
    std::vector<double> bests;
    std::uint64_t dropped = 0;
    char buf[192];
    for (int run = 0; run < cfg.repeats; ++run) {
        RunOutput out = run_once(cfg, cfg.seed + static_cast<std::uint64_t>(run));
        for (const TraceRow& r : out.trace) {
            std::snprintf(buf, sizeof(buf), "%d,%d,%.9f,%.9f,%ld,%ld\n", run,
                          r.iteration, r.best_cost, r.mean_cost, r.uturns,
                          r.blocked_edges);
            csv << buf;
        }
        bests.push_back(out.best_cost);
        dropped += out.dropped_ants;
    }
    const auto t1 = std::chrono::steady_clock::now();

    const bool maximize =
        cfg.algorithm == Algorithm::Sbsam && cfg.problem == Problem::Lop;
    double best = bests.front();
    double mean = 0.0;
    for (double b : bests) {
        mean += b;
        best = maximize ? std::max(best, b) : std::min(best, b);
    }
    mean /= static_cast<double>(bests.size());
    double var = 0.0;
    for (double b : bests) var += (b - mean) * (b - mean);
    var /= static_cast<double>(bests.size());

    ExperimentReport report;
    report.csv = csv.str();
    report.summary = {
        {"algorithm", to_string(cfg.algorithm)},
        {"problem", to_string(cfg.problem)},
        {"best_cost", round9(best)},
        {"mean_best", round9(mean)},
        {"std_best", round9(std::sqrt(var))},
        {"wall_ms",
         std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()},
        {"seed", cfg.seed},
    };
    if (cfg.problem == Problem::Route) report.summary["dropped_ants"] = dropped;
    return report;
}

int run_main(int argc, const char* const* argv) {
    CLI::App app{"antopt: multi-species ant colony optimization harness"};
    std::string algorithm, problem, instance, demands, out_dir = ".";
    std::uint64_t seed = 1;
    int repeats = 1, iterations = -1, ants = -1;
    std::vector<std::string> raw_params;

    app.add_option("--algorithm", algorithm, "acs | pas | sbsam | mbmp")
        ->required();
    app.add_option("--problem", problem, "tsp | mbmp | lop | route")->required();
    app.add_option("--instance", instance, "instance file path")->required();
    app.add_option("--demands", demands, "demand pair file (route only)");
    app.add_option("--seed", seed, "base seed; run r uses seed + r");
    app.add_option("--repeats", repeats, "number of seeded runs");
    app.add_option("--iterations", iterations, "iteration budget");
    app.add_option("--ants", ants, "ants per colony (per demand for route)");
    app.add_option("--out", out_dir, "output directory for trace.csv / summary.json");
    app.add_option("--param", raw_params, "override, key=value (repeatable)");

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    ExperimentConfig cfg;
    auto alg = algorithm_from_string(algorithm);
    auto prob = problem_from_string(problem);
    if (!alg || !prob) {
        std::cerr << "unknown " << (!alg ? "algorithm: " + algorithm
                                         : "problem: " + problem)
                  << "\n\n"
                  << app.help();
        return 2;
    }
    cfg.algorithm = *alg;
    cfg.problem = *prob;
    cfg.instance_path = instance;
    cfg.demands_path = demands;
    cfg.seed = seed;
    cfg.repeats = repeats;
    cfg.iterations = iterations;
    cfg.ants = ants;
    if (const char* env = std::getenv("ANTOPT_THREADS")) {
        try {
            cfg.threads = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            std::cerr << "bad ANTOPT_THREADS value: " << env << "\n";
            return 5;
        }
    }
    for (const std::string& kv : raw_params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::cerr << "--param expects key=value, got: " << kv << "\n";
            return 5;
        }
        cfg.params.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
    }

    try {
        ExperimentReport report = run_experiment(cfg);
        std::filesystem::create_directories(out_dir);
        {
            std::ofstream csv(out_dir + "/trace.csv", std::ios::binary);
            csv << report.csv;
        }
        {
            std::ofstream js(out_dir + "/summary.json", std::ios::binary);
            js << report.summary.dump(2) << "\n";
        }
        std::cout << report.summary.dump(2) << "\n";
        return 0;
    } catch (const CompatibilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
}

}  // namespace antopt
