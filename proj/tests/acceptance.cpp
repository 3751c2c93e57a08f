// Acceptance suite: every release gate in one binary. Each criterion prints
// a single [PASS]/[FAIL] line; the exit code is the number of failures.
// Run with no arguments for all criteria, or pass criterion numbers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "antopt/acs.hpp"
#include "antopt/bench.hpp"
#include "antopt/dps.hpp"
#include "antopt/mbmp.hpp"
#include "antopt/pharaoh.hpp"
#include "antopt/sbsam.hpp"
#include "oracles.hpp"

using namespace antopt;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

// --- criterion 1: exact optima on small tours, for all three tour solvers ---

bool criterion_tsp_optimality(std::string& detail) {
    std::vector<WeightedGraph> instances;
    std::vector<double> optima;
    for (int i = 0; i < 10; ++i) {
        instances.push_back(oracle::random_euc_graph(201 + i, 6 + i % 4));
        optima.push_back(oracle::held_karp_tsp(instances.back()));
    }
    const char* names[3] = {"acs", "pas", "sbsam"};
    std::ostringstream out;
    bool ok = true;
    for (int algo = 0; algo < 3; ++algo) {
        const auto t0 = std::chrono::steady_clock::now();
        int worst_hits = 20;
        for (int i = 0; i < 10; ++i) {
            int hits = 0;
            for (std::uint64_t seed = 1; seed <= 20; ++seed) {
                double cost = 0.0;
                if (algo == 0) {
                    AcsParams p;
                    p.target_cost = optima[i];
                    cost = solve_acs(instances[i], p, seed).best.cost;
                } else if (algo == 1) {
                    PasParams p;
                    p.acs.target_cost = optima[i];
                    cost = solve_pas(instances[i], p, seed).best.cost;
                } else {
                    SbsamParams p;
                    p.acs.target_cost = optima[i];
                    cost = solve_sbsam(instances[i], p, seed).best.cost;
                }
                if (cost == optima[i]) ++hits;
            }
            worst_hits = std::min(worst_hits, hits);
        }
        const double elapsed = seconds_since(t0);
        const bool algo_ok = worst_hits >= 18 && elapsed < 10.0;
        ok = ok && algo_ok;
        out << names[algo] << " worst " << worst_hits << "/20 in " << std::fixed
            << elapsed << "s ";
    }
    detail = out.str() + "(need >=18/20 and <10s each)";
    return ok;
}

// --- criterion 2: bandwidth optima -------------------------------------------

bool criterion_mbmp_optimality(std::string& detail) {
    int worst_hits = 20;
    for (int i = 0; i < 10; ++i) {
        const SparsePattern p = oracle::random_pattern(301 + i, 8, 12);
        const int optimum = oracle::exhaustive_bandwidth(p);
        int hits = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            AcsParams params;
            params.target_cost = optimum;
            if (solve_mbmp(p, params, -1, seed).best.cost == optimum) ++hits;
        }
        worst_hits = std::min(worst_hits, hits);
    }
    const SparsePattern star(4, {{0, 1}, {0, 2}, {0, 3}});
    int star_hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        AcsParams params;
        params.max_iterations = 50;
        params.target_cost = 2.0;
        if (solve_mbmp(star, params, -1, seed).best.cost == 2.0) ++star_hits;
    }
    std::ostringstream out;
    out << "random patterns worst " << worst_hits << "/20 (need >=16), star "
        << star_hits << "/20 within 50 iterations (need >=18)";
    detail = out.str();
    return worst_hits >= 16 && star_hits >= 18;
}

// --- criterion 3: linear ordering optima --------------------------------------

bool criterion_lop_optimality(std::string& detail) {
    int worst_hits = 20;
    for (int i = 0; i < 10; ++i) {
        const LopMatrix m = oracle::random_lop(401 + i, 7);
        const double optimum = oracle::exhaustive_lop(m);
        int hits = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            SbsamParams p;
            p.acs.target_cost = optimum;
            p.acs.max_iterations = 400;
            if (solve_sbsam(m, p, seed).best.cost == optimum) ++hits;
        }
        worst_hits = std::min(worst_hits, hits);
    }
    std::ostringstream out;
    out << "worst instance " << worst_hits << "/20 (need >=16)";
    detail = out.str();
    return worst_hits >= 16;
}

// --- criterion 4: pharaoh behavior constants ----------------------------------

bool criterion_pharaoh_constants(std::string& detail) {
    const WeightedGraph g = oracle::random_euc_graph(501, 9);
    PasParams p;             // uturn_prob defaults to 0.37
    p.neg_amount = 0.0;      // no marks, so u-turns come from the coin alone
    p.acs.max_iterations = 40;
    const SolveResult r = solve_pas(g, p, 17);
    const double freq = static_cast<double>(r.uturn_coin_taken) /
                        static_cast<double>(r.uturn_coin_draws);
    const bool freq_ok =
        r.uturn_coin_draws >= 10000 && freq >= 0.32 && freq <= 0.42;

    PheromoneField f(2, 1.0);
    const SpeciesProfile pharaoh = SpeciesProfile::pharaoh();  // half_life 30
    for (int t = 0; t < 30; ++t) f.decay_step(pharaoh);
    const double rel = std::abs(f.tau(0, 1) / 0.5 - 1.0);
    const bool decay_ok = pharaoh.half_life == 30.0 && rel <= 1e-9;

    std::ostringstream out;
    out << "u-turn freq " << freq << " over " << r.uturn_coin_draws
        << " decisions (need [0.32,0.42] over >=10000), 30-tick decay off by "
        << rel << " (need <=1e-9)";
    detail = out.str();
    return freq_ok && decay_ok;
}

// --- criterion 5: species decay ordering --------------------------------------

bool criterion_species_ordering(std::string& detail) {
    PheromoneField pharaoh_field(2, 1.0);
    PheromoneField lasius_field(2, 1.0);
    for (int t = 0; t < 60; ++t) {
        pharaoh_field.decay_step(SpeciesProfile::pharaoh());
        lasius_field.decay_step(SpeciesProfile::lasius());
    }
    const double tp = pharaoh_field.tau(0, 1);
    const double tl = lasius_field.tau(0, 1);
    std::ostringstream out;
    out << "after 60 ticks pharaoh tau " << tp << " vs lasius tau " << tl
        << " (need strict <)";
    detail = out.str();
    return tp < tl;
}

// --- criterion 6: routing convergence -----------------------------------------

bool criterion_dps_convergence(std::string& detail) {
    const int sizes[5] = {5, 6, 7, 8, 9};
    long match = 0, total = 0;
    int overlay_networks_ok = 0;
    for (int k = 0; k < 5; ++k) {
        const NetworkTopology net =
            oracle::random_unique_sp_network(101 + static_cast<std::uint64_t>(k),
                                             sizes[k]);
        const auto sp = oracle::dijkstra_all(net);
        std::vector<std::pair<int, int>> demands;
        for (int s = 0; s < net.n; ++s)
            for (int d = 0; d < net.n; ++d)
                if (s != d) demands.emplace_back(s, d);
        const double oracle_cost =
            oracle::union_shortest_paths_cost(net, sp, demands);
        int overlay_hits = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const DpsResult r = run_routing(net, demands, DpsParams{}, seed, 500);
            for (int u = 0; u < net.n; ++u) {
                for (int d = 0; d < net.n; ++d) {
                    if (u == d) continue;
                    ++total;
                    if (r.tables.most_probable(u, d) ==
                        oracle::shortest_path_next_hop(net, sp, u, d))
                        ++match;
                }
            }
            if (r.overlay_cost == oracle_cost) ++overlay_hits;
        }
        if (overlay_hits > 10) ++overlay_networks_ok;
    }
    const double frac = static_cast<double>(match) / static_cast<double>(total);
    std::ostringstream out;
    out << "next-hop match " << frac << " (need >=0.9), overlay equals oracle on "
        << overlay_networks_ok << "/5 networks (need >=4)";
    detail = out.str();
    return frac >= 0.9 && overlay_networks_ok >= 4;
}

// --- criterion 7: behavioral reductions ----------------------------------------

bool criterion_reductions(std::string& detail) {
    const WeightedGraph g = oracle::random_euc_graph(601, 8);
    bool pas_ok = true, sbsam_ok = true;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        PasParams p;
        p.neg_amount = 0.0;
        p.uturn_prob = 0.0;
        p.exploit_q0 = p.acs.q0;
        p.acs.max_iterations = 30;
        const SolveResult pas = solve_pas(g, p, seed);
        TspView view(g);
        EngineSetup setup;
        setup.base = p.acs;
        ColonyConfig plain;
        plain.q0 = p.acs.q0;
        setup.colonies = {plain, plain, plain};
        const SolveResult acs3 = run_colony_engine(view, setup, seed);
        pas_ok = pas_ok && pas.best == acs3.best && pas.trace == acs3.trace;

        SbsamParams s;
        s.virtual_weight = 0.0;
        s.psl_distribution.kind = PslDistribution::Kind::Constant;
        s.psl_distribution.a = 1.0;
        s.acs.max_iterations = 30;
        const SolveResult sb = solve_sbsam(g, s, seed);
        const SolveResult plain_acs = solve_acs(g, s.acs, seed);
        sbsam_ok = sbsam_ok && sb.best == plain_acs.best &&
                   sb.trace == plain_acs.trace;
    }
    std::ostringstream out;
    out << "pas -> 3-colony trace equality: " << (pas_ok ? "yes" : "no")
        << ", sbsam -> acs bit-identical: " << (sbsam_ok ? "yes" : "no");
    detail = out.str();
    return pas_ok && sbsam_ok;
}

// --- criterion 8: byte-identical traces ----------------------------------------

bool criterion_determinism(std::string& detail) {
    std::ostringstream out;
    bool ok = true;

    const std::string tsp_text =
        serialize_tsp(oracle::random_euc_graph(701, 9));
    const std::string tsp_path =
        (std::filesystem::temp_directory_path() / "acceptance_g9.tsp").string();
    {
        FILE* f = std::fopen(tsp_path.c_str(), "wb");
        std::fwrite(tsp_text.data(), 1, tsp_text.size(), f);
        std::fclose(f);
    }
    ExperimentConfig cfg;
    cfg.algorithm = Algorithm::Pas;
    cfg.problem = Problem::Tsp;
    cfg.instance_path = tsp_path;
    cfg.seed = 11;
    cfg.repeats = 2;
    cfg.iterations = 25;
    const ExperimentReport a = run_experiment(cfg);
    const ExperimentReport b = run_experiment(cfg);
    cfg.threads = 4;
    const ExperimentReport c = run_experiment(cfg);
    ok = ok && a.csv == b.csv && a.csv == c.csv;
    out << "pas/tsp repeat+threads byte-identical: "
        << (a.csv == b.csv && a.csv == c.csv ? "yes" : "no");

    const std::string net_text =
        serialize_network(oracle::random_unique_sp_network(702, 6));
    const std::string net_path =
        (std::filesystem::temp_directory_path() / "acceptance_n6.net").string();
    {
        FILE* f = std::fopen(net_path.c_str(), "wb");
        std::fwrite(net_text.data(), 1, net_text.size(), f);
        std::fclose(f);
    }
    ExperimentConfig rcfg;
    rcfg.algorithm = Algorithm::Pas;
    rcfg.problem = Problem::Route;
    rcfg.instance_path = net_path;
    rcfg.seed = 3;
    rcfg.iterations = 60;
    const ExperimentReport ra = run_experiment(rcfg);
    rcfg.threads = 4;
    const ExperimentReport rb = run_experiment(rcfg);
    ok = ok && ra.csv == rb.csv;
    out << ", pas/route byte-identical: " << (ra.csv == rb.csv ? "yes" : "no");
    detail = out.str();
    return ok;
}

// --- criterion 9: invariant fuzz suites ----------------------------------------

bool criterion_fuzz(std::string& detail) {
    long violations = 0;

    // probability normalization, 10k cases
    {
        Rng rng(901);
        for (int round = 0; round < 10000; ++round) {
            const int n = 4 + static_cast<int>(rng.next_below(8));
            const WeightedGraph g =
                oracle::random_euc_graph(9000 + static_cast<std::uint64_t>(round % 50),
                                         n);
            PheromoneField f(n, 0.5 + rng.next_double());
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    f.set_tau(i, j, f.tau_min() + rng.next_double());
            if (rng.next_below(2))
                f.mark_negative(
                    {{0, 1 + static_cast<int>(rng.next_below(n - 1))}}, 1.0);
            const int current = static_cast<int>(rng.next_below(n));
            std::vector<int> allowed;
            for (int v = 0; v < n; ++v)
                if (v != current && rng.next_below(3)) allowed.push_back(v);
            if (allowed.empty()) allowed.push_back((current + 1) % n);
            const auto probs = transition_probabilities(
                f, g, current, allowed, rng.next_double() * 3.0,
                rng.next_double() * 4.0, rng.next_below(2) == 1);
            double sum = 0.0;
            for (double v : probs) {
                if (v < 0.0) ++violations;
                sum += v;
            }
            if (std::abs(sum - 1.0) > 1e-12) ++violations;
        }
    }

    // tau clamp under random op interleavings, 10k sequences
    {
        Rng rng(902);
        for (int round = 0; round < 10000; ++round) {
            const int n = 4 + static_cast<int>(rng.next_below(5));
            PheromoneField f(n, 1.0);
            SpeciesProfile s = SpeciesProfile::acs();
            for (int op = 0; op < 20; ++op) {
                const int i = static_cast<int>(rng.next_below(n));
                int j = static_cast<int>(rng.next_below(n - 1));
                if (j >= i) ++j;
                switch (rng.next_below(5)) {
                    case 0:
                        s.half_life = 1.0 + rng.next_double() * 100.0;
                        f.decay_step(s);
                        break;
                    case 1:
                        f.local_update(i, j, 0.01 + 0.99 * rng.next_double());
                        break;
                    case 2:
                        f.reinforce(i, j, rng.next_double() * 5e3,
                                    0.01 + 0.99 * rng.next_double());
                        break;
                    case 3:
                        f.mark_negative({{i, j}}, 0.1 + rng.next_double());
                        break;
                    case 4:
                        f.erode(i, j, 0.9 * rng.next_double());
                        break;
                }
            }
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    if (f.tau(a, b) < f.tau_min() || f.tau(a, b) > f.tau_max() ||
                        f.neg(a, b) < 0.0)
                        ++violations;
        }
    }

    // path validity across step-backs, 10k constructions
    {
        Rng meta(903);
        for (int round = 0; round < 10000; ++round) {
            const int n = 5 + static_cast<int>(meta.next_below(4));
            const WeightedGraph g = oracle::random_euc_graph(
                9500 + static_cast<std::uint64_t>(round % 60), n);
            PheromoneField f(n, 1.0);
            SbsamParams p;
            p.virtual_weight = 0.1 + meta.next_double() * 0.5;
            p.xi = meta.next_double() * 0.5;
            SensitiveAnt ant(n,
                             derive_stream({static_cast<std::uint64_t>(round)}),
                             meta.next_double());
            ant.base.visit(static_cast<int>(meta.next_below(n)));
            Rng rng(derive_stream({static_cast<std::uint64_t>(round), 9u}));
            for (int step = 0; step < 3 * n; ++step) {
                if (static_cast<int>(ant.base.path.size()) == n) break;
                const SensitiveDecision d = sensitive_step(ant, f, g, p, rng);
                if (!d.step_back) ant.base.visit(d.node);
                std::set<int> unique(ant.base.path.begin(),
                                     ant.base.path.end());
                if (unique.size() != ant.base.path.size()) ++violations;
                for (int v = 0; v < n; ++v)
                    if (static_cast<bool>(ant.base.visited[v]) !=
                        (unique.count(v) == 1))
                        ++violations;
            }
        }
    }

    // loop erasure, 10k random walks
    {
        Rng rng(904);
        for (int round = 0; round < 10000; ++round) {
            const int n = 2 + static_cast<int>(rng.next_below(8));
            std::vector<int> walk{static_cast<int>(rng.next_below(n))};
            const int len = 1 + static_cast<int>(rng.next_below(40));
            for (int i = 0; i < len; ++i) {
                int next = static_cast<int>(rng.next_below(n - 1));
                if (next >= walk.back()) ++next;
                walk.push_back(next);
            }
            const std::vector<int> pruned = prune_cycles(walk);
            std::set<int> unique(pruned.begin(), pruned.end());
            if (unique.size() != pruned.size()) ++violations;
            if (pruned.front() != walk.front() || pruned.back() != walk.back())
                ++violations;
            std::set<std::pair<int, int>> walk_edges;
            for (std::size_t i = 0; i + 1 < walk.size(); ++i)
                walk_edges.insert({walk[i], walk[i + 1]});
            for (std::size_t i = 0; i + 1 < pruned.size(); ++i)
                if (!walk_edges.count({pruned[i], pruned[i + 1]})) ++violations;
        }
    }

    std::ostringstream out;
    out << violations << " violations across 4x10000 randomized cases (need 0)";
    detail = out.str();
    return violations == 0;
}

struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "exact tour optima for acs/pas/sbsam", criterion_tsp_optimality},
        {2, "exact bandwidth optima for the hybrid", criterion_mbmp_optimality},
        {3, "exact ordering optima for sbsam", criterion_lop_optimality},
        {4, "pharaoh u-turn rate and trail half-life", criterion_pharaoh_constants},
        {5, "pharaoh trails fade faster than lasius", criterion_species_ordering},
        {6, "routing tables converge to shortest paths", criterion_dps_convergence},
        {7, "pas and sbsam reduce to plain colonies", criterion_reductions},
        {8, "byte-identical traces across runs and threads", criterion_determinism},
        {9, "invariant fuzz suites", criterion_fuzz},
    };

    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        std::string detail;
        const auto t0 = std::chrono::steady_clock::now();
        const bool ok = c.run(detail);
        std::printf("[%s] criterion %d: %s — %s (%.1fs)\n", ok ? "PASS" : "FAIL",
                    c.id, c.name, detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
