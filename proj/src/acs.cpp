#include "antopt/acs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "antopt/parallel.hpp"
#include "antopt/pharaoh.hpp"

namespace antopt {

void AcsParams::validate() const {
    if (n_ants < 1) throw std::invalid_argument("n_ants must be positive");
    if (q0 < 0.0 || q0 > 1.0) throw std::invalid_argument("q0 must lie in [0,1]");
    if (alpha < 0.0 || beta < 0.0)
        throw std::invalid_argument("alpha and beta must be nonnegative");
    if (!(rho_local > 0.0) || rho_local > 1.0)
        throw std::invalid_argument("rho_local must lie in (0,1]");
    if (!(rho_global > 0.0) || rho_global > 1.0)
        throw std::invalid_argument("rho_global must lie in (0,1]");
    if (max_iterations < 1)
        throw std::invalid_argument("max_iterations must be positive");
    if (inner_rate < 0.0 || inner_rate >= 1.0)
        throw std::invalid_argument("inner_rate must lie in [0,1)");
    if (threads < 1) throw std::invalid_argument("threads must be positive");
    species.validate();
}

void TspView::heuristic(int current, const std::vector<int>& candidates,
                        const std::vector<char>&, std::vector<double>& eta) const {
    // 1/distance, scaled so the nearest candidate gets 1. The common factor
    // leaves the decision rule untouched among real candidates and keeps the
    // step-back candidate's tau0-scale weight comparable.
    eta.resize(candidates.size());
    double max_eta = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        eta[i] = 1.0 / g_.weight(current, candidates[i]);
        max_eta = std::max(max_eta, eta[i]);
    }
    for (double& v : eta) v /= max_eta;
}

double TspView::reference_cost() const {
    // Nearest-neighbor tour from node 0, ties to the lowest index.
    const int n = g_.size();
    std::vector<char> visited(n, 0);
    std::vector<int> tour{0};
    visited[0] = 1;
    while (static_cast<int>(tour.size()) < n) {
        int best = -1;
        double best_w = std::numeric_limits<double>::infinity();
        for (int v = 0; v < n; ++v) {
            if (visited[v]) continue;
            double w = g_.weight(tour.back(), v);
            if (w < best_w) {
                best_w = w;
                best = v;
            }
        }
        visited[best] = 1;
        tour.push_back(best);
    }
    return tour_length(g_, tour);
}

std::size_t argmax_index(const std::vector<double>& weights) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < weights.size(); ++i)
        if (weights[i] > weights[best]) best = i;
    return best;
}

std::size_t roulette_index(const std::vector<double>& weights, Rng& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0)
        return rng.next_below(static_cast<std::uint32_t>(weights.size()));
    double r = rng.next_double() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) last_positive = i;
        acc += weights[i];
        if (r < acc && weights[i] > 0.0) return i;
    }
    return last_positive;  // floating-point slack on the final edge
}

std::vector<int> draw_starts(int n, int k, Rng& rng) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    std::vector<int> starts(static_cast<std::size_t>(k));
    const int distinct = std::min(n, k);
    for (int i = 0; i < distinct; ++i) {
        int j = i + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        starts[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(i)];
    }
    for (int i = distinct; i < k; ++i)
        starts[static_cast<std::size_t>(i)] =
            pool[rng.next_below(static_cast<std::uint32_t>(n))];
    return starts;
}

namespace {

struct LogOp {
    enum Kind : std::uint8_t { kLocal, kErode } kind;
    int a;
    int b;
    double xi;
};

struct StepCounters {
    std::uint64_t coin_draws = 0;
    std::uint64_t coin_taken = 0;
    std::uint64_t forced = 0;
    std::uint64_t step_backs = 0;
};

struct AntOutcome {
    std::optional<std::vector<int>> perm;
    std::vector<LogOp> log;
    StepCounters counters;
};

void apply_log(PheromoneField& f, const std::vector<LogOp>& log,
               double rho_local) {
    for (const auto& op : log) {
        if (op.kind == LogOp::kLocal)
            f.local_update(op.a, op.b, rho_local);
        else
            f.erode(op.a, op.b, op.xi);
    }
}

// One ant's construction against a frozen field snapshot. Trail writes go to
// the log; decisions consume only this ant's rng.
AntOutcome construct_one(const ProblemView& prob, const PheromoneField& snap,
                         const AcsParams& base, const ColonyConfig& col,
                         double psl, int start, Rng& rng) {
    const int n = prob.size();
    AntOutcome out;
    std::vector<int> path;
    path.reserve(static_cast<std::size_t>(n));
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    path.push_back(start);
    visited[static_cast<std::size_t>(start)] = 1;

    const long budget = col.decision_budget_factor > 0
                            ? static_cast<long>(col.decision_budget_factor) * n
                            : std::numeric_limits<long>::max();
    long decisions = 0;

    std::vector<int> cands;
    cands.reserve(static_cast<std::size_t>(n));
    std::vector<double> eta, weights;

    auto backtrack = [&] {
        visited[static_cast<std::size_t>(path.back())] = 0;
        path.pop_back();
    };

    while (static_cast<int>(path.size()) < n) {
        if (++decisions > budget) return out;  // construction discarded
        const int current = path.back();
        cands.clear();
        for (int v = 0; v < n; ++v)
            if (!visited[static_cast<std::size_t>(v)]) cands.push_back(v);

        if (col.policy == ColonyPolicy::Exploit) {
            bool all_blocked = true;
            for (int v : cands) {
                if (!snap.blocked(current, v)) {
                    all_blocked = false;
                    break;
                }
            }
            if (all_blocked) {
                ++out.counters.forced;
                if (path.size() == 1) return out;  // nowhere left to retreat
                backtrack();
                continue;
            }
            if (col.uturn_prob > 0.0 && path.size() >= 2) {
                ++out.counters.coin_draws;
                if (rng.next_double() < col.uturn_prob) {
                    ++out.counters.coin_taken;
                    backtrack();
                    continue;
                }
            }
        }

        const bool has_virtual = col.policy == ColonyPolicy::Sensitive &&
                                 col.virtual_weight > 0.0 && path.size() >= 2;

        bool trail_mode = true;
        if (col.policy == ColonyPolicy::Sensitive && psl < 1.0)
            trail_mode = rng.next_double() < psl;

        int chosen;          // node id, or -1 for the step-back slot
        if (!trail_mode) {
            std::uint32_t k = rng.next_below(
                static_cast<std::uint32_t>(cands.size() + (has_virtual ? 1 : 0)));
            chosen = k < cands.size() ? cands[k] : -1;
        } else {
            prob.heuristic(current, cands, visited, eta);
            weights.assign(cands.size() + (has_virtual ? 1 : 0), 0.0);
            for (std::size_t i = 0; i < cands.size(); ++i) {
                if (col.respect_no_entry && snap.blocked(current, cands[i]))
                    continue;
                weights[i] = fast_pow(snap.tau(current, cands[i]), base.alpha) *
                             fast_pow(eta[i], base.beta);
            }
            if (has_virtual)
                weights.back() =
                    col.virtual_weight * fast_pow(snap.tau0(), base.alpha);
            const double q = rng.next_double();
            const std::size_t pick = q <= col.q0 ? argmax_index(weights)
                                                 : roulette_index(weights, rng);
            chosen = pick < cands.size() ? cands[pick] : -1;
        }

        if (chosen < 0) {  // step back and erode the retreated edge
            ++out.counters.step_backs;
            const int prev = path[path.size() - 2];
            if (col.xi > 0.0)
                out.log.push_back({LogOp::kErode, prev, current, col.xi});
            backtrack();
            continue;
        }
        out.log.push_back({LogOp::kLocal, current, chosen, 0.0});
        path.push_back(chosen);
        visited[static_cast<std::size_t>(chosen)] = 1;
    }

    if (prob.cyclic()) {
        if (col.respect_no_entry && snap.blocked(path.back(), path.front())) {
            ++out.counters.forced;  // closing over a no-entry edge: discard
            return out;
        }
        out.log.push_back({LogOp::kLocal, path.back(), path.front(), 0.0});
    }
    out.perm = std::move(path);
    return out;
}

}  // namespace

SolveResult run_colony_engine(const ProblemView& prob, const EngineSetup& setup,
                              std::uint64_t seed) {
    setup.base.validate();
    if (setup.colonies.empty())
        throw std::invalid_argument("engine needs at least one colony");
    if (!(setup.bad_factor > 1.0))
        throw std::invalid_argument("bad_factor must exceed 1");
    if (setup.neg_amount < 0.0)
        throw std::invalid_argument("neg_amount must be nonnegative");

    const int n = prob.size();
    const int n_ants = setup.base.n_ants;
    const double tau0 = 1.0 / (static_cast<double>(n) *
                               std::max(prob.reference_cost(), 1e-12));
    PheromoneField field(n, tau0, setup.block_threshold);

    std::vector<Rng> colony_rng;
    std::vector<std::vector<Rng>> ant_rng(setup.colonies.size());
    for (std::size_t c = 0; c < setup.colonies.size(); ++c) {
        colony_rng.emplace_back(derive_stream({seed, 0xC01u, c}));
        ant_rng[c].reserve(static_cast<std::size_t>(n_ants));
        for (int a = 0; a < n_ants; ++a)
            ant_rng[c].emplace_back(derive_stream(
                {seed, 0xA27u, c, static_cast<std::uint64_t>(a)}));
    }

    SolveResult result;
    bool have_best = false;

    std::vector<AntOutcome> outcomes(static_cast<std::size_t>(n_ants));
    for (int it = 1; it <= setup.base.max_iterations; ++it) {
        std::vector<Solution> iter_solutions;
        iter_solutions.reserve(setup.colonies.size() *
                               static_cast<std::size_t>(n_ants));
        long iter_uturns = 0;

        for (std::size_t c = 0; c < setup.colonies.size(); ++c) {
            const ColonyConfig& col = setup.colonies[c];
            const auto starts = draw_starts(n, n_ants, colony_rng[c]);
            const PheromoneField snapshot = field;
            parallel_for(n_ants, setup.base.threads, [&](int a) {
                const std::size_t ai = static_cast<std::size_t>(a);
                const double psl = col.psl.empty() ? 1.0 : col.psl[ai];
                outcomes[ai] = construct_one(prob, snapshot, setup.base, col,
                                             psl, starts[ai], ant_rng[c][ai]);
            });
            for (int a = 0; a < n_ants; ++a) {
                AntOutcome& out = outcomes[static_cast<std::size_t>(a)];
                apply_log(field, out.log, setup.base.rho_local);
                result.uturn_coin_draws += out.counters.coin_draws;
                result.uturn_coin_taken += out.counters.coin_taken;
                result.uturns_forced += out.counters.forced;
                result.step_backs += out.counters.step_backs;
                iter_uturns += static_cast<long>(out.counters.coin_taken +
                                                 out.counters.forced +
                                                 out.counters.step_backs);
                if (out.perm) {
                    double cost = prob.evaluate(*out.perm);
                    iter_solutions.push_back({std::move(*out.perm), cost});
                } else {
                    ++result.failed_constructions;
                }
            }
            if (col.mark_bad && setup.neg_amount > 0.0 &&
                !iter_solutions.empty()) {
                EdgeList bad = classify_bad_edges(iter_solutions,
                                                  setup.bad_factor,
                                                  prob.cyclic());
                if (!bad.empty()) field.mark_negative(bad, setup.neg_amount);
            }
        }

        const Solution* iter_best = nullptr;
        double mean = 0.0;
        for (const Solution& s : iter_solutions) {
            mean += s.cost;
            if (!iter_best || prob.better(s.cost, iter_best->cost)) iter_best = &s;
        }
        mean = iter_solutions.empty()
                   ? 0.0
                   : mean / static_cast<double>(iter_solutions.size());

        if (iter_best &&
            (!have_best || prob.better(iter_best->cost, result.best.cost))) {
            result.best = *iter_best;
            have_best = true;
        }
        if (setup.apply_inner && iter_best && setup.base.inner_rate > 0.0)
            inner_update(field, *iter_best, setup.base.inner_rate, prob.cyclic());
        field.decay_step(setup.base.species);
        if (have_best) {
            double dc = prob.deposit_cost(result.best.cost);
            if (dc > 0.0)
                reinforce_edges(field, solution_edges(result.best.perm, prob.cyclic()),
                                1.0 / dc, setup.base.rho_global);
        }

        result.trace.push_back({it, have_best ? result.best.cost : 0.0, mean,
                                iter_uturns,
                                static_cast<long>(field.blocked_count())});
        if (setup.base.target_cost && have_best &&
            prob.reached(result.best.cost, *setup.base.target_cost))
            break;
    }
    return result;
}

ConstructionResult construct_with_policy(const ProblemView& prob,
                                         PheromoneField& f,
                                         const AcsParams& base,
                                         const ColonyConfig& colony, double psl,
                                         int start, Rng& rng) {
    AntOutcome out = construct_one(prob, f, base, colony, psl, start, rng);
    apply_log(f, out.log, base.rho_local);
    ConstructionResult r;
    r.perm = std::move(out.perm);
    r.uturn_coin_draws = out.counters.coin_draws;
    r.uturn_coin_taken = out.counters.coin_taken;
    r.uturns_forced = out.counters.forced;
    r.step_backs = out.counters.step_backs;
    return r;
}

int choose_next(const Ant& ant, const PheromoneField& f, const WeightedGraph& g,
                const AcsParams& p, double q, Rng& rng, bool respect_no_entry) {
    const std::vector<int> cands = ant.unvisited();
    if (cands.empty()) throw std::invalid_argument("no unvisited node left");
    const int current = ant.current();
    if (q <= p.q0) {
        std::vector<double> weights(cands.size(), 0.0);
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (respect_no_entry && f.blocked(current, cands[i])) continue;
            weights[i] = fast_pow(f.tau(current, cands[i]), p.alpha) *
                         fast_pow(1.0 / g.weight(current, cands[i]), p.beta);
        }
        return cands[argmax_index(weights)];
    }
    const auto probs = transition_probabilities(f, g, current, cands, p.alpha,
                                                p.beta, respect_no_entry);
    return cands[roulette_index(probs, rng)];
}

Solution construct_tour(Ant& ant, const WeightedGraph& g, PheromoneField& f,
                        const AcsParams& p) {
    p.validate();
    if (g.size() < 3)
        throw std::invalid_argument("tour construction needs at least 3 nodes");
    if (ant.path.empty())
        throw std::invalid_argument("ant has no start node");
    TspView view(g);
    ColonyConfig col;
    col.q0 = p.q0;
    const int start = ant.path.front();
    AntOutcome out = construct_one(view, f, p, col, 1.0, start, ant.rng);
    apply_log(f, out.log, p.rho_local);
    ant.path = *out.perm;
    for (int v : ant.path) ant.visited[static_cast<std::size_t>(v)] = 1;
    return {ant.path, tour_length(g, ant.path)};
}

void inner_update(PheromoneField& f, const Solution& iteration_best,
                  double inner_rate, bool cyclic) {
    if (inner_rate < 0.0 || inner_rate >= 1.0)
        throw std::invalid_argument("inner_rate must lie in [0,1)");
    if (inner_rate == 0.0) return;
    for (auto [a, b] : solution_edges(iteration_best.perm, cyclic))
        f.amplify(a, b, inner_rate);
}

SolveResult solve_acs(const WeightedGraph& g, const AcsParams& p,
                      std::uint64_t seed) {
    if (g.size() < 3)
        throw std::invalid_argument("tour construction needs at least 3 nodes");
    TspView view(g);
    EngineSetup setup;
    setup.base = p;
    ColonyConfig col;
    col.q0 = p.q0;
    setup.colonies.push_back(col);
    return run_colony_engine(view, setup, seed);
}

}  // namespace antopt
