#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "antopt/instances.hpp"
#include "antopt/pheromone.hpp"
#include "antopt/rng.hpp"

namespace antopt {

struct AcsParams {
    int n_ants = 20;
    double q0 = 0.9;
    double alpha = 1.0;
    double beta = 2.0;
    double rho_local = 0.1;
    double rho_global = 0.1;
    int max_iterations = 200;
    double inner_rate = 0.05;
    SpeciesProfile species = SpeciesProfile::acs();
    // Stop early once the best reaches this value (<= when minimizing,
    // >= when maximizing). Mainly for benchmarking against known optima.
    std::optional<double> target_cost;
    int threads = 1;

    void validate() const;
};

// Construction state of a single ant. rng is the ant's own stream, derived
// from (seed, colony, ant index), so schedules cannot change results.
struct Ant {
    std::vector<int> path;
    std::vector<char> visited;
    Rng rng;

    explicit Ant(int n, std::uint64_t stream = 0)
        : visited(static_cast<std::size_t>(n), 0), rng(stream) {
        path.reserve(static_cast<std::size_t>(n));
    }
    int current() const { return path.back(); }
    void visit(int v) {
        path.push_back(v);
        visited[static_cast<std::size_t>(v)] = 1;
    }
    void backtrack() {
        visited[static_cast<std::size_t>(path.back())] = 0;
        path.pop_back();
    }
    std::vector<int> unvisited() const {
        std::vector<int> out;
        for (std::size_t v = 0; v < visited.size(); ++v)
            if (!visited[v]) out.push_back(static_cast<int>(v));
        return out;
    }
};

struct TraceRow {
    int iteration = 0;
    double best_cost = 0.0;
    double mean_cost = 0.0;
    long uturns = 0;
    long blocked_edges = 0;
    bool operator==(const TraceRow&) const = default;
};

struct SolveResult {
    Solution best;
    std::vector<TraceRow> trace;
    std::uint64_t uturn_coin_draws = 0;  // probabilistic u-turn opportunities
    std::uint64_t uturn_coin_taken = 0;
    std::uint64_t uturns_forced = 0;     // all remaining edges blocked
    std::uint64_t step_backs = 0;
    std::uint64_t failed_constructions = 0;
};

// --- problem abstraction used by the colony engine ---------------------------

// One permutation problem as seen during construction: candidate heuristics,
// the objective, and a positive minimized surrogate for deposit scaling.
class ProblemView {
public:
    virtual ~ProblemView() = default;
    virtual int size() const = 0;
    virtual bool cyclic() const = 0;
    virtual bool maximize() const = 0;
    // Fills eta with heuristic values for candidates (ascending node order)
    // seen from `current`; `visited` flags already-placed nodes.
    virtual void heuristic(int current, const std::vector<int>& candidates,
                           const std::vector<char>& visited,
                           std::vector<double>& eta) const = 0;
    virtual double evaluate(const std::vector<int>& perm) const = 0;
    // Positive value, smaller-is-better, used as 1/x deposit scale.
    virtual double deposit_cost(double cost) const = 0;
    // Deposit cost of a deterministic greedy reference solution (tau0 scale).
    virtual double reference_cost() const = 0;

    bool better(double a, double b) const { return maximize() ? a > b : a < b; }
    bool reached(double cost, double target) const {
        return maximize() ? cost >= target : cost <= target;
    }
};

class TspView final : public ProblemView {
public:
    explicit TspView(const WeightedGraph& g) : g_(g) {}
    int size() const override { return g_.size(); }
    bool cyclic() const override { return true; }
    bool maximize() const override { return false; }
    void heuristic(int current, const std::vector<int>& candidates,
                   const std::vector<char>& visited,
                   std::vector<double>& eta) const override;
    double evaluate(const std::vector<int>& perm) const override {
        return tour_length(g_, perm);
    }
    double deposit_cost(double cost) const override { return cost; }
    double reference_cost() const override;

private:
    const WeightedGraph& g_;
};

// --- colony engine -----------------------------------------------------------

enum class ColonyPolicy {
    Plain,      // standard pseudo-random proportional construction
    Exploit,    // honors no-entry edges and makes probabilistic u-turns
    Sensitive,  // per-ant trail sensitivity plus a step-back candidate
};

struct ColonyConfig {
    ColonyPolicy policy = ColonyPolicy::Plain;
    double q0 = 0.9;
    bool respect_no_entry = false;
    bool mark_bad = false;  // classify bad edges after this colony's phase
    double uturn_prob = 0.0;
    double virtual_weight = 0.0;
    double xi = 0.0;
    std::vector<double> psl;          // per-ant sensitivity, empty = 1.0
    int decision_budget_factor = 0;   // 0 = unbounded, else factor * n steps
};

struct EngineSetup {
    AcsParams base;
    std::vector<ColonyConfig> colonies;
    double bad_factor = 1.2;
    double neg_amount = 0.0;  // 0 disables negative marking entirely
    double block_threshold = 1.0;
    bool apply_inner = true;
};

// Shared iteration loop: per colony, place ants, construct against a frozen
// snapshot of the field, then apply each ant's trail writes in ant order at
// the colony barrier. Sequential and threaded runs are byte-identical.
SolveResult run_colony_engine(const ProblemView& prob, const EngineSetup& setup,
                              std::uint64_t seed);

struct ConstructionResult {
    std::optional<std::vector<int>> perm;  // empty when discarded
    std::uint64_t uturn_coin_draws = 0;
    std::uint64_t uturn_coin_taken = 0;
    std::uint64_t uturns_forced = 0;
    std::uint64_t step_backs = 0;
};

// One ant construction under a colony policy; decisions read the field as it
// is on entry, trail writes (local updates, erosions) are applied on return.
ConstructionResult construct_with_policy(const ProblemView& prob,
                                         PheromoneField& f,
                                         const AcsParams& base,
                                         const ColonyConfig& colony, double psl,
                                         int start, Rng& rng);

// --- single-ant operations ------------------------------------------------

// Pseudo-random proportional rule over the ant's unvisited nodes; q is the
// caller-drawn threshold sample, rng feeds the roulette branch.
int choose_next(const Ant& ant, const PheromoneField& f, const WeightedGraph& g,
                const AcsParams& p, double q, Rng& rng,
                bool respect_no_entry = false);

// Builds a Hamiltonian cycle from the ant's start node, locally updating every
// traversed edge (closing edge included).
Solution construct_tour(Ant& ant, const WeightedGraph& g, PheromoneField& f,
                        const AcsParams& p);

// Multiplies tau by (1 + inner_rate) on the iteration-best edges.
void inner_update(PheromoneField& f, const Solution& iteration_best,
                  double inner_rate, bool cyclic = true);

SolveResult solve_acs(const WeightedGraph& g, const AcsParams& p,
                      std::uint64_t seed);

// Selection helpers shared by all decision rules. Weights of zero are never
// picked unless every weight is zero, in which case the pick is uniform.
std::size_t argmax_index(const std::vector<double>& weights);
std::size_t roulette_index(const std::vector<double>& weights, Rng& rng);

// Distinct random start nodes while k <= n, uniform draws beyond that.
std::vector<int> draw_starts(int n, int k, Rng& rng);

}  // namespace antopt
