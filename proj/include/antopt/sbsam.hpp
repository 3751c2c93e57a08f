#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "antopt/acs.hpp"

namespace antopt {

// How pheromone sensitivity levels are spread over the ant population.
struct PslDistribution {
    enum class Kind { Uniform, TwoPoint, Constant };
    Kind kind = Kind::Uniform;
    double a = 0.0;  // constant value, or first of the two points
    double b = 0.0;  // second point

    // Accepts "uniform", "const:<v>" and "twopoint:<a>,<b>".
    static PslDistribution parse(const std::string& text);
    void validate() const;
};

std::vector<double> assign_sensitivities(int n_ants,
                                         const PslDistribution& dist,
                                         Rng& rng);

// Step-Back Sensitive Ant Model: ants carry a sensitivity level psl and may
// retreat to their previous node via a virtual step-back candidate, eroding
// pheromone on the retreated edge.
struct SbsamParams {
    AcsParams acs;
    double xi = 0.1;             // erosion factor applied on retreat
    double virtual_weight = 0.3; // step-back candidate weight, times tau0^alpha
    PslDistribution psl_distribution;
    int decision_budget_factor = 3;  // step budget per construction, times n

    SbsamParams() { acs.species = SpeciesProfile::lasius(); }
    void validate() const;
};

struct SensitiveAnt {
    Ant base;
    double psl = 1.0;
    explicit SensitiveAnt(int n, std::uint64_t stream = 0, double sensitivity = 1.0)
        : base(n, stream), psl(sensitivity) {}
    // Previous node, or -1 while the path has fewer than 2 nodes.
    int prev() const {
        return base.path.size() >= 2
                   ? base.path[base.path.size() - 2]
                   : -1;
    }
};

struct SensitiveDecision {
    bool step_back = false;  // ant already retreated and the edge was eroded
    int node = -1;
};

// One decision over (unvisited U virtual step-back): with probability psl the
// pseudo-random proportional rule decides, otherwise the pick is uniform.
SensitiveDecision sensitive_step(SensitiveAnt& ant, PheromoneField& f,
                                 const WeightedGraph& g, const SbsamParams& p,
                                 Rng& rng);

SolveResult solve_sbsam(const WeightedGraph& g, const SbsamParams& p,
                        std::uint64_t seed);
SolveResult solve_sbsam(const LopMatrix& m, const SbsamParams& p,
                        std::uint64_t seed);

// Ordering view of a linear ordering instance: items are appended left to
// right; the heuristic prefers items that dominate the remaining ones.
class LopView final : public ProblemView {
public:
    explicit LopView(const LopMatrix& m) : m_(m), ub_(m.pair_max_sum()) {}
    int size() const override { return m_.size(); }
    bool cyclic() const override { return false; }
    bool maximize() const override { return true; }
    void heuristic(int current, const std::vector<int>& candidates,
                   const std::vector<char>& visited,
                   std::vector<double>& eta) const override;
    double evaluate(const std::vector<int>& perm) const override {
        return lop_value(m_, perm);
    }
    // Larger ordering values must mean larger deposits; feed the gap to the
    // pairwise upper bound into the 1/x deposit rule.
    double deposit_cost(double cost) const override { return ub_ - cost + 1.0; }
    double reference_cost() const override;

private:
    double dominance(int item, const std::vector<char>& visited) const;

    const LopMatrix& m_;
    double ub_;
};

}  // namespace antopt
