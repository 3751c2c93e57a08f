#pragma once

#include <cstdint>
#include <vector>

#include "antopt/acs.hpp"

namespace antopt {

// Pharaoh Ant System: two explorer colonies, one of which marks bad trails
// with repellent, and an exploiting colony that honors no-entry signals and
// retreats along its own path with probability uturn_prob.
struct PasParams {
    AcsParams acs;
    double bad_factor = 1.2;   // tours costing more than this multiple of the
                               // iteration best are candidates for marking
    double uturn_prob = 0.37;
    double neg_amount = 1.0;   // 0 disables marking (plain 3-colony search)
    double exploit_q0 = 0.98;
    double block_threshold = 1.0;
    // Retreats make walk length unbounded in principle; constructions taking
    // more than this many decisions per node are discarded for the iteration.
    int decision_budget_factor = 10;

    PasParams() { acs.species = SpeciesProfile::pharaoh(); }
    void validate() const;
};

// An edge is bad iff it appears in some tour costing more than
// bad_factor * min_cost and in no tour at or below that threshold.
EdgeList classify_bad_edges(const std::vector<Solution>& tours,
                            double bad_factor, bool cyclic = true);

struct ExploitDecision {
    bool uturn = false;   // ant retreated; its path already lost one node
    bool failed = false;  // stuck at path length 1 with everything blocked
    int node = -1;        // next node when neither of the above
};

// One decision of an exploiting ant: forced u-turn when every remaining edge
// is blocked, probabilistic u-turn otherwise, else a no-entry-aware choice
// with the exploiter's q0.
ExploitDecision exploit_step(Ant& ant, const PheromoneField& f,
                             const WeightedGraph& g, const PasParams& p,
                             Rng& rng);

SolveResult solve_pas(const WeightedGraph& g, const PasParams& p,
                      std::uint64_t seed);

}  // namespace antopt
