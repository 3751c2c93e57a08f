#pragma once

#include <cstdint>
#include <vector>

#include "antopt/acs.hpp"

namespace antopt {

// A vertex labeling with its cached bandwidth. labels[v] is 0-based.
struct Labeling {
    std::vector<int> labels;
    int bw = 0;
    bool operator==(const Labeling&) const = default;
};

// Labels vertices 1..n in construction order. Candidates are the unlabeled
// vertices adjacent to the labeled set (all unlabeled ones when none are);
// the decision rule uses tau over (last labeled, candidate) and prefers low
// degrees, the ordering idea behind Cuthill-McKee.
Labeling construct_labeling(int start, const SparsePattern& pattern,
                            const PheromoneField& f, const AcsParams& p,
                            Rng& rng);

// Swaps the label of a high-degree-biased random vertex with that of a
// low-degree-biased one (the first pick excluded); kept only when the
// bandwidth did not increase.
Labeling swap_refine(Labeling lab, const SparsePattern& pattern, Rng& rng);

// Hybrid solver: ant construction, swap refinement of the iteration best and
// of a persistent elite walk, elitist reinforcement of consecutive-label
// pairs, species decay. refine_rounds < 0 selects the default of 4 rounds
// per vertex.
SolveResult solve_mbmp(const SparsePattern& pattern, const AcsParams& p,
                       int refine_rounds, std::uint64_t seed);

}  // namespace antopt
