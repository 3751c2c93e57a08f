#include "antopt/mbmp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "antopt/parallel.hpp"

namespace antopt {

namespace {

// Vertex sequence ordered by label: element k is the vertex holding label k.
std::vector<int> label_order(const std::vector<int>& labels) {
    std::vector<int> order(labels.size());
    for (std::size_t v = 0; v < labels.size(); ++v)
        order[static_cast<std::size_t>(labels[v])] = static_cast<int>(v);
    return order;
}

// Pure heuristic construction from vertex 0; the reference for the initial
// pheromone scale.
Labeling greedy_labeling(const SparsePattern& pattern,
                         const std::vector<int>& deg,
                         const std::vector<std::vector<int>>& adj) {
    const int n = pattern.size();
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    std::vector<char> frontier(static_cast<std::size_t>(n), 0);
    labels[0] = 0;
    for (int v : adj[0]) frontier[static_cast<std::size_t>(v)] = 1;
    for (int next_label = 1; next_label < n; ++next_label) {
        int best = -1;
        bool best_frontier = false;
        for (int v = 0; v < n; ++v) {
            if (labels[static_cast<std::size_t>(v)] >= 0) continue;
            bool fr = frontier[static_cast<std::size_t>(v)];
            if (best < 0 || (fr && !best_frontier) ||
                (fr == best_frontier && deg[v] < deg[best]))
                best = v, best_frontier = fr;
        }
        labels[static_cast<std::size_t>(best)] = next_label;
        for (int v : adj[best]) frontier[static_cast<std::size_t>(v)] = 1;
    }
    return {labels, bandwidth(pattern, labels)};
}

}  // namespace

Labeling construct_labeling(int start, const SparsePattern& pattern,
                            const PheromoneField& f, const AcsParams& p,
                            Rng& rng) {
    const int n = pattern.size();
    if (start < 0 || start >= n) throw std::invalid_argument("bad start vertex");
    const auto deg = pattern.degrees();
    const auto adj = pattern.adjacency();

    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    std::vector<char> frontier(static_cast<std::size_t>(n), 0);
    labels[static_cast<std::size_t>(start)] = 0;
    for (int v : adj[static_cast<std::size_t>(start)])
        frontier[static_cast<std::size_t>(v)] = 1;
    int last = start;

    std::vector<int> cands;
    std::vector<double> weights;
    for (int next_label = 1; next_label < n; ++next_label) {
        cands.clear();
        for (int v = 0; v < n; ++v)
            if (labels[static_cast<std::size_t>(v)] < 0 &&
                frontier[static_cast<std::size_t>(v)])
                cands.push_back(v);
        if (cands.empty())
            for (int v = 0; v < n; ++v)
                if (labels[static_cast<std::size_t>(v)] < 0) cands.push_back(v);

        weights.assign(cands.size(), 0.0);
        for (std::size_t i = 0; i < cands.size(); ++i)
            weights[i] = fast_pow(f.tau(last, cands[i]), p.alpha) *
                         fast_pow(1.0 / (1.0 + deg[cands[i]]), p.beta);
        const double q = rng.next_double();
        const std::size_t pick = q <= p.q0 ? argmax_index(weights)
                                           : roulette_index(weights, rng);
        last = cands[pick];
        labels[static_cast<std::size_t>(last)] = next_label;
        for (int v : adj[static_cast<std::size_t>(last)])
            frontier[static_cast<std::size_t>(v)] = 1;
    }
    return {labels, bandwidth(pattern, labels)};
}

Labeling swap_refine(Labeling lab, const SparsePattern& pattern, Rng& rng) {
    const int n = pattern.size();
    if (n < 2) return lab;
    const auto deg = pattern.degrees();
    const int max_deg = *std::max_element(deg.begin(), deg.end());

    // Degree-biased picks rather than strict argmax/argmin sets: a unique
    // extreme-degree vertex would otherwise pin the walk to one transposition
    // and leave most of the plateau unreachable. Regular graphs still give
    // two uniform picks.
    auto weighted_pick = [&](int exclude, bool high) {
        double total = 0.0;
        for (int v = 0; v < n; ++v) {
            if (v == exclude) continue;
            total += high ? deg[v] + 1.0 : max_deg - deg[v] + 1.0;
        }
        double r = rng.next_double() * total;
        for (int v = 0; v < n; ++v) {
            if (v == exclude) continue;
            r -= high ? deg[v] + 1.0 : max_deg - deg[v] + 1.0;
            if (r < 0.0) return v;
        }
        return exclude == n - 1 ? n - 2 : n - 1;
    };
    const int hi = weighted_pick(-1, true);
    const int lo = weighted_pick(hi, false);

    std::swap(lab.labels[static_cast<std::size_t>(hi)],
              lab.labels[static_cast<std::size_t>(lo)]);
    const int new_bw = bandwidth(pattern, lab.labels);
    if (new_bw <= lab.bw) {
        lab.bw = new_bw;
        return lab;
    }
    std::swap(lab.labels[static_cast<std::size_t>(hi)],
              lab.labels[static_cast<std::size_t>(lo)]);
    return lab;
}

SolveResult solve_mbmp(const SparsePattern& pattern, const AcsParams& p,
                       int refine_rounds, std::uint64_t seed) {
    p.validate();
    const int n = pattern.size();
    if (refine_rounds < 0) refine_rounds = 4 * n;
    const auto deg = pattern.degrees();
    const auto adj = pattern.adjacency();

    const Labeling greedy = greedy_labeling(pattern, deg, adj);
    const double tau0 =
        1.0 / (static_cast<double>(n) * std::max(1, greedy.bw));
    PheromoneField field(n, tau0);

    Rng colony_rng(derive_stream({seed, 0xC01u, 0u}));
    Rng refine_rng(derive_stream({seed, 0xD00u}));
    std::vector<Rng> ant_rng;
    ant_rng.reserve(static_cast<std::size_t>(p.n_ants));
    for (int a = 0; a < p.n_ants; ++a)
        ant_rng.emplace_back(
            derive_stream({seed, 0xA27u, 0u, static_cast<std::uint64_t>(a)}));

    SolveResult result;
    bool have_best = false;
    std::vector<Labeling> built(static_cast<std::size_t>(p.n_ants));
    // The elitist walk: the best labeling found so far, advanced by swaps
    // every iteration. Keeping it across iterations lets the plateau walk
    // accumulate instead of restarting from each iteration's construction.
    Labeling elite;

    for (int it = 1; it <= p.max_iterations; ++it) {
        const auto starts = draw_starts(n, p.n_ants, colony_rng);
        parallel_for(p.n_ants, p.threads, [&](int a) {
            const std::size_t ai = static_cast<std::size_t>(a);
            built[ai] = construct_labeling(starts[ai], pattern, field, p,
                                           ant_rng[ai]);
        });

        std::size_t best_idx = 0;
        double mean = 0.0;
        for (std::size_t a = 0; a < built.size(); ++a) {
            mean += built[a].bw;
            if (built[a].bw < built[best_idx].bw) best_idx = a;
        }
        mean /= static_cast<double>(built.size());

        Labeling iter_best = built[best_idx];
        for (int r = 0; r < refine_rounds; ++r)
            iter_best = swap_refine(std::move(iter_best), pattern, refine_rng);

        if (!have_best || iter_best.bw < elite.bw) elite = iter_best;
        for (int r = 0; r < refine_rounds; ++r)
            elite = swap_refine(std::move(elite), pattern, refine_rng);

        if (!have_best || elite.bw < result.best.cost) {
            result.best = {elite.labels, static_cast<double>(elite.bw)};
            have_best = true;
        }

        if (result.best.cost > 0.0)
            reinforce_edges(field,
                            solution_edges(label_order(result.best.perm), false),
                            1.0 / result.best.cost, p.rho_global);
        field.decay_step(p.species);

        result.trace.push_back({it, result.best.cost, mean, 0,
                                static_cast<long>(field.blocked_count())});
        if (result.best.cost == 0.0) break;  // nothing below an empty spread
        if (p.target_cost && result.best.cost <= *p.target_cost) break;
    }
    return result;
}

}  // namespace antopt
