#include "antopt/pharaoh.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace antopt {

void PasParams::validate() const {
    acs.validate();
    if (!(bad_factor > 1.0))
        throw std::invalid_argument("bad_factor must exceed 1");
    if (uturn_prob < 0.0 || uturn_prob > 1.0)
        throw std::invalid_argument("uturn_prob must lie in [0,1]");
    if (neg_amount < 0.0)
        throw std::invalid_argument("neg_amount must be nonnegative");
    if (exploit_q0 < 0.0 || exploit_q0 > 1.0)
        throw std::invalid_argument("exploit_q0 must lie in [0,1]");
    if (decision_budget_factor < 1)
        throw std::invalid_argument("decision budget must be positive");
}

EdgeList classify_bad_edges(const std::vector<Solution>& tours,
                            double bad_factor, bool cyclic) {
    if (tours.empty())
        throw std::invalid_argument("bad-edge classification needs tours");
    double best = tours.front().cost;
    for (const Solution& s : tours) best = std::min(best, s.cost);
    const double threshold = bad_factor * best;

    auto norm = [](int a, int b) { return Edge{std::min(a, b), std::max(a, b)}; };
    std::set<Edge> good, seen_bad;
    for (const Solution& s : tours) {
        auto& target = s.cost <= threshold ? good : seen_bad;
        for (auto [a, b] : solution_edges(s.perm, cyclic))
            target.insert(norm(a, b));
    }
    EdgeList bad;
    for (const Edge& e : seen_bad)
        if (!good.count(e)) bad.push_back(e);
    return bad;
}

ExploitDecision exploit_step(Ant& ant, const PheromoneField& f,
                             const WeightedGraph& g, const PasParams& p,
                             Rng& rng) {
    ExploitDecision d;
    const int current = ant.current();
    bool all_blocked = true;
    for (int v = 0; v < g.size(); ++v) {
        if (ant.visited[static_cast<std::size_t>(v)]) continue;
        if (!f.blocked(current, v)) {
            all_blocked = false;
            break;
        }
    }
    if (all_blocked) {
        if (ant.path.size() == 1) {
            d.failed = true;
            return d;
        }
        ant.backtrack();
        d.uturn = true;
        return d;
    }
    if (p.uturn_prob > 0.0 && ant.path.size() >= 2 &&
        rng.next_double() < p.uturn_prob) {
        ant.backtrack();
        d.uturn = true;
        return d;
    }
    AcsParams ap = p.acs;
    ap.q0 = p.exploit_q0;
    d.node = choose_next(ant, f, g, ap, rng.next_double(), rng,
                         /*respect_no_entry=*/true);
    return d;
}

SolveResult solve_pas(const WeightedGraph& g, const PasParams& p,
                      std::uint64_t seed) {
    p.validate();
    if (g.size() < 3)
        throw std::invalid_argument("tour construction needs at least 3 nodes");

    TspView view(g);
    EngineSetup setup;
    setup.base = p.acs;
    setup.bad_factor = p.bad_factor;
    setup.neg_amount = p.neg_amount;
    setup.block_threshold = p.block_threshold;

    ColonyConfig explorer_a;
    explorer_a.q0 = p.acs.q0;
    ColonyConfig explorer_b = explorer_a;
    explorer_b.mark_bad = true;
    ColonyConfig exploiter;
    exploiter.policy = ColonyPolicy::Exploit;
    exploiter.q0 = p.exploit_q0;
    exploiter.respect_no_entry = true;
    exploiter.uturn_prob = p.uturn_prob;
    exploiter.decision_budget_factor = p.decision_budget_factor;

    setup.colonies = {explorer_a, explorer_b, exploiter};
    return run_colony_engine(view, setup, seed);
}

}  // namespace antopt
