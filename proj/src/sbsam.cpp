#include "antopt/sbsam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace antopt {

PslDistribution PslDistribution::parse(const std::string& text) {
    PslDistribution d;
    if (text == "uniform") {
        d.kind = Kind::Uniform;
        return d;
    }
    auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string args =
        colon == std::string::npos ? "" : text.substr(colon + 1);
    try {
        if (head == "const") {
            d.kind = Kind::Constant;
            d.a = std::stod(args);
        } else if (head == "twopoint") {
            auto comma = args.find(',');
            if (comma == std::string::npos) throw std::invalid_argument(text);
            d.kind = Kind::TwoPoint;
            d.a = std::stod(args.substr(0, comma));
            d.b = std::stod(args.substr(comma + 1));
        } else {
            throw std::invalid_argument(text);
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("bad sensitivity descriptor: " + text);
    }
    d.validate();
    return d;
}

void PslDistribution::validate() const {
    auto in_range = [](double v) { return v >= 0.0 && v <= 1.0; };
    switch (kind) {
        case Kind::Uniform:
            return;
        case Kind::Constant:
            if (!in_range(a))
                throw std::invalid_argument("sensitivity must lie in [0,1]");
            return;
        case Kind::TwoPoint:
            if (!in_range(a) || !in_range(b))
                throw std::invalid_argument("sensitivity must lie in [0,1]");
            return;
    }
    throw std::invalid_argument("bad sensitivity descriptor");
}

std::vector<double> assign_sensitivities(int n_ants,
                                         const PslDistribution& dist,
                                         Rng& rng) {
    if (n_ants < 1) throw std::invalid_argument("need at least one ant");
    dist.validate();
    std::vector<double> psl(static_cast<std::size_t>(n_ants));
    for (double& v : psl) {
        switch (dist.kind) {
            case PslDistribution::Kind::Uniform:
                v = rng.next_double();
                break;
            case PslDistribution::Kind::TwoPoint:
                v = rng.next_below(2) == 0 ? dist.a : dist.b;
                break;
            case PslDistribution::Kind::Constant:
                v = dist.a;
                break;
        }
    }
    return psl;
}

void SbsamParams::validate() const {
    acs.validate();
    if (xi < 0.0 || xi >= 1.0)
        throw std::invalid_argument("xi must lie in [0,1)");
    if (virtual_weight < 0.0)
        throw std::invalid_argument("virtual_weight must be nonnegative");
    if (decision_budget_factor < 1)
        throw std::invalid_argument("decision budget must be positive");
    psl_distribution.validate();
}

SensitiveDecision sensitive_step(SensitiveAnt& ant, PheromoneField& f,
                                 const WeightedGraph& g, const SbsamParams& p,
                                 Rng& rng) {
    SensitiveDecision d;
    const std::vector<int> cands = ant.base.unvisited();
    const bool has_virtual = p.virtual_weight > 0.0 && ant.base.path.size() >= 2;
    if (cands.empty() && !has_virtual)
        throw std::invalid_argument("no candidate moves available");

    const int current = ant.base.current();
    bool trail_mode = ant.psl >= 1.0 || rng.next_double() < ant.psl;

    std::size_t pick;
    if (!trail_mode) {
        pick = rng.next_below(
            static_cast<std::uint32_t>(cands.size() + (has_virtual ? 1 : 0)));
    } else {
        // nearest-candidate-normalized heuristic, as in the colony engine
        std::vector<double> eta(cands.size());
        double max_eta = 0.0;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            eta[i] = 1.0 / g.weight(current, cands[i]);
            max_eta = std::max(max_eta, eta[i]);
        }
        std::vector<double> weights(cands.size() + (has_virtual ? 1 : 0), 0.0);
        for (std::size_t i = 0; i < cands.size(); ++i)
            weights[i] = fast_pow(f.tau(current, cands[i]), p.acs.alpha) *
                         fast_pow(eta[i] / max_eta, p.acs.beta);
        if (has_virtual)
            weights.back() = p.virtual_weight * fast_pow(f.tau0(), p.acs.alpha);
        const double q = rng.next_double();
        pick = q <= p.acs.q0 ? argmax_index(weights) : roulette_index(weights, rng);
    }

    if (pick >= cands.size()) {
        const int prev = ant.prev();
        if (p.xi > 0.0) f.erode(prev, current, p.xi);
        ant.base.backtrack();
        d.step_back = true;
        return d;
    }
    d.node = cands[pick];
    return d;
}

void LopView::heuristic(int, const std::vector<int>& candidates,
                        const std::vector<char>& visited,
                        std::vector<double>& eta) const {
    eta.resize(candidates.size());
    double max_raw = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        eta[i] = dominance(candidates[i], visited);
        max_raw = std::max(max_raw, eta[i]);
    }
    // 1 + dominance, scaled into (0, 1] so beta behaves like for distances.
    const double denom = 1.0 + max_raw;
    for (double& v : eta) v = (1.0 + v) / denom;
}

double LopView::dominance(int item, const std::vector<char>& visited) const {
    double raw = 0.0;
    for (int k = 0; k < m_.size(); ++k) {
        if (k == item || visited[static_cast<std::size_t>(k)]) continue;
        raw += std::max(0.0, m_.at(item, k) - m_.at(k, item));
    }
    return raw;
}

double LopView::reference_cost() const {
    // Greedy ordering by dominance over the remaining items, ties lowest.
    const int n = m_.size();
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    for (int step = 0; step < n; ++step) {
        int best = -1;
        double best_raw = -1.0;
        for (int v = 0; v < n; ++v) {
            if (visited[static_cast<std::size_t>(v)]) continue;
            double raw = dominance(v, visited);
            if (raw > best_raw) {
                best_raw = raw;
                best = v;
            }
        }
        visited[static_cast<std::size_t>(best)] = 1;
        order.push_back(best);
    }
    return deposit_cost(lop_value(m_, order));
}

namespace {

SolveResult solve_with_view(const ProblemView& view, const SbsamParams& p,
                            std::uint64_t seed) {
    p.validate();
    EngineSetup setup;
    setup.base = p.acs;
    ColonyConfig col;
    col.policy = ColonyPolicy::Sensitive;
    col.q0 = p.acs.q0;
    col.virtual_weight = p.virtual_weight;
    col.xi = p.xi;
    col.decision_budget_factor = p.decision_budget_factor;
    Rng psl_rng(derive_stream({seed, 0x9512u}));
    col.psl = assign_sensitivities(p.acs.n_ants, p.psl_distribution, psl_rng);
    setup.colonies.push_back(std::move(col));
    return run_colony_engine(view, setup, seed);
}

}  // namespace

SolveResult solve_sbsam(const WeightedGraph& g, const SbsamParams& p,
                        std::uint64_t seed) {
    if (g.size() < 3)
        throw std::invalid_argument("tour construction needs at least 3 nodes");
    TspView view(g);
    return solve_with_view(view, p, seed);
}

SolveResult solve_sbsam(const LopMatrix& m, const SbsamParams& p,
                        std::uint64_t seed) {
    if (m.size() < 2)
        throw std::invalid_argument("ordering needs at least 2 items");
    LopView view(m);
    return solve_with_view(view, p, seed);
}

}  // namespace antopt
