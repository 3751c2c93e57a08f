#include "antopt/pheromone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace antopt {

SpeciesProfile SpeciesProfile::acs() {
    return {"acs", 60.0, 0.0, false, 1.0};
}

SpeciesProfile SpeciesProfile::pharaoh() {
    return {"pharaoh", 30.0, 0.37, true, 1.0};
}

SpeciesProfile SpeciesProfile::lasius() {
    return {"lasius", 90.0, 0.0, false, 0.5};
}

void SpeciesProfile::validate() const {
    if (!(half_life > 0.0) || !std::isfinite(half_life))
        throw std::invalid_argument("half_life must be positive");
    if (uturn_prob < 0.0 || uturn_prob > 1.0)
        throw std::invalid_argument("uturn_prob must lie in [0,1]");
    if (trail_reliance < 0.0 || trail_reliance > 1.0)
        throw std::invalid_argument("trail_reliance must lie in [0,1]");
}

EdgeList solution_edges(const std::vector<int>& perm, bool cyclic) {
    EdgeList edges;
    if (perm.size() < 2) return edges;
    edges.reserve(perm.size());
    for (std::size_t k = 0; k + 1 < perm.size(); ++k)
        edges.emplace_back(perm[k], perm[k + 1]);
    if (cyclic) edges.emplace_back(perm.back(), perm.front());
    return edges;
}

PheromoneField::PheromoneField(int n, double tau0, double block_threshold)
    : n_(n),
      tau0_(tau0),
      tau_min_(tau0 / 1000.0),
      tau_max_(tau0 * 1000.0),
      block_threshold_(block_threshold),
      tau_(static_cast<std::size_t>(n) * n, tau0),
      neg_(static_cast<std::size_t>(n) * n, 0.0) {
    if (n < 1) throw std::invalid_argument("field needs at least one node");
    if (!(tau0 > 0.0) || !std::isfinite(tau0))
        throw std::invalid_argument("tau0 must be positive");
    if (!(block_threshold > 0.0))
        throw std::invalid_argument("block_threshold must be positive");
}

double PheromoneField::clamp(double v) const {
    return std::min(tau_max_, std::max(tau_min_, v));
}

int PheromoneField::blocked_count() const {
    int count = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (blocked(i, j)) ++count;
    return count;
}

void PheromoneField::set_tau(int i, int j, double value) {
    set_sym(tau_, i, j, clamp(value));
}

void PheromoneField::set_bounds(double tau_min, double tau_max) {
    if (!(tau_min > 0.0) || !(tau_max >= tau_min))
        throw std::invalid_argument("bad clamp bounds");
    if (tau0_ < tau_min || tau0_ > tau_max)
        throw std::invalid_argument("tau0 must lie within clamp bounds");
    tau_min_ = tau_min;
    tau_max_ = tau_max;
    for (double& t : tau_) t = clamp(t);
}

void PheromoneField::decay_step(const SpeciesProfile& s) {
    s.validate();
    const double factor = std::exp2(-1.0 / s.half_life);
    for (double& t : tau_) t = std::max(tau_min_, t * factor);
    for (double& g : neg_) g *= factor;
}

void PheromoneField::local_update(int i, int j, double rho_local) {
    if (!(rho_local > 0.0) || rho_local > 1.0)
        throw std::invalid_argument("rho_local must lie in (0,1]");
    set_sym(tau_, i, j, clamp((1.0 - rho_local) * tau(i, j) + rho_local * tau0_));
}

void PheromoneField::reinforce(int i, int j, double quality, double rho) {
    if (!(rho > 0.0) || rho > 1.0)
        throw std::invalid_argument("rho must lie in (0,1]");
    set_sym(tau_, i, j, clamp((1.0 - rho) * tau(i, j) + rho * quality));
}

void PheromoneField::amplify(int i, int j, double rate) {
    if (rate < 0.0) throw std::invalid_argument("rate must be nonnegative");
    set_sym(tau_, i, j, clamp(tau(i, j) * (1.0 + rate)));
}

void PheromoneField::erode(int i, int j, double xi) {
    if (xi < 0.0 || xi >= 1.0)
        throw std::invalid_argument("xi must lie in [0,1)");
    set_sym(tau_, i, j, std::max(tau_min_, (1.0 - xi) * tau(i, j)));
}

void PheromoneField::mark_negative(const EdgeList& edges, double amount) {
    if (!(amount > 0.0)) throw std::invalid_argument("amount must be positive");
    for (auto [a, b] : edges) set_sym(neg_, a, b, neg(a, b) + amount);
}

void global_update(PheromoneField& f, const Solution& best, double rho_global,
                   bool cyclic) {
    if (!(best.cost > 0.0))
        throw std::invalid_argument("global update needs a positive cost");
    reinforce_edges(f, solution_edges(best.perm, cyclic), 1.0 / best.cost,
                    rho_global);
}

void reinforce_edges(PheromoneField& f, const EdgeList& edges, double quality,
                     double rho) {
    for (auto [a, b] : edges) f.reinforce(a, b, quality, rho);
}

double fast_pow(double x, double e) {
    if (e == 0.0) return 1.0;
    if (e == 1.0) return x;
    if (e == 2.0) return x * x;
    double ip;
    if (std::modf(e, &ip) == 0.0 && ip > 0.0 && ip <= 32.0) {
        double r = 1.0, b = x;
        for (long k = static_cast<long>(ip); k > 0; k >>= 1) {
            if (k & 1) r *= b;
            b *= b;
        }
        return r;
    }
    return std::pow(x, e);
}

std::vector<double> normalized_probabilities(std::vector<double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0) {
        const double u = 1.0 / static_cast<double>(weights.size());
        std::fill(weights.begin(), weights.end(), u);
        return weights;
    }
    for (double& w : weights) w /= total;
    return weights;
}

std::vector<double> transition_probabilities(const PheromoneField& f,
                                             const WeightedGraph& g,
                                             int current,
                                             const std::vector<int>& allowed,
                                             double alpha, double beta,
                                             bool respect_no_entry) {
    if (allowed.empty())
        throw std::invalid_argument("candidate set must be nonempty");
    std::vector<double> w(allowed.size(), 0.0);
    for (std::size_t i = 0; i < allowed.size(); ++i) {
        int j = allowed[i];
        if (respect_no_entry && f.blocked(current, j)) continue;
        w[i] = fast_pow(f.tau(current, j), alpha) *
               fast_pow(1.0 / g.weight(current, j), beta);
    }
    return normalized_probabilities(std::move(w));
}

}  // namespace antopt
