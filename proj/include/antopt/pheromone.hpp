#pragma once

#include <string>
#include <utility>
#include <vector>

#include "antopt/instances.hpp"

namespace antopt {

// Behavior constants for one ant species. half_life is measured in ticks;
// one tick corresponds to one iteration of a colony loop.
struct SpeciesProfile {
    std::string name;
    double half_life = 60.0;
    double uturn_prob = 0.0;
    bool uses_negative = false;
    double trail_reliance = 1.0;  // weight of trail information vs. memory

    static SpeciesProfile acs();      // generic colony, no special behavior
    static SpeciesProfile pharaoh();  // fast decay, u-turns, no-entry marks
    static SpeciesProfile lasius();   // slow decay, step-back sensitivity

    void validate() const;
};

using Edge = std::pair<int, int>;
using EdgeList = std::vector<Edge>;

// Consecutive pairs of a permutation, plus the closing pair for cycles.
EdgeList solution_edges(const std::vector<int>& perm, bool cyclic);

// Positive trail values with clamp bounds, plus a separate repellent field.
// An edge whose repellent value reaches block_threshold is a no-entry edge.
class PheromoneField {
public:
    PheromoneField(int n, double tau0, double block_threshold = 1.0);

    int size() const { return n_; }
    double tau0() const { return tau0_; }
    double tau_min() const { return tau_min_; }
    double tau_max() const { return tau_max_; }
    double block_threshold() const { return block_threshold_; }

    double tau(int i, int j) const { return tau_[idx(i, j)]; }
    double neg(int i, int j) const { return neg_[idx(i, j)]; }
    bool blocked(int i, int j) const { return neg_[idx(i, j)] >= block_threshold_; }
    int blocked_count() const;

    void set_tau(int i, int j, double value);
    void set_bounds(double tau_min, double tau_max);

    // tau *= 2^(-1/half_life) clamped below; repellent decays the same way.
    void decay_step(const SpeciesProfile& s);
    // tau <- (1-rho)*tau + rho*tau0. rho must lie in (0, 1].
    void local_update(int i, int j, double rho_local);
    // tau <- (1-rho)*tau + rho*quality, clamped.
    void reinforce(int i, int j, double quality, double rho);
    // tau *= (1+rate), clamped.
    void amplify(int i, int j, double rate);
    // tau <- max(tau_min, (1-xi)*tau). xi in [0, 1).
    void erode(int i, int j, double xi);
    void mark_negative(const EdgeList& edges, double amount);

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * n_ + j;
    }
    void set_sym(std::vector<double>& m, int i, int j, double v) {
        m[idx(i, j)] = v;
        m[idx(j, i)] = v;
    }
    double clamp(double v) const;

    int n_ = 0;
    double tau0_ = 0.0;
    double tau_min_ = 0.0;
    double tau_max_ = 0.0;
    double block_threshold_ = 1.0;
    std::vector<double> tau_;
    std::vector<double> neg_;
};

// Deposits 1/best.cost on every edge of best's cycle (or ordering when
// cyclic is false). Throws if best.cost <= 0.
void global_update(PheromoneField& f, const Solution& best, double rho_global,
                   bool cyclic = true);
void reinforce_edges(PheromoneField& f, const EdgeList& edges, double quality,
                     double rho);

// x^e specialized for small integer exponents; the common alpha/beta values
// stay off the libm pow path, which keeps runs fast and bit-stable.
double fast_pow(double x, double e);

// Normalizes weights into a distribution; all-zero input falls back to
// uniform so construction can always progress.
std::vector<double> normalized_probabilities(std::vector<double> weights);

// Probability of moving from current to each node of `allowed` (nonempty),
// using tau^alpha * (1/distance)^beta, with no-entry edges zeroed on request.
std::vector<double> transition_probabilities(const PheromoneField& f,
                                             const WeightedGraph& g,
                                             int current,
                                             const std::vector<int>& allowed,
                                             double alpha, double beta,
                                             bool respect_no_entry);

}  // namespace antopt
