#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "antopt/acs.hpp"

namespace antopt {

// Connected undirected network with positive link costs.
struct NetworkTopology {
    struct Link {
        int u = 0;
        int v = 0;
        double cost = 0.0;
        bool operator==(const Link&) const = default;
    };

    int n = 0;
    std::vector<Link> links;
    std::vector<std::vector<int>> adj;       // neighbor node ids, ascending
    std::vector<std::vector<int>> adj_link;  // link index parallel to adj

    static NetworkTopology build(int n, std::vector<Link> links);
    int link_between(int u, int v) const;  // -1 when not adjacent
    bool operator==(const NetworkTopology& o) const {
        return n == o.n && links == o.links;
    }
};

NetworkTopology parse_network(std::istream& in);
NetworkTopology parse_network(const std::string& text);
std::string serialize_network(const NetworkTopology& net);
NetworkTopology load_network_file(const std::string& path);
// Demand file: one "src dst" pair per line, 1-based.
std::vector<std::pair<int, int>> parse_demands(std::istream& in,
                                               const NetworkTopology& net);
std::vector<std::pair<int, int>> load_demands_file(const std::string& path,
                                                   const NetworkTopology& net);

// Per-node, per-destination probability distribution over the neighbors.
class RoutingTable {
public:
    explicit RoutingTable(const NetworkTopology& net);

    // Distribution over adj[node], indexed like adj[node].
    const std::vector<double>& distribution(int node, int dest) const;
    // Normalized AntNet-style pull toward the used neighbor:
    // used <- (p + r) / (1 + r), others <- p / (1 + r).
    void reinforce(int node, int dest, int neighbor_index, double r);
    // Neighbor node id with the largest probability, ties to lowest id.
    int most_probable(int node, int dest) const;

private:
    const NetworkTopology* net_;
    std::vector<std::vector<double>> rows_;  // [node * n + dest] over adj[node]
};

struct AntPacket {
    enum class Kind { Forward, Backward };
    Kind kind = Kind::Forward;
    int source = 0;
    int destination = 0;
    std::vector<int> path;  // starts at source
    double cost_so_far = 0.0;
};

// Samples the next hop from (1-exploration)*table + exploration*uniform over
// the neighbors, excluding no-entry links when respect_no_entry is set.
// Appends the hop and its cost to the packet. Returns -1 when every neighbor
// is blocked (the ant is dropped).
int forward_step(AntPacket& pkt, const RoutingTable& tables,
                 const PheromoneField& field, const NetworkTopology& net,
                 double exploration, bool respect_no_entry, Rng& rng);

// Left-to-right loop erasure: keeps only the suffix after each node's last
// occurrence; the result repeats no node and preserves the endpoints.
std::vector<int> prune_cycles(const std::vector<int>& path);

double path_cost(const NetworkTopology& net, const std::vector<int>& path);

// Retraces a cycle-free path destination -> source, pulling each node's
// distribution toward the used hop with r = min(1, kappa/cost) and giving the
// link pheromone a 1/cost reinforcement.
void backward_update(RoutingTable& tables, PheromoneField& field,
                     const NetworkTopology& net, const std::vector<int>& path,
                     double cost, double kappa, double rho_global);

struct DpsParams {
    int ants_per_demand = 1;      // forward ants per colony per demand
    double explore_eps = 0.35;    // exploration mix for the two explorer colonies
    double exploit_eps = 0.05;
    double bad_factor = 1.2;
    double neg_amount = 1.0;
    double rho_global = 0.1;
    double block_threshold = 1.0;
    int max_hops_factor = 8;      // forward walk budget, times node count
    // Reward sharpening for the per-node backward pass: a suffix costing
    // more than the best known one toward that destination earns
    // (best/cost)^reward_power. Graded rewards let frequently-walked detours
    // out-reinforce rarely-walked shortest paths; a sharp exponent keeps the
    // tables converging on the true tree.
    double reward_power = 80.0;
    SpeciesProfile species = SpeciesProfile::pharaoh();

    void validate() const;
};

struct DpsResult {
    RoutingTable tables;
    std::vector<int> overlay_links;  // distinct link indices, ascending
    double overlay_cost = 0.0;
    std::vector<TraceRow> trace;
    std::uint64_t dropped_ants = 0;
};

// Three colonies per iteration, on PAS roles: two explorers (the second marks
// links of overpriced paths with repellent) and a no-entry-honoring exploiter.
// Completed paths are loop-erased and retraced backward, scoring each node's
// hop against the best suffix cost seen toward that destination. The overlay
// is the union of the most probable path per demand.
DpsResult run_routing(const NetworkTopology& net,
                      std::vector<std::pair<int, int>> demands,
                      const DpsParams& params, std::uint64_t seed,
                      int iterations);

}  // namespace antopt
