#include "antopt/dps.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace antopt {

NetworkTopology NetworkTopology::build(int n, std::vector<Link> links) {
    if (n < 2) throw ParseError("network needs at least 2 nodes");
    NetworkTopology net;
    net.n = n;
    net.adj.resize(static_cast<std::size_t>(n));
    net.adj_link.resize(static_cast<std::size_t>(n));
    for (auto& l : links) {
        if (l.u < 0 || l.u >= n || l.v < 0 || l.v >= n)
            throw ParseError("link endpoint out of range");
        if (l.u == l.v) throw ParseError("self loops are not allowed");
        if (!(l.cost > 0.0) || !std::isfinite(l.cost))
            throw ParseError("link cost must be finite and positive");
        if (l.u > l.v) std::swap(l.u, l.v);
    }
    std::sort(links.begin(), links.end(), [](const Link& a, const Link& b) {
        return std::pair{a.u, a.v} < std::pair{b.u, b.v};
    });
    for (std::size_t i = 1; i < links.size(); ++i)
        if (links[i].u == links[i - 1].u && links[i].v == links[i - 1].v)
            throw ParseError("duplicate link");
    net.links = std::move(links);
    for (std::size_t i = 0; i < net.links.size(); ++i) {
        const auto& l = net.links[i];
        net.adj[static_cast<std::size_t>(l.u)].push_back(l.v);
        net.adj_link[static_cast<std::size_t>(l.u)].push_back(static_cast<int>(i));
        net.adj[static_cast<std::size_t>(l.v)].push_back(l.u);
        net.adj_link[static_cast<std::size_t>(l.v)].push_back(static_cast<int>(i));
    }
    for (int u = 0; u < n; ++u) {
        // neighbors ascending, link indices kept aligned
        auto& a = net.adj[static_cast<std::size_t>(u)];
        auto& al = net.adj_link[static_cast<std::size_t>(u)];
        std::vector<std::size_t> idx(a.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t x, std::size_t y) { return a[x] < a[y]; });
        std::vector<int> na(a.size()), nal(a.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            na[i] = a[idx[i]];
            nal[i] = al[idx[i]];
        }
        a = std::move(na);
        al = std::move(nal);
    }
    // connectivity check
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : net.adj[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++visited;
                stack.push_back(v);
            }
        }
    }
    if (visited != n) throw ParseError("network is not connected");
    return net;
}

int NetworkTopology::link_between(int u, int v) const {
    const auto& a = adj[static_cast<std::size_t>(u)];
    auto it = std::lower_bound(a.begin(), a.end(), v);
    if (it == a.end() || *it != v) return -1;
    return adj_link[static_cast<std::size_t>(u)]
                   [static_cast<std::size_t>(it - a.begin())];
}

NetworkTopology parse_network(std::istream& in) {
    std::string line;
    int n = -1;
    std::vector<NetworkTopology::Link> links;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        if (n < 0) {
            if (ls >> n) continue;
            continue;  // blank or comment before the size line
        }
        int u, v;
        double c;
        if (!(ls >> u >> v >> c)) {
            std::string rest;
            if (ls.clear(), ls >> rest)
                throw ParseError("malformed link line: " + line);
            continue;
        }
        if (u < 1 || u > n || v < 1 || v > n)
            throw ParseError("link endpoint out of range: " + line);
        links.push_back({u - 1, v - 1, c});
    }
    if (n < 0) throw ParseError("missing node count");
    return NetworkTopology::build(n, std::move(links));
}

NetworkTopology parse_network(const std::string& text) {
    std::istringstream in(text);
    return parse_network(in);
}

std::string serialize_network(const NetworkTopology& net) {
    std::ostringstream out;
    out << net.n << '\n';
    char buf[64];
    for (const auto& l : net.links) {
        std::snprintf(buf, sizeof(buf), "%d %d %.17g", l.u + 1, l.v + 1, l.cost);
        out << buf << '\n';
    }
    return out.str();
}

NetworkTopology load_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw ParseError("cannot open instance file: " + path);
    return parse_network(in);
}

std::vector<std::pair<int, int>> parse_demands(std::istream& in,
                                               const NetworkTopology& net) {
    std::vector<std::pair<int, int>> demands;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        int s, d;
        if (!(ls >> s >> d)) continue;
        if (s < 1 || s > net.n || d < 1 || d > net.n || s == d)
            throw ParseError("bad demand pair: " + line);
        demands.emplace_back(s - 1, d - 1);
    }
    return demands;
}

std::vector<std::pair<int, int>> load_demands_file(const std::string& path,
                                                   const NetworkTopology& net) {
    std::ifstream in(path);
    if (!in.is_open()) throw ParseError("cannot open demands file: " + path);
    return parse_demands(in, net);
}

RoutingTable::RoutingTable(const NetworkTopology& net) : net_(&net) {
    rows_.resize(static_cast<std::size_t>(net.n) * net.n);
    for (int u = 0; u < net.n; ++u) {
        const double uniform =
            1.0 / static_cast<double>(net.adj[static_cast<std::size_t>(u)].size());
        for (int d = 0; d < net.n; ++d) {
            if (d == u) continue;
            rows_[static_cast<std::size_t>(u) * net.n + d].assign(
                net.adj[static_cast<std::size_t>(u)].size(), uniform);
        }
    }
}

const std::vector<double>& RoutingTable::distribution(int node, int dest) const {
    if (node == dest)
        throw std::invalid_argument("no distribution toward the node itself");
    return rows_[static_cast<std::size_t>(node) * net_->n + dest];
}

void RoutingTable::reinforce(int node, int dest, int neighbor_index, double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("reinforcement must be >= 0");
    auto& row = rows_[static_cast<std::size_t>(node) * net_->n + dest];
    const double denom = 1.0 + r;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (static_cast<int>(i) == neighbor_index)
            row[i] = (row[i] + r) / denom;
        else
            row[i] /= denom;
    }
}

int RoutingTable::most_probable(int node, int dest) const {
    const auto& row = distribution(node, dest);
    std::size_t best = 0;
    for (std::size_t i = 1; i < row.size(); ++i)
        if (row[i] > row[best]) best = i;
    return net_->adj[static_cast<std::size_t>(node)][best];
}

void DpsParams::validate() const {
    if (ants_per_demand < 1)
        throw std::invalid_argument("ants_per_demand must be positive");
    if (explore_eps < 0.0 || explore_eps > 1.0 || exploit_eps < 0.0 ||
        exploit_eps > 1.0)
        throw std::invalid_argument("exploration must lie in [0,1]");
    if (!(bad_factor > 1.0))
        throw std::invalid_argument("bad_factor must exceed 1");
    if (neg_amount < 0.0)
        throw std::invalid_argument("neg_amount must be nonnegative");
    if (!(rho_global > 0.0) || rho_global > 1.0)
        throw std::invalid_argument("rho_global must lie in (0,1]");
    if (max_hops_factor < 1)
        throw std::invalid_argument("max_hops_factor must be positive");
    if (reward_power < 1.0)
        throw std::invalid_argument("reward_power must be at least 1");
    species.validate();
}

int forward_step(AntPacket& pkt, const RoutingTable& tables,
                 const PheromoneField& field, const NetworkTopology& net,
                 double exploration, bool respect_no_entry, Rng& rng) {
    const int u = pkt.path.back();
    const auto& nbrs = net.adj[static_cast<std::size_t>(u)];
    const auto& row = tables.distribution(u, pkt.destination);
    const double uniform = 1.0 / static_cast<double>(nbrs.size());

    std::vector<double> weights(nbrs.size(), 0.0);
    bool any = false;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (respect_no_entry && field.blocked(u, nbrs[i])) continue;
        weights[i] = (1.0 - exploration) * row[i] + exploration * uniform;
        any = true;
    }
    if (!any) return -1;  // every neighbor sits behind a no-entry mark

    const std::size_t pick = roulette_index(weights, rng);
    const int next = nbrs[pick];
    pkt.cost_so_far +=
        net.links[static_cast<std::size_t>(
                      net.adj_link[static_cast<std::size_t>(u)][pick])]
            .cost;
    pkt.path.push_back(next);
    return next;
}

std::vector<int> prune_cycles(const std::vector<int>& path) {
    if (path.empty()) throw std::invalid_argument("empty path");
    std::vector<int> out;
    out.reserve(path.size());
    for (int node : path) {
        auto it = std::find(out.begin(), out.end(), node);
        if (it != out.end())
            out.erase(it + 1, out.end());  // drop the loop, keep one occurrence
        else
            out.push_back(node);
    }
    return out;
}

double path_cost(const NetworkTopology& net, const std::vector<int>& path) {
    double cost = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        int link = net.link_between(path[i], path[i + 1]);
        if (link < 0) throw std::invalid_argument("path uses a missing link");
        cost += net.links[static_cast<std::size_t>(link)].cost;
    }
    return cost;
}

void backward_update(RoutingTable& tables, PheromoneField& field,
                     const NetworkTopology& net, const std::vector<int>& path,
                     double cost, double kappa, double rho_global) {
    if (!(cost > 0.0)) throw std::invalid_argument("path cost must be positive");
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    const int dest = path.back();
    const double r = std::min(1.0, kappa / cost);
    for (std::size_t i = path.size() - 1; i-- > 0;) {
        const int u = path[i];
        const int v = path[i + 1];
        const auto& nbrs = net.adj[static_cast<std::size_t>(u)];
        const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
        tables.reinforce(u, dest, static_cast<int>(it - nbrs.begin()), r);
        field.reinforce(u, v, 1.0 / cost, rho_global);
    }
}

namespace {

struct OverlayResult {
    std::vector<int> links;
    double cost = 0.0;
};

OverlayResult extract_overlay(const NetworkTopology& net,
                              const RoutingTable& tables,
                              const std::vector<std::pair<int, int>>& demands) {
    std::vector<char> used(net.links.size(), 0);
    for (auto [s, d] : demands) {
        std::vector<char> seen(static_cast<std::size_t>(net.n), 0);
        int cur = s;
        seen[static_cast<std::size_t>(cur)] = 1;
        std::vector<int> hops;
        bool ok = false;
        while (true) {
            int next = tables.most_probable(cur, d);
            hops.push_back(net.link_between(cur, next));
            if (next == d) {
                ok = true;
                break;
            }
            if (seen[static_cast<std::size_t>(next)]) break;  // stuck in a loop
            seen[static_cast<std::size_t>(next)] = 1;
            cur = next;
        }
        if (ok)
            for (int l : hops) used[static_cast<std::size_t>(l)] = 1;
    }
    OverlayResult overlay;
    for (std::size_t i = 0; i < used.size(); ++i) {
        if (used[i]) {
            overlay.links.push_back(static_cast<int>(i));
            overlay.cost += net.links[i].cost;
        }
    }
    return overlay;
}

}  // namespace

DpsResult run_routing(const NetworkTopology& net,
                      std::vector<std::pair<int, int>> demands,
                      const DpsParams& params, std::uint64_t seed,
                      int iterations) {
    params.validate();
    if (iterations < 1) throw std::invalid_argument("iteration budget must be positive");
    if (demands.empty()) {
        for (int s = 0; s < net.n; ++s)
            for (int d = 0; d < net.n; ++d)
                if (s != d) demands.emplace_back(s, d);
    }
    for (auto [s, d] : demands)
        if (s < 0 || s >= net.n || d < 0 || d >= net.n || s == d)
            throw std::invalid_argument("bad demand pair");

    double mean_link_cost = 0.0;
    for (const auto& l : net.links) mean_link_cost += l.cost;
    mean_link_cost /= static_cast<double>(net.links.size());
    const double tau0 =
        1.0 / (static_cast<double>(net.n) * mean_link_cost * net.n);

    DpsResult result{RoutingTable(net), {}, 0.0, {}, 0};
    PheromoneField field(net.n, tau0, params.block_threshold);

    // Stream per (colony, demand); persists across iterations.
    std::vector<std::vector<Rng>> rng(3);
    for (std::size_t c = 0; c < 3; ++c) {
        rng[c].reserve(demands.size());
        for (std::size_t d = 0; d < demands.size(); ++d)
            rng[c].emplace_back(derive_stream({seed, 0xE01u, c, d}));
    }

    std::vector<double> best_known(demands.size(),
                                   std::numeric_limits<double>::infinity());
    // Best suffix cost seen from each node toward each destination; the
    // backward pass scores hops against this instead of the whole-path cost,
    // so a good tail is rewarded even after a wasteful start.
    std::vector<double> best_suffix(
        static_cast<std::size_t>(net.n) * net.n,
        std::numeric_limits<double>::infinity());
    const long max_hops = static_cast<long>(params.max_hops_factor) * net.n;

    for (int it = 1; it <= iterations; ++it) {
        double iter_cost_sum = 0.0;
        long iter_completed = 0;
        for (int colony = 0; colony < 3; ++colony) {
            const bool exploiter = colony == 2;
            const bool marker = colony == 1;
            const double eps = exploiter ? params.exploit_eps : params.explore_eps;
            for (std::size_t di = 0; di < demands.size(); ++di) {
                for (int a = 0; a < params.ants_per_demand; ++a) {
                    AntPacket pkt;
                    pkt.source = demands[di].first;
                    pkt.destination = demands[di].second;
                    pkt.path = {pkt.source};
                    bool reached = false;
                    for (long hop = 0; hop < max_hops; ++hop) {
                        int next = forward_step(pkt, result.tables, field, net,
                                                eps, exploiter, rng[colony][di]);
                        if (next < 0) break;  // dropped at a dead end
                        if (next == pkt.destination) {
                            reached = true;
                            break;
                        }
                    }
                    if (!reached) {
                        ++result.dropped_ants;
                        continue;
                    }
                    const std::vector<int> pruned = prune_cycles(pkt.path);
                    const double cost = path_cost(net, pruned);
                    best_known[di] = std::min(best_known[di], cost);
                    ++iter_completed;
                    iter_cost_sum += cost;
                    if (marker && params.neg_amount > 0.0 &&
                        cost > params.bad_factor * best_known[di]) {
                        EdgeList marked;
                        for (std::size_t i = 0; i + 1 < pruned.size(); ++i)
                            marked.emplace_back(pruned[i], pruned[i + 1]);
                        field.mark_negative(marked, params.neg_amount);
                    }
                    // backward retrace, destination to source
                    const int dest = pruned.back();
                    double suffix_cost = 0.0;
                    for (std::size_t i = pruned.size() - 1; i-- > 0;) {
                        const int u = pruned[i];
                        const int v = pruned[i + 1];
                        suffix_cost +=
                            net.links[static_cast<std::size_t>(
                                          net.link_between(u, v))]
                                .cost;
                        double& best =
                            best_suffix[static_cast<std::size_t>(u) * net.n +
                                        dest];
                        double r;
                        if (suffix_cost <= best) {
                            best = suffix_cost;
                            r = 1.0;
                        } else {
                            r = std::pow(best / suffix_cost,
                                         params.reward_power);
                        }
                        const auto& nbrs = net.adj[static_cast<std::size_t>(u)];
                        const auto pos =
                            std::lower_bound(nbrs.begin(), nbrs.end(), v);
                        result.tables.reinforce(
                            u, dest, static_cast<int>(pos - nbrs.begin()), r);
                        field.reinforce(u, v, 1.0 / suffix_cost,
                                        params.rho_global);
                    }
                }
            }
        }
        field.decay_step(params.species);

        const OverlayResult overlay = extract_overlay(net, result.tables, demands);
        result.overlay_links = overlay.links;
        result.overlay_cost = overlay.cost;
        result.trace.push_back(
            {it, overlay.cost,
             iter_completed ? iter_cost_sum / static_cast<double>(iter_completed)
                            : 0.0,
             0, static_cast<long>(field.blocked_count())});
    }
    return result;
}

}  // namespace antopt
