#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "antopt/instances.hpp"
#include "antopt/rng.hpp"
#include "oracles.hpp"

using namespace antopt;

namespace {

WeightedGraph triangle_345() {
    // points (0,0),(3,0),(0,4): sides 3, 4, 5
    return WeightedGraph::from_points({{0, 0}, {3, 0}, {0, 4}});
}

}  // namespace

TEST_CASE("tsp parser computes rounded euclidean weights") {
    const std::string text =
        "NAME: tri\n"
        "TYPE: TSP\n"
        "DIMENSION: 3\n"
        "EDGE_WEIGHT_TYPE: EUC_2D\n"
        "NODE_COORD_SECTION\n"
        "1 0 0\n"
        "2 3 0\n"
        "3 0 4\n"
        "EOF\n";
    const WeightedGraph g = parse_tsp(text);
    CHECK(g.size() == 3);
    CHECK(g.weight(0, 1) == 3.0);
    CHECK(g.weight(0, 2) == 4.0);
    CHECK(g.weight(1, 2) == 5.0);
}

TEST_CASE("tsp parser rejects malformed input") {
    SUBCASE("coordinate count mismatch") {
        const std::string text =
            "TYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\n"
            "NODE_COORD_SECTION\n1 0 0\n2 3 0\nEOF\n";
        CHECK_THROWS_AS(parse_tsp(text), ParseError);
    }
    SUBCASE("unsupported edge weight type") {
        const std::string text =
            "TYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: GEO\n"
            "NODE_COORD_SECTION\n1 0 0\n2 3 0\n3 0 4\nEOF\n";
        CHECK_THROWS_AS(parse_tsp(text), ParseError);
    }
    SUBCASE("dimension below 2") {
        const std::string text =
            "TYPE: TSP\nDIMENSION: 1\nEDGE_WEIGHT_TYPE: EUC_2D\n"
            "NODE_COORD_SECTION\n1 0 0\nEOF\n";
        CHECK_THROWS_AS(parse_tsp(text), ParseError);
    }
    SUBCASE("coincident points") {
        const std::string text =
            "TYPE: TSP\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: EUC_2D\n"
            "NODE_COORD_SECTION\n1 5 5\n2 5 5\nEOF\n";
        CHECK_THROWS_AS(parse_tsp(text), ParseError);
    }
}

TEST_CASE("matrix parser reads the pattern subset") {
    SUBCASE("plain entries") {
        const std::string text =
            "%%MatrixMarket matrix coordinate pattern symmetric\n"
            "% a comment\n"
            "3 3 2\n"
            "2 1\n"
            "3 2\n";
        const SparsePattern p = parse_matrix(text);
        CHECK(p.size() == 3);
        CHECK(p.nonzeros() ==
              std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    }
    SUBCASE("diagonal entries are dropped") {
        const std::string text =
            "%%MatrixMarket matrix coordinate pattern symmetric\n"
            "2 2 1\n"
            "1 1\n";
        CHECK(parse_matrix(text).nonzeros().empty());
    }
    SUBCASE("index out of range") {
        const std::string text =
            "%%MatrixMarket matrix coordinate pattern symmetric\n"
            "3 3 1\n"
            "4 1\n";
        CHECK_THROWS_AS(parse_matrix(text), ParseError);
    }
    SUBCASE("wrong header") {
        const std::string text =
            "%%MatrixMarket matrix coordinate real general\n"
            "2 2 1\n"
            "1 2\n";
        CHECK_THROWS_AS(parse_matrix(text), ParseError);
    }
    SUBCASE("entry count mismatch") {
        const std::string text =
            "%%MatrixMarket matrix coordinate pattern symmetric\n"
            "3 3 2\n"
            "2 1\n";
        CHECK_THROWS_AS(parse_matrix(text), ParseError);
    }
}

TEST_CASE("tour length") {
    const WeightedGraph g = triangle_345();
    SUBCASE("triangle perimeter for every tour") {
        std::vector<int> perm{0, 1, 2};
        do {
            CHECK(tour_length(g, perm) == 12.0);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    SUBCASE("reversal symmetry on random instances") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const WeightedGraph r = oracle::random_euc_graph(seed, 7);
            Rng rng(seed);
            std::vector<int> perm(7);
            std::iota(perm.begin(), perm.end(), 0);
            for (int i = 6; i > 0; --i) {
                int j = static_cast<int>(rng.next_below(i + 1));
                std::swap(perm[i], perm[j]);
            }
            std::vector<int> rev(perm.rbegin(), perm.rend());
            CHECK(tour_length(r, perm) == tour_length(r, rev));
        }
    }
    SUBCASE("matches independent re-summation on a random 6-node instance") {
        const WeightedGraph r = oracle::random_euc_graph(42, 6);
        const std::vector<int> perm{3, 0, 5, 2, 1, 4};
        double expected = 0.0;  // direct re-summation, written independently
        for (std::size_t i = 0; i < perm.size(); ++i)
            expected += r.weight(perm[i], perm[(i + 1) % perm.size()]);
        CHECK(tour_length(r, perm) == expected);
    }
    SUBCASE("rejects non-permutations") {
        CHECK_THROWS_AS(tour_length(g, {0, 1, 1}), std::invalid_argument);
        CHECK_THROWS_AS(tour_length(g, {0, 1}), std::invalid_argument);
    }
}

TEST_CASE("bandwidth") {
    SUBCASE("diagonal-only pattern") {
        const SparsePattern p(4, {});
        CHECK(bandwidth(p, {0, 1, 2, 3}) == 0);
    }
    SUBCASE("tridiagonal with identity labeling") {
        const SparsePattern p(4, {{0, 1}, {1, 2}, {2, 3}});
        CHECK(bandwidth(p, {0, 1, 2, 3}) == 1);
    }
    SUBCASE("star K1,3 optimum over all labelings is 2") {
        const SparsePattern star(4, {{0, 1}, {0, 2}, {0, 3}});
        CHECK(oracle::exhaustive_bandwidth(star) == 2);
    }
    SUBCASE("invariant under simultaneous relabeling") {
        const SparsePattern p = oracle::random_pattern(5, 7, 9);
        const std::vector<int> labels{2, 0, 4, 6, 1, 5, 3};
        const std::vector<int> sigma{3, 6, 0, 5, 1, 2, 4};
        std::vector<std::pair<int, int>> mapped;
        for (auto [a, b] : p.nonzeros()) mapped.emplace_back(sigma[a], sigma[b]);
        const SparsePattern q(7, mapped);
        std::vector<int> relabeled(7);
        for (int v = 0; v < 7; ++v) relabeled[sigma[v]] = labels[v];
        CHECK(bandwidth(p, labels) == bandwidth(q, relabeled));
    }
}

TEST_CASE("lop value") {
    SUBCASE("single upper pair") {
        const LopMatrix m(2, {0, 5, 1, 0});
        CHECK(lop_value(m, {0, 1}) == 5.0);
        CHECK(lop_value(m, {1, 0}) == 1.0);
    }
    SUBCASE("zero matrix") {
        const LopMatrix m(3, std::vector<double>(9, 0.0));
        std::vector<int> order{0, 1, 2};
        do {
            CHECK(lop_value(m, order) == 0.0);
        } while (std::next_permutation(order.begin(), order.end()));
    }
    SUBCASE("random 4x4 against exhaustive maximum") {
        const LopMatrix m = oracle::random_lop(7, 4);
        double best = -1.0;
        std::vector<int> order{0, 1, 2, 3};
        do {
            best = std::max(best, lop_value(m, order));
        } while (std::next_permutation(order.begin(), order.end()));
        CHECK(best == oracle::exhaustive_lop(m));
    }
    SUBCASE("transpose identity") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const LopMatrix m = oracle::random_lop(seed, 5);
            std::vector<double> t(25);
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) t[5 * i + j] = m.at(j, i);
            const LopMatrix mt(5, t);
            Rng rng(seed);
            std::vector<int> order{0, 1, 2, 3, 4};
            for (int i = 4; i > 0; --i) {
                int j = static_cast<int>(rng.next_below(i + 1));
                std::swap(order[i], order[j]);
            }
            CHECK(lop_value(m, order) + lop_value(mt, order) ==
                  doctest::Approx(m.offdiag_sum()).epsilon(1e-12));
        }
    }
}

TEST_CASE("the two tour oracles agree") {
    // dynamic programming and full enumeration are independent routes to the
    // same optimum; they must match exactly on integer-weight instances
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const WeightedGraph g = oracle::random_euc_graph(seed * 100, 7);
        CHECK(oracle::held_karp_tsp(g) == oracle::exhaustive_tsp(g));
    }
}

TEST_CASE("parsers round-trip") {
    SUBCASE("tsp") {
        const WeightedGraph g = oracle::random_euc_graph(3, 8);
        CHECK(parse_tsp(serialize_tsp(g)) == g);
    }
    SUBCASE("matrix") {
        const SparsePattern p = oracle::random_pattern(4, 8, 12);
        CHECK(parse_matrix(serialize_matrix(p)) == p);
    }
    SUBCASE("lop") {
        const LopMatrix m = oracle::random_lop(5, 6);
        CHECK(parse_lop(serialize_lop(m)) == m);
    }
}
