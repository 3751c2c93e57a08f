#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace antopt {

// Raised when an instance file does not match its declared format.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

// Symmetric, strictly positive edge weights over n >= 2 nodes. Instances are
// immutable after construction and safe to share across ant builders.
class WeightedGraph {
public:
    WeightedGraph(int n, std::vector<double> weights,
                  std::vector<Point> coords = {});

    // Rounded Euclidean distances (nearest integer, TSPLIB convention).
    static WeightedGraph from_points(const std::vector<Point>& pts);

    int size() const { return n_; }
    double weight(int i, int j) const { return w_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<Point>& coords() const { return coords_; }

    bool operator==(const WeightedGraph&) const = default;

private:
    int n_ = 0;
    std::vector<double> w_;      // n*n, symmetric, diagonal unused
    std::vector<Point> coords_;  // empty unless built from coordinates
};

// Off-diagonal nonzero pattern of a symmetric matrix, stored as a sorted set
// of unordered 0-based index pairs (a < b).
class SparsePattern {
public:
    SparsePattern(int n, const std::vector<std::pair<int, int>>& entries);

    int size() const { return n_; }
    const std::vector<std::pair<int, int>>& nonzeros() const { return nz_; }
    std::vector<int> degrees() const;
    std::vector<std::vector<int>> adjacency() const;

    bool operator==(const SparsePattern&) const = default;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> nz_;
};

// Dense real matrix for linear ordering instances; diagonal is ignored.
class LopMatrix {
public:
    LopMatrix(int n, std::vector<double> values);

    int size() const { return n_; }
    double at(int i, int j) const { return m_[static_cast<std::size_t>(i) * n_ + j]; }

    // Largest value any ordering can reach: sum over pairs of max(m_ij, m_ji).
    double pair_max_sum() const;
    double offdiag_sum() const;

    bool operator==(const LopMatrix&) const = default;

private:
    int n_ = 0;
    std::vector<double> m_;
};

// A permutation together with its objective value (tour length, bandwidth,
// or linear ordering value, depending on the instance it was built on).
struct Solution {
    std::vector<int> perm;
    double cost = 0.0;
    bool operator==(const Solution&) const = default;
};

// Throws std::invalid_argument unless perm is a bijection on [0, n).
void require_permutation(const std::vector<int>& perm, int n);

double tour_length(const WeightedGraph& g, const std::vector<int>& perm);
// labels[v] = 0-based label of vertex v.
int bandwidth(const SparsePattern& p, const std::vector<int>& labels);
// order[k] = item placed at position k; value sums m[earlier][later].
double lop_value(const LopMatrix& m, const std::vector<int>& order);

WeightedGraph parse_tsp(std::istream& in);
WeightedGraph parse_tsp(const std::string& text);
SparsePattern parse_matrix(std::istream& in);
SparsePattern parse_matrix(const std::string& text);
LopMatrix parse_lop(std::istream& in);
LopMatrix parse_lop(const std::string& text);

std::string serialize_tsp(const WeightedGraph& g);
std::string serialize_matrix(const SparsePattern& p);
std::string serialize_lop(const LopMatrix& m);

WeightedGraph load_tsp_file(const std::string& path);
SparsePattern load_matrix_file(const std::string& path);
LopMatrix load_lop_file(const std::string& path);

}  // namespace antopt
