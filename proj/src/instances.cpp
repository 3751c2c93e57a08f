#include "antopt/instances.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

namespace antopt {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

WeightedGraph::WeightedGraph(int n, std::vector<double> weights,
                             std::vector<Point> coords)
    : n_(n), w_(std::move(weights)), coords_(std::move(coords)) {
    if (n_ < 2) throw std::invalid_argument("graph needs at least 2 nodes");
    if (w_.size() != static_cast<std::size_t>(n_) * n_)
        throw std::invalid_argument("weight matrix size mismatch");
    if (!coords_.empty() && coords_.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("coordinate count mismatch");
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            double wij = weight(i, j);
            if (wij != weight(j, i))
                throw std::invalid_argument("weights must be symmetric");
            if (!(wij > 0.0) || !std::isfinite(wij))
                throw std::invalid_argument("weights must be finite and positive");
        }
    }
}

WeightedGraph WeightedGraph::from_points(const std::vector<Point>& pts) {
    int n = static_cast<int>(pts.size());
    if (n < 2) throw std::invalid_argument("graph needs at least 2 nodes");
    std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double dx = pts[i].x - pts[j].x;
            double dy = pts[i].y - pts[j].y;
            double d = std::floor(std::sqrt(dx * dx + dy * dy) + 0.5);
            if (d <= 0.0)
                throw std::invalid_argument(
                    "coincident points yield a zero rounded distance");
            w[static_cast<std::size_t>(i) * n + j] = d;
            w[static_cast<std::size_t>(j) * n + i] = d;
        }
    }
    return WeightedGraph(n, std::move(w), pts);
}

SparsePattern::SparsePattern(int n, const std::vector<std::pair<int, int>>& entries)
    : n_(n) {
    if (n_ < 1) throw std::invalid_argument("pattern dimension must be positive");
    nz_.reserve(entries.size());
    for (auto [i, j] : entries) {
        if (i < 0 || i >= n_ || j < 0 || j >= n_)
            throw std::invalid_argument("pattern index out of range");
        if (i == j) throw std::invalid_argument("diagonal entry in pattern");
        nz_.emplace_back(std::min(i, j), std::max(i, j));
    }
    std::sort(nz_.begin(), nz_.end());
    nz_.erase(std::unique(nz_.begin(), nz_.end()), nz_.end());
}

std::vector<int> SparsePattern::degrees() const {
    std::vector<int> deg(n_, 0);
    for (auto [a, b] : nz_) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

std::vector<std::vector<int>> SparsePattern::adjacency() const {
    std::vector<std::vector<int>> adj(n_);
    for (auto [a, b] : nz_) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());
    return adj;
}

LopMatrix::LopMatrix(int n, std::vector<double> values)
    : n_(n), m_(std::move(values)) {
    if (n_ < 1) throw std::invalid_argument("matrix dimension must be positive");
    if (m_.size() != static_cast<std::size_t>(n_) * n_)
        throw std::invalid_argument("matrix size mismatch");
    for (double v : m_)
        if (!std::isfinite(v)) throw std::invalid_argument("matrix entries must be finite");
}

double LopMatrix::pair_max_sum() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) s += std::max(at(i, j), at(j, i));
    return s;
}

double LopMatrix::offdiag_sum() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (i != j) s += at(i, j);
    return s;
}

void require_permutation(const std::vector<int>& perm, int n) {
    if (perm.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("permutation has wrong length");
    std::vector<char> seen(n, 0);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[v])
            throw std::invalid_argument("not a permutation");
        seen[v] = 1;
    }
}

double tour_length(const WeightedGraph& g, const std::vector<int>& perm) {
    require_permutation(perm, g.size());
    double len = 0.0;
    int prev = perm.back();
    for (int v : perm) {
        len += g.weight(prev, v);
        prev = v;
    }
    return len;
}

int bandwidth(const SparsePattern& p, const std::vector<int>& labels) {
    require_permutation(labels, p.size());
    int bw = 0;
    for (auto [a, b] : p.nonzeros())
        bw = std::max(bw, std::abs(labels[a] - labels[b]));
    return bw;
}

double lop_value(const LopMatrix& m, const std::vector<int>& order) {
    require_permutation(order, m.size());
    double v = 0.0;
    for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t b = a + 1; b < order.size(); ++b)
            v += m.at(order[a], order[b]);
    return v;
}

// --- TSPLIB subset ---------------------------------------------------------

WeightedGraph parse_tsp(std::istream& in) {
    int dimension = -1;
    bool have_type = false;
    bool have_weight_type = false;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t == "NODE_COORD_SECTION") break;
        if (t == "EOF")
            throw ParseError("unexpected EOF marker before coordinates");
        std::size_t colon = t.find(':');
        if (colon == std::string::npos)
            throw ParseError("malformed header line: " + t);
        std::string key = trim(t.substr(0, colon));
        std::string value = trim(t.substr(colon + 1));
        if (key == "TYPE") {
            if (value != "TSP") throw ParseError("unsupported TYPE: " + value);
            have_type = true;
        } else if (key == "DIMENSION") {
            try {
                dimension = std::stoi(value);
            } catch (const std::exception&) {
                throw ParseError("bad DIMENSION: " + value);
            }
        } else if (key == "EDGE_WEIGHT_TYPE") {
            if (value != "EUC_2D")
                throw ParseError("unsupported EDGE_WEIGHT_TYPE: " + value);
            have_weight_type = true;
        }
        // NAME / COMMENT and similar header keys are accepted and ignored.
    }
    if (!have_type) throw ParseError("missing TYPE: TSP");
    if (!have_weight_type) throw ParseError("missing EDGE_WEIGHT_TYPE: EUC_2D");
    if (dimension < 2) throw ParseError("DIMENSION must be at least 2");

    std::vector<Point> pts(dimension);
    std::vector<char> seen(dimension, 0);
    int count = 0;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t == "EOF") break;
        std::istringstream ls(t);
        int idx;
        double x, y;
        if (!(ls >> idx >> x >> y))
            throw ParseError("malformed coordinate line: " + t);
        if (idx < 1 || idx > dimension || seen[idx - 1])
            throw ParseError("bad node index in coordinates: " + t);
        seen[idx - 1] = 1;
        pts[idx - 1] = {x, y};
        ++count;
    }
    if (count != dimension)
        throw ParseError("coordinate count does not match DIMENSION");
    try {
        return WeightedGraph::from_points(pts);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string serialize_tsp(const WeightedGraph& g) {
    if (g.coords().empty())
        throw std::invalid_argument("graph has no coordinates to serialize");
    std::ostringstream out;
    out << "NAME: antopt\n"
        << "TYPE: TSP\n"
        << "DIMENSION: " << g.size() << "\n"
        << "EDGE_WEIGHT_TYPE: EUC_2D\n"
        << "NODE_COORD_SECTION\n";
    for (int i = 0; i < g.size(); ++i)
        out << (i + 1) << ' ' << fmt_double(g.coords()[i].x) << ' '
            << fmt_double(g.coords()[i].y) << '\n';
    out << "EOF\n";
    return out.str();
}

// --- MatrixMarket coordinate pattern symmetric subset ------------------------

SparsePattern parse_matrix(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty matrix file");
    {
        std::istringstream hs(trim(line));
        std::string tag, object, format, field, symmetry;
        hs >> tag >> object >> format >> field >> symmetry;
        if (lower(tag) != "%%matrixmarket" || lower(object) != "matrix" ||
            lower(format) != "coordinate" || lower(field) != "pattern" ||
            lower(symmetry) != "symmetric")
            throw ParseError("unsupported MatrixMarket header: " + line);
    }
    long rows = -1, cols = -1, nnz = -1;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '%') continue;
        std::istringstream ls(t);
        if (!(ls >> rows >> cols >> nnz))
            throw ParseError("malformed size line: " + t);
        break;
    }
    if (rows < 1 || cols < 1 || nnz < 0) throw ParseError("missing size line");
    if (rows != cols) throw ParseError("pattern matrix must be square");

    std::vector<std::pair<int, int>> entries;
    entries.reserve(static_cast<std::size_t>(nnz));
    long count = 0;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '%') continue;
        std::istringstream ls(t);
        long i, j;
        if (!(ls >> i >> j)) throw ParseError("malformed entry line: " + t);
        if (i < 1 || i > rows || j < 1 || j > rows)
            throw ParseError("entry index out of range: " + t);
        ++count;
        if (i == j) continue;  // diagonal entries carry no bandwidth information
        entries.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1));
    }
    if (count != nnz) throw ParseError("entry count does not match header");
    return SparsePattern(static_cast<int>(rows), entries);
}

std::string serialize_matrix(const SparsePattern& p) {
    std::ostringstream out;
    out << "%%MatrixMarket matrix coordinate pattern symmetric\n";
    out << p.size() << ' ' << p.size() << ' ' << p.nonzeros().size() << '\n';
    for (auto [a, b] : p.nonzeros()) out << (b + 1) << ' ' << (a + 1) << '\n';
    return out.str();
}

// --- Linear ordering matrices ------------------------------------------------
// Format: optional '#' comment lines, a dimension line, then n*n row-major
// entries separated by whitespace.

LopMatrix parse_lop(std::istream& in) {
    std::string line;
    std::ostringstream data;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        data << t << '\n';
    }
    std::istringstream ds(data.str());
    long n;
    if (!(ds >> n) || n < 1) throw ParseError("missing or bad dimension");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n) * n);
    double v;
    while (ds >> v) values.push_back(v);
    if (values.size() != static_cast<std::size_t>(n) * n)
        throw ParseError("matrix entry count does not match dimension");
    try {
        return LopMatrix(static_cast<int>(n), std::move(values));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string serialize_lop(const LopMatrix& m) {
    std::ostringstream out;
    out << m.size() << '\n';
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            if (j) out << ' ';
            out << fmt_double(m.at(i, j));
        }
        out << '\n';
    }
    return out.str();
}

// --- string / file conveniences ----------------------------------------------

WeightedGraph parse_tsp(const std::string& text) {
    std::istringstream in(text);
    return parse_tsp(in);
}

SparsePattern parse_matrix(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix(in);
}

LopMatrix parse_lop(const std::string& text) {
    std::istringstream in(text);
    return parse_lop(in);
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw ParseError("cannot open instance file: " + path);
    return in;
}

}  // namespace

WeightedGraph load_tsp_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_tsp(in);
}

SparsePattern load_matrix_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_matrix(in);
}

LopMatrix load_lop_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_lop(in);
}

}  // namespace antopt
