#include "jtv/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

#include "jtv/errors.hpp"

namespace jtv {

void validate_graph(const WeightedGraph& g) {
    if (g.n < 1) throw ValidationError("graph needs at least one vertex");
    if (g.weights.rows() != g.n || g.weights.cols() != g.n)
        throw DimensionError("weight matrix does not match vertex count");
    for (int i = 0; i < g.n; ++i) {
        if (g.weights(i, i) != 0.0)
            throw ValidationError("weight matrix has a nonzero diagonal");
        for (int j = i + 1; j < g.n; ++j) {
            if (g.weights(i, j) != g.weights(j, i))
                throw ValidationError("weight matrix is not symmetric");
            if (g.weights(i, j) < 0.0)
                throw ValidationError("negative edge weight");
        }
    }
    if (!g.coords.empty() && static_cast<int>(g.coords.size()) != g.n)
        throw DimensionError("coordinate list does not match vertex count");
}

bool is_connected(const WeightedGraph& g) {
    if (g.n == 0) return false;
    std::vector<char> seen(g.n, 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        for (int u = 0; u < g.n; ++u) {
            if (!seen[u] && g.weights(v, u) > 0.0) {
                seen[u] = 1;
                ++reached;
                frontier.push(u);
            }
        }
    }
    return reached == g.n;
}

Laplacian build_laplacian(const WeightedGraph& g) {
    const Eigen::VectorXd degrees = g.weights.rowwise().sum();
    Laplacian lap;
    lap.matrix = Eigen::MatrixXd(degrees.asDiagonal());
    lap.matrix -= g.weights;
    return lap;
}

double rho_bound(const WeightedGraph& g) {
    const Eigen::VectorXd d = g.weights.rowwise().sum();
    if ((d.array() <= 0.0).any())
        throw IsolatedVertexError("rho bound undefined for zero-degree vertex");
    const Eigen::VectorXd weighted = g.weights * d;  // sum_j w_ij d_j
    double rho = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double dprime = weighted[i] / d[i];
        rho = std::max(rho, std::sqrt(2.0 * d[i] * (d[i] + dprime)));
    }
    return rho;
}

namespace {

constexpr int kConnectivityRetries = 100;

WeightedGraph retry_until_connected(const char* kind,
                                    const std::function<WeightedGraph(Rng&)>& draw,
                                    Rng rng) {
    for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
        Rng attempt_rng = rng.fork(static_cast<std::uint64_t>(attempt));
        WeightedGraph g = draw(attempt_rng);
        if (is_connected(g)) return g;
    }
    throw ConnectivityError(std::string(kind) +
                            " generator exhausted its connectivity retries");
}

}  // namespace

WeightedGraph gen_erdos_renyi(int n, double p, Rng rng) {
    if (n < 1) throw SizeError("vertex count must be positive");
    if (p <= 0.0 || p > 1.0) throw ValidationError("p must be in (0, 1]");
    auto draw = [n, p](Rng& r) {
        WeightedGraph g;
        g.n = n;
        g.weights = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (r.uniform() < p) g.weights(i, j) = g.weights(j, i) = 1.0;
        return g;
    };
    return retry_until_connected("Erdos-Renyi", draw, rng);
}

WeightedGraph gen_watts_strogatz(int n, int k_ring, double beta, Rng rng) {
    if (n < 3) throw SizeError("vertex count must be at least 3");
    if (k_ring < 2 || k_ring % 2 != 0 || k_ring >= n)
        throw ValidationError("k_ring must be even, >= 2 and < n");
    if (beta < 0.0 || beta > 1.0) throw ValidationError("beta must be in [0, 1]");
    auto draw = [n, k_ring, beta](Rng& r) {
        // Ring lattice, then rewire the far endpoint of each lattice edge
        // with probability beta; the edge count n*k_ring/2 is preserved.
        std::set<std::pair<int, int>> edges;
        auto key = [](int a, int b) {
            return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        };
        for (int i = 0; i < n; ++i)
            for (int off = 1; off <= k_ring / 2; ++off)
                edges.insert(key(i, (i + off) % n));
        for (int i = 0; i < n; ++i) {
            for (int off = 1; off <= k_ring / 2; ++off) {
                const int j = (i + off) % n;
                if (r.uniform() >= beta) continue;
                if (!edges.count(key(i, j))) continue;  // already rewired away
                int target = r.uniform_int(0, n - 1);
                int guard = 0;
                while ((target == i || edges.count(key(i, target))) &&
                       guard++ < 4 * n)
                    target = r.uniform_int(0, n - 1);
                if (target == i || edges.count(key(i, target))) continue;
                edges.erase(key(i, j));
                edges.insert(key(i, target));
            }
        }
        WeightedGraph g;
        g.n = n;
        g.weights = Eigen::MatrixXd::Zero(n, n);
        for (const auto& [a, b] : edges) g.weights(a, b) = g.weights(b, a) = 1.0;
        return g;
    };
    return retry_until_connected("Watts-Strogatz", draw, rng);
}

WeightedGraph cycle_graph(int m) {
    if (m < 3) throw SizeError("cycle graph needs at least 3 vertices");
    WeightedGraph g;
    g.n = m;
    g.weights = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        const int j = (i + 1) % m;
        g.weights(i, j) = g.weights(j, i) = 1.0;
    }
    return g;
}

WeightedGraph complete_graph(int n) {
    if (n < 2) throw SizeError("complete graph needs at least 2 vertices");
    WeightedGraph g;
    g.n = n;
    g.weights = Eigen::MatrixXd::Ones(n, n);
    g.weights.diagonal().setZero();
    return g;
}

std::size_t edge_count(const WeightedGraph& g) {
    std::size_t count = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.weights(i, j) > 0.0) ++count;
    return count;
}

WeightedGraph load_graph_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open graph file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad graph JSON in " + path + ": " + e.what());
    }
    if (!doc.contains("n") || !doc.contains("edges"))
        throw ValidationError("graph JSON needs fields 'n' and 'edges'");
    const int n = doc["n"].get<int>();
    if (n < 1) throw ValidationError("graph JSON: n must be positive");
    WeightedGraph g;
    g.n = n;
    g.weights = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 3)
            throw ValidationError("graph JSON: edges must be [i, j, w] triples");
        const int i = e[0].get<int>();
        const int j = e[1].get<int>();
        const double w = e[2].get<double>();
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw ValidationError("graph JSON: edge index out of range");
        if (i == j) throw ValidationError("graph JSON: self loop");
        if (w < 0.0) throw ValidationError("graph JSON: negative weight");
        if (g.weights(i, j) != 0.0)
            throw ValidationError("graph JSON: duplicate edge");
        g.weights(i, j) = g.weights(j, i) = w;
    }
    if (doc.contains("coords")) {
        for (const auto& c : doc["coords"]) {
            Eigen::Vector3d v = Eigen::Vector3d::Zero();
            for (std::size_t a = 0; a < c.size() && a < 3; ++a)
                v[static_cast<int>(a)] = c[a].get<double>();
            g.coords.push_back(v);
        }
        if (static_cast<int>(g.coords.size()) != n)
            throw ValidationError("graph JSON: coords size mismatch");
    }
    return g;
}

void save_graph_json(const WeightedGraph& g, const std::string& path) {
    nlohmann::json doc;
    doc["n"] = g.n;
    auto edges = nlohmann::json::array();
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.weights(i, j) > 0.0)
                edges.push_back({i, j, g.weights(i, j)});
    doc["edges"] = std::move(edges);
    if (g.has_coords()) {
        auto coords = nlohmann::json::array();
        for (const auto& c : g.coords) coords.push_back({c[0], c[1], c[2]});
        doc["coords"] = std::move(coords);
    }
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write graph file: " + path);
    out << doc.dump(2) << '\n';
}

}  // namespace jtv
