#ifndef JTV_GRAPH_HPP
#define JTV_GRAPH_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "jtv/rng.hpp"

namespace jtv {

/// Undirected weighted graph: symmetric nonnegative weight matrix with a
/// zero diagonal. Immutable after construction and safe to share across
/// threads. Coordinates are optional (used by kernel-built sensor graphs).
struct WeightedGraph {
    int n = 0;
    Eigen::MatrixXd weights;                 // n x n, symmetric, zero diagonal
    std::vector<Eigen::Vector3d> coords;     // empty when absent

    bool has_coords() const { return !coords.empty(); }
};

struct Laplacian {
    Eigen::MatrixXd matrix;  // Diag(W 1) - W, symmetric PSD
};

/// Validates the WeightedGraph invariants (symmetry, zero diagonal,
/// nonnegative weights). Throws ValidationError on violation.
void validate_graph(const WeightedGraph& g);

bool is_connected(const WeightedGraph& g);

Laplacian build_laplacian(const WeightedGraph& g);

/// Degree-based upper bound on the largest Laplacian eigenvalue:
/// rho = max_i sqrt(2 d_i (d_i + d'_i)) with d'_i = (sum_j w_ij d_j) / d_i.
/// Throws IsolatedVertexError when some vertex has zero degree.
double rho_bound(const WeightedGraph& g);

/// G(n, p) with unit weights; resamples until connected (at most 100 draws),
/// then throws ConnectivityError.
WeightedGraph gen_erdos_renyi(int n, double p, Rng rng);

/// Ring lattice with k_ring neighbours per vertex, each edge rewired with
/// probability beta. Rewiring preserves the edge count n*k_ring/2.
WeightedGraph gen_watts_strogatz(int n, int k_ring, double beta, Rng rng);

/// Unit-weight m-cycle; its Laplacian is the discrete-time Laplacian L_D.
WeightedGraph cycle_graph(int m);

/// Complete graph with unit weights.
WeightedGraph complete_graph(int n);

std::size_t edge_count(const WeightedGraph& g);

/// JSON graph files: { "n": int, "edges": [[i, j, w], ...],
/// "coords": [[x, y, z], ...] } with 0-based vertex indices and each
/// undirected edge stored once.
WeightedGraph load_graph_json(const std::string& path);
void save_graph_json(const WeightedGraph& g, const std::string& path);

}  // namespace jtv

#endif
