#pragma once

#include "stringtop/cyclic.hpp"

namespace stringtop {

/* connected multigraph with dual-class decorations; orientation = the stored
 * generator order [v0, dec(v0)..., v1, ...][edges], vertex parity n,
 * edge parity n+1, decoration parity |class|; edge flips cost (-1)^{n+1} */
struct DecoratedGraph {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;    // directed pairs
    std::vector<std::vector<int>> decorations; // per-vertex symbol lists
    auto operator<=>(const DecoratedGraph&) const = default;
};

using GraphChain = std::map<DecoratedGraph, Scalar>;

class GraphContext {
public:
    GraphContext(const FrobeniusAlgebra& A, bool reduced = true, bool tadpoles = false);
    const FrobeniusAlgebra& algebra() const { return *A_; }
    bool tadpoles() const { return tadpoles_; }
    bool reduced() const { return reduced_; }
    int n() const { return A_->top_degree(); }
    int vpar() const { return n() % 2; }
    int epar() const { return (n() + 1) % 2; }
    int dpar(int q) const { return A_->degree(q) % 2; }
    Scalar pairing(int p, int q) const { return A_->copairing(p, q); }
    const std::vector<int>& letters() const { return letters_; }

private:
    const FrobeniusAlgebra* A_;
    bool reduced_, tadpoles_;
    std::vector<int> letters_;
};

int graph_degree(const GraphContext& C, const DecoratedGraph& g);
int loop_order(const DecoratedGraph& g);  // e - v + 1, connected
bool is_connected(const DecoratedGraph& g);

/* canonical labeled form; nullopt when the graph carries an orientation-reversing
 * automorphism (the zero element). sign relates input = sign * canonical. */
struct CanonicalGraph {
    DecoratedGraph graph;
    Scalar sign;
};
std::optional<CanonicalGraph> canonicalize(const GraphContext& C, const DecoratedGraph& g);

void graph_add(const GraphContext& C, GraphChain& chain, const DecoratedGraph& g,
               const Scalar& v);

/* vertex splitting plus decoration fusing; degree +1 */
GraphChain graph_differential(const GraphContext& C, const GraphChain& c);

/* (1/2)(x.y -+ y.x): decoration pairing across the two graphs; degree +1 */
GraphChain graph_bracket(const GraphContext& C, const GraphChain& c1, const GraphChain& c2);

/* single-vertex MC series of the pairing; reduced keeps only j = 0 */
GraphChain mc_z(const GraphContext& C, int j_max, bool reduced);

/* residual of delta z + 1/2 [z, z], filtered to the declared bounds */
struct GraphBounds {
    int max_vertices = 6;
    int max_loops = 3;
    bool admits(const DecoratedGraph& g) const;
};
GraphChain mc_residual(const GraphContext& C, const GraphChain& z, const GraphBounds& b);

/* 1*-dressing series of the reduced-to-full map, truncated at j_max per vertex */
GraphChain reduce_to_full(const GraphContext& C, const GraphChain& c, int j_max);

/* keep graphs with first Betti number = loops */
GraphChain loop_filter(const GraphChain& c, int loops);

/* all vertices at least trivalent (star = half-edges + decorations) */
bool is_trivalent_plus(const DecoratedGraph& g);

}  // namespace stringtop
