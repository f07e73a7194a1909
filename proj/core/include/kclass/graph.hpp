#pragma once

#include "kclass/six_term.hpp"

#include <string>
#include <vector>

namespace kclass {

/// Finite directed graph; adjacency(v, w) counts the edges v -> w.
struct DirectedGraph {
  std::vector<std::string> vertices;
  IntMatrix adjacency;

  std::size_t size() const { return vertices.size(); }
  bool is_sink(std::size_t v) const;

  friend bool operator==(const DirectedGraph& x, const DirectedGraph& y) {
    return x.vertices == y.vertices && x.adjacency == y.adjacency;
  }
};

/// Throws InvalidInput unless the adjacency is square, nonnegative and
/// matches the vertex list, and the names are distinct.
void validate_graph(const DirectedGraph& g);

/// Subgraph on the given vertices (in the given order) keeping their edges.
DirectedGraph induced_subgraph(const DirectedGraph& g, const std::vector<std::size_t>& keep);

struct GraphKTheory {
  FgAbelianGroup k0;
  FgAbelianGroup k1;
  /// Z^|V| -> K0 sending a basis vector to the class of its vertex projection.
  GroupHom vertex_class;
  std::vector<std::size_t> regular;  // non-sink vertices, in order
  IntMatrix relations;               // |V| x |regular|: columns of (A^t - I)
  IntMatrix k1_basis;                // |regular| x rank K1: basis of the kernel
  IntMatrix k0_section;              // |V| x generators of K0: lifts of the canonical generators
};

/// K0 = coker and K1 = ker of (A^t - I) restricted to the regular columns.
GraphKTheory graph_ktheory(const DirectedGraph& g);

inline constexpr std::size_t kMaxEnumeratedVertices = 20;

struct IdealDatum {
  std::vector<std::size_t> subset;
  bool hereditary = false;
  bool saturated = false;
};

bool is_hereditary(const DirectedGraph& g, const std::vector<std::size_t>& subset);
bool is_saturated(const DirectedGraph& g, const std::vector<std::size_t>& subset);

/// Every hereditary saturated vertex set, the empty set and the full set
/// included, in increasing bitmask order. Throws InvalidInput above
/// kMaxEnumeratedVertices vertices.
std::vector<IdealDatum> hereditary_saturated_sets(const DirectedGraph& g);
/// Only the proper nonempty ones.
std::vector<IdealDatum> nontrivial_hereditary_saturated_sets(const DirectedGraph& g);

/// Every cycle has an exit.
bool has_condition_l(const DirectedGraph& g);

enum class Simplicity { purely_infinite, af, not_simple, unsupported };
std::string to_string(Simplicity s);

/// Simple iff condition (L) holds and only the trivial hereditary saturated
/// sets exist; then AF iff acyclic, purely infinite otherwise. The empty
/// graph is unsupported.
Simplicity classify_simple(const DirectedGraph& g);

/// Ideal, quotient and the distinguished hereditary saturated set of a graph
/// with exactly one nontrivial ideal.
struct OneIdealData {
  std::vector<std::size_t> ideal_vertices;
  DirectedGraph ideal;
  DirectedGraph quotient;
  Simplicity ideal_kind;
  Simplicity quotient_kind;
};

/// Throws InvalidInput unless there is exactly one nontrivial hereditary
/// saturated set and both the ideal and the quotient graphs are simple
/// (which also gives condition (K), so that set is the only ideal).
OneIdealData one_ideal_data(const DirectedGraph& g);

/// Six-term sequence of 0 -> I_H -> C*(g) -> C*(g \ H) -> 0. The exponential
/// map vanishes; the index map comes from the edges leaving the quotient
/// into H. Throws Error if the result fails validation.
SixTermInvariant one_ideal_invariant(const DirectedGraph& g);

IsoVerdict compare_graphs(const DirectedGraph& g1, const DirectedGraph& g2,
                          std::size_t bound = kDefaultSixTermBound);

}  // namespace kclass
