#pragma once

#include "kclass/graph.hpp"
#include "kclass/six_term.hpp"
#include "kclass/smith.hpp"
#include "kclass/substitution.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace kclass {

using Json = nlohmann::ordered_json;

/// Throws ParseError on malformed text.
Json parse_json_text(const std::string& text);
/// Reads and parses a file; throws ParseError if it cannot be read.
Json read_json_file(const std::string& path);

// Integers are JSON numbers when they fit in 64 bits and decimal strings
// otherwise; both forms are accepted on input. Shape errors raise
// ParseError, well-formed but invalid data raises InvalidInput.

Json to_json(const Integer& x);
Integer integer_from_json(const Json& j);

Json to_json(const IntVector& v);
IntVector vector_from_json(const Json& j);

/// Array of rows. An empty array reads as a matrix with zero rows and
/// `cols_if_empty` columns.
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j, std::size_t cols_if_empty = 0);

/// {"free_rank": r, "torsion": [d1, d2, ...]} with d1 | d2 | ...; input may
/// instead give {"orders": [...]} with arbitrary cyclic orders (0 = Z).
Json to_json(const FgAbelianGroup& g);
FgAbelianGroup group_from_json(const Json& j);

/// {"kind": "all_positive"} or {"kind": "stationary_dg", "matrix": [[...]]}.
Json to_json(const ConeDescriptor& c);
ConeDescriptor cone_from_json(const Json& j);

/// {"nodes": [...], "groups": [...], "maps": [...], "cones": {...}} with
/// nodes in arrow order K0B, K0E, K0A, K1B, K1E, K1A and maps[k] from node
/// k to node k+1 (mod 6) in canonical generator coordinates; a null map is
/// zero.
Json to_json(const SixTermInvariant& s);
SixTermInvariant sixterm_from_json(const Json& j);

Json to_json(const SixTermMorphism& w);
Json to_json(const std::vector<Violation>& violations);

/// {"vertices": [...], "adjacency": [[...]]}.
Json to_json(const DirectedGraph& g);
DirectedGraph graph_from_json(const Json& j);

/// {"n": n, "p": [...], "A": [[...]], "A_tilde": [[...]]}.
Json to_json(const SubstitutionInvariant& s);
SubstitutionInvariant substitution_from_json(const Json& j);

/// {"stage": k, "vector": [...]}; a bare array means stage 0 and the
/// number 0 means the zero element.
Json to_json(const DGElement& x);
DGElement dg_element_from_json(const Json& j, std::size_t size);

/// {"matrix": [[...]], "scale": [element, ...]}.
Json to_json(const ScaledInvariant& s);
ScaledInvariant scaled_from_json(const Json& j);

Json to_json(const SmithDecomposition& s);
Json to_json(const GraphKTheory& k);
Json to_json(const IdealDatum& d, const DirectedGraph& g);

/// {"verdict": ..., then "witness" (isomorphic), "certificate"
/// (not_isomorphic) or "reason" (unknown), and "explored"}.
Json to_json(const IsoVerdict& v);
Json to_json(const DGVerdict& v);

}  // namespace kclass
