#include "kclass/graph.hpp"

#include "kclass/error.hpp"
#include "kclass/smith.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace kclass {

namespace {

using Reach = std::vector<std::vector<bool>>;

// reach[u][v]: a path of positive length from u to v.
Reach reachability(const DirectedGraph& g) {
  const std::size_t n = g.size();
  Reach r(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) r[u][v] = g.adjacency(u, v) > 0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t u = 0; u < n; ++u)
      if (r[u][k])
        for (std::size_t v = 0; v < n; ++v)
          if (r[k][v]) r[u][v] = true;
  return r;
}

Integer out_degree(const DirectedGraph& g, std::size_t v) {
  Integer d = 0;
  for (std::size_t w = 0; w < g.size(); ++w) d += g.adjacency(v, w);
  return d;
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& subset) {
  std::vector<bool> in(n, false);
  for (std::size_t v : subset) in[v] = true;
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < n; ++v)
    if (!in[v]) out.push_back(v);
  return out;
}

ConeDescriptor cone_for(Simplicity s) {
  return s == Simplicity::af ? ConeDescriptor::standard_free() : ConeDescriptor::all_positive();
}

IntVector coordinates_in(const IntMatrix& basis, const IntVector& x) {
  auto c = solve_integer(basis, x);
  if (!c) throw Error("internal inconsistency: vector outside the K1 lattice");
  return *c;
}

}  // namespace

bool DirectedGraph::is_sink(std::size_t v) const {
  for (std::size_t w = 0; w < size(); ++w)
    if (adjacency(v, w) != 0) return false;
  return true;
}

void validate_graph(const DirectedGraph& g) {
  if (g.adjacency.rows() != g.size() || g.adjacency.cols() != g.size())
    throw InvalidInput("adjacency must be a square matrix matching the vertex list");
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (g.adjacency(i, j) < 0) throw InvalidInput("adjacency entries must be nonnegative");
  const std::set<std::string> names(g.vertices.begin(), g.vertices.end());
  if (names.size() != g.size()) throw InvalidInput("vertex names must be distinct");
}

DirectedGraph induced_subgraph(const DirectedGraph& g, const std::vector<std::size_t>& keep) {
  DirectedGraph out;
  out.adjacency = IntMatrix(keep.size(), keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    out.vertices.push_back(g.vertices[keep[i]]);
    for (std::size_t j = 0; j < keep.size(); ++j) out.adjacency(i, j) = g.adjacency(keep[i], keep[j]);
  }
  return out;
}

GraphKTheory graph_ktheory(const DirectedGraph& g) {
  validate_graph(g);
  GraphKTheory k;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (!g.is_sink(v)) k.regular.push_back(v);
  k.relations = IntMatrix(g.size(), k.regular.size());
  for (std::size_t j = 0; j < k.regular.size(); ++j) {
    const std::size_t v = k.regular[j];
    for (std::size_t w = 0; w < g.size(); ++w)
      k.relations(w, j) = g.adjacency(v, w) - (v == w ? 1 : 0);
  }
  const Presentation p = present_cokernel(k.relations);
  k.k0 = p.group;
  k.k0_section = p.section;
  k.vertex_class = GroupHom(FgAbelianGroup::free(g.size()), p.group, p.projection);
  k.k1_basis = integer_kernel(k.relations);
  k.k1 = FgAbelianGroup::free(k.k1_basis.cols());
  return k;
}

bool is_hereditary(const DirectedGraph& g, const std::vector<std::size_t>& subset) {
  std::vector<bool> in(g.size(), false);
  for (std::size_t v : subset) in[v] = true;
  for (std::size_t v : subset)
    for (std::size_t w = 0; w < g.size(); ++w)
      if (g.adjacency(v, w) > 0 && !in[w]) return false;
  return true;
}

bool is_saturated(const DirectedGraph& g, const std::vector<std::size_t>& subset) {
  std::vector<bool> in(g.size(), false);
  for (std::size_t v : subset) in[v] = true;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (in[v] || g.is_sink(v)) continue;
    bool leaves = false;
    for (std::size_t w = 0; w < g.size() && !leaves; ++w) leaves = g.adjacency(v, w) > 0 && !in[w];
    if (!leaves) return false;
  }
  return true;
}

std::vector<IdealDatum> hereditary_saturated_sets(const DirectedGraph& g) {
  validate_graph(g);
  const std::size_t n = g.size();
  if (n > kMaxEnumeratedVertices)
    throw InvalidInput("hereditary set enumeration is limited to " +
                       std::to_string(kMaxEnumeratedVertices) + " vertices");
  std::vector<std::uint32_t> out(n, 0);
  std::vector<bool> sink(n);
  for (std::size_t v = 0; v < n; ++v) {
    sink[v] = g.is_sink(v);
    for (std::size_t w = 0; w < n; ++w)
      if (g.adjacency(v, w) > 0) out[v] |= std::uint32_t{1} << w;
  }
  std::vector<IdealDatum> sets;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      const bool in = mask >> v & 1;
      if (in)
        ok = (out[v] & ~mask) == 0;
      else if (!sink[v])
        ok = (out[v] & ~mask) != 0;
    }
    if (!ok) continue;
    IdealDatum d{{}, true, true};
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1) d.subset.push_back(v);
    sets.push_back(std::move(d));
  }
  return sets;
}

std::vector<IdealDatum> nontrivial_hereditary_saturated_sets(const DirectedGraph& g) {
  std::vector<IdealDatum> out;
  for (auto& d : hereditary_saturated_sets(g))
    if (!d.subset.empty() && d.subset.size() != g.size()) out.push_back(std::move(d));
  return out;
}

bool has_condition_l(const DirectedGraph& g) {
  const Reach r = reachability(g);
  // A cycle without exit is a strongly connected component all of whose
  // vertices emit exactly one edge.
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!r[v][v]) continue;
    bool no_exit = true;
    for (std::size_t w = 0; w < g.size() && no_exit; ++w)
      if (r[v][w] && r[w][v]) no_exit = out_degree(g, w) == 1;
    if (no_exit) return false;
  }
  return true;
}

std::string to_string(Simplicity s) {
  switch (s) {
    case Simplicity::purely_infinite: return "purely_infinite";
    case Simplicity::af: return "af";
    case Simplicity::not_simple: return "not_simple";
    case Simplicity::unsupported: return "unsupported";
  }
  return "unsupported";
}

Simplicity classify_simple(const DirectedGraph& g) {
  validate_graph(g);
  if (g.size() == 0) return Simplicity::unsupported;
  if (!nontrivial_hereditary_saturated_sets(g).empty()) return Simplicity::not_simple;
  if (!has_condition_l(g)) return Simplicity::not_simple;
  const Reach r = reachability(g);
  for (std::size_t v = 0; v < g.size(); ++v)
    if (r[v][v]) return Simplicity::purely_infinite;
  return Simplicity::af;
}

OneIdealData one_ideal_data(const DirectedGraph& g) {
  const auto sets = nontrivial_hereditary_saturated_sets(g);
  if (sets.size() != 1)
    throw InvalidInput("graph must have exactly one nontrivial hereditary saturated set, found " +
                       std::to_string(sets.size()));
  OneIdealData d;
  d.ideal_vertices = sets.front().subset;
  d.ideal = induced_subgraph(g, d.ideal_vertices);
  d.quotient = induced_subgraph(g, complement(g.size(), d.ideal_vertices));
  d.ideal_kind = classify_simple(d.ideal);
  d.quotient_kind = classify_simple(d.quotient);
  auto require_simple = [](Simplicity s, const char* what) {
    if (s == Simplicity::not_simple)
      throw InvalidInput(std::string(what) + " graph is not simple");
    if (s == Simplicity::unsupported)
      throw Unsupported(std::string("cannot classify the ") + what + " graph");
  };
  require_simple(d.ideal_kind, "ideal");
  require_simple(d.quotient_kind, "quotient");
  return d;
}

SixTermInvariant one_ideal_invariant(const DirectedGraph& g) {
  const OneIdealData d = one_ideal_data(g);
  const std::vector<std::size_t>& h = d.ideal_vertices;
  const std::vector<std::size_t> q = complement(g.size(), h);
  const GraphKTheory kb = graph_ktheory(d.ideal), ke = graph_ktheory(g), ka = graph_ktheory(d.quotient);

  // position of each vertex of g among ke.regular
  std::vector<std::size_t> reg_pos(g.size(), g.size());
  for (std::size_t j = 0; j < ke.regular.size(); ++j) reg_pos[ke.regular[j]] = j;

  SixTermInvariant s = make_sixterm({kb.k0, ke.k0, ka.k0, kb.k1, ke.k1, ka.k1});

  IntMatrix m0(ke.k0.generator_count(), kb.k0.generator_count());
  for (std::size_t c = 0; c < m0.cols(); ++c) {
    IntVector lift(g.size(), Integer(0));
    for (std::size_t i = 0; i < h.size(); ++i) lift[h[i]] = kb.k0_section(i, c);
    m0.set_column(c, ke.vertex_class.apply(lift));
  }
  s.maps[0] = GroupHom(kb.k0, ke.k0, m0);

  IntMatrix m1(ka.k0.generator_count(), ke.k0.generator_count());
  for (std::size_t c = 0; c < m1.cols(); ++c) {
    IntVector restricted(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) restricted[i] = ke.k0_section(q[i], c);
    m1.set_column(c, ka.vertex_class.apply(restricted));
  }
  s.maps[1] = GroupHom(ke.k0, ka.k0, m1);

  IntMatrix m3(ke.k1.generator_count(), kb.k1.generator_count());
  for (std::size_t c = 0; c < m3.cols(); ++c) {
    IntVector x(ke.regular.size(), Integer(0));
    for (std::size_t j = 0; j < kb.regular.size(); ++j) x[reg_pos[h[kb.regular[j]]]] = kb.k1_basis(j, c);
    m3.set_column(c, coordinates_in(ke.k1_basis, x));
  }
  s.maps[3] = GroupHom(kb.k1, ke.k1, m3);

  IntMatrix m4(ka.k1.generator_count(), ke.k1.generator_count());
  for (std::size_t c = 0; c < m4.cols(); ++c) {
    IntVector x(ka.regular.size());
    for (std::size_t j = 0; j < ka.regular.size(); ++j) {
      const std::size_t v = q[ka.regular[j]];
      if (reg_pos[v] == g.size()) throw Error("internal inconsistency: quotient regular vertex is a sink");
      x[j] = ke.k1_basis(reg_pos[v], c);
    }
    m4.set_column(c, coordinates_in(ka.k1_basis, x));
  }
  s.maps[4] = GroupHom(ke.k1, ka.k1, m4);

  // index map: edges from regular quotient vertices into the ideal
  IntMatrix m5(kb.k0.generator_count(), ka.k1.generator_count());
  for (std::size_t c = 0; c < m5.cols(); ++c) {
    IntVector y(h.size(), Integer(0));
    for (std::size_t j = 0; j < ka.regular.size(); ++j) {
      const std::size_t v = q[ka.regular[j]];
      for (std::size_t i = 0; i < h.size(); ++i) y[i] += g.adjacency(v, h[i]) * ka.k1_basis(j, c);
    }
    m5.set_column(c, kb.vertex_class.apply(y));
  }
  s.maps[5] = GroupHom(ka.k1, kb.k0, m5);

  s.cone_b = cone_for(d.ideal_kind);
  s.cone_a = cone_for(d.quotient_kind);

  if (const auto v = validate_sixterm(s); !v.empty())
    throw Error(std::string("internal inconsistency: graph sequence fails exactness at ") +
                node_name(v.front().node) + ": " + v.front().message);
  return s;
}

IsoVerdict compare_graphs(const DirectedGraph& g1, const DirectedGraph& g2, std::size_t bound) {
  return decide_iso_one_ideal(one_ideal_invariant(g1), one_ideal_invariant(g2), bound);
}

}  // namespace kclass
