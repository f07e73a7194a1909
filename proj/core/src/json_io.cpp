#include "kclass/json_io.hpp"

#include "kclass/error.hpp"

#include <cstdint>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>

namespace kclass {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object with key \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key \"") + key + "\"");
  return *it;
}

const Json& array_of(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  return j;
}

std::size_t size_from_json(const Json& j, const char* what) {
  const Integer x = integer_from_json(j);
  if (x < 0 || !x.fits_ulong_p()) throw ParseError(std::string(what) + " must be a small nonnegative integer");
  return x.get_ui();
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_json_text(os.str());
}

Json to_json(const Integer& x) {
  if (x.fits_slong_p() && sizeof(long) == sizeof(std::int64_t))
    return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    static const std::regex decimal("-?[0-9]+");
    const std::string s = j.get<std::string>();
    if (!std::regex_match(s, decimal)) throw ParseError("not a decimal integer: \"" + s + "\"");
    return Integer(s);
  }
  throw ParseError("expected an integer, got " + j.dump());
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const Integer& x : v) out.push_back(to_json(x));
  return out;
}

IntVector vector_from_json(const Json& j) {
  IntVector v;
  for (const Json& x : array_of(j, "vector")) v.push_back(integer_from_json(x));
  return v;
}

Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(i, c)));
    out.push_back(std::move(row));
  }
  return out;
}

IntMatrix matrix_from_json(const Json& j, std::size_t cols_if_empty) {
  std::vector<IntVector> rows;
  for (const Json& r : array_of(j, "matrix")) rows.push_back(vector_from_json(r));
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw ParseError("matrix rows have different lengths");
  return IntMatrix::from_rows(rows, cols_if_empty);
}

Json to_json(const FgAbelianGroup& g) {
  Json out;
  out["free_rank"] = g.free_rank();
  out["torsion"] = to_json(g.torsion());
  return out;
}

FgAbelianGroup group_from_json(const Json& j) {
  if (j.is_object() && j.contains("orders")) return FgAbelianGroup::from_cyclic_orders(vector_from_json(j["orders"]));
  const std::size_t rank = size_from_json(member(j, "free_rank"), "free_rank");
  const IntVector torsion = j.contains("torsion") ? vector_from_json(j["torsion"]) : IntVector{};
  return FgAbelianGroup::canonical(rank, torsion);
}

Json to_json(const ConeDescriptor& c) {
  Json out;
  out["kind"] = to_string(c.kind);
  if (c.kind == ConeKind::stationary_dg) out["matrix"] = matrix_to_json(c.matrix);
  return out;
}

ConeDescriptor cone_from_json(const Json& j) {
  const Json& kind = member(j, "kind");
  if (!kind.is_string()) throw ParseError("cone kind must be a string");
  ConeDescriptor c;
  c.kind = cone_kind_from_string(kind.get<std::string>());
  if (c.kind == ConeKind::stationary_dg) c.matrix = matrix_from_json(member(j, "matrix"));
  return c;
}

Json to_json(const SixTermInvariant& s) {
  Json out;
  Json nodes = Json::array(), groups = Json::array(), maps = Json::array();
  for (std::size_t k = 0; k < 6; ++k) {
    nodes.push_back(node_name(k));
    groups.push_back(to_json(s.groups[k]));
    maps.push_back(matrix_to_json(s.maps[k].matrix()));
  }
  out["nodes"] = std::move(nodes);
  out["groups"] = std::move(groups);
  out["maps"] = std::move(maps);
  Json cones;
  cones["K0B"] = to_json(s.cone_b);
  cones["K0A"] = to_json(s.cone_a);
  if (s.cone_e) cones["K0E"] = to_json(*s.cone_e);
  out["cones"] = std::move(cones);
  return out;
}

SixTermInvariant sixterm_from_json(const Json& j) {
  if (j.is_object() && j.contains("nodes")) {
    const Json& nodes = array_of(j["nodes"], "nodes");
    bool ok = nodes.size() == 6;
    for (std::size_t k = 0; ok && k < 6; ++k) ok = nodes[k] == node_name(k);
    if (!ok)
      throw ParseError("nodes must be [\"K0B\",\"K0E\",\"K0A\",\"K1B\",\"K1E\",\"K1A\"] (arrow order)");
  }
  const Json& groups = array_of(member(j, "groups"), "groups");
  const Json& maps = array_of(member(j, "maps"), "maps");
  if (groups.size() != 6 || maps.size() != 6) throw ParseError("a six-term sequence needs 6 groups and 6 maps");
  std::array<FgAbelianGroup, 6> g;
  for (std::size_t k = 0; k < 6; ++k) g[k] = group_from_json(groups[k]);
  SixTermInvariant s = make_sixterm(g);
  for (std::size_t k = 0; k < 6; ++k) {
    if (maps[k].is_null()) continue;
    const FgAbelianGroup& from = g[k];
    const FgAbelianGroup& to = g[(k + 1) % 6];
    const IntMatrix m = matrix_from_json(maps[k], from.generator_count());
    const bool no_entries = m.rows() * m.cols() == 0;
    if (no_entries && to.generator_count() * from.generator_count() == 0) continue;
    if (m.rows() != to.generator_count() || m.cols() != from.generator_count())
      throw InvalidInput(std::string("map ") + node_name(k) + "->" + node_name((k + 1) % 6) + " must be " +
                         std::to_string(to.generator_count()) + "x" + std::to_string(from.generator_count()));
    s.maps[k] = GroupHom(from, to, m);
  }
  if (j.contains("cones")) {
    const Json& cones = j["cones"];
    if (!cones.is_object()) throw ParseError("cones must be an object");
    for (const auto& [key, value] : cones.items()) {
      if (key == "K0B")
        s.cone_b = cone_from_json(value);
      else if (key == "K0A")
        s.cone_a = cone_from_json(value);
      else if (key == "K0E")
        s.cone_e = cone_from_json(value);
      else
        throw ParseError("cones are only recognized on K0B, K0E and K0A, not " + key);
    }
  }
  return s;
}

Json to_json(const SixTermMorphism& w) {
  Json out = Json::array();
  for (const GroupHom& f : w) out.push_back(matrix_to_json(f.matrix()));
  return out;
}

Json to_json(const std::vector<Violation>& violations) {
  Json out = Json::array();
  for (const Violation& v : violations) {
    Json x;
    x["node"] = node_name(v.node);
    x["message"] = v.message;
    out.push_back(std::move(x));
  }
  return out;
}

Json to_json(const DirectedGraph& g) {
  Json out;
  out["vertices"] = g.vertices;
  out["adjacency"] = matrix_to_json(g.adjacency);
  return out;
}

DirectedGraph graph_from_json(const Json& j) {
  DirectedGraph g;
  for (const Json& v : array_of(member(j, "vertices"), "vertices")) {
    if (!v.is_string()) throw ParseError("vertex names must be strings");
    g.vertices.push_back(v.get<std::string>());
  }
  g.adjacency = matrix_from_json(member(j, "adjacency"), 0);
  validate_graph(g);
  return g;
}

Json to_json(const SubstitutionInvariant& s) {
  Json out;
  out["n"] = s.n;
  out["p"] = to_json(s.p);
  out["A"] = matrix_to_json(s.a);
  out["A_tilde"] = matrix_to_json(s.a_tilde);
  return out;
}

SubstitutionInvariant substitution_from_json(const Json& j) {
  SubstitutionInvariant s;
  s.n = size_from_json(member(j, "n"), "n");
  s.p = vector_from_json(member(j, "p"));
  s.a = matrix_from_json(member(j, "A"));
  s.a_tilde = matrix_from_json(member(j, "A_tilde"));
  validate_substitution(s);
  return s;
}

Json to_json(const DGElement& x) {
  Json out;
  out["stage"] = x.stage;
  out["vector"] = to_json(x.vector);
  return out;
}

DGElement dg_element_from_json(const Json& j, std::size_t size) {
  DGElement x;
  if (j.is_number_integer() || j.is_string()) {
    if (integer_from_json(j) != 0) throw ParseError("only 0 may abbreviate a dimension group element");
    x.vector.assign(size, Integer(0));
    return x;
  }
  if (j.is_array()) {
    x.vector = vector_from_json(j);
  } else {
    x.stage = size_from_json(member(j, "stage"), "stage");
    x.vector = vector_from_json(member(j, "vector"));
  }
  if (x.vector.size() != size)
    throw InvalidInput("dimension group element has length " + std::to_string(x.vector.size()) +
                       ", expected " + std::to_string(size));
  return x;
}

Json to_json(const ScaledInvariant& s) {
  Json out;
  out["matrix"] = matrix_to_json(s.matrix);
  Json scale = Json::array();
  for (const DGElement& x : s.scale) scale.push_back(to_json(x));
  out["scale"] = std::move(scale);
  return out;
}

ScaledInvariant scaled_from_json(const Json& j) {
  ScaledInvariant s;
  s.matrix = matrix_from_json(member(j, "matrix"));
  if (s.matrix.rows() == 0 || s.matrix.rows() != s.matrix.cols())
    throw InvalidInput("scaled invariant matrix must be square and nonempty");
  for (const Json& x : array_of(member(j, "scale"), "scale"))
    s.scale.push_back(dg_element_from_json(x, s.matrix.rows()));
  return s;
}

Json to_json(const SmithDecomposition& s) {
  Json out;
  out["invariant_factors"] = to_json(s.invariant_factors());
  out["rank"] = s.rank;
  out["U"] = matrix_to_json(s.u);
  out["D"] = matrix_to_json(s.d);
  out["V"] = matrix_to_json(s.v);
  return out;
}

Json to_json(const GraphKTheory& k) {
  Json out;
  out["K0"] = to_json(k.k0);
  out["K1"] = to_json(k.k1);
  out["vertex_classes"] = matrix_to_json(k.vertex_class.matrix());
  return out;
}

Json to_json(const IdealDatum& d, const DirectedGraph& g) {
  Json out;
  Json names = Json::array();
  for (std::size_t v : d.subset) names.push_back(g.vertices[v]);
  out["vertices"] = std::move(names);
  out["hereditary"] = d.hereditary;
  out["saturated"] = d.saturated;
  out["proper"] = !d.subset.empty() && d.subset.size() != g.size();
  return out;
}

namespace {

void attach_reason(Json& out, Verdict v, const std::string& reason) {
  switch (v) {
    case Verdict::isomorphic: out["method"] = reason; break;
    case Verdict::not_isomorphic: out["certificate"] = reason; break;
    case Verdict::unknown: out["reason"] = reason; break;
  }
}

}  // namespace

Json to_json(const IsoVerdict& v) {
  Json out;
  out["verdict"] = to_string(v.verdict);
  if (v.verdict == Verdict::isomorphic && v.witness) out["witness"] = to_json(*v.witness);
  attach_reason(out, v.verdict, v.reason);
  out["explored"] = v.explored;
  return out;
}

Json to_json(const DGVerdict& v) {
  Json out;
  out["verdict"] = to_string(v.verdict);
  if (v.verdict == Verdict::isomorphic) {
    Json w;
    w["permutation"] = v.permutation;
    if (v.order_isomorphism) w["order_isomorphism"] = matrix_to_json(*v.order_isomorphism);
    out["witness"] = std::move(w);
  }
  attach_reason(out, v.verdict, v.reason);
  return out;
}

}  // namespace kclass
