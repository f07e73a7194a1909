#include "kclass/continued_fraction.hpp"
#include "kclass/error.hpp"
#include "kclass/ext.hpp"
#include "kclass/json_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>

using namespace kclass;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvalid = 3;

struct Options {
  bool pretty = false;
  std::size_t bound = 0;  // 0: command default
};

std::size_t bound_or(const Options& o, std::size_t fallback) { return o.bound ? o.bound : fallback; }

Json verdict_json(const std::string& verdict) {
  Json out;
  out["verdict"] = verdict;
  return out;
}

Json snf_command(const std::string& file) {
  const Json j = read_json_file(file);
  const IntMatrix m = matrix_from_json(j.is_object() ? j.at("matrix") : j);
  Json out;
  out["matrix"] = matrix_to_json(m);
  out["smith"] = to_json(smith_normal_form(m));
  out["cokernel"] = to_json(group_from_matrix(m));
  return out;
}

Json ext_command(const std::string& a_file, const std::string& b_file) {
  const FgAbelianGroup a = group_from_json(read_json_file(a_file));
  const FgAbelianGroup b = group_from_json(read_json_file(b_file));
  Json out;
  out["A"] = to_json(a);
  out["B"] = to_json(b);
  out["ext"] = to_json(ext1(a, b));
  return out;
}

DirectedGraph load_graph(const std::string& file) { return graph_from_json(read_json_file(file)); }

Json graph_kth(const std::string& file) { return to_json(graph_ktheory(load_graph(file))); }

Json graph_ideals(const std::string& file) {
  const DirectedGraph g = load_graph(file);
  Json sets = Json::array();
  for (const IdealDatum& d : hereditary_saturated_sets(g)) sets.push_back(to_json(d, g));
  Json out;
  out["hereditary_saturated_sets"] = std::move(sets);
  out["nontrivial_count"] = nontrivial_hereditary_saturated_sets(g).size();
  out["simplicity"] = to_string(classify_simple(g));
  return out;
}

Json graph_invariant(const std::string& file) {
  const DirectedGraph g = load_graph(file);
  const OneIdealData d = one_ideal_data(g);
  const SixTermInvariant s = one_ideal_invariant(g);
  Json ideal = Json::array();
  for (std::size_t v : d.ideal_vertices) ideal.push_back(g.vertices[v]);
  Json out;
  out["ideal_vertices"] = std::move(ideal);
  out["ideal"] = to_string(d.ideal_kind);
  out["quotient"] = to_string(d.quotient_kind);
  out["invariant"] = to_json(s);
  out["violations"] = to_json(validate_sixterm(s));
  return out;
}

Json graph_compare(const std::string& f1, const std::string& f2, const Options& o) {
  return to_json(compare_graphs(load_graph(f1), load_graph(f2), bound_or(o, kDefaultSixTermBound)));
}

Json sixterm_check(const std::string& file) {
  const auto v = validate_sixterm(sixterm_from_json(read_json_file(file)));
  Json out;
  out["valid"] = v.empty();
  out["violations"] = to_json(v);
  return out;
}

Json sixterm_compare(const std::string& f1, const std::string& f2, const Options& o) {
  const SixTermInvariant s1 = sixterm_from_json(read_json_file(f1));
  const SixTermInvariant s2 = sixterm_from_json(read_json_file(f2));
  return to_json(decide_iso_one_ideal(s1, s2, bound_or(o, kDefaultSixTermBound)));
}

bool is_scaled(const Json& j) { return j.is_object() && j.contains("scale"); }

Json subst_compare_json(const Json& j1, const Json& j2, const Options& o) {
  const std::size_t bound = bound_or(o, kDefaultSubstitutionBound);
  if (is_scaled(j1) != is_scaled(j2))
    throw InvalidInput("cannot compare a scaled invariant with substitution data");
  if (is_scaled(j1)) return to_json(compare_scaled_invariants(scaled_from_json(j1), scaled_from_json(j2), bound));
  return to_json(
      compare_substitution_invariants(substitution_from_json(j1), substitution_from_json(j2), bound));
}

Json sturmian_compare(const std::string& alpha_text, const std::string& beta_text) {
  const QuadraticIrrational alpha = QuadraticIrrational::parse(alpha_text);
  const QuadraticIrrational beta = QuadraticIrrational::parse(beta_text);
  const auto w = mobius_equivalence(alpha, beta);
  Json out = verdict_json(to_string(w ? Verdict::isomorphic : Verdict::not_isomorphic));
  if (w) {
    out["witness"] = matrix_to_json(*w);
  } else {
    out["certificate"] = same_field(alpha, beta)
                             ? "continued fraction expansions have no common tail"
                             : "the numbers generate different quadratic fields";
  }
  return out;
}

int exit_code_for(const std::exception_ptr& e, Json& error) {
  try {
    std::rethrow_exception(e);
  } catch (const ParseError& x) {
    error["kind"] = "parse_error";
    error["message"] = x.what();
    return kExitParse;
  } catch (const InvalidInput& x) {
    error["kind"] = "invalid_input";
    error["message"] = x.what();
    return kExitInvalid;
  } catch (const Unsupported& x) {
    error["kind"] = "unsupported";
    error["message"] = x.what();
    return kExitInvalid;
  } catch (const std::exception& x) {
    error["kind"] = "internal_error";
    error["message"] = x.what();
    return kExitInternal;
  }
}

// One manifest entry: {"kind": "sixterm"|"graph"|"subst"|"sturmian", "left": ..., "right": ...}.
// File operands are paths relative to the manifest; sturmian operands are literals.
Json batch_item(const Json& item, const std::filesystem::path& base, const Options& o) {
  if (!item.is_object() || !item.contains("kind") || !item.contains("left") || !item.contains("right"))
    throw ParseError("manifest entries need \"kind\", \"left\" and \"right\"");
  const std::string kind = item["kind"].get<std::string>();
  auto path = [&](const char* key) {
    const Json& v = item[key];
    if (!v.is_string()) throw ParseError(std::string(key) + " must be a string");
    const std::filesystem::path p(v.get<std::string>());
    return (p.is_absolute() ? p : base / p).string();
  };
  if (kind == "sixterm") return sixterm_compare(path("left"), path("right"), o);
  if (kind == "graph") return graph_compare(path("left"), path("right"), o);
  if (kind == "subst") return subst_compare_json(read_json_file(path("left")), read_json_file(path("right")), o);
  if (kind == "sturmian") return sturmian_compare(item["left"].get<std::string>(), item["right"].get<std::string>());
  throw ParseError("unknown comparison kind \"" + kind + "\"");
}

std::pair<Json, int> batch_compare(const std::string& manifest, const Options& o) {
  const Json m = read_json_file(manifest);
  const Json& items = m.is_object() ? m.at("comparisons") : m;
  if (!items.is_array()) throw ParseError("manifest must be an array of comparisons");
  const std::filesystem::path base = std::filesystem::path(manifest).parent_path();
  Json results = Json::array();
  int code = kExitOk;
  for (const Json& item : items) {
    try {
      results.push_back(batch_item(item, base, o));
    } catch (...) {
      Json error;
      const int c = exit_code_for(std::current_exception(), error);
      if (code == kExitOk) code = c;
      Json r;
      r["error"] = std::move(error);
      results.push_back(std::move(r));
    }
  }
  Json out;
  out["results"] = std::move(results);
  return {out, code};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact K-theoretic classification invariants", "kclass"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--pretty", opt.pretty, "Indented, human-readable output");

  std::function<std::pair<Json, int>()> run;
  auto plain = [&](std::function<Json()> f) {
    run = [f] { return std::pair<Json, int>{f(), kExitOk}; };
  };
  std::string f1, f2;

  auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf->add_option("file", f1, "JSON matrix")->required();
  snf->callback([&] { plain([&] { return snf_command(f1); }); });

  auto* ext = app.add_subcommand("ext", "Ext^1(A, B) of two finitely generated abelian groups");
  ext->add_option("a", f1, "JSON group A")->required();
  ext->add_option("b", f2, "JSON group B")->required();
  ext->callback([&] { plain([&] { return ext_command(f1, f2); }); });

  auto* graph = app.add_subcommand("graph", "Directed graph algebras");
  graph->require_subcommand(1);
  auto* kth = graph->add_subcommand("kth", "K0 and K1 of the graph algebra");
  kth->add_option("file", f1)->required();
  kth->callback([&] { plain([&] { return graph_kth(f1); }); });
  auto* ideals = graph->add_subcommand("ideals", "Hereditary saturated vertex sets");
  ideals->add_option("file", f1)->required();
  ideals->callback([&] { plain([&] { return graph_ideals(f1); }); });
  auto* inv = graph->add_subcommand("invariant", "Six-term invariant of a one-ideal graph");
  inv->add_option("file", f1)->required();
  inv->callback([&] { plain([&] { return graph_invariant(f1); }); });
  auto* gcmp = graph->add_subcommand("compare", "Compare two one-ideal graphs");
  gcmp->add_option("file1", f1)->required();
  gcmp->add_option("file2", f2)->required();
  gcmp->add_option("--bound", opt.bound, "Search bound");
  gcmp->callback([&] { plain([&] { return graph_compare(f1, f2, opt); }); });

  auto* six = app.add_subcommand("sixterm", "Six-term exact sequences");
  six->require_subcommand(1);
  auto* check = six->add_subcommand("check", "Validate a six-term sequence");
  check->add_option("file", f1)->required();
  check->callback([&] { plain([&] { return sixterm_check(f1); }); });
  auto* scmp = six->add_subcommand("compare", "Decide isomorphism of two sequences");
  scmp->add_option("file1", f1)->required();
  scmp->add_option("file2", f2)->required();
  scmp->add_option("--bound", opt.bound, "Search bound");
  scmp->callback([&] { plain([&] { return sixterm_compare(f1, f2, opt); }); });

  auto* subst = app.add_subcommand("subst", "Substitution invariants");
  subst->require_subcommand(1);
  auto* subcmp = subst->add_subcommand("compare", "Compare substitution data or scaled invariants");
  subcmp->add_option("file1", f1)->required();
  subcmp->add_option("file2", f2)->required();
  subcmp->add_option("--bound", opt.bound, "Search bound");
  subcmp->callback([&] {
    plain([&] { return subst_compare_json(read_json_file(f1), read_json_file(f2), opt); });
  });

  auto* sturm = app.add_subcommand("sturmian", "Sturmian ordered groups Z + alpha Z");
  sturm->require_subcommand(1);
  auto* stcmp = sturm->add_subcommand("compare", "Compare two quadratic irrationals");
  stcmp->add_option("alpha", f1, "(a+b*sqrt(d))/c")->required();
  stcmp->add_option("beta", f2, "(a+b*sqrt(d))/c")->required();
  stcmp->callback([&] { plain([&] { return sturmian_compare(f1, f2); }); });

  auto* batch = app.add_subcommand("compare", "Run comparisons listed in a manifest");
  batch->add_option("--batch", f1, "JSON manifest")->required();
  batch->add_option("--bound", opt.bound, "Search bound");
  batch->callback([&] { run = [&] { return batch_compare(f1, opt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  Json out;
  int code = kExitOk;
  try {
    std::tie(out, code) = run();
  } catch (...) {
    Json error;
    code = exit_code_for(std::current_exception(), error);
    out = Json::object();
    out["error"] = error;
    std::cerr << "kclass: " << error["message"].get<std::string>() << '\n';
  }
  std::cout << (opt.pretty ? out.dump(2) : out.dump()) << '\n';
  return code;
}
