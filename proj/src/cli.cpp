#include "cmg/cli.hpp"

#include <algorithm>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "acceptance/acceptance.hpp"
#include "cmg/bounds.hpp"
#include "cmg/constructions.hpp"
#include "cmg/core.hpp"
#include "cmg/decomposition.hpp"
#include "cmg/io.hpp"
#include "cmg/solver.hpp"
#include "cmg/targets.hpp"

namespace cmg::cli {

namespace {

using nlohmann::json;

class Session {
public:
  Session(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

  bool records = false;
  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

  void emit(const json& record) { out_ << record.dump() << '\n'; }

  MixedGraph graph(const std::string& path) {
    if (path.empty() || path == "-") return read_graph(take_stdin(), "<stdin>");
    return read_graph_file(path);
  }

  GraphDocument sidecar(const std::string& path) {
    if (path == "-") return parse_sidecar(take_stdin(), "<stdin>");
    return read_sidecar_file(path);
  }

private:
  std::istream& take_stdin() {
    if (stdin_used_) throw InputError("standard input can only be read once");
    stdin_used_ = true;
    return in_;
  }

  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  bool stdin_used_ = false;
};

std::string big(const BigInt& x) { return x.str(); }

const char* status_name(SearchStatus s) {
  return s == SearchStatus::Exact ? "exact" : "unknown-in-budget";
}

template <typename T>
std::string spaced(const std::vector<T>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? " " : "") << xs[i];
  return os.str();
}

PropertySpec property_from(int t, const std::vector<std::int64_t>& g) {
  PropertySpec spec{t, g};
  if (static_cast<int>(g.size()) != t + 1) {
    throw InputError("--g needs t+1 values g(0) .. g(t)");
  }
  check_property_spec(spec);
  return spec;
}

json witness_json(const QWitness& w) {
  json kinds = json::array();
  for (const auto& k : w.kinds) kinds.push_back(to_string(k));
  return json{{"j", w.j}, {"tuple", w.tuple}, {"kinds", kinds}, {"count", w.count},
              {"required", w.required}};
}

json step_json(const GreedyStep& s) {
  json kinds = json::array();
  for (const auto& k : s.query.kinds) kinds.push_back(to_string(k));
  return json{{"vertex", s.vertex}, {"images", s.query.tuple}, {"kinds", kinds},
              {"candidates", s.candidates.size()}, {"blocked", s.blocked}, {"image", s.image}};
}

// ---------------------------------------------------------------- commands

int cmd_chi(Session& s, const std::string& file, bool lower_only, const std::string& check,
            std::uint64_t budget) {
  const auto g = s.graph(file);
  if (!check.empty()) {
    const auto doc = s.sidecar(check);
    const auto labels = coloring_from_records(doc, g.order());
    const auto partition = partition_from_labels(labels);
    const auto bad = check_partition(g, partition);
    if (s.records) {
      json r{{"record", "partition-check"}, {"ok", !bad}, {"blocks", partition.block_count}};
      if (bad) r["violation"] = to_string(*bad);
      s.emit(r);
    } else if (bad) {
      s.out() << "partition invalid: " << to_string(*bad) << '\n';
    } else {
      s.out() << "partition ok blocks " << partition.block_count << '\n';
    }
    return bad ? kViolated : kOk;
  }
  if (lower_only) {
    const auto clique = special_clique(g);
    const int lower = g.order() == 0 ? 0 : std::max<int>(1, static_cast<int>(clique.size()));
    if (s.records) {
      s.emit(json{{"record", "chi-lower"}, {"lower", lower}, {"clique", clique}});
    } else {
      s.out() << "lower " << lower << '\n' << "clique " << spaced(clique) << '\n';
    }
    return kOk;
  }
  ChromaticOptions options;
  options.node_budget = budget;
  const auto result = chromatic_number(g, options);
  if (s.records) {
    s.emit(json{{"record", "chi"},
                {"status", status_name(result.status)},
                {"chi", result.exact() ? json(result.value()) : json(nullptr)},
                {"lower", result.lower},
                {"upper", result.upper},
                {"nodes", result.nodes},
                {"clique", result.clique},
                {"partition", result.witness.block_of}});
  } else {
    if (result.exact()) {
      s.out() << "# chi " << result.value() << '\n';
    } else {
      s.out() << "# chi unknown, bounds " << result.lower << " " << result.upper << '\n';
    }
    s.out() << "# status " << status_name(result.status) << " nodes " << result.nodes << '\n';
    s.out() << "# clique " << spaced(result.clique) << '\n';
    write_coloring(s.out(), result.witness.block_of);
  }
  return result.exact() ? kOk : kBudget;
}

int cmd_hom(Session& s, const std::string& src, const std::string& tgt, const std::string& check,
            std::uint64_t budget) {
  const auto g = s.graph(src);
  const auto h = s.graph(tgt);
  if (!check.empty()) {
    const auto doc = s.sidecar(check);
    const auto map = map_from_records(doc, g.order());
    const auto bad = check_homomorphism(g, h, map);
    if (s.records) {
      json r{{"record", "hom-check"}, {"ok", !bad}};
      if (bad) r["violation"] = to_string(*bad);
      s.emit(r);
    } else {
      s.out() << (bad ? "hom invalid: " + to_string(*bad) : std::string("hom ok")) << '\n';
    }
    return bad ? kViolated : kOk;
  }
  const auto result = find_homomorphism(g, h, budget);
  if (s.records) {
    json r{{"record", "hom"}, {"status", status_name(result.status)}, {"found", result.hom.has_value()},
           {"nodes", result.nodes}};
    if (result.hom) r["map"] = result.hom->map;
    s.emit(r);
  } else if (result.hom) {
    s.out() << "# hom found nodes " << result.nodes << '\n';
    write_map(s.out(), result.hom->map);
  } else if (result.status == SearchStatus::Exact) {
    s.out() << "# hom none nodes " << result.nodes << '\n';
  } else {
    s.out() << "# hom unknown, budget exhausted after " << result.nodes << " nodes\n";
  }
  if (result.hom) return kOk;
  return result.status == SearchStatus::Exact ? kViolated : kBudget;
}

int cmd_arb(Session& s, const std::string& file, const std::string& check, int subset_limit) {
  const auto g = s.graph(file);
  if (!check.empty()) {
    const auto doc = s.sidecar(check);
    const auto fd = decomposition_from_records(g, doc.forests);
    const auto bad = check_forest_decomposition(g, fd);
    if (s.records) {
      json r{{"record", "forest-check"}, {"ok", !bad}, {"forests", fd.forest_count}};
      if (bad) r["violation"] = *bad;
      s.emit(r);
    } else {
      s.out() << (bad ? "decomposition invalid: " + *bad
                      : "decomposition ok forests " + std::to_string(fd.forest_count))
              << '\n';
    }
    return bad ? kViolated : kOk;
  }
  const auto exact = nash_williams_density(g, subset_limit);
  const auto fd = greedy_forests(g);
  if (s.records) {
    json r{{"record", "arb"}, {"exact", exact.has_value()}, {"greedy_forests", fd.forest_count}};
    if (exact) {
      r["arb"] = exact->arboricity;
      r["subgraph"] = exact->subgraph;
      r["subgraph_edges"] = exact->edges;
    }
    json forests = json::array();
    for (const auto& f : fd.records()) forests.push_back({f.u, f.v, f.forest});
    r["forests"] = forests;
    s.emit(r);
  } else {
    if (exact) {
      s.out() << "# arb " << exact->arboricity << " exact\n";
      s.out() << "# densest " << spaced(exact->subgraph) << " edges " << exact->edges << '\n';
    } else {
      s.out() << "# arb <= " << fd.forest_count << " (order above subset limit " << subset_limit
              << ", exact unavailable)\n";
    }
    s.out() << "# greedy forests " << fd.forest_count << '\n';
    const auto records = fd.records();
    write_forests(s.out(), records);
  }
  return kOk;
}

int cmd_acyclic(Session& s, const std::string& file, const std::string& check, std::uint64_t budget) {
  const auto g = s.graph(file);
  if (!check.empty()) {
    const auto doc = s.sidecar(check);
    const auto colors = coloring_from_records(doc, g.order());
    const auto bad = check_acyclic_coloring(g, colors);
    const int used = colors.empty() ? 0 : 1 + *std::max_element(colors.begin(), colors.end());
    if (s.records) {
      json r{{"record", "acyclic-check"}, {"ok", !bad}, {"palette", used}};
      if (bad) r["violation"] = to_string(*bad);
      s.emit(r);
    } else {
      s.out() << (bad ? "coloring invalid: " + to_string(*bad)
                      : "acyclic coloring ok palette " + std::to_string(used))
              << '\n';
    }
    return bad ? kViolated : kOk;
  }
  const auto result = acyclic_chromatic_number(g, budget);
  if (s.records) {
    s.emit(json{{"record", "acyclic"},
                {"status", status_name(result.status)},
                {"chi_a", result.exact() ? json(result.upper) : json(nullptr)},
                {"lower", result.lower},
                {"upper", result.upper},
                {"nodes", result.nodes},
                {"colors", result.witness.colors}});
  } else {
    if (result.exact()) {
      s.out() << "# acyclic " << result.upper << '\n';
    } else {
      s.out() << "# acyclic unknown, bounds " << result.lower << " " << result.upper << '\n';
    }
    write_coloring(s.out(), result.witness.colors);
  }
  return result.exact() ? kOk : kBudget;
}

void write_target(Session& s, const MixedGraph& g, const std::string& record, std::uint64_t seed,
                  json extra = json::object()) {
  if (s.records) {
    json r{{"record", record}, {"seed", seed}, {"order", g.order()}, {"graph", graph_to_string(g)}};
    r.update(extra);
    s.emit(r);
    return;
  }
  WriteOptions options;
  options.seed = seed;
  write_graph(s.out(), g, options);
}

ForestDecomposition forests_for(Session& s, const MixedGraph& g, const std::string& path) {
  if (path.empty()) return greedy_forests(g);
  const auto doc = s.sidecar(path);
  auto fd = decomposition_from_records(g, doc.forests);
  if (const auto bad = check_forest_decomposition(g, fd)) {
    throw InputError("forest decomposition invalid: " + *bad);
  }
  return fd;
}

int cmd_digits(Session& s, const std::string& file, const std::string& forests, int layer,
               int arcs, int edges) {
  const auto g = s.graph(file);
  const ColorSignature sig(arcs, edges);
  const auto fd = forests_for(s, g, forests);
  const auto layers = digit_graphs(g, fd, sig);
  if (layer >= 0) {
    if (layer >= static_cast<int>(layers.layers.size())) {
      throw InputError("--layer out of range, there are " + std::to_string(layers.layers.size()));
    }
    const auto& h = layers.layers[static_cast<std::size_t>(layer)];
    if (s.records) {
      s.emit(json{{"record", "digit-layer"}, {"layer", layer}, {"graph", graph_to_string(h)}});
    } else {
      write_graph(s.out(), h);
    }
    return kOk;
  }
  if (s.records) {
    s.emit(json{{"record", "digits"}, {"digits", layers.digits}, {"forests", fd.forest_count},
                {"layers", layers.layers.size()}, {"vertex_order", layers.vertex_order}});
  } else {
    s.out() << "digits " << layers.digits << " forests " << fd.forest_count << " layers "
            << layers.layers.size() << '\n';
    s.out() << "vertex-order " << spaced(layers.vertex_order) << '\n';
  }
  return kOk;
}

int cmd_pipeline(Session& s, const std::string& file, const std::string& forests, int arcs,
                 int edges, std::uint64_t budget) {
  const auto g = s.graph(file);
  const ColorSignature sig(arcs, edges);
  const auto fd = forests_for(s, g, forests);
  const auto result = acyclic_from_homomorphisms(g, fd, sig, budget);
  const auto bad = check_acyclic_coloring(g, result.coloring.colors);
  if (s.records) {
    s.emit(json{{"record", "acyclic-pipeline"},
                {"status", status_name(result.status)},
                {"forests", fd.forest_count},
                {"digits", result.layers.digits},
                {"layer_chi", result.layer_chi},
                {"k", result.k},
                {"palette", result.coloring.palette},
                {"palette_bound", big(result.palette_bound)},
                {"acyclic", !bad},
                {"colors", result.coloring.colors}});
  } else {
    s.out() << "# forests " << fd.forest_count << " digits " << result.layers.digits << '\n';
    s.out() << "# layer-chi " << spaced(result.layer_chi) << " (" << status_name(result.status)
            << ")\n";
    s.out() << "# palette " << result.coloring.palette << " bound " << big(result.palette_bound)
            << '\n';
    s.out() << "# acyclic " << (bad ? "no: " + to_string(*bad) : std::string("yes")) << '\n';
    write_coloring(s.out(), result.coloring.colors);
  }
  if (bad) return kViolated;
  return result.status == SearchStatus::Exact ? kOk : kBudget;
}

int cmd_check_q(Session& s, const std::string& file, const PropertySpec& spec) {
  const auto g = s.graph(file);
  const auto w = check_property_q(g, spec);
  if (s.records) {
    json r{{"record", "check-q"}, {"ok", !w}};
    if (w) r["witness"] = witness_json(*w);
    s.emit(r);
  } else if (w) {
    s.out() << "property violated: " << to_string(*w) << '\n';
  } else {
    s.out() << "property holds\n";
  }
  return w ? kViolated : kOk;
}

int cmd_search_q(Session& s, const ColorSignature& sig, Vertex order, const PropertySpec& spec,
                 int attempts, std::uint64_t seed) {
  const auto result = search_q_target(sig, order, spec, attempts, seed);
  if (!result.target) {
    if (s.records) {
      s.emit(json{{"record", "search-q"}, {"found", false}, {"seed", seed}, {"attempts", attempts}});
    } else {
      s.out() << "# exhausted " << attempts << " attempts from seed " << seed << '\n';
    }
    return kViolated;
  }
  if (s.records) {
    write_target(s, result.target->graph, "search-q", result.target->seed,
                 json{{"found", true}, {"base_seed", seed}, {"attempt", result.attempt}});
  } else {
    s.out() << "# found at attempt " << result.attempt << " of search seed " << seed << '\n';
    write_target(s, result.target->graph, "search-q", result.target->seed);
  }
  return kOk;
}

int report_greedy_failure(Session& s, const GreedyFailure& f, const char* record) {
  if (s.records) {
    s.emit(json{{"record", record}, {"ok", false}, {"step", f.step}, {"failure", step_json(f.at)},
                {"message", f.message()}});
  } else {
    s.out() << f.message() << '\n';
  }
  return kViolated;
}

int cmd_greedy(Session& s, const std::string& src, const std::string& tgt, bool trace) {
  const auto g = s.graph(src);
  const auto h = s.graph(tgt);
  const auto result = greedy_homomorphism(g, h);
  if (!result.hom) return report_greedy_failure(s, *result.failure, "greedy-hom");
  if (s.records) {
    json r{{"record", "greedy-hom"}, {"ok", true}, {"degeneracy", result.degeneracy},
           {"max_degree", result.max_degree}, {"order", result.order}, {"map", result.hom->map}};
    if (trace) {
      json steps = json::array();
      for (const auto& st : result.trace) steps.push_back(step_json(st));
      r["trace"] = steps;
    }
    s.emit(r);
  } else {
    s.out() << "# greedy hom found, degeneracy " << result.degeneracy << " max degree "
            << result.max_degree << '\n';
    if (trace) {
      for (const auto& st : result.trace) {
        s.out() << "# step v=" << st.vertex << " images {" << spaced(st.query.tuple) << "} |D|="
                << st.candidates.size() << " B={" << spaced(st.blocked) << "} -> " << st.image
                << '\n';
      }
    }
    write_map(s.out(), result.hom->map);
  }
  return kOk;
}

int cmd_extend(Session& s, const std::string& src, const std::string& tgt) {
  const auto g = s.graph(src);
  const auto h = s.graph(tgt);
  const auto result = extend_regular(g, h);
  if (!result.target) return report_greedy_failure(s, *result.failure, "extend-regular");
  if (s.records) {
    s.emit(json{{"record", "extend-regular"}, {"ok", true},
                {"removed", {result.removed_u, result.removed_v}},
                {"target_order", result.target->order()}, {"map", result.hom->map},
                {"graph", graph_to_string(*result.target)}});
  } else {
    WriteOptions options;
    options.header_comments = {"extended target of order " + std::to_string(result.target->order()) +
                               ", removed edge " + std::to_string(result.removed_u) + " " +
                               std::to_string(result.removed_v)};
    write_graph(s.out(), *result.target, options);
    write_map(s.out(), result.hom->map);
  }
  return kOk;
}

int print_value(Session& s, const std::string& name, const std::string& value, json params) {
  if (s.records) {
    s.emit(json{{"record", "bound"}, {"name", name}, {"params", params}, {"value", value}});
  } else {
    s.out() << value << '\n';
  }
  return kOk;
}

int cmd_degree(Session& s, int delta, int p) {
  const auto b = degree_bounds(delta, p);
  if (s.records) {
    json r{{"record", "bound"}, {"name", "degree"}, {"params", {delta, p}},
           {"lower_ceil", big(b.lower_ceil)}, {"lower_real", b.lower_real}};
    r["lower_exact"] = b.lower_exact ? json(big(*b.lower_exact)) : json(nullptr);
    r["upper"] = b.upper ? json(big(*b.upper)) : json(nullptr);
    if (!b.upper) r["upper_reason"] = b.upper_reason;
    s.emit(r);
    return kOk;
  }
  s.out() << "lower-ceil " << big(b.lower_ceil) << '\n';
  if (b.lower_exact) s.out() << "lower-exact " << big(*b.lower_exact) << '\n';
  s.out() << "lower-real " << b.lower_real << '\n';
  if (b.upper) {
    s.out() << "upper " << big(*b.upper) << '\n';
  } else {
    s.out() << "upper unavailable: " << b.upper_reason << '\n';
  }
  return kOk;
}

int cmd_counting(Session& s, const std::string& file, std::int64_t k) {
  const auto g = s.graph(file);
  const auto report = counting_inequality_check(g, k);
  if (!report.hypotheses_hold) throw HypothesisError(report.reason);
  const bool ok = report.satisfied.value_or(false);
  if (s.records) {
    s.emit(json{{"record", "bound"}, {"name", "counting"}, {"k", k}, {"value", big(*report.value)},
                {"compared", big(*report.compared)}, {"satisfied", ok}});
  } else {
    s.out() << (ok ? "satisfied " : "violated ") << big(*report.value) << (ok ? " >= " : " < ")
            << big(*report.compared) << '\n';
  }
  return ok ? kOk : kViolated;
}

int cmd_verify(Session& s, const std::vector<int>& only) {
  std::ostringstream progress;
  const auto results = acceptance::run_all(only, s.records ? progress : s.out());
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    if (s.records) {
      s.emit(json{{"record", "acceptance"}, {"id", r.id}, {"title", r.title}, {"passed", r.passed},
                  {"detail", r.detail}, {"seconds", r.seconds}, {"limit_seconds", r.limit_seconds}});
    }
  }
  return all ? kOk : kViolated;
}

// ---------------------------------------------------------------- parser

int dispatch(const std::vector<std::string>& args, Session& s) {
  CLI::App app{"Colored mixed graph toolkit", "cmg"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "records"}))
      ->capture_default_str();

  std::uint64_t budget = kDefaultNodeBudget;
  std::uint64_t seed = 1;
  std::string check;
  std::string forests;
  std::vector<int> sig{1, 0};

  // chi
  auto* chi = app.add_subcommand("chi", "Exact (m,n)-colored mixed chromatic number with witness");
  std::string chi_file;
  bool lower_only = false;
  chi->add_option("file", chi_file, "Graph file, '-' for stdin");
  chi->add_flag("--lower-only", lower_only, "Only the special-clique lower bound");
  chi->add_option("--check", check, "Verify a partition given as color lines");
  chi->add_option("--budget", budget, "Search node budget")->check(CLI::PositiveNumber);

  // hom
  auto* hom = app.add_subcommand("hom", "Exact homomorphism search");
  std::string hom_src;
  std::string hom_tgt;
  hom->add_option("source", hom_src)->required();
  hom->add_option("target", hom_tgt)->required();
  hom->add_option("--check", check, "Verify a map given as map lines");
  hom->add_option("--budget", budget, "Search node budget")->check(CLI::PositiveNumber);

  // arb
  auto* arb = app.add_subcommand("arb", "Arboricity and a forest decomposition");
  std::string arb_file;
  int subset_limit = kDefaultSubsetLimit;
  arb->add_option("file", arb_file);
  arb->add_option("--check", check, "Verify forest lines");
  arb->add_option("--subset-limit", subset_limit, "Largest order for exact enumeration")
      ->check(CLI::Range(1, 30));

  // acyclic
  auto* acyclic = app.add_subcommand("acyclic", "Acyclic chromatic number or coloring check");
  std::string acyclic_file;
  acyclic->add_option("file", acyclic_file);
  acyclic->add_option("--check", check, "Verify color lines");
  acyclic->add_option("--budget", budget)->check(CLI::PositiveNumber);

  // gen
  auto* gen = app.add_subcommand("gen", "Constructions");
  gen->require_subcommand(1);
  int gen_param = 0;
  auto* gen_hk = gen->add_subcommand("hk", "Tightness graph H_k with vertex roles");
  gen_hk->add_option("k", gen_param)->required();
  gen_hk->add_option("--sig", sig, "Signature m n")->expected(2);
  auto* gen_gadget = gen->add_subcommand("gadget", "K_t with special 2-paths");
  gen_gadget->add_option("t", gen_param)->required();
  gen_gadget->add_option("--sig", sig, "Signature m n")->expected(2);
  auto* gen_paley = gen->add_subcommand("paley", "Paley tournament QR_q");
  gen_paley->add_option("q", gen_param)->required();

  // digits / acyclic-pipeline
  auto* digits = app.add_subcommand("digits", "Base-p digit layers of a forest decomposition");
  std::string digits_file;
  int layer = -1;
  digits->add_option("file", digits_file);
  digits->add_option("--forests", forests, "Forest lines (default: greedy forests)");
  digits->add_option("--layer", layer, "Write layer l as a graph");
  digits->add_option("--sig", sig, "Target signature m n")->expected(2);

  auto* pipeline = app.add_subcommand("acyclic-pipeline", "Acyclic coloring from layer homomorphisms");
  std::string pipeline_file;
  pipeline->add_option("file", pipeline_file);
  pipeline->add_option("--forests", forests, "Forest lines (default: greedy forests)");
  pipeline->add_option("--sig", sig, "Target signature m n")->expected(2);
  pipeline->add_option("--budget", budget)->check(CLI::PositiveNumber);

  // targets
  Vertex order = 7;
  int t = 1;
  std::vector<std::int64_t> g_values;
  int lemma_t = 0;
  bool force = false;
  int attempts = 100;

  auto* sample = app.add_subcommand("sample-target", "Uniform random complete target");
  sample->add_option("--sig", sig)->expected(2);
  sample->add_option("--order", order)->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed)->capture_default_str();

  auto add_property = [&](CLI::App* sub) {
    sub->add_option("--t", t, "Tuple size bound")->check(CLI::NonNegativeNumber);
    sub->add_option("--g", g_values, "g(0) .. g(t)");
    sub->add_option("--lemma", lemma_t, "Use the existence-lemma property for this t");
    sub->add_flag("--force", force, "Allow orders above 64");
  };
  auto* checkq = app.add_subcommand("check-q", "Check the common-neighborhood property");
  std::string checkq_file;
  checkq->add_option("file", checkq_file);
  add_property(checkq);

  auto* searchq = app.add_subcommand("search-q", "Rejection-sample a target with the property");
  searchq->add_option("--sig", sig)->expected(2);
  searchq->add_option("--order", order)->check(CLI::PositiveNumber);
  searchq->add_option("--attempts", attempts)->check(CLI::NonNegativeNumber);
  searchq->add_option("--seed", seed)->capture_default_str();
  add_property(searchq);

  auto* greedy = app.add_subcommand("greedy-hom", "Greedy homomorphism in degeneracy order");
  std::string greedy_src;
  std::string greedy_tgt;
  bool trace = false;
  greedy->add_option("source", greedy_src)->required();
  greedy->add_option("target", greedy_tgt)->required();
  greedy->add_flag("--trace", trace, "Print every step");

  auto* extend = app.add_subcommand("extend-regular", "Two-vertex target extension for regular graphs");
  std::string extend_src;
  std::string extend_tgt;
  extend->add_option("source", extend_src)->required();
  extend->add_option("target", extend_tgt)->required();

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Closed-form bounds");
  bounds->require_subcommand(1);
  std::vector<std::int64_t> params;
  std::string bound_file;
  bool statement_variant = false;
  auto add_bound = [&](const char* name, const char* help, std::size_t count) {
    auto* sub = bounds->add_subcommand(name, help);
    sub->add_option("params", params)->required()->expected(static_cast<int>(count));
    return sub;
  };
  auto* b_nr = add_bound("nr-upper", "k p: k p^(k-1)", 2);
  auto* b_planar = add_bound("planar-upper", "p: 5 p^4", 1);
  auto* b_arb = add_bound("arb-upper", "k p: ceil(log_p k + k/2)", 2);
  auto* b_from_arb = add_bound("acyclic-from-arb", "k r p: k^(ceil(log_p r) + 1)", 3);
  auto* b_from_chi = add_bound("acyclic-from-chi", "k p: k^2 + k^(2 + ceil(log_p log_p k))", 2);
  b_from_chi->add_flag("--statement-variant", statement_variant, "Use log_2 as the outer log");
  auto* b_degree = add_bound("degree", "Delta p: bounds over max degree Delta", 2);
  auto* b_counting = bounds->add_subcommand("counting", "file k: p^C(k,2) k^v >= p^e");
  b_counting->add_option("file", bound_file)->required();
  b_counting->add_option("k", params)->required()->expected(1);

  auto* verify = app.add_subcommand("verify-paper", "Run the acceptance suite");
  std::vector<int> only;
  verify->add_option("--only", only, "Criterion numbers")->check(CLI::Range(1, acceptance::kCriterionCount));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, s.out(), s.err());
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, s.out(), s.err());
  } catch (const CLI::ParseError& e) {
    app.exit(e, s.out(), s.err());
    return kUsage;
  }
  s.records = format == "records";

  auto property = [&]() -> std::pair<PropertySpec, std::optional<BigInt>> {
    if (lemma_t > 0) {
      const ColorSignature lemma_sig(sig[0], sig[1]);
      auto lp = lemma_parameters(lemma_sig, lemma_t);
      if (lp.below_hypothesis) {
        s.err() << "warning: t < 5, the existence guarantee does not apply\n";
      }
      return {lp.spec, lp.order};
    }
    return {property_from(t, g_values), std::nullopt};
  };
  auto gate_order = [&](const BigInt& c) {
    if (c > 64 && !force) {
      throw InputError("order " + c.str() + " makes the exhaustive check infeasible; pass --force");
    }
  };

  if (chi->parsed()) return cmd_chi(s, chi_file, lower_only, check, budget);
  if (hom->parsed()) return cmd_hom(s, hom_src, hom_tgt, check, budget);
  if (arb->parsed()) return cmd_arb(s, arb_file, check, subset_limit);
  if (acyclic->parsed()) return cmd_acyclic(s, acyclic_file, check, budget);
  if (gen->parsed()) {
    const ColorSignature gs(sig[0], sig[1]);
    if (gen_hk->parsed()) {
      const auto h = build_hk(gs, gen_param);
      const auto notes = h.annotations();
      WriteOptions options;
      options.header_comments = {"H_k with k=" + std::to_string(gen_param) + " signature " +
                                 to_string(gs)};
      options.vertex_annotations = notes;
      if (s.records) {
        s.emit(json{{"record", "gen"}, {"kind", "hk"}, {"k", gen_param}, {"order", h.graph.order()},
                    {"tops", h.tops()}, {"graph", graph_to_string(h.graph, options)}});
      } else {
        write_graph(s.out(), h.graph, options);
      }
      return kOk;
    }
    const auto g = gen_gadget->parsed() ? build_special_gadget(gs, gen_param) : paley_tournament(gen_param);
    if (s.records) {
      s.emit(json{{"record", "gen"}, {"kind", gen_gadget->parsed() ? "gadget" : "paley"},
                  {"param", gen_param}, {"order", g.order()}, {"graph", graph_to_string(g)}});
    } else {
      write_graph(s.out(), g);
    }
    return kOk;
  }
  if (digits->parsed()) return cmd_digits(s, digits_file, forests, layer, sig[0], sig[1]);
  if (pipeline->parsed()) return cmd_pipeline(s, pipeline_file, forests, sig[0], sig[1], budget);
  if (sample->parsed()) {
    const auto target = sample_complete(ColorSignature(sig[0], sig[1]), order, seed);
    write_target(s, target.graph, "sample-target", target.seed);
    return kOk;
  }
  if (checkq->parsed()) {
    const auto [spec, lemma_order] = property();
    if (lemma_order) gate_order(*lemma_order);
    return cmd_check_q(s, checkq_file, spec);
  }
  if (searchq->parsed()) {
    const auto [spec, lemma_order] = property();
    if (lemma_order) {
      gate_order(*lemma_order);
      if (searchq->count("--order") == 0) order = static_cast<Vertex>(*lemma_order);
    }
    return cmd_search_q(s, ColorSignature(sig[0], sig[1]), order, spec, attempts, seed);
  }
  if (greedy->parsed()) return cmd_greedy(s, greedy_src, greedy_tgt, trace);
  if (extend->parsed()) return cmd_extend(s, extend_src, extend_tgt);
  if (bounds->parsed()) {
    auto p32 = [&](std::size_t i) {
      const auto v = params.at(i);
      if (v < -1'000'000 || v > 1'000'000) throw InputError("parameter out of range");
      return static_cast<int>(v);
    };
    if (b_nr->parsed()) return print_value(s, "nr-upper", big(nr_upper(p32(0), p32(1))), params);
    if (b_planar->parsed()) return print_value(s, "planar-upper", big(planar_upper(p32(0))), params);
    if (b_arb->parsed()) {
      return print_value(s, "arb-upper", std::to_string(arb_upper_from_chi(params.at(0), p32(1))), params);
    }
    if (b_from_arb->parsed()) {
      return print_value(s, "acyclic-from-arb",
                         big(acyclic_upper_from_arb(params.at(0), params.at(1), p32(2))), params);
    }
    if (b_from_chi->parsed()) {
      const auto outer = statement_variant ? OuterLog::Base2 : OuterLog::BaseP;
      return print_value(s, statement_variant ? "acyclic-from-chi-statement" : "acyclic-from-chi",
                         big(acyclic_upper_from_chi(params.at(0), p32(1), outer)), params);
    }
    if (b_degree->parsed()) return cmd_degree(s, p32(0), p32(1));
    if (b_counting->parsed()) return cmd_counting(s, bound_file, params.at(0));
  }
  if (verify->parsed()) return cmd_verify(s, only);
  return kUsage;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Session session(in, out, err);
  try {
    return dispatch(args, session);
  } catch (const HypothesisError& e) {
    err << "hypothesis failed: " << e.what() << '\n';
    return kViolated;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kUsage;
  }
}

} // namespace cmg::cli
