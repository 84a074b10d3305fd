#pragma once

// Command-line front end. run() parses arguments, dispatches to one
// subcommand, prints a plain-text summary and optionally writes a JSON
// report. Exit codes: 0 success, 2 input error, 3 guard exceeded,
// 4 internal check failed.

#include <chrono>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dforest/dforest.hpp"

namespace dforest::cli {

using nlohmann::json;

enum ExitCode : int { ok = 0, input_error = 2, guard_exceeded = 3, internal_error = 4 };

/// Raised when a command's own cross-check fails.
class CheckFailed : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

struct Options {
  std::string builtin;
  std::string file;
  std::string json_path;
  std::size_t max_cells = 1'000'000;
  unsigned threads = 1;
  int n = 0;
  int n_max = 6;
  int max_n = 7;
  std::string mode = "both";
  std::string family;
  std::string dump_path;
  std::string dump_e1_path;
  bool search = false;
};

inline json homology_json(const Homology& h, int lo, int hi) {
  json out = json::array();
  for (int d = lo; d <= hi; ++d) {
    const auto g = h.at(d);
    out.push_back({{"degree", d}, {"betti", g.betti}, {"torsion", g.torsion}});
  }
  return out;
}

inline json homology_json(const Homology& h) {
  if (h.groups().empty()) return json::array();
  return homology_json(h, h.min_degree(), h.max_degree());
}

inline json graph_json(const DirectedGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.source, e.target});
  return {{"vertices", g.n_vertices()}, {"edges", edges}};
}

inline void write_file(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read " + path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

inline std::pair<DirectedGraph, json> load_graph(const Options& o) {
  if (!o.builtin.empty() && !o.file.empty()) throw InputError("give either --builtin or --file, not both");
  if (!o.builtin.empty()) return {builtin_graph(o.builtin), {{"builtin", o.builtin}}};
  if (!o.file.empty()) return {parse_graph(read_file(o.file)), {{"file", o.file}}};
  throw InputError("a graph is required: --builtin name:n or --file path");
}

/// Face count of the forest complex, refusing past `limit`.
inline std::size_t guarded_face_count(const DirectedGraph& g, std::size_t limit) {
  std::size_t count = 0;
  for_each_forest_subset(g, std::nullopt, [&](const EdgeSubset&) { return ++count <= limit; });
  if (count > limit) throw GuardExceeded("the forest complex has more than " + std::to_string(limit) + " faces (raise --max-cells)");
  return count;
}

inline json cmd_delta_homology(const Options& o, std::ostream& out) {
  auto [g, input] = load_graph(o);
  guarded_face_count(g, o.max_cells);
  const auto k = build_delta(g);
  json counts = json::array();
  for (int d = -1; d <= k.dimension(); ++d) counts.push_back(k.face_count(d));
  const auto h = reduced_homology(k);
  const bool pure = is_pure(k);
  const bool full = purity_criterion(g);
  out << "graph: " << g.n_vertices() << " vertices, " << g.n_edges() << " edges\n";
  out << "faces by dimension (from -1):";
  for (const auto& c : counts) out << " " << c.get<std::size_t>();
  out << "\npure: " << (pure ? "yes" : "no") << "\n";
  out << "all maximal forests are spanning trees: " << (full ? "yes" : "no") << "\n";
  out << "reduced homology: " << to_string(h) << "\n";
  if (!o.dump_path.empty()) write_file(o.dump_path, dump_complex(k), out);
  return {{"inputs", input},
          {"results",
           {{"graph", graph_json(g)},
            {"complex", "delta"},
            {"dimension", k.dimension()},
            {"cell_counts", counts},
            {"pure", pure},
            {"purity_criterion", full},
            {"homology", homology_json(h, -1, std::max(k.dimension(), -1))}}}};
}

inline json cmd_shelling(const Options& o, std::ostream& out) {
  DirectedGraph g(0, {});
  json input;
  if (o.n > 0) {
    g = complete_double_graph(o.n);
    input = {{"n", o.n}};
  } else {
    std::tie(g, input) = load_graph(o);
  }
  guarded_face_count(g, o.max_cells);
  const auto k = build_delta(g);
  json result;
  result["graph"] = graph_json(g);
  if (!has_complete_source(g)) {
    if (!o.search) throw InputError("the graph has no complete source; --search looks for a shelling by backtracking");
    const bool obstructed = homology_obstructs_shelling(k);
    out << "no complete source\nhomology rules out a shelling: " << (obstructed ? "yes" : "no") << "\n";
    result["homology_obstructs"] = obstructed;
    const auto found = find_shelling(k);
    out << "shelling found by search: " << (found ? "yes" : "no") << "\n";
    result["search_found"] = found.has_value();
    if (found) result["order"] = *found;
    return {{"inputs", input}, {"results", result}};
  }
  const auto order = shelling_order(g);
  const auto check = check_shelling(k, order);
  json labels = json::array();
  for (const auto& f : order) labels.push_back(facet_label(g, f));
  out << "facets: " << order.size() << "\n";
  out << "label order is a shelling: " << (check.is_shelling ? "yes" : "no") << "\n";
  out << "homology facets: " << check.spanning_positions.size() << "\n";
  result["order"] = order;
  result["labels"] = labels;
  result["verified"] = check.is_shelling;
  result["homology_facets"] = check.spanning_positions.size();
  result["spanning_positions"] = check.spanning_positions;
  return {{"inputs", input}, {"results", result}};
}

inline json cmd_quotient(const Options& o, std::ostream& out) {
  if (o.mode != "direct" && o.mode != "e1" && o.mode != "both") throw InputError("--mode must be direct, e1 or both");
  QuotientLimits limits;
  limits.max_n = o.max_n;
  limits.max_cells = o.max_cells;
  limits.threads = o.threads;
  json result;
  std::optional<Homology> direct, e1;
  if (o.mode != "e1") {
    const auto cells = enumerate_cells(o.n, limits);
    json counts = json::array();
    for (const auto& d : cells.cells) counts.push_back(d.size());
    direct = homology(x_chain_complex(cells, true, limits.threads));
    out << "cells by dimension:";
    for (const auto& c : counts) out << " " << c.get<std::size_t>();
    out << "\ndirect: " << to_string(*direct) << "\n";
    result["cell_counts"] = counts;
    result["direct"] = homology_json(*direct);
    if (!o.dump_path.empty()) write_file(o.dump_path, dump_cells(cells), out);
  }
  if (o.mode != "direct") {
    if (auto bad = diagonal_hypothesis_violation(o.n, limits)) throw DiagonalHypothesisFailed(bad->code);
    const auto page = d1_page(o.n, limits);
    e1 = homology(e1_chain_complex(page));
    json basis = json::array();
    for (const auto& b : page.basis) basis.push_back(b.size());
    out << "admissible forests by edge count:";
    for (std::size_t k = 1; k < page.basis.size(); ++k) out << " " << page.basis[k].size();
    out << "\nfirst page: " << to_string(*e1) << "\n";
    result["admissible_counts"] = basis;
    result["e1"] = homology_json(*e1);
    if (!o.dump_e1_path.empty()) write_file(o.dump_e1_path, dump_e1_page(page), out);
  }
  if (direct && e1) {
    if (!(*direct == *e1)) throw CheckFailed("direct and first-page homology disagree");
    out << "agreement: yes\n";
    result["agree"] = true;
  }
  return {{"inputs", {{"n", o.n}, {"mode", o.mode}}}, {"results", result}};
}

inline json cmd_fkn(const Options& o, std::ostream& out) {
  QuotientLimits limits;
  limits.threads = o.threads;
  limits.max_table_n = std::max(limits.max_table_n, o.max_n);
  const auto f = f_table(o.n_max, limits);
  json rows = json::array();
  out << "k\\n";
  for (int n = 1; n <= o.n_max; ++n) out << " " << n;
  out << "\n";
  for (int k = 1; k < o.n_max; ++k) {
    json row = json::array();
    out << k;
    for (int n = 1; n <= o.n_max; ++n) {
      row.push_back(f[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)]);
      out << " " << f[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
    }
    out << "\n";
    rows.push_back({{"k", k}, {"f", row}});
  }
  json beta = json::array();
  for (int n = 3; n <= o.n_max; ++n) {
    std::int64_t s = 0;
    for (int k = 2; k < n; ++k) s += ((n + k + 1) % 2 == 0 ? 1 : -1) * f[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
    beta.push_back({{"n", n}, {"beta", s}});
  }
  return {{"inputs", {{"n_max", o.n_max}}}, {"results", {{"table", rows}, {"top_betti", beta}}}};
}

inline json cmd_family(const Options& o, std::ostream& out) {
  HomotopyType predicted;
  SimplicialComplex k;
  json extra = json::object();
  if (o.family == "L") {
    predicted = delta_string_homotopy(o.n);
    k = build_delta(double_string_graph(o.n));
  } else if (o.family == "C") {
    predicted = delta_cycle_homotopy(o.n);
    k = build_delta(double_cycle_graph(o.n));
  } else if (o.family == "path") {
    const auto t = l_homotopy(o.n);
    predicted = t.type;
    k = l_complex(o.n);
    if (t.generator) extra["generator"] = *t.generator;
  } else if (o.family == "cycle") {
    predicted = c_homotopy(o.n);
    k = c_complex(o.n);
  } else {
    throw InputError("--name must be L, C, path or cycle");
  }
  const auto h = reduced_homology(k);
  const bool agree = h == GradedHomologyPrediction::of(predicted).to_homology();
  out << "formula: " << to_string(predicted) << "\n";
  out << "computed: " << to_string(h) << "\n";
  out << "agreement: " << (agree ? "yes" : "no") << "\n";
  if (!agree) throw CheckFailed("formula and computed homology disagree");
  json result = {{"homotopy_type", to_string(predicted)}, {"homology", homology_json(h)}, {"agree", agree}};
  result.update(extra);
  return {{"inputs", {{"name", o.family}, {"n", o.n}}}, {"results", result}};
}

inline json cmd_reduce(const Options& o, std::ostream& out) {
  auto [g, input] = load_graph(o);
  std::vector<ReductionRule> trace;
  const auto r = reduce_essential_tree(g, &trace);
  json rules = json::array();
  for (auto rule : trace) rules.push_back(to_string(rule));
  json result = {{"graph", graph_json(g)}, {"trace", rules}};
  if (const auto* p = std::get_if<GradedHomologyPrediction>(&r)) {
    out << "predicted: " << to_string(*p) << "\n";
    result["homology"] = homology_json(p->to_homology());
  } else {
    out << "irreducible: " << std::get<Irreducible>(r).reason << "\n";
    result["irreducible"] = std::get<Irreducible>(r).reason;
  }
  return {{"inputs", input}, {"results", result}};
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Forest complexes of directed graphs: homology, shellings and symmetric quotients"};
  app.require_subcommand(1);
  Options o;
  auto graph_flags = [&](CLI::App* c) {
    c->add_option("--builtin", o.builtin, "complete:n, cycle:n, string:n or string_tail:n");
    c->add_option("--file", o.file, "graph file: vertex count, then one 'u v' edge per line");
  };
  auto common = [&](CLI::App* c) {
    c->add_option("--json", o.json_path, "write a JSON report here ('-' for stdout)");
    c->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  };
  auto* delta = app.add_subcommand("delta-homology", "face counts, purity and reduced homology of the forest complex");
  graph_flags(delta);
  common(delta);
  delta->add_option("--max-cells", o.max_cells, "refuse complexes with more faces");
  delta->add_option("--dump", o.dump_path, "write the complex, one face per line");

  auto* shell = app.add_subcommand("shelling", "label shelling order and its verification");
  graph_flags(shell);
  common(shell);
  shell->add_option("--n", o.n, "use the complete double graph on n vertices");
  shell->add_option("--max-cells", o.max_cells, "refuse complexes with more faces");
  shell->add_flag("--search", o.search, "without a complete source, search for any shelling");

  auto* quot = app.add_subcommand("quotient", "homology of the symmetric quotient");
  common(quot);
  quot->add_option("--n", o.n, "number of vertices")->required();
  quot->add_option("--mode", o.mode, "direct, e1 or both");
  quot->add_option("--max-n", o.max_n, "largest n accepted");
  quot->add_option("--max-cells", o.max_cells, "refuse quotients with more cells");
  quot->add_option("--dump-cells", o.dump_path, "write 'dim | code' per cell");
  quot->add_option("--dump-e1", o.dump_e1_path, "write first-page differential triplets");

  auto* fkn = app.add_subcommand("fkn", "admissible forest counts by edges and vertices");
  common(fkn);
  fkn->add_option("--n-max", o.n_max, "largest vertex count");
  fkn->add_option("--max-n", o.max_n, "largest n_max accepted");

  auto* fam = app.add_subcommand("family", "closed-form homotopy type against computed homology");
  common(fam);
  fam->add_option("--name", o.family, "L, C, path or cycle")->required();
  fam->add_option("--n", o.n, "size")->required();

  auto* red = app.add_subcommand("reduce", "homology of a double tree by the reduction rules");
  graph_flags(red);
  common(red);

  std::vector<const char*> argv{"dforest"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    json report;
    if (*delta) report = cmd_delta_homology(o, out);
    else if (*shell) report = cmd_shelling(o, out);
    else if (*quot) report = cmd_quotient(o, out);
    else if (*fkn) report = cmd_fkn(o, out);
    else if (*fam) report = cmd_family(o, out);
    else report = cmd_reduce(o, out);
    report["command"] = app.get_subcommands().front()->get_name();
    report["argv"] = args;
    report["timings"] = {{"total_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    if (!o.json_path.empty()) write_file(o.json_path, report.dump(2) + "\n", out);
    return ok;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const GuardExceeded& e) {
    err << "guard exceeded: " << e.what() << "\n";
    return guard_exceeded;
  } catch (const StructuralError& e) {
    err << "check failed: " << e.what() << "\n";
    return internal_error;
  }
}

}  // namespace dforest::cli
