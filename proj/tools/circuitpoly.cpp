// circuitpoly: resultant trees and circuit polynomials from the command line.
//
//   circuitpoly tree  --name double-banana
//   circuitpoly poly  --name wheel4 --verify --out wheel4.json
//   circuitpoly check --file my.graph
//
// Exit codes: 0 success, 1 verification mismatch, 2 input error,
// 3 identification failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "circuitpoly/circuitpoly.hpp"

namespace cp = circuitpoly;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kInputError = 2, kAmbiguity = 3 };

struct RunConfig {
  std::string name;
  std::string file;
  std::uint64_t seed = 0;
  int trials = 20;
  bool verify = false;
  bool timings = false;
  unsigned threads = 1;
  std::string out;
  std::string text;
};

struct Input {
  cp::Graph graph;
  std::string label;
};

Input resolve(const RunConfig& cfg) {
  if (!cfg.name.empty()) {
    const cp::NamedCircuit* c = cp::find_named_circuit(cfg.name);
    if (!c) {
      std::string known;
      for (const auto& n : cp::named_circuit_names()) known += (known.empty() ? "" : ", ") + n;
      throw cp::InputError("unknown circuit name '" + cfg.name + "' (known: " + known + ")");
    }
    return {c->graph, c->name};
  }
  std::ifstream in(cfg.file);
  if (!in) throw cp::InputError("cannot open " + cfg.file);
  cp::GraphFile gf = cp::parse_graph_text(in);
  return {gf.graph, cfg.file};
}

// JSON goes to --out or stdout; the human-readable summary goes to stdout
// when JSON has its own file, stderr otherwise.
std::ostream& summary_stream(const RunConfig& cfg) { return cfg.out.empty() ? std::cerr : std::cout; }

template <class Write>
void emit(const RunConfig& cfg, Write&& write) {
  if (cfg.out.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw cp::InputError("cannot write " + cfg.out);
  write(f);
}

void require_circuit(const Input& in) {
  if (!cp::is_circuit(in.graph)) {
    std::string verdict = cp::is_laman(in.graph) ? "Laman" : "dependent or underdetermined";
    throw cp::InputError(in.label + ": not a circuit (" + verdict + ")");
  }
}

int cmd_tree(const RunConfig& cfg) {
  Input in = resolve(cfg);
  require_circuit(in);
  auto tree = cp::build_resultant_tree(in.graph);
  emit(cfg, [&](std::ostream& os) { os << cp::tree_to_json(*tree).dump(2) << '\n'; });
  auto& out = summary_stream(cfg);
  out << "circuit " << cp::edge_list_string(in.graph) << "\n"
      << "depth " << tree->depth() << ", leaves " << tree->leaf_count() << ", nodes " << tree->node_count()
      << "\n";
  auto print = [&](auto&& self, const cp::ResultantTree& t, int level) -> void {
    out << std::string(static_cast<std::size_t>(2 * level), ' ') << cp::edge_list_string(t.circuit) << "  "
        << cp::to_string(t.kind);
    if (t.elim) out << " on " << *t.elim;
    out << "\n";
    if (!t.is_leaf()) {
      self(self, *t.left, level + 1);
      self(self, *t.right, level + 1);
    }
  };
  print(print, *tree, 0);
  return kOk;
}

std::string seconds(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << s;
  return os.str();
}

int cmd_poly(const RunConfig& cfg) {
  Input in = resolve(cfg);
  require_circuit(in);
  if (auto named = cp::match_named_circuit(in.graph); named && !(*named)->computable) {
    std::string what = in.label == (*named)->name ? in.label : in.label + " (isomorphic to " + (*named)->name + ")";
    std::cerr << "error: " << what << " is not the resultant of two circuit polynomials on fewer vertices.\n"
              << "  No two known degree pairs give a resultant of degree "
              << (*named)->expected.homogeneous_degree << "; computing it needs an extended resultant.\n";
    return kInputError;
  }
  auto tree = cp::build_resultant_tree(in.graph);
  cp::PipelineOptions opt;
  opt.seed = cfg.seed;
  opt.trials = cfg.trials;
  opt.threads = cfg.threads;
  cp::PipelineReport report = cp::compute_circuit_polynomial(*tree, opt);
  const cp::CircuitPolyRecord& root = report.root();

  std::optional<cp::KnownComparison> cmp;
  bool vanishing_ok = true;
  if (cfg.verify) {
    cmp = cp::verify_against_known(root);
    vanishing_ok = cp::vanishes_on_variety(root.poly, cfg.trials, cfg.seed).vanishes &&
                   root.poly.support() == cp::VarSet::of_graph(root.circuit);
  }

  cp::RecordJsonOptions jopt;
  jopt.timings = cfg.timings;
  jopt.seed = cfg.seed;
  jopt.trials = cfg.trials;
  jopt.comparison = cmp ? &*cmp : nullptr;
  emit(cfg, [&](std::ostream& os) { cp::write_report_json(os, *tree, report, jopt); });
  if (!cfg.text.empty()) {
    std::ofstream f(cfg.text, std::ios::binary);
    if (!f) throw cp::InputError("cannot write " + cfg.text);
    cp::write_poly_text(f, root.poly);
    f << '\n';
  }

  auto& out = summary_stream(cfg);
  out << std::left << std::setw(34) << "circuit" << std::setw(36) << "method" << std::setw(10) << "time (s)"
      << std::setw(12) << "terms" << "hom. degree\n";
  for (const auto& r : report.nodes) {
    std::string method = r.kind == cp::NodeKind::Leaf ? "determinant" : std::string("resultant, ") + cp::to_string(r.path);
    out << std::setw(34) << cp::edge_list_string(r.circuit) << std::setw(36) << method << std::setw(10)
        << (cfg.timings ? seconds(r.resultant_seconds + r.identify_seconds) : "-") << std::setw(12)
        << r.stats.terms << (r.stats.homogeneous_degree ? std::to_string(*r.stats.homogeneous_degree) : "-")
        << "\n";
  }
  if (cfg.timings) out << "total " << seconds(report.total_seconds) << " s\n";

  if (!cfg.verify) return kOk;
  bool ok = vanishing_ok && (!cmp || cmp->passed());
  if (cmp)
    out << (cmp->passed() ? "PASS" : "FAIL") << " against " << cmp->name << ": " << root.stats.terms << " terms\n";
  else
    out << "no benchmark matches this circuit; checked support and vanishing only\n";
  if (cmp)
    for (const auto& m : cmp->mismatches) out << "  " << m << "\n";
  if (!vanishing_ok) out << "FAIL: polynomial does not vanish on sampled realizations\n";
  return ok ? kOk : kMismatch;
}

int cmd_check(const RunConfig& cfg) {
  Input in = resolve(cfg);
  const cp::Graph& g = in.graph;
  std::vector<std::string> parts;
  bool circuit = cp::is_circuit(g);
  if (circuit) {
    parts.push_back("circuit");
  } else if (cp::is_laman(g)) {
    parts.push_back("Laman");
    parts.push_back("not a circuit");
  } else {
    auto verdict = cp::is_sparse(g);
    parts.push_back(verdict.independent ? "independent, not rigid" : "dependent");
    parts.push_back("not a circuit");
  }
  if (circuit) {
    auto conn = cp::connectivity(g);
    parts.push_back(cp::to_string(conn));
    if (conn == cp::Connectivity::TwoConnected) {
      auto pairs = cp::separation_pairs(g);
      std::string s = pairs.size() == 1 ? "separation pair " : "separation pairs ";
      for (std::size_t k = 0; k < pairs.size(); ++k)
        s += (k ? ", {" : "{") + std::to_string(pairs[k].first) + "," + std::to_string(pairs[k].second) + "}";
      parts.push_back(s);
    }
    if (auto named = cp::match_named_circuit(g)) parts.push_back("isomorphic to " + (*named)->name);
  }
  std::string line;
  for (const auto& p : parts) line += (line.empty() ? "" : ", ") + p;
  std::cout << line << "\n";
  if (!circuit) {
    auto verdict = cp::is_sparse(g);
    if (!verdict.independent && verdict.witness) {
      std::cout << "overbraced vertex set {";
      for (std::size_t k = 0; k < verdict.witness->size(); ++k) std::cout << (k ? "," : "") << (*verdict.witness)[k];
      std::cout << "}\n";
    }
  }
  return kOk;
}

void add_input_options(CLI::App* sub, RunConfig& cfg) {
  auto* name = sub->add_option("--name", cfg.name, "Named benchmark circuit");
  auto* file = sub->add_option("--file", cfg.file, "Graph file ('n <count>' then one 'i j' per line)");
  name->excludes(file);
  file->excludes(name);
  sub->add_option("--out", cfg.out, "Write JSON here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circuit polynomials of the 2D Cayley-Menger ideal via combinatorial resultant trees"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* tree = app.add_subcommand("tree", "Build a resultant tree and print it as JSON");
  add_input_options(tree, cfg);

  auto* poly = app.add_subcommand("poly", "Compute the circuit polynomial");
  add_input_options(poly, cfg);
  poly->add_option("--seed", cfg.seed, "Seed for the vanishing test")->capture_default_str();
  poly->add_option("--trials", cfg.trials, "Realizations per vanishing test")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  poly->add_flag("--verify", cfg.verify, "Compare with published statistics and re-check vanishing");
  poly->add_flag("--timings", cfg.timings, "Report wall-clock times");
  poly->add_option("--threads", cfg.threads, "Worker threads for determinants")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  poly->add_option("--text", cfg.text, "Also write the polynomial in text form to this file");

  auto* check = app.add_subcommand("check", "Sparsity, circuit and connectivity diagnostics");
  check->add_option("--name", cfg.name, "Named benchmark circuit")->excludes(check->add_option("--file", cfg.file, "Graph file"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  if (cfg.name.empty() && cfg.file.empty()) {
    std::cerr << "error: one of --name or --file is required\n";
    return kInputError;
  }

  try {
    if (tree->parsed()) return cmd_tree(cfg);
    if (poly->parsed()) return cmd_poly(cfg);
    return cmd_check(cfg);
  } catch (const cp::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const cp::IdentificationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& d : e.diagnostics()) std::cerr << "  " << d << "\n";
    return kAmbiguity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
