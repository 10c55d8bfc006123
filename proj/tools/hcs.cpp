// Copyright 2026 The hcstruct Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// hcs: command-line front end for the hcstruct library.
//
// Exit codes: 0 success (or "perfect"), 1 negative verdict, 2 usage or
// invalid parameter, 3 I/O, 4 malformed graph or tree input, 5 tree leaves
// do not match the graph, 6 input too large for exhaustive search.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hcstruct/hcstruct.hpp"

namespace {

struct Globals {
  double epsilon = 0.0;
  int jobs = 1;
  bool records = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hcs::Error(hcs::Errc::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw hcs::Error(hcs::Errc::io, "cannot read '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hcs::Error(hcs::Errc::io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw hcs::Error(hcs::Errc::io, "cannot write '" + path + "'");
}

hcs::SimilarityGraph load(const std::string& path, const Globals& g) {
  return hcs::load_graph(read_file(path), g.epsilon);
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string vertex_list(const hcs::SimilarityGraph& g,
                        const std::vector<hcs::Vertex>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ' ';
    s += g.label(vs[i]);
  }
  return s;
}

std::string ratio_text(double ratio, const std::optional<hcs::Rational>& q) {
  if (q && !q->is_infinite() && q->den() != 1)
    return q->str() + " (" + num(ratio) + ")";
  return q ? q->str() : num(ratio);
}

// Prints "key: value" lines, or one "key=value ..." record.
class Printer {
 public:
  explicit Printer(bool records) : records_(records) {}
  Printer& add(const std::string& key, const std::string& value) {
    fields_.emplace_back(key, value);
    return *this;
  }
  void flush(const std::string& tag) {
    if (records_) {
      std::cout << tag;
      for (const auto& [k, v] : fields_) {
        std::string safe = v;
        for (char& c : safe)
          if (c == ' ') c = '_';
        std::cout << ' ' << k << '=' << safe;
      }
      std::cout << '\n';
    } else {
      for (const auto& [k, v] : fields_) std::cout << k << ": " << v << '\n';
    }
    fields_.clear();
  }

 private:
  bool records_;
  std::vector<std::pair<std::string, std::string>> fields_;
};

int cmd_cost(const Globals& gl, const std::string& graph_path,
             const std::string& tree_path) {
  const auto g = load(graph_path, gl);
  const auto t = hcs::parse_newick(read_file(tree_path), g.labels());
  const auto r = hcs::evaluate(g, t);
  Printer(gl.records)
      .add("dasgupta", num(r.dasgupta))
      .add("total", num(r.total))
      .add("base", num(r.base))
      .add("ratio", ratio_text(r.ratio, r.exact))
      .add("consistent", r.consistent ? "yes" : "no")
      .flush("cost");
  return 0;
}

int cmd_detect(const Globals& gl, const std::string& graph_path,
               const std::string& emit) {
  const auto g = load(graph_path, gl);
  const auto res = hcs::build_bisection(g);
  Printer p(gl.records);
  if (const auto* t = std::get_if<hcs::HcTree>(&res)) {
    const std::string newick = hcs::serialize_newick(*t, g.labels());
    if (!emit.empty()) write_file(emit, newick + "\n");
    p.add("verdict", "perfect").add("tree", newick).flush("detect");
    return 0;
  }
  const auto& np = std::get<hcs::NotPerfect>(res);
  p.add("verdict", "not-perfect")
      .add("failing_set", vertex_list(g, np.vertices))
      .add("reason", np.failure.message)
      .flush("detect");
  return 1;
}

hcs::BuildOutcome<hcs::HcTree> approx_with(const hcs::SimilarityGraph& g,
                                           const std::string& delta,
                                           double& delta_value) {
  if (auto q = hcs::parse_rational(delta)) {
    delta_value = q->to_double();
    return hcs::approx_tree(g, *q);
  }
  try {
    std::size_t used = 0;
    delta_value = std::stod(delta, &used);
    if (used != delta.size()) throw std::invalid_argument(delta);
  } catch (const std::exception&) {
    throw hcs::Error(hcs::Errc::invalid_delta,
                     "delta '" + delta + "' is not a number");
  }
  return hcs::approx_tree(g, delta_value);
}

int cmd_approx(const Globals& gl, const std::string& graph_path,
               const std::string& delta, const std::string& emit) {
  const auto g = load(graph_path, gl);
  double d = 0;
  const auto res = approx_with(g, delta, d);
  Printer p(gl.records);
  if (const auto* t = std::get_if<hcs::HcTree>(&res)) {
    const auto r = hcs::evaluate(g, *t);
    const std::string newick = hcs::serialize_newick(*t, g.labels());
    if (!emit.empty()) write_file(emit, newick + "\n");
    p.add("verdict", "ok")
        .add("ratio", ratio_text(r.ratio, r.exact))
        .add("guarantee", "ratio <= " + num(1 + d * d) + " * rho*")
        .add("tree", newick)
        .flush("approx");
    return 0;
  }
  const auto& f = std::get<hcs::BuildFailure>(res);
  p.add("verdict", "fail")
      .add("conflicting_set", vertex_list(g, f.vertices))
      .flush("approx");
  return 1;
}

int cmd_brute(const Globals& gl, const std::string& graph_path) {
  const auto g = load(graph_path, gl);
  const auto o = hcs::optimal_ratio_bruteforce(g, {gl.jobs});
  Printer(gl.records)
      .add("rho*", ratio_text(o.rho, o.exact))
      .add("total", num(o.total))
      .add("base", num(o.base))
      .add("tree", hcs::serialize_newick(o.tree, g.labels()))
      .add("trees_searched", std::to_string(o.trees_searched))
      .flush("brute");
  return 0;
}

int as_count(double x, const char* what) {
  if (x != static_cast<double>(static_cast<long long>(x)) || x < 0 || x > 1e7)
    throw hcs::Error(hcs::Errc::invalid_param,
                     std::string(what) + " must be a nonnegative integer");
  return static_cast<int>(x);
}

int cmd_random(const Globals& gl, const std::vector<double>& er,
               const std::vector<double>& planted, int trials,
               std::uint64_t seed) {
  hcs::RandomModel model = hcs::ErModel{0, 0};
  if (!er.empty())
    model = hcs::ErModel{as_count(er[0], "N"), er[1]};
  else
    model = hcs::PlantedModel{as_count(planted[0], "N"), planted[1],
                              planted[2]};
  const auto report = hcs::run_experiment(model, trials, seed, gl.jobs);
  std::cout << hcs::format_report(report, gl.records);
  return 0;
}

int exit_code(hcs::Errc code) {
  switch (code) {
    case hcs::Errc::invalid_param:
    case hcs::Errc::invalid_delta:
    case hcs::Errc::not_zero_base:
      return 2;
    case hcs::Errc::io:
      return 3;
    case hcs::Errc::leaf_mismatch:
      return 5;
    case hcs::Errc::too_large:
      return 6;
    default:
      return 4;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ratio cost, perfect-structure detection and approximation "
               "for hierarchical clustering trees"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals gl;
  app.add_option("--epsilon", gl.epsilon,
                 "absolute tolerance for weight equality (default exact)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--jobs", gl.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  app.add_flag("--records", gl.records, "machine-readable key=value output");

  std::string graph, tree, emit, delta;
  std::vector<double> er, planted;
  int trials = 0;
  std::uint64_t seed = 0;

  auto* cost = app.add_subcommand("cost", "cost report of a tree");
  cost->add_option("GRAPH", graph)->required();
  cost->add_option("TREE", tree, "Newick file")->required();

  auto* detect = app.add_subcommand("detect", "test for perfect structure");
  detect->add_option("GRAPH", graph)->required();
  detect->add_option("--emit-tree", emit, "write the optimal tree here");

  auto* approx = app.add_subcommand("approx", "tree for a perturbed graph");
  approx->add_option("GRAPH", graph)->required();
  approx->add_option("--delta", delta, "perturbation factor, >= 1")
      ->required();
  approx->add_option("--emit-tree", emit, "write the tree here");

  auto* brute = app.add_subcommand("brute", "exact optimum, n <= 10");
  brute->add_option("GRAPH", graph)->required();

  auto* random = app.add_subcommand("random", "random-graph experiment");
  auto* er_opt =
      random->add_option("--er", er, "Erdos-Renyi: N P")->expected(2);
  auto* pl_opt = random->add_option("--planted", planted, "planted: N P Q")
                     ->expected(3);
  er_opt->excludes(pl_opt);
  random->add_option("--trials", trials)->required();
  random->add_option("--seed", seed)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*cost) return cmd_cost(gl, graph, tree);
    if (*detect) return cmd_detect(gl, graph, emit);
    if (*approx) return cmd_approx(gl, graph, delta, emit);
    if (*brute) return cmd_brute(gl, graph);
    if (*random) {
      if (er.empty() && planted.empty()) {
        std::cerr << "hcs random: one of --er or --planted is required\n";
        return 2;
      }
      return cmd_random(gl, er, planted, trials, seed);
    }
  } catch (const hcs::Error& e) {
    std::cerr << "hcs: " << e.what() << '\n';
    if (e.code() == hcs::Errc::too_large)
      std::cerr << "hint: brute force enumerates (2n-3)!! trees; try "
                   "'hcs detect' or 'hcs approx' instead\n";
    return exit_code(e.code());
  }
  return 2;
}
