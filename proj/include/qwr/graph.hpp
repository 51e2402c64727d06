#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qwr/errors.hpp"
#include "qwr/rng.hpp"

namespace qwr {

using Edge = std::pair<int, int>;

/// Immutable directed graph: node ids in [0, n), deduplicated edge set,
/// self-loops allowed. Adjacency lists are derived on construction and
/// kept consistent with `edges`.
class DirectedGraph {
 public:
  DirectedGraph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 1) throw std::domain_error("DirectedGraph: node count must be >= 1");
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto [u, v] : edges) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw std::domain_error("DirectedGraph: node id out of range [0, n)");
    }
    edges_ = std::move(edges);
    out_adj_.resize(n_);
    in_adj_.resize(n_);
    for (auto [u, v] : edges_) {
      out_adj_[u].push_back(v);
      in_adj_[v].push_back(u);
    }
  }

  int node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& out_adj() const { return out_adj_; }
  const std::vector<std::vector<int>>& in_adj() const { return in_adj_; }

  int out_degree(int v) const {
    check_node(v);
    return static_cast<int>(out_adj_[v].size());
  }

  int in_degree(int v) const {
    check_node(v);
    return static_cast<int>(in_adj_[v].size());
  }

  bool has_edge(int u, int v) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
  }

 private:
  void check_node(int v) const {
    if (v < 0 || v >= n_) throw std::domain_error("node id out of range [0, n)");
  }

  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_adj_;
  std::vector<std::vector<int>> in_adj_;
};

/// Parameters of the directed scale-free growth model (Bollobas et al.).
/// Defaults match the reference implementation this project mirrors.
struct ScaleFreeParams {
  double p_alpha = 0.41;   // new source node, target by in-degree
  double p_beta = 0.54;    // edge between existing nodes
  double p_gamma = 0.05;   // new target node, source by out-degree
  double delta_in = 0.2;
  double delta_out = 0.0;
  std::uint64_t seed = 0;

  void validate() const {
    for (double p : {p_alpha, p_beta, p_gamma}) {
      if (p < 0.0 || p > 1.0) throw std::domain_error("event probability outside [0,1]");
    }
    if (std::abs(p_alpha + p_beta + p_gamma - 1.0) > 1e-12)
      throw std::domain_error("event probabilities must sum to 1");
    if (delta_in < 0.0 || delta_out < 0.0)
      throw std::domain_error("attachment offsets must be nonnegative");
  }
};

struct ErdosRenyiParams {
  double p_edge = 0.1;
  std::uint64_t seed = 0;

  void validate() const {
    if (p_edge < 0.0 || p_edge > 1.0) throw std::domain_error("p_edge outside [0,1]");
  }
};

namespace detail {

// Categorical draw over nodes 0..m-1 with weight degree[i] + delta.
inline int choose_biased(SeededRng& rng, const std::vector<int>& degree, int m, double delta) {
  double total = delta * m;
  for (int i = 0; i < m; ++i) total += degree[i];
  double u = rng.uniform() * total;
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    acc += degree[i] + delta;
    if (u < acc) return i;
  }
  return m - 1;
}

}  // namespace detail

/// Directed scale-free growth. Starts from a 3-cycle (a single edge 0->1 when
/// n_target == 2) and repeats: with p_alpha add node v and edge v->w, w drawn
/// with weight in_degree + delta_in over all nodes including v; with p_beta add
/// an edge between existing nodes, source drawn by out_degree + delta_out and
/// target by in_degree + delta_in; with p_gamma add node w and edge v->w with v
/// drawn by out_degree + delta_out. Multi-edges count toward degrees during
/// growth and are collapsed afterwards; loops are kept. Draw order per event is
/// fixed (event selector, then source, then target), so a seed pins the graph.
inline DirectedGraph generate_scale_free(int n_target, const ScaleFreeParams& params) {
  if (n_target < 2) throw std::domain_error("generate_scale_free: n_target must be >= 2");
  params.validate();

  std::vector<Edge> multi;
  std::vector<int> in_deg, out_deg;
  auto add_edge = [&](int u, int v) {
    multi.emplace_back(u, v);
    ++out_deg[u];
    ++in_deg[v];
  };

  int n = 0;
  if (n_target >= 3) {
    n = 3;
    in_deg.assign(3, 0);
    out_deg.assign(3, 0);
    add_edge(0, 1);
    add_edge(1, 2);
    add_edge(2, 0);
  } else {
    n = 2;
    in_deg.assign(2, 0);
    out_deg.assign(2, 0);
    add_edge(0, 1);
  }

  SeededRng rng(params.seed);
  while (n < n_target) {
    double r = rng.uniform();
    if (r < params.p_alpha) {
      int v = n++;
      in_deg.push_back(0);
      out_deg.push_back(0);
      int w = detail::choose_biased(rng, in_deg, n, params.delta_in);
      add_edge(v, w);
    } else if (r < params.p_alpha + params.p_beta) {
      int v = detail::choose_biased(rng, out_deg, n, params.delta_out);
      int w = detail::choose_biased(rng, in_deg, n, params.delta_in);
      add_edge(v, w);
    } else {
      int v = detail::choose_biased(rng, out_deg, n, params.delta_out);
      int w = n++;
      in_deg.push_back(0);
      out_deg.push_back(0);
      add_edge(v, w);
    }
  }
  return DirectedGraph(n, std::move(multi));  // constructor dedups
}

/// G(n, p) digraph: every ordered pair (u, v), u != v, receives an edge
/// independently with p_edge. Pairs are visited in row-major order, one
/// uniform draw each, so a seed pins the graph.
inline DirectedGraph generate_erdos_renyi(int n, const ErdosRenyiParams& params) {
  if (n < 1) throw std::domain_error("generate_erdos_renyi: n must be >= 1");
  params.validate();
  SeededRng rng(params.seed);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      if (rng.bernoulli(params.p_edge)) edges.emplace_back(u, v);
    }
  }
  return DirectedGraph(n, std::move(edges));
}

/// Edge-list file: UTF-8 text, '#' starts a comment, optional first
/// data line "n=<int>", then "u v" per line with 0-based decimal ids.
/// Without a header, n = 1 + max node id.
inline DirectedGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path.string());

  std::vector<Edge> edges;
  int declared_n = -1;
  bool saw_data = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
    if (trimmed.empty()) continue;

    if (!saw_data && trimmed.rfind("n=", 0) == 0) {
      std::istringstream hs(trimmed.substr(2));
      long long n = -1;
      if (!(hs >> n) || n < 1) throw parse_error("invalid node-count header", line_no);
      std::string rest;
      if (hs >> rest) throw parse_error("trailing tokens after header", line_no);
      declared_n = static_cast<int>(n);
      saw_data = true;
      continue;
    }
    saw_data = true;

    std::istringstream ls(trimmed);
    long long u = 0, v = 0;
    std::string rest;
    if (!(ls >> u >> v)) throw parse_error("expected two integers \"u v\"", line_no);
    if (ls >> rest) throw parse_error("trailing tokens after edge", line_no);
    if (u < 0 || v < 0) throw std::domain_error("negative node id (line " + std::to_string(line_no) + ")");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }

  int n = declared_n;
  if (n < 0) {
    int max_id = -1;
    for (auto [u, v] : edges) max_id = std::max({max_id, u, v});
    if (max_id < 0) throw std::runtime_error("edge list is empty and has no n= header");
    n = max_id + 1;
  }
  return DirectedGraph(n, std::move(edges));
}

/// Writes the "n=" header (so isolated nodes survive a round trip) and one
/// sorted "u v" line per edge. Output is byte-deterministic.
inline void save_edge_list(const DirectedGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write edge list: " + path.string());
  out << "n=" << g.node_count() << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace qwr
