#include "netresp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "netresp/rng.hpp"

namespace netresp {

WeightedDigraph WeightedDigraph::from_arcs(int node_count,
                                           std::vector<Arc> arcs) {
  if (node_count < 0) throw ValidationError("node count must be >= 0");
  for (const Arc& a : arcs) {
    if (a.src < 0 || a.src >= node_count || a.dst < 0 || a.dst >= node_count) {
      throw ValidationError("arc (" + std::to_string(a.src) + " -> " +
                            std::to_string(a.dst) + ") outside node range [0, " +
                            std::to_string(node_count) + ")");
    }
    if (!std::isfinite(a.weight) || a.weight < 0.0) {
      throw ValidationError("arc weights must be finite and >= 0");
    }
  }

  std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
    return x.src != y.src ? x.src < y.src : x.dst < y.dst;
  });

  // Merge parallel arcs by weight summation.
  std::vector<Arc> merged;
  merged.reserve(arcs.size());
  for (const Arc& a : arcs) {
    if (!merged.empty() && merged.back().src == a.src &&
        merged.back().dst == a.dst) {
      merged.back().weight += a.weight;
    } else {
      merged.push_back(a);
    }
  }

  WeightedDigraph g;
  g.nodes_ = node_count;
  g.out_off_.assign(static_cast<std::size_t>(node_count) + 1, 0);
  g.in_off_.assign(static_cast<std::size_t>(node_count) + 1, 0);
  g.out_dst_.resize(merged.size());
  g.out_w_.resize(merged.size());
  g.in_src_.resize(merged.size());
  g.in_w_.resize(merged.size());

  for (const Arc& a : merged) {
    ++g.out_off_[static_cast<std::size_t>(a.src) + 1];
    ++g.in_off_[static_cast<std::size_t>(a.dst) + 1];
    if (a.src == a.dst) g.has_self_loops_ = true;
  }
  for (int v = 0; v < node_count; ++v) {
    g.out_off_[v + 1] += g.out_off_[v];
    g.in_off_[v + 1] += g.in_off_[v];
  }

  std::vector<long long> out_pos(g.out_off_.begin(), g.out_off_.end() - 1);
  std::vector<long long> in_pos(g.in_off_.begin(), g.in_off_.end() - 1);
  for (const Arc& a : merged) {
    const long long op = out_pos[a.src]++;
    g.out_dst_[op] = a.dst;
    g.out_w_[op] = a.weight;
    const long long ip = in_pos[a.dst]++;
    g.in_src_[ip] = a.src;
    g.in_w_[ip] = a.weight;
  }
  return g;
}

double WeightedDigraph::out_weight_sum(int node) const {
  double sum = 0.0;
  for (double w : out_weights(node)) sum += w;
  return sum;
}

bool WeightedDigraph::unit_weights() const {
  for (double w : out_w_) {
    if (w != 1.0) return false;
  }
  return true;
}

std::vector<Arc> WeightedDigraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(out_dst_.size());
  for (int u = 0; u < nodes_; ++u) {
    const auto nbrs = out_neighbors(u);
    const auto ws = out_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      out.push_back({u, nbrs[i], ws[i]});
    }
  }
  return out;
}

WeightedDigraph make_bary_tree(int branching, int depth) {
  if (branching < 1) throw ValidationError("tree branching must be >= 1");
  if (depth < 0) throw ValidationError("tree depth must be >= 0");

  long long nodes = 1, layer = 1;
  for (int k = 0; k < depth; ++k) {
    layer *= branching;
    nodes += layer;
    if (nodes > 50'000'000) {
      throw ValidationError("tree too large: > 5e7 nodes");
    }
  }

  std::vector<Arc> arcs;
  arcs.reserve(static_cast<std::size_t>(nodes - 1));
  // Children of node v are b*v+1 .. b*v+b in breadth-first numbering.
  for (long long v = 0; v < nodes; ++v) {
    for (int c = 1; c <= branching; ++c) {
      const long long child = branching * v + c;
      if (child >= nodes) break;
      arcs.push_back({static_cast<int>(v), static_cast<int>(child), 1.0});
    }
  }
  return WeightedDigraph::from_arcs(static_cast<int>(nodes), std::move(arcs));
}

WeightedDigraph make_complete(int nodes) {
  if (nodes < 1) throw ValidationError("node count must be >= 1");
  std::vector<Arc> arcs;
  arcs.reserve(static_cast<std::size_t>(nodes) * (nodes - 1));
  for (int u = 0; u < nodes; ++u) {
    for (int v = 0; v < nodes; ++v) {
      if (u != v) arcs.push_back({u, v, 1.0});
    }
  }
  return WeightedDigraph::from_arcs(nodes, std::move(arcs));
}

WeightedDigraph make_cycle(int nodes) {
  if (nodes < 1) throw ValidationError("node count must be >= 1");
  std::vector<Arc> arcs;
  for (int u = 0; u < nodes; ++u) {
    const int next = (u + 1) % nodes;
    arcs.push_back({u, next, 1.0});
    arcs.push_back({next, u, 1.0});
  }
  return WeightedDigraph::from_arcs(nodes, std::move(arcs));
}

WeightedDigraph make_erdos_renyi(int nodes, double edge_prob,
                                 std::uint64_t seed) {
  if (nodes < 1) throw ValidationError("node count must be >= 1");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw ValidationError("edge probability must be in [0, 1]");
  }
  Xoshiro256 rng(seed);
  std::vector<Arc> arcs;
  for (int i = 0; i < nodes; ++i) {
    for (int j = i + 1; j < nodes; ++j) {
      if (rng.bernoulli(edge_prob)) {
        arcs.push_back({i, j, 1.0});
        arcs.push_back({j, i, 1.0});
      }
    }
  }
  return WeightedDigraph::from_arcs(nodes, std::move(arcs));
}

WeightedDigraph make_barabasi_albert(int nodes, int attach,
                                     std::uint64_t seed) {
  if (attach < 1) throw ValidationError("attachment count must be >= 1");
  if (nodes <= attach) {
    throw ValidationError("node count must exceed the attachment count");
  }
  Xoshiro256 rng(seed);

  // Seed clique on attach+1 nodes, then degree-proportional attachment via
  // the repeated-endpoints bag.
  std::vector<Arc> arcs;
  std::vector<int> bag;
  const int clique = attach + 1;
  for (int i = 0; i < clique; ++i) {
    for (int j = i + 1; j < clique; ++j) {
      arcs.push_back({i, j, 1.0});
      arcs.push_back({j, i, 1.0});
      bag.push_back(i);
      bag.push_back(j);
    }
  }

  std::vector<int> chosen;
  for (int v = clique; v < nodes; ++v) {
    chosen.clear();
    while (static_cast<int>(chosen.size()) < attach) {
      const int target =
          bag[static_cast<std::size_t>(rng.uniform01() * bag.size())];
      if (std::find(chosen.begin(), chosen.end(), target) == chosen.end()) {
        chosen.push_back(target);
      }
    }
    for (int target : chosen) {
      arcs.push_back({v, target, 1.0});
      arcs.push_back({target, v, 1.0});
      bag.push_back(v);
      bag.push_back(target);
    }
  }
  return WeightedDigraph::from_arcs(nodes, std::move(arcs));
}

WeightedDigraph load_edge_list(std::istream& in) {
  std::vector<Arc> arcs;
  int max_node = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    long long src, dst;
    if (!(fields >> src) || !(fields >> dst)) {
      throw ParseError(lineno, 1, "expected 'src dst [weight]'");
    }
    double weight = 1.0;
    if (fields >> weight) {
      if (!std::isfinite(weight) || weight < 0.0) {
        throw ParseError(lineno, 1, "weight must be finite and >= 0");
      }
    }
    std::string trailing;
    if (fields >> trailing) {
      throw ParseError(lineno, 1, "unexpected trailing field '" + trailing + "'");
    }
    if (src < 0 || dst < 0 || src > 2'000'000'000 || dst > 2'000'000'000) {
      throw ParseError(lineno, 1, "node indices must be non-negative");
    }
    arcs.push_back({static_cast<int>(src), static_cast<int>(dst), weight});
    max_node = std::max({max_node, static_cast<int>(src), static_cast<int>(dst)});
  }
  return WeightedDigraph::from_arcs(max_node + 1, std::move(arcs));
}

WeightedDigraph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file: " + path);
  return load_edge_list(in);
}

void write_edge_list(const WeightedDigraph& graph, std::ostream& out) {
  char buf[64];
  for (const Arc& a : graph.arcs()) {
    std::snprintf(buf, sizeof(buf), "%d %d %.17g", a.src, a.dst, a.weight);
    out << buf << '\n';
  }
}

void write_edge_list_file(const WeightedDigraph& graph,
                          const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write graph file: " + path);
  write_edge_list(graph, out);
  if (!out.flush()) throw IoError("write failed: " + path);
}

}  // namespace netresp
