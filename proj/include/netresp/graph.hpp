#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "netresp/errors.hpp"

namespace netresp {

struct Arc {
  int src;
  int dst;
  double weight;
};

// Immutable nonnegative weighted digraph stored as CSR in both directions,
// so matrix-vector products can run either push (by source) or pull (by
// destination).  Parallel arcs are merged by weight summation on build;
// self-loops are kept but flagged so callers can warn.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;

  static WeightedDigraph from_arcs(int node_count, std::vector<Arc> arcs);

  int node_count() const { return nodes_; }
  long long arc_count() const { return static_cast<long long>(out_dst_.size()); }
  bool has_self_loops() const { return has_self_loops_; }

  std::span<const int> out_neighbors(int node) const {
    return {out_dst_.data() + out_off_[node],
            out_dst_.data() + out_off_[node + 1]};
  }
  std::span<const double> out_weights(int node) const {
    return {out_w_.data() + out_off_[node], out_w_.data() + out_off_[node + 1]};
  }
  std::span<const int> in_sources(int node) const {
    return {in_src_.data() + in_off_[node], in_src_.data() + in_off_[node + 1]};
  }
  std::span<const double> in_weights(int node) const {
    return {in_w_.data() + in_off_[node], in_w_.data() + in_off_[node + 1]};
  }

  long long out_degree(int node) const {
    return out_off_[node + 1] - out_off_[node];
  }
  double out_weight_sum(int node) const;

  // True when every arc has weight exactly 1.
  bool unit_weights() const;

  // Merged arcs sorted by (src, dst).
  std::vector<Arc> arcs() const;

 private:
  int nodes_ = 0;
  bool has_self_loops_ = false;
  std::vector<long long> out_off_{0};
  std::vector<int> out_dst_;
  std::vector<double> out_w_;
  std::vector<long long> in_off_{0};
  std::vector<int> in_src_;
  std::vector<double> in_w_;
};

// Synthetic families.  Undirected families emit both arc directions with
// unit weight; the b-ary tree emits parent->child arcs only (root = node 0).
WeightedDigraph make_bary_tree(int branching, int depth);
WeightedDigraph make_complete(int nodes);
WeightedDigraph make_cycle(int nodes);
WeightedDigraph make_erdos_renyi(int nodes, double edge_prob,
                                 std::uint64_t seed);
WeightedDigraph make_barabasi_albert(int nodes, int attach,
                                     std::uint64_t seed);

// Edge-list text format: one arc per line as "src dst weight", whitespace
// separated, 0-based indices, weight optional (default 1.0); '#' starts a
// comment; blank lines ignored.  Weights are written with 17 significant
// digits so load(write(g)) reproduces them bit for bit.
WeightedDigraph load_edge_list(std::istream& in);
WeightedDigraph load_edge_list_file(const std::string& path);
void write_edge_list(const WeightedDigraph& graph, std::ostream& out);
void write_edge_list_file(const WeightedDigraph& graph,
                          const std::string& path);

}  // namespace netresp
