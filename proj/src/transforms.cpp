#include "netcap/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "netcap/rebalance.hpp"

namespace netcap {

namespace {

// Ordered mutable adjacency used by the rewrites; std::map keeps every
// iteration deterministic.
struct MutGraph {
  struct NodeState {
    NodeRole role;
    int input_index;
    std::map<int, double> in;   // src -> weight
    std::map<int, double> out;  // dst -> weight
  };
  std::map<int, NodeState> nodes;
  int next_id = 0;

  explicit MutGraph(const Network& net) {
    for (const Node& n : net.nodes()) {
      nodes.emplace(n.id, NodeState{n.role, n.input_index, {}, {}});
      next_id = std::max(next_id, n.id + 1);
    }
    for (const Edge& e : net.edges()) {
      nodes.at(e.dst).in.emplace(e.src, e.weight);
      nodes.at(e.src).out.emplace(e.dst, e.weight);
    }
  }

  void add_node(int id, NodeRole role) { nodes.emplace(id, NodeState{role, -1, {}, {}}); }

  void add_edge(int src, int dst, double w) {
    nodes.at(dst).in.emplace(src, w);
    nodes.at(src).out.emplace(dst, w);
  }

  void remove_edge(int src, int dst) {
    nodes.at(dst).in.erase(src);
    nodes.at(src).out.erase(dst);
  }

  void remove_node(int id) {
    auto& st = nodes.at(id);
    for (const auto& [src, w] : st.in) nodes.at(src).out.erase(id);
    for (const auto& [dst, w] : st.out) nodes.at(dst).in.erase(id);
    nodes.erase(id);
  }

  Network build(int num_inputs, bool bias_input, Activation act) const {
    std::vector<Node> ns;
    std::vector<Edge> es;
    for (const auto& [id, st] : nodes) {
      ns.push_back({id, st.role, st.input_index});
      for (const auto& [src, w] : st.in) es.push_back({src, id, w});
    }
    return Network::create(num_inputs, bias_input, act, std::move(ns), std::move(es));
  }
};

}  // namespace

TreeifyResult treeify(const Network& net, std::size_t max_nodes) {
  if (net.activation() != Activation::relu)
    throw std::invalid_argument("treeify requires relu activation");

  const Network live = prune_dead(net);
  MutGraph g(live);

  // Hidden nodes from the output backwards; consumers of a processed node
  // already have out-degree <= 1, and fresh copies never need a visit.
  std::vector<int> order = live.topological_order();
  std::reverse(order.begin(), order.end());

  std::size_t copies = 0;
  for (const int id : order) {
    const auto it = g.nodes.find(id);
    if (it == g.nodes.end() || it->second.role != NodeRole::hidden) continue;
    if (it->second.out.size() <= 1) continue;

    const std::map<int, double> in = it->second.in;
    const std::map<int, double> out = it->second.out;
    g.remove_node(id);
    for (const auto& [dst, w] : out) {
      const int copy = g.next_id++;
      g.add_node(copy, NodeRole::hidden);
      for (const auto& [src, wu] : in) g.add_edge(src, copy, wu);
      g.add_edge(copy, dst, w);
      ++copies;
      if (g.nodes.size() > max_nodes)
        throw std::runtime_error("treeify: node cap exceeded (" + std::to_string(max_nodes) + ")");
    }
  }

  return {g.build(net.num_inputs(), net.bias_input(), net.activation()), copies};
}

namespace {

// Longest path from any source (d_in) and to the sink side (d_out),
// computed over the current graph. Missing entries mean unreachable.
void longest_paths(const MutGraph& g, std::map<int, int>& d_in, std::map<int, int>& d_out) {
  d_in.clear();
  d_out.clear();
  // Nodes are acyclic by construction; process in a Kahn order.
  std::map<int, int> indeg;
  std::vector<int> ready, order;
  for (const auto& [id, st] : g.nodes) {
    indeg[id] = static_cast<int>(st.in.size());
    if (st.in.empty()) ready.push_back(id);
  }
  while (!ready.empty()) {
    std::sort(ready.begin(), ready.end());
    const int id = ready.front();
    ready.erase(ready.begin());
    order.push_back(id);
    for (const auto& [dst, w] : g.nodes.at(id).out)
      if (--indeg[dst] == 0) ready.push_back(dst);
  }
  for (const int id : order) {
    int d = 0;
    for (const auto& [src, w] : g.nodes.at(id).in) d = std::max(d, d_in[src] + 1);
    d_in[id] = d;
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int d = 0;
    for (const auto& [dst, w] : g.nodes.at(*it).out) d = std::max(d, d_out[dst] + 1);
    d_out[*it] = d;
  }
}

}  // namespace

LayerizeResult layerize(const Network& net, int depth, std::size_t max_nodes) {
  if (net.activation() != Activation::relu)
    throw std::invalid_argument("layerize requires relu activation");
  if (net.depth() != depth)
    throw std::invalid_argument("layerize: requested depth " + std::to_string(depth) +
                                " does not match the longest path length " +
                                std::to_string(net.depth()));
  {
    const Network live = prune_dead(net);
    if (live.nodes().size() != net.nodes().size())
      throw std::invalid_argument("layerize requires every hidden node to be live");
  }

  MutGraph g(net);
  LayerizeResult result{LayeredNet::create(net.activation(), {Eigen::MatrixXd::Zero(1, 1)}), false,
                        0};

  std::map<int, int> d_in, d_out;
  for (;;) {
    longest_paths(g, d_in, d_out);
    // First edge (by (src,dst)) lying only on paths shorter than depth.
    int pick_src = -1, pick_dst = -1;
    for (const auto& [id, st] : g.nodes) {
      for (const auto& [dst, w] : st.out) {
        if (d_in.at(id) + d_out.at(dst) < depth - 1) {
          pick_src = id;
          pick_dst = dst;
          break;
        }
      }
      if (pick_src != -1) break;
    }
    if (pick_src == -1) break;

    const double w = g.nodes.at(pick_src).out.at(pick_dst);
    const double root = std::sqrt(std::abs(w));
    const double sign = w < 0.0 ? -1.0 : (w > 0.0 ? 1.0 : 0.0);
    const int mid = g.next_id++;
    g.remove_edge(pick_src, pick_dst);
    g.add_node(mid, NodeRole::hidden);
    g.add_edge(pick_src, mid, root);
    g.add_edge(mid, pick_dst, sign * root);
    if (g.nodes.at(pick_src).role == NodeRole::input) result.nonneg_inputs_only = true;
    ++result.subdivisions;
    if (g.nodes.size() > max_nodes)
      throw std::runtime_error("layerize: node cap exceeded (" + std::to_string(max_nodes) + ")");
  }

  // Every path now has length `depth`; node v belongs to layer d_in(v).
  longest_paths(g, d_in, d_out);
  std::vector<std::vector<int>> layer_ids(static_cast<std::size_t>(depth) + 1);
  for (const auto& [id, st] : g.nodes) {
    if (st.role == NodeRole::input) continue;
    layer_ids.at(static_cast<std::size_t>(d_in.at(id))).push_back(id);
  }
  std::vector<int> prev(static_cast<std::size_t>(net.num_inputs()), -1);
  {
    std::map<int, int> by_index;
    for (const auto& [id, st] : g.nodes)
      if (st.role == NodeRole::input) by_index[st.input_index] = id;
    for (const auto& [idx, id] : by_index) prev[static_cast<std::size_t>(idx)] = id;
  }

  std::vector<Eigen::MatrixXd> mats;
  for (int k = 1; k <= depth; ++k) {
    const auto& ids = layer_ids.at(static_cast<std::size_t>(k));
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ids.size()),
                                              static_cast<Eigen::Index>(prev.size()));
    std::map<int, Eigen::Index> col;
    for (std::size_t c = 0; c < prev.size(); ++c) col[prev[c]] = static_cast<Eigen::Index>(c);
    for (std::size_t r = 0; r < ids.size(); ++r) {
      for (const auto& [src, weight] : g.nodes.at(ids[r]).in) {
        const auto it = col.find(src);
        if (it == col.end())
          throw std::runtime_error("layerize: edge does not connect consecutive layers");
        w(static_cast<Eigen::Index>(r), it->second) = weight;
      }
    }
    mats.push_back(std::move(w));
    prev = ids;
  }
  result.net = LayeredNet::create(net.activation(), std::move(mats));
  return result;
}

LayeredNet convex_combine(const LayeredNet& u, const LayeredNet& v, double alpha,
                          const NormParams& params) {
  if (u.activation() != Activation::relu || v.activation() != Activation::relu)
    throw std::invalid_argument("convex_combine requires relu activation");
  if (u.depth() != v.depth()) throw std::invalid_argument("convex_combine: depth mismatch");
  if (u.input_dim() != v.input_dim())
    throw std::invalid_argument("convex_combine: input dimension mismatch");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");

  for (const auto& w : u.layers())
    if (group_norm(w, params) == 0.0) throw std::invalid_argument("convex_combine: zero-norm layer");
  for (const auto& w : v.layers())
    if (group_norm(w, params) == 0.0) throw std::invalid_argument("convex_combine: zero-norm layer");

  const int d = u.depth();
  const double beta = 1.0 - alpha;
  if (d == 1)
    return LayeredNet::create(Activation::relu,
                              {alpha * u.layers()[0] + beta * v.layers()[0]});

  const LayeredNet bu = balance_layers(u, params);
  const LayeredNet bv = balance_layers(v, params);

  // Exponents summing to 1; the output absorbs what the inner layers do not.
  // Falls back to a uniform split when q < d-1 (the semi-norm condition
  // cannot hold there, but the function combination must still be exact).
  const double inner = params.inv_q();
  double last = 1.0 - (d - 1) * inner;
  std::vector<double> expo(static_cast<std::size_t>(d), inner);
  if (last < 0.0) {
    std::fill(expo.begin(), expo.end(), 1.0 / d);
    last = 1.0 / d;
  }
  expo.back() = last;

  std::vector<Eigen::MatrixXd> out;
  for (int k = 0; k < d; ++k) {
    const Eigen::MatrixXd a = std::pow(alpha, expo[static_cast<std::size_t>(k)]) *
                              bu.layers()[static_cast<std::size_t>(k)];
    const Eigen::MatrixXd b = std::pow(beta, expo[static_cast<std::size_t>(k)]) *
                              bv.layers()[static_cast<std::size_t>(k)];
    Eigen::MatrixXd w;
    if (k == 0 && d > 1) {
      w.setZero(a.rows() + b.rows(), a.cols());
      w.topRows(a.rows()) = a;
      w.bottomRows(b.rows()) = b;
    } else if (k == d - 1) {
      w.setZero(1, a.cols() + b.cols());
      w.leftCols(a.cols()) = a;
      w.rightCols(b.cols()) = b;
    } else {
      w.setZero(a.rows() + b.rows(), a.cols() + b.cols());
      w.topLeftCorner(a.rows(), a.cols()) = a;
      w.bottomRightCorner(b.rows(), b.cols()) = b;
    }
    out.push_back(std::move(w));
  }
  return LayeredNet::create(Activation::relu, std::move(out));
}

}  // namespace netcap
