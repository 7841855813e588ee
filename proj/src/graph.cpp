#include "netcap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>

namespace netcap {

double activate(Activation a, double z) {
  switch (a) {
    case Activation::relu:
      return z > 0.0 ? z : 0.0;
    case Activation::ramp:
      return std::min(std::max(z, 0.0), 1.0);
    case Activation::identity:
      return z;
  }
  return z;
}

std::string to_string(Activation a) {
  switch (a) {
    case Activation::relu:
      return "relu";
    case Activation::ramp:
      return "ramp";
    case Activation::identity:
      return "identity";
  }
  return "relu";
}

Activation activation_from_string(const std::string& s) {
  if (s == "relu") return Activation::relu;
  if (s == "ramp") return Activation::ramp;
  if (s == "identity") return Activation::identity;
  throw std::invalid_argument("unknown activation: " + s);
}

Network Network::create(int num_inputs, bool bias_input, Activation activation,
                        std::vector<Node> nodes, std::vector<Edge> edges) {
  if (num_inputs < 1) throw std::invalid_argument("network needs at least one input");

  Network net;
  net.num_inputs_ = num_inputs;
  net.bias_input_ = bias_input;
  net.activation_ = activation;
  net.nodes_ = std::move(nodes);
  net.edges_ = std::move(edges);

  std::vector<bool> input_seen(static_cast<std::size_t>(num_inputs), false);
  for (std::size_t i = 0; i < net.nodes_.size(); ++i) {
    const Node& n = net.nodes_[i];
    if (!net.index_.emplace(n.id, i).second)
      throw std::invalid_argument("duplicate node id " + std::to_string(n.id));
    switch (n.role) {
      case NodeRole::input:
        if (n.input_index < 0 || n.input_index >= num_inputs)
          throw std::invalid_argument("input index out of range");
        if (input_seen[static_cast<std::size_t>(n.input_index)])
          throw std::invalid_argument("duplicate input index");
        input_seen[static_cast<std::size_t>(n.input_index)] = true;
        break;
      case NodeRole::output:
        if (net.output_id_ != -1) throw std::invalid_argument("more than one output node");
        net.output_id_ = n.id;
        break;
      case NodeRole::hidden:
        break;
    }
  }
  for (const bool seen : input_seen)
    if (!seen) throw std::invalid_argument("missing input node");
  if (net.output_id_ == -1) throw std::invalid_argument("missing output node");

  net.incoming_.resize(net.nodes_.size());
  net.outgoing_.resize(net.nodes_.size());
  std::set<std::pair<int, int>> seen_pairs;
  for (const Edge& e : net.edges_) {
    if (!net.has_node(e.src) || !net.has_node(e.dst))
      throw std::invalid_argument("edge endpoint refers to a missing node");
    if (!seen_pairs.emplace(e.src, e.dst).second)
      throw std::invalid_argument("duplicate edge");
    if (!std::isfinite(e.weight)) throw std::invalid_argument("non-finite edge weight");
    if (net.node(e.dst).role == NodeRole::input)
      throw std::invalid_argument("input node has an incoming edge");
    if (net.node(e.src).role == NodeRole::output)
      throw std::invalid_argument("output node has an outgoing edge");
    net.incoming_[net.index_.at(e.dst)].push_back(e);
    net.outgoing_[net.index_.at(e.src)].push_back(e);
  }
  for (auto& v : net.incoming_)
    std::sort(v.begin(), v.end(), [](const Edge& a, const Edge& b) { return a.src < b.src; });
  for (auto& v : net.outgoing_)
    std::sort(v.begin(), v.end(), [](const Edge& a, const Edge& b) { return a.dst < b.dst; });

  // Kahn with a min-heap on node id; failure to place every node means a cycle.
  std::unordered_map<int, int> indegree;
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (const Node& n : net.nodes_) {
    const int deg = static_cast<int>(net.incoming(n.id).size());
    indegree[n.id] = deg;
    if (deg == 0) ready.push(n.id);
  }
  while (!ready.empty()) {
    const int id = ready.top();
    ready.pop();
    net.topo_.push_back(id);
    for (const Edge& e : net.outgoing(id))
      if (--indegree[e.dst] == 0) ready.push(e.dst);
  }
  if (net.topo_.size() != net.nodes_.size()) throw std::invalid_argument("graph has a cycle");

  std::unordered_map<int, int> dist;
  int depth = 0, width = 0;
  for (const int id : net.topo_) {
    int d = 0;
    for (const Edge& e : net.incoming(id)) d = std::max(d, dist[e.src] + 1);
    dist[id] = d;
    depth = std::max(depth, d);
    width = std::max(width, static_cast<int>(net.incoming(id).size()));
  }
  net.depth_ = depth;
  net.width_ = width;
  return net;
}

double Network::forward(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != num_inputs_)
    throw std::invalid_argument("input dimension mismatch");
  if (bias_input_ && x[0] != 1.0)
    throw std::invalid_argument("bias coordinate x[0] must equal 1");
  if (topo_.size() != nodes_.size()) throw std::runtime_error("stale topological order");

  std::vector<double> value(nodes_.size(), 0.0);
  for (const int id : topo_) {
    const std::size_t i = index_.at(id);
    const Node& n = nodes_[i];
    if (n.role == NodeRole::input) {
      value[i] = x[static_cast<std::size_t>(n.input_index)];
      continue;
    }
    double acc = 0.0;
    for (const Edge& e : incoming_[i]) acc += e.weight * value[index_.at(e.src)];
    value[i] = n.role == NodeRole::output ? acc : activate(activation_, acc);
  }
  return value[index_.at(output_id_)];
}

LayeredNet LayeredNet::create(Activation activation, std::vector<Eigen::MatrixXd> layers) {
  if (layers.empty()) throw std::invalid_argument("layered net needs at least one matrix");
  for (std::size_t k = 0; k + 1 < layers.size(); ++k)
    if (layers[k + 1].cols() != layers[k].rows())
      throw std::invalid_argument("adjacent layer dimensions are not chain-compatible");
  if (layers.back().rows() != 1)
    throw std::invalid_argument("final layer must have a single output row");
  if (layers.front().cols() < 1) throw std::invalid_argument("first layer needs inputs");
  for (const auto& m : layers)
    if (!m.allFinite()) throw std::invalid_argument("non-finite weight");

  LayeredNet net;
  net.activation_ = activation;
  net.layers_ = std::move(layers);
  return net;
}

int LayeredNet::width() const {
  int w = 0;
  for (const auto& m : layers_) w = std::max(w, static_cast<int>(m.cols()));
  return w;
}

double LayeredNet::forward(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != input_dim())
    throw std::invalid_argument("input dimension mismatch");
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    v = layers_[k] * v;
    if (k + 1 < layers_.size())
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = activate(activation_, v[i]);
  }
  return v[0];
}

Network to_dag(const LayeredNet& net, bool bias_input) {
  const auto& layers = net.layers();
  const int dim = net.input_dim();

  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::vector<int> prev_ids(static_cast<std::size_t>(dim));
  int next_id = 0;
  for (int i = 0; i < dim; ++i) {
    nodes.push_back({next_id, NodeRole::input, i});
    prev_ids[static_cast<std::size_t>(i)] = next_id++;
  }
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const Eigen::MatrixXd& w = layers[k];
    const bool last = k + 1 == layers.size();
    std::vector<int> ids(static_cast<std::size_t>(w.rows()));
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      nodes.push_back({next_id, last ? NodeRole::output : NodeRole::hidden, -1});
      ids[static_cast<std::size_t>(r)] = next_id++;
      for (Eigen::Index c = 0; c < w.cols(); ++c)
        edges.push_back({prev_ids[static_cast<std::size_t>(c)], ids[static_cast<std::size_t>(r)],
                         w(r, c)});
    }
    prev_ids = std::move(ids);
  }
  return Network::create(dim, bias_input, net.activation(), std::move(nodes), std::move(edges));
}

}  // namespace netcap
