#include "netcap/rebalance.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace netcap {

LayeredNet balance_layers(const LayeredNet& net, const NormParams& params) {
  if (net.activation() != Activation::relu)
    throw std::invalid_argument("balance_layers requires relu activation");

  const int d = net.depth();
  std::vector<double> norms;
  norms.reserve(static_cast<std::size_t>(d));
  double log_gamma = 0.0;
  bool zero = false;
  for (const auto& w : net.layers()) {
    const double n = group_norm(w, params);
    norms.push_back(n);
    if (n == 0.0)
      zero = true;
    else
      log_gamma += std::log(n);
  }

  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(d));
  if (zero) {
    for (const auto& w : net.layers()) out.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
    return LayeredNet::create(net.activation(), std::move(out));
  }
  const double target = std::exp(log_gamma / d);
  for (int k = 0; k < d; ++k)
    out.push_back(net.layers()[static_cast<std::size_t>(k)] *
                  (target / norms[static_cast<std::size_t>(k)]));
  return LayeredNet::create(net.activation(), std::move(out));
}

LayeredNet scale_layers(const LayeredNet& net, double c) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(net.layers().size());
  for (const auto& w : net.layers()) out.push_back(w * c);
  return LayeredNet::create(net.activation(), std::move(out));
}

LayeredNet balance_units(const LayeredNet& net, double p) {
  if (net.depth() != 2) throw std::invalid_argument("balance_units requires depth exactly 2");
  if (net.activation() != Activation::relu)
    throw std::invalid_argument("balance_units requires relu activation");

  Eigen::MatrixXd w1 = net.layers()[0];
  Eigen::MatrixXd w2 = net.layers()[1];
  for (Eigen::Index j = 0; j < w1.rows(); ++j) {
    const double c = lp_norm(w1.row(j).transpose(), p);
    const double out = std::abs(w2(0, j));
    const double s = std::sqrt(c * out);
    if (s == 0.0) {
      w1.row(j).setZero();
      w2(0, j) = 0.0;
      continue;
    }
    w1.row(j) *= s / c;
    w2(0, j) = (w2(0, j) < 0.0 ? -1.0 : 1.0) * s;
  }
  return LayeredNet::create(net.activation(), {std::move(w1), std::move(w2)});
}

Network unitize_units(const Network& net, double p) {
  if (net.activation() != Activation::relu)
    throw std::invalid_argument("unitize_units requires relu activation");
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("p must satisfy 1 <= p < inf");

  // Mutable weight table keyed by (src,dst); uniqueness is a class invariant.
  std::unordered_map<long long, double> weight;
  auto key = [](int s, int d) {
    return (static_cast<long long>(s) << 32) ^ static_cast<unsigned int>(d);
  };
  for (const Edge& e : net.edges()) weight[key(e.src, e.dst)] = e.weight;

  std::unordered_set<int> removed;
  for (const int id : net.topological_order()) {
    if (net.node(id).role != NodeRole::hidden) continue;
    double acc = 0.0;
    for (const Edge& e : net.incoming(id)) {
      if (removed.count(e.src)) continue;
      acc += std::pow(std::abs(weight.at(key(e.src, id))), p);
    }
    const double c = std::pow(acc, 1.0 / p);
    if (c == 0.0) {
      removed.insert(id);
      continue;
    }
    for (const Edge& e : net.incoming(id))
      if (!removed.count(e.src)) weight.at(key(e.src, id)) /= c;
    for (const Edge& e : net.outgoing(id)) weight.at(key(id, e.dst)) *= c;
  }

  std::vector<Node> nodes;
  for (const Node& n : net.nodes())
    if (!removed.count(n.id)) nodes.push_back(n);
  std::vector<Edge> edges;
  for (const Edge& e : net.edges())
    if (!removed.count(e.src) && !removed.count(e.dst))
      edges.push_back({e.src, e.dst, weight.at(key(e.src, e.dst))});
  return Network::create(net.num_inputs(), net.bias_input(), net.activation(), std::move(nodes),
                         std::move(edges));
}

Network prune_dead(const Network& net) {
  std::unordered_set<int> fwd, bwd;
  for (const int id : net.topological_order()) {
    const Node& n = net.node(id);
    if (n.role == NodeRole::input) {
      fwd.insert(id);
      continue;
    }
    for (const Edge& e : net.incoming(id))
      if (fwd.count(e.src)) {
        fwd.insert(id);
        break;
      }
  }
  const auto& topo = net.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const Node& n = net.node(*it);
    if (n.role == NodeRole::output) {
      bwd.insert(*it);
      continue;
    }
    for (const Edge& e : net.outgoing(*it))
      if (bwd.count(e.dst)) {
        bwd.insert(*it);
        break;
      }
  }

  auto alive = [&](const Node& n) {
    if (n.role != NodeRole::hidden) return true;  // interface nodes always stay
    return fwd.count(n.id) != 0 && bwd.count(n.id) != 0;
  };
  std::unordered_set<int> kept;
  std::vector<Node> nodes;
  for (const Node& n : net.nodes())
    if (alive(n)) {
      nodes.push_back(n);
      kept.insert(n.id);
    }
  std::vector<Edge> edges;
  for (const Edge& e : net.edges())
    if (kept.count(e.src) && kept.count(e.dst)) edges.push_back(e);
  return Network::create(net.num_inputs(), net.bias_input(), net.activation(), std::move(nodes),
                         std::move(edges));
}

}  // namespace netcap
