#include "netcap/reference.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace netcap {

namespace {

void enumerate_paths(const Network& net, int node, double product, double p, double& acc) {
  if (node == net.output_id()) {
    acc += product;
    return;
  }
  for (const Edge& e : net.outgoing(node))
    enumerate_paths(net, e.dst, product * std::pow(std::abs(e.weight), p), p, acc);
}

}  // namespace

double path_norm_by_enumeration(const Network& net, double p) {
  double acc = 0.0;
  for (const Node& n : net.nodes())
    if (n.role == NodeRole::input) enumerate_paths(net, n.id, 1.0, p, acc);
  return std::pow(acc, 1.0 / p);
}

double forward_by_scalar_recursion(const LayeredNet& net, std::span<const double> x) {
  if (static_cast<int>(x.size()) != net.input_dim())
    throw std::invalid_argument("input dimension mismatch");
  std::vector<double> prev(x.begin(), x.end());
  const int d = net.depth();
  for (int k = 0; k < d; ++k) {
    const Eigen::MatrixXd& w = net.layers()[static_cast<std::size_t>(k)];
    std::vector<double> cur(static_cast<std::size_t>(w.rows()), 0.0);
    for (Eigen::Index j = 0; j < w.rows(); ++j) {
      double z = 0.0;
      for (Eigen::Index i = 0; i < w.cols(); ++i)
        z += w(j, i) * prev[static_cast<std::size_t>(i)];
      cur[static_cast<std::size_t>(j)] = k + 1 == d ? z : activate(net.activation(), z);
    }
    prev = std::move(cur);
  }
  return prev[0];
}

}  // namespace netcap
