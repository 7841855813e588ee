#include "netcap/constructions.hpp"

#include <cmath>
#include <stdexcept>

namespace netcap {

std::vector<double> hypercube_vertex(int inputs, unsigned index) {
  std::vector<double> v(static_cast<std::size_t>(inputs));
  for (int j = 0; j < inputs; ++j)
    v[static_cast<std::size_t>(j)] = (index >> j) & 1u ? 1.0 : -1.0;
  return v;
}

std::vector<double> hypercube_point_with_bias(int inputs, unsigned index) {
  std::vector<double> x = hypercube_vertex(inputs, index);
  x.insert(x.begin(), 1.0);
  return x;
}

LayeredNet shattering_layers(const ShatterSpec& spec, const std::vector<int>& labels) {
  const int dim = spec.inputs;
  if (dim < 1 || dim > 24) throw std::invalid_argument("shattering: 1 <= D <= 24 required");
  if (spec.depth < 2) throw std::invalid_argument("shattering: depth >= 2 required");
  if (spec.width < 1) throw std::invalid_argument("shattering: H >= 1 required");
  const std::size_t m = std::size_t{1} << dim;
  if (labels.size() != m)
    throw std::invalid_argument("shattering: labels must have length 2^D");
  for (const int l : labels)
    if (l != 1 && l != -1) throw std::invalid_argument("shattering: labels must be +-1");

  // One exact vertex indicator per cube vertex: fires with value 1 iff the
  // input sign pattern matches, is <= -1 before the relu otherwise.
  Eigen::MatrixXd w1(static_cast<Eigen::Index>(m), dim + 1);
  for (std::size_t i = 0; i < m; ++i) {
    const auto u = hypercube_vertex(dim, static_cast<unsigned>(i));
    w1(static_cast<Eigen::Index>(i), 0) = -static_cast<double>(dim - 1);
    for (int j = 0; j < dim; ++j)
      w1(static_cast<Eigen::Index>(i), 1 + j) = u[static_cast<std::size_t>(j)];
  }

  std::vector<Eigen::MatrixXd> mats{w1};
  Eigen::RowVectorXd top(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i)
    top[static_cast<Eigen::Index>(i)] = static_cast<double>(labels[i]);

  // Each added level splits the running output f into H copies of [f]_+ and
  // H copies of [-f]_+ rebuilt as (1/H) sum [f]_+ - (1/H) sum [-f]_+ = f.
  const int h = spec.width;
  for (int level = 3; level <= spec.depth; ++level) {
    Eigen::MatrixXd split(2 * h, top.cols());
    for (int c = 0; c < h; ++c) {
      split.row(c) = top;
      split.row(h + c) = -top;
    }
    mats.push_back(std::move(split));
    Eigen::RowVectorXd avg(2 * h);
    for (int c = 0; c < h; ++c) {
      avg[c] = 1.0 / h;
      avg[h + c] = -1.0 / h;
    }
    top = std::move(avg);
  }
  mats.push_back(top);
  return LayeredNet::create(Activation::relu, std::move(mats));
}

Network shattering_net(const ShatterSpec& spec, const std::vector<int>& labels) {
  return to_dag(shattering_layers(spec, labels), /*bias_input=*/true);
}

double shattering_gamma_formula(const ShatterSpec& spec) {
  const double m = std::pow(2.0, spec.inputs);
  const double bracket =
      std::max(0.0, spec.params.inv_p_star() - spec.params.inv_q());
  return std::pow(static_cast<double>(spec.inputs), 1.0 / spec.params.p) *
         std::pow(m, 1.0 / spec.params.p + spec.params.inv_q()) *
         std::pow(static_cast<double>(spec.width), -(spec.depth - 2) * bracket);
}

LayeredNet halfspace_intersection_layers(const std::vector<std::vector<int>>& normals) {
  if (normals.empty()) throw std::invalid_argument("halfspaces: need at least one normal");
  const std::size_t k = normals.size();
  const std::size_t dim = normals.front().size();
  if (dim == 0) throw std::invalid_argument("halfspaces: empty normal");
  for (const auto& w : normals) {
    if (w.size() != dim) throw std::invalid_argument("halfspaces: ragged normals");
    for (const int c : w)
      if (c != 1 && c != -1) throw std::invalid_argument("halfspaces: normals must be +-1");
  }

  // Rows 2i, 2i+1: [<w_i,x>]_+ and [<w_i,x>-1]_+; last row passes the bias.
  Eigen::MatrixXd w1 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(2 * k + 1),
                                             static_cast<Eigen::Index>(dim + 1));
  Eigen::RowVectorXd w2(static_cast<Eigen::Index>(2 * k + 1));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      w1(static_cast<Eigen::Index>(2 * i), static_cast<Eigen::Index>(1 + j)) = normals[i][j];
      w1(static_cast<Eigen::Index>(2 * i + 1), static_cast<Eigen::Index>(1 + j)) = normals[i][j];
    }
    w1(static_cast<Eigen::Index>(2 * i + 1), 0) = -1.0;
    w2[static_cast<Eigen::Index>(2 * i)] = 2.0;
    w2[static_cast<Eigen::Index>(2 * i + 1)] = -2.0;
  }
  w1(static_cast<Eigen::Index>(2 * k), 0) = 1.0;
  w2[static_cast<Eigen::Index>(2 * k)] = 1.0 - 2.0 * static_cast<double>(k);
  return LayeredNet::create(Activation::relu, {std::move(w1), w2});
}

Network halfspace_intersection_net(const std::vector<std::vector<int>>& normals) {
  return to_dag(halfspace_intersection_layers(normals), /*bias_input=*/true);
}

HalfspaceGammaReport halfspace_gamma_report(const std::vector<std::vector<int>>& normals,
                                            const NormParams& params) {
  const LayeredNet net = halfspace_intersection_layers(normals);
  const auto k = static_cast<Eigen::Index>(normals.size());
  const auto dim = static_cast<Eigen::Index>(normals.front().size());

  // Bias-free part: drop the bias column, the pass-through unit and the
  // constant output weight.
  Eigen::MatrixXd w1core = net.layers()[0].block(0, 1, 2 * k, dim);
  Eigen::MatrixXd w2core = net.layers()[1].block(0, 0, 1, 2 * k);
  const LayeredNet core = LayeredNet::create(Activation::relu, {w1core, w2core});

  HalfspaceGammaReport r;
  r.measured = gamma_pq(net, params);
  r.core = gamma_pq(core, params);
  r.formula = 4.0 * std::pow(static_cast<double>(dim), 1.0 / params.p) *
              static_cast<double>(k) * static_cast<double>(k);
  r.bias_slack = r.measured - r.core;
  return r;
}

CounterexampleSets counterexample_sets() {
  CounterexampleSets s;
  s.h.push_back((Eigen::VectorXd(3) << 1, 0, 1).finished());
  s.h.push_back((Eigen::VectorXd(3) << 0, 1, 1).finished());
  s.h_prime = s.h;
  s.h_prime.push_back((Eigen::VectorXd(3) << 0.5, 0, 0).finished());
  return s;
}

}  // namespace netcap
