#include "netcap/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace netcap {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& terms) {
  double hi = kNegInf;
  for (const double t : terms) hi = std::max(hi, t);
  if (hi == kNegInf) return kNegInf;
  double acc = 0.0;
  for (const double t : terms) acc += std::exp(t - hi);
  return hi + std::log(acc);
}

double lq_reduce(const std::vector<double>& group_norms, const NormParams& params) {
  if (params.q_is_inf()) {
    double hi = 0.0;
    for (const double g : group_norms) hi = std::max(hi, g);
    return hi;
  }
  double acc = 0.0;
  for (const double g : group_norms) acc += std::pow(g, params.q);
  return std::pow(acc, 1.0 / params.q);
}

}  // namespace

NormParams NormParams::make(double p, double q) {
  if (!(p >= 1.0) || std::isinf(p) || std::isnan(p))
    throw std::invalid_argument("p must satisfy 1 <= p < inf");
  if (!(q >= 1.0) || std::isnan(q)) throw std::invalid_argument("q must satisfy 1 <= q <= inf");
  return NormParams{p, q};
}

double lp_norm(const Eigen::VectorXd& v, double p) {
  if (p == 1.0) return v.cwiseAbs().sum();
  if (p == 2.0) return v.norm();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]), p);
  return std::pow(acc, 1.0 / p);
}

double group_norm(const Eigen::MatrixXd& w, const NormParams& params) {
  std::vector<double> rows;
  rows.reserve(static_cast<std::size_t>(w.rows()));
  for (Eigen::Index r = 0; r < w.rows(); ++r)
    rows.push_back(lp_norm(w.row(r).transpose(), params.p));
  return lq_reduce(rows, params);
}

double mu_pq(const Network& net, const NormParams& params) {
  std::vector<double> groups;
  for (const Node& n : net.nodes()) {
    const auto& in = net.incoming(n.id);
    if (in.empty()) continue;
    Eigen::VectorXd v(static_cast<Eigen::Index>(in.size()));
    for (std::size_t i = 0; i < in.size(); ++i)
      v[static_cast<Eigen::Index>(i)] = in[i].weight;
    groups.push_back(lp_norm(v, params.p));
  }
  return lq_reduce(groups, params);
}

double mu_pq(const LayeredNet& net, const NormParams& params) {
  std::vector<double> groups;
  for (const auto& w : net.layers())
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      groups.push_back(lp_norm(w.row(r).transpose(), params.p));
  return lq_reduce(groups, params);
}

double gamma_pq(const LayeredNet& net, const NormParams& params) {
  double log_acc = 0.0;
  for (const auto& w : net.layers()) {
    const double n = group_norm(w, params);
    if (n == 0.0) return 0.0;
    log_acc += std::log(n);
  }
  return std::exp(log_acc);
}

double path_norm(const Network& net, double p) {
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("p must satisfy 1 <= p < inf");
  std::unordered_map<int, double> log_psi;
  std::vector<double> terms;
  for (const int id : net.topological_order()) {
    const Node& n = net.node(id);
    if (n.role == NodeRole::input) {
      log_psi[id] = 0.0;
      continue;
    }
    terms.clear();
    for (const Edge& e : net.incoming(id)) {
      const double a = std::abs(e.weight);
      const double src = log_psi.at(e.src);
      if (a == 0.0 || src == kNegInf) continue;
      terms.push_back(p * std::log(a) + src);
    }
    log_psi[id] = log_sum_exp(terms);
  }
  const double out = log_psi.at(net.output_id());
  return out == kNegInf ? 0.0 : std::exp(out / p);
}

double nu_p(const LayeredNet& net, double p) {
  if (net.depth() != 2) throw std::invalid_argument("nu_p requires depth exactly 2");
  if (net.activation() != Activation::relu) throw std::invalid_argument("nu_p requires relu");
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("p must satisfy 1 <= p < inf");
  const Eigen::MatrixXd& w1 = net.layers()[0];
  const Eigen::MatrixXd& w2 = net.layers()[1];
  double acc = 0.0;
  for (Eigen::Index j = 0; j < w1.rows(); ++j) {
    const double scale = lp_norm(w1.row(j).transpose(), p);
    if (scale == 0.0) continue;  // dead unit
    acc += std::abs(w2(0, j)) * scale;
  }
  return acc;
}

NormReport norm_report(const Network& net, const NormParams& params) {
  NormReport r;
  r.mu = mu_pq(net, params);
  r.phi = path_norm(net, params.p);
  r.depth = net.depth();
  r.params = params;
  return r;
}

NormReport norm_report(const LayeredNet& net, const NormParams& params) {
  NormReport r;
  r.mu = mu_pq(net, params);
  r.gamma = gamma_pq(net, params);
  r.phi = path_norm(to_dag(net), params.p);
  r.depth = net.depth();
  r.params = params;
  return r;
}

}  // namespace netcap
