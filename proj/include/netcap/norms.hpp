#pragma once

#include <limits>
#include <optional>

#include "netcap/graph.hpp"

namespace netcap {

// Group-norm exponents. p must be finite and >= 1; q may be infinite
// (per-unit regularization). p_star is the dual exponent of p.
struct NormParams {
  double p = 2.0;
  double q = 2.0;

  static NormParams make(double p, double q);
  static constexpr double inf = std::numeric_limits<double>::infinity();

  bool q_is_inf() const { return std::isinf(q); }
  double p_star() const { return p == 1.0 ? inf : p / (p - 1.0); }
  // 1/q with the q = inf convention.
  double inv_q() const { return q_is_inf() ? 0.0 : 1.0 / q; }
  double inv_p_star() const { return 1.0 - 1.0 / p; }
};

struct NormReport {
  double mu = 0.0;
  std::optional<double> gamma;  // layered inputs only
  double phi = 0.0;
  int depth = 0;
  NormParams params;
};

// l_p norm of one unit's incoming weight vector.
double lp_norm(const Eigen::VectorXd& v, double p);

// ||W||_{p,q}: l_p over each row, l_q across rows (max when q = inf).
double group_norm(const Eigen::MatrixXd& w, const NormParams& params);

// Additive measure: l_q aggregation of per-node incoming l_p norms.
// Nodes without incoming edges contribute nothing.
double mu_pq(const Network& net, const NormParams& params);
double mu_pq(const LayeredNet& net, const NormParams& params);

// Multiplicative measure: product of per-layer group norms, accumulated in
// log domain; any zero-norm layer short-circuits to 0.
double gamma_pq(const LayeredNet& net, const NormParams& params);

// l_p aggregation over all input->output paths of per-path weight products.
// Dynamic program over the topological order, log-sum-exp accumulation.
double path_norm(const Network& net, double p);

// Two-layer measure: l_1 norm of the output weights once every hidden row is
// rescaled to unit l_p norm. Entries of W_2 feeding an identically-zero row
// are dropped (the unit computes 0).
double nu_p(const LayeredNet& net, double p);

NormReport norm_report(const Network& net, const NormParams& params);
NormReport norm_report(const LayeredNet& net, const NormParams& params);

}  // namespace netcap
