#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "netcap/graph.hpp"
#include "netcap/norms.hpp"
#include "netcap/rng.hpp"

namespace netcap {

// Evaluation points x_1..x_m in R^D, one row per point.
struct SampleSet {
  Eigen::MatrixXd points;

  static SampleSet make(std::vector<std::vector<double>> rows);
  int m() const { return static_cast<int>(points.rows()); }
  int dim() const { return static_cast<int>(points.cols()); }
};

enum class RademacherMethod {
  exact_enum,
  closed_form_linear,
  upper_bound_thm1,
  upper_bound_cor2,
  upper_bound_antisym,
  upper_bound_linear_lemma,
  opt_lower_bound,
};
std::string to_string(RademacherMethod m);

struct RademacherReport {
  double value = 0.0;
  RademacherMethod method = RademacherMethod::exact_enum;
  // The one definition every method targets.
  std::string definition = "E_xi (1/m) sup |sum_i xi_i f(x_i)|";
  std::optional<std::uint64_t> seed;
  std::optional<double> std_error;  // Monte Carlo runs only
  std::optional<double> sup_total;  // exact hull: sum of per-sign-vector suprema
  std::optional<double> weaker;     // looser companion bound where one exists
};

// Exact complexity of the convex hull of the given evaluation vectors
// (each of length m <= 24): the supremum per sign vector is attained at a
// vertex, so enumerate all 2^m sign vectors and take vertex maxima.
RademacherReport exact_rademacher_hull(const std::vector<Eigen::VectorXd>& vertices);

// gamma * E_xi (1/m) ||sum_i xi_i x_i||_{p*}: exact enumeration for m <= 24,
// Monte Carlo (1e5 draws, standard error reported) above that.
RademacherReport linear_rademacher_exact(const SampleSet& s, double p, double gamma,
                                         std::optional<std::uint64_t> seed = std::nullopt);

// Closed-form upper bounds for l_p-constrained linear predictors:
// sqrt(gamma^2 min{p*, 4 log(2D)} max_i ||x_i||_{p*}^2 / m) for p <= 2, and
// sqrt(2) gamma ||X||_{2,p*} / m for p > 2 (with the weaker
// sqrt(2) gamma max_i ||x_i||_{p*} / m^{1/p} carried alongside).
RademacherReport linear_rademacher_bound(const SampleSet& s, double p, double gamma);

enum class NetworkBoundForm { thm1, cor2 };
enum class CapKind { gamma, mu };

// Depth-d layer-peeling upper bounds on relu networks capped by gamma or mu.
// thm1 carries the width factor (2 H^{[1/p*-1/q]_+})^{d-1}; cor2 drops the
// width but requires q <= p*. The mu forms divide by d^{1/q} per peeled layer.
RademacherReport network_rademacher_bound(int depth, int width, const NormParams& params,
                                          double cap, CapKind kind, const SampleSet& s,
                                          NetworkBoundForm form);

// sqrt(4 mu^{2d} log(2D) max_i ||x_i||_inf^2 / m): the per-unit l_1 bound for
// anti-symmetric 1-Lipschitz activations, free of the 4^{d-1} factor.
RademacherReport antisym_bound(int depth, double mu, const SampleSet& s);

// Norm-capped relu layered class for the optimization lower bound.
struct LayeredClass {
  int depth = 1;
  int width = 1;
  NormParams params;
  double gamma_cap = 1.0;
};

struct LowerBoundOptions {
  int restarts = 32;
  int steps = 200;
};

// Lower bound on the exact complexity: for every sign vector (m <= 16,
// enumerated exactly) maximize |sum_i xi_i f_W(x_i)| over weights with
// gamma_pq(W) <= cap by multi-restart local search, projecting each proposal
// back to the cap by layer rescaling (exact, by homogeneity). Deterministic
// for a fixed seed; every intermediate iterate is feasible, so the result
// never exceeds the true complexity.
RademacherReport empirical_rademacher_lower(const LayeredClass& cls, const SampleSet& s,
                                            std::uint64_t seed,
                                            const LowerBoundOptions& opts = {});

struct ShatterCheckReport {
  std::vector<double> margins;  // worst margin per labeling, enumeration order
  double worst = 0.0;
  bool pass = false;
};

// Unit-margin realization check: for each labeling g build the net and
// verify min_x f(x) g(x) >= 1 - 1e-9. `labelings` empty means all 2^|S|
// labelings (|S| <= 16), encoded by bit i of the labeling index.
ShatterCheckReport shatter_check(
    const std::function<Network(const std::vector<int>&)>& builder,
    const std::vector<std::vector<double>>& points,
    const std::vector<std::vector<int>>& labelings = {});

}  // namespace netcap
