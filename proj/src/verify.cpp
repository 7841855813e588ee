#include "netcap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include <json.hpp>

#include "netcap/constructions.hpp"
#include "netcap/graph.hpp"
#include "netcap/norms.hpp"
#include "netcap/rademacher.hpp"
#include "netcap/rebalance.hpp"
#include "netcap/reference.hpp"
#include "netcap/rng.hpp"
#include "netcap/transforms.hpp"

namespace netcap {

namespace {

// Normalized violation: v <= tol iff |a - b| <= tol*max(|a|,|b|) + floor.
// The floor keeps near-zero comparisons from demanding exact equality.
double viol_eq(double a, double b, double tol, double abs_floor = 1e-12) {
  const double scale = std::max(std::abs(a), std::abs(b)) + abs_floor / std::max(tol, 1e-300);
  return std::abs(a - b) / scale;
}

// Relative excess of a above bound; <= tol means a <= bound*(1+tol) + floor.
double viol_le(double a, double bound, double tol, double abs_floor = 1e-12) {
  const double scale = std::max(std::abs(bound), abs_floor / std::max(tol, 1e-300));
  return (a - bound) / scale;
}

struct Suite {
  explicit Suite(const VerifyOptions& opt, const std::string& name)
      : options(opt), rng(Rng(opt.seed).stream(name)), prefix(name) {}

  void add(const std::string& id, const std::string& description, const std::string& claim,
           const std::string& relation, double measured, double expected, double tolerance) {
    VerifyCase c{prefix + "/" + id, description, claim, relation, measured, expected, tolerance,
                 ""};
    bool ok = false;
    if (relation == "==")
      ok = std::abs(measured - expected) <= tolerance;
    else if (relation == "<=")
      ok = measured <= expected + tolerance;
    else if (relation == "<")
      ok = measured < expected;
    c.status = ok ? "pass" : "fail";
    cases.push_back(std::move(c));
  }

  const VerifyOptions& options;
  Rng rng;
  std::string prefix;
  std::vector<VerifyCase> cases;
};

LayeredNet random_layered(Rng& rng, int depth, int dim, int width_lo, int width_hi) {
  std::vector<Eigen::MatrixXd> mats;
  int prev = dim;
  for (int k = 0; k < depth; ++k) {
    const int rows = k + 1 == depth ? 1 : rng.uniform_int(width_lo, width_hi);
    Eigen::MatrixXd w(rows, prev);
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = rng.normal();
    mats.push_back(std::move(w));
    prev = rows;
  }
  return LayeredNet::create(Activation::relu, std::move(mats));
}

std::vector<double> random_input(Rng& rng, int dim, bool nonneg = false) {
  std::vector<double> x(static_cast<std::size_t>(dim));
  for (auto& v : x) v = nonneg ? std::abs(rng.normal()) : rng.normal();
  return x;
}

// Small random DAG (at most ~12 edges), every hidden node live.
Network random_small_dag(Rng& rng) {
  for (;;) {
    const int n_in = rng.uniform_int(1, 3);
    const int n_hidden = rng.uniform_int(1, 5);
    std::vector<Node> nodes;
    for (int i = 0; i < n_in; ++i) nodes.push_back({i, NodeRole::input, i});
    for (int i = 0; i < n_hidden; ++i) nodes.push_back({n_in + i, NodeRole::hidden, -1});
    const int out = n_in + n_hidden;
    nodes.push_back({out, NodeRole::output, -1});

    std::vector<Edge> edges;
    for (int s = 0; s < out; ++s) {
      for (int d = std::max(s + 1, n_in); d <= out; ++d) {
        if (static_cast<int>(edges.size()) >= 12) break;
        if (rng.coin(0.45)) edges.push_back({s, d, rng.normal()});
      }
    }
    Network net = prune_dead(Network::create(n_in, false, Activation::relu, std::move(nodes),
                                             std::move(edges)));
    if (!net.incoming(net.output_id()).empty()) return net;
  }
}

// Layered net turned into a DAG plus a few skip edges (layer i -> layer j,
// j >= i+2); skips never extend the longest path.
Network random_skip_dag(Rng& rng, int depth) {
  const int dim = rng.uniform_int(1, 3);
  const LayeredNet base = random_layered(rng, depth, dim, 1, 4);
  const Network dag = to_dag(base);

  // to_dag id layout: inputs 0..dim-1, then each layer consecutively.
  std::vector<std::vector<int>> layer_ids(static_cast<std::size_t>(depth) + 1);
  int next = 0;
  for (int i = 0; i < dim; ++i) layer_ids[0].push_back(next++);
  for (int k = 0; k < depth; ++k)
    for (Eigen::Index r = 0; r < base.layers()[static_cast<std::size_t>(k)].rows(); ++r)
      layer_ids[static_cast<std::size_t>(k) + 1].push_back(next++);

  std::vector<Node> nodes = dag.nodes();
  std::vector<Edge> edges = dag.edges();
  const int n_skips = rng.uniform_int(0, 3);
  for (int s = 0; s < n_skips; ++s) {
    const int li = rng.uniform_int(0, depth - 2);
    const int lj = rng.uniform_int(li + 2, depth);
    const auto& from = layer_ids[static_cast<std::size_t>(li)];
    const auto& to = layer_ids[static_cast<std::size_t>(lj)];
    const Edge e{from[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(from.size()) - 1))],
                 to[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(to.size()) - 1))],
                 rng.normal()};
    const bool dup = std::any_of(edges.begin(), edges.end(), [&](const Edge& f) {
      return f.src == e.src && f.dst == e.dst;
    });
    if (!dup) edges.push_back(e);
  }
  return Network::create(dim, false, Activation::relu, std::move(nodes), std::move(edges));
}

double lp_of_incoming(const Network& net, int id, double p) {
  const auto& in = net.incoming(id);
  Eigen::VectorXd v(static_cast<Eigen::Index>(in.size()));
  for (std::size_t i = 0; i < in.size(); ++i) v[static_cast<Eigen::Index>(i)] = in[i].weight;
  return lp_norm(v, p);
}

// ---------------------------------------------------------------------------

void suite_balancing(Suite& s) {
  const NormParams combos[] = {
      NormParams::make(1, 1),   NormParams::make(1, 2),   NormParams::make(1, NormParams::inf),
      NormParams::make(1.5, 1), NormParams::make(1.5, 2), NormParams::make(1.5, NormParams::inf),
      NormParams::make(2, 1),   NormParams::make(2, 2),   NormParams::make(2, NormParams::inf)};
  const int n_nets = 216;

  double worst_claim1 = 0, worst_eq5 = -1, worst_mono = -1, worst_gamma = 0, worst_layers = 0,
         worst_fn = 0;
  for (int i = 0; i < n_nets; ++i) {
    const NormParams params = combos[i % 9];
    const int d = 1 + i % 5;
    const int h = 1 + i % 6;
    const int dim = s.rng.uniform_int(1, 5);
    const LayeredNet net = random_layered(s.rng, d, dim, h, h);

    const double gamma = gamma_pq(net, params);
    const double mu = mu_pq(net, params);
    const LayeredNet bal = balance_layers(net, params);

    const double d_root = std::pow(static_cast<double>(d), params.inv_q());
    const double target = d_root * std::pow(gamma, 1.0 / d);
    worst_claim1 = std::max(worst_claim1, viol_eq(mu_pq(bal, params), target, s.options.tol_norm));
    worst_eq5 = std::max(worst_eq5, viol_le(gamma, std::pow(mu / d_root, d), s.options.tol_norm));
    worst_mono = std::max(worst_mono, viol_le(mu_pq(bal, params), mu, s.options.tol_norm));
    worst_gamma = std::max(worst_gamma, viol_eq(gamma_pq(bal, params), gamma, s.options.tol_norm));
    for (const auto& w : bal.layers())
      worst_layers = std::max(
          worst_layers, viol_eq(group_norm(w, params), std::pow(gamma, 1.0 / d), s.options.tol_norm));
    for (int t = 0; t < 20; ++t) {
      const auto x = random_input(s.rng, dim);
      worst_fn = std::max(worst_fn, viol_eq(bal.forward(x), net.forward(x), s.options.tol_fn));
    }
  }
  s.add("claim1-identity", "balanced additive measure over 216 random relu nets",
        "after balancing, mu = d^{1/q} gamma^{1/d}", "<=", worst_claim1, 0, s.options.tol_norm);
  s.add("eq5-upper", "pre-balancing inequality over the same nets",
        "gamma <= (mu / d^{1/q})^d for every weight setting", "<=", worst_eq5, 0,
        s.options.tol_norm);
  s.add("mu-non-increasing", "balancing never increases the additive measure",
        "mu(balanced) <= mu(original)", "<=", worst_mono, 0, s.options.tol_norm);
  s.add("gamma-preserved", "layer rescaling leaves the product measure fixed",
        "gamma(balanced) = gamma(original)", "<=", worst_gamma, 0, s.options.tol_norm);
  s.add("layer-norms-equal", "all balanced layers share one group norm",
        "every layer norm equals gamma^{1/d}", "<=", worst_layers, 0, s.options.tol_norm);
  s.add("function-preserved", "balanced nets agree on random inputs",
        "relu homogeneity: per-layer rescaling with unit product is function-preserving", "<=",
        worst_fn, 0, s.options.tol_fn);
}

void suite_path_equivalence(Suite& s) {
  const double ps[] = {1.0, 1.5, 2.0, 3.0};
  double worst_eq = 0, worst_unit = 0, worst_phi = 0, worst_fn = 0;
  for (int i = 0; i < 200; ++i) {
    const double p = ps[i % 4];
    const int d = 1 + i % 4;
    const int dim = s.rng.uniform_int(1, 4);
    const Network dag = to_dag(random_layered(s.rng, d, dim, 1, 5));
    const Network unit = unitize_units(dag, p);

    worst_eq = std::max(worst_eq, viol_eq(path_norm(unit, p),
                                          lp_of_incoming(unit, unit.output_id(), p),
                                          s.options.tol_fn));
    for (const Node& n : unit.nodes())
      if (n.role == NodeRole::hidden)
        worst_unit =
            std::max(worst_unit, viol_eq(lp_of_incoming(unit, n.id, p), 1.0, s.options.tol_norm));
    worst_phi =
        std::max(worst_phi, viol_eq(path_norm(dag, p), path_norm(unit, p), s.options.tol_norm));
    for (int t = 0; t < 200; ++t) {
      const auto x = random_input(s.rng, dim);
      worst_fn = std::max(worst_fn, viol_eq(unit.forward(x), dag.forward(x), s.options.tol_fn));
    }
  }
  s.add("phi-equals-unit-gamma", "200 random layered DAGs after unit normalization",
        "with unit incoming norms, the path norm equals the output node's incoming l_p norm",
        "<=", worst_eq, 0, s.options.tol_fn);
  s.add("unit-incoming-norms", "every surviving hidden node after the rewrite",
        "incoming l_p norm is exactly one", "<=", worst_unit, 0, s.options.tol_norm);
  s.add("phi-preserved", "path norm before vs after the rewrite",
        "per-node rescaling leaves every path product unchanged", "<=", worst_phi, 0,
        s.options.tol_norm);
  s.add("function-preserved", "200 random inputs per net",
        "relu homogeneity: in/out rescaling of a unit is function-preserving", "<=", worst_fn, 0,
        s.options.tol_fn);

  double worst_dp = 0;
  for (int i = 0; i < 60; ++i) {
    const double p = ps[i % 4];
    const Network dag = random_small_dag(s.rng);
    worst_dp = std::max(
        worst_dp, viol_eq(path_norm(dag, p), path_norm_by_enumeration(dag, p), s.options.tol_norm));
  }
  s.add("dp-matches-enumeration", "60 random DAGs with <= 12 edges",
        "the dynamic program equals the literal all-paths sum", "<=", worst_dp, 0,
        s.options.tol_norm);
}

void suite_transforms(Suite& s) {
  double worst_phi = 0, worst_fn = 0;
  for (int i = 0; i < 100; ++i) {
    const int depth = 2 + i % 3;
    const Network dag = random_skip_dag(s.rng, depth);
    const LayerizeResult res = layerize(dag, dag.depth());
    const Network relayered = to_dag(res.net);
    const double p = i % 2 == 0 ? 1.0 : 2.0;
    worst_phi = std::max(
        worst_phi, viol_eq(path_norm(dag, p), path_norm(relayered, p), s.options.tol_norm));
    for (int t = 0; t < 20; ++t) {
      const auto x = random_input(s.rng, dag.num_inputs(), res.nonneg_inputs_only);
      worst_fn =
          std::max(worst_fn, viol_eq(res.net.forward(x), dag.forward(x), s.options.tol_fn));
    }
  }
  s.add("layerize-phi-exact", "100 random depth-2..4 DAGs with skip connections",
        "edge subdivision by sqrt|w| pairs preserves every path norm", "<=", worst_phi, 0,
        s.options.tol_norm);
  s.add("layerize-function", "20 inputs per net, non-negative orthant when flagged",
        "subdivided edges re-compose: sign(w)sqrt|w| [sqrt|w| o]_+ = w o for o >= 0", "<=",
        worst_fn, 0, s.options.tol_fn);

  double worst_out = 0, worst_tfn = 0, worst_tphi = 0, total_second_copies = 0;
  for (int i = 0; i < 100; ++i) {
    const Network dag = random_small_dag(s.rng);
    const TreeifyResult t = treeify(dag);
    int max_out = 0;
    for (const Node& n : t.net.nodes())
      if (n.role == NodeRole::hidden)
        max_out = std::max(max_out, static_cast<int>(t.net.outgoing(n.id).size()));
    worst_out = std::max(worst_out, static_cast<double>(max_out - 1));
    const double p = i % 2 == 0 ? 1.0 : 2.0;
    worst_tphi =
        std::max(worst_tphi, viol_eq(path_norm(dag, p), path_norm(t.net, p), s.options.tol_norm));
    for (int k = 0; k < 20; ++k) {
      const auto x = random_input(s.rng, dag.num_inputs());
      worst_tfn = std::max(worst_tfn, viol_eq(t.net.forward(x), dag.forward(x), s.options.tol_fn));
    }
    total_second_copies += static_cast<double>(treeify(t.net).copies);
  }
  s.add("treeify-outdegree", "100 random DAGs with <= 12 edges",
        "after duplication every hidden node has out-degree one", "<=", worst_out, 0, 0);
  s.add("treeify-phi-exact", "same suite",
        "node duplication preserves the multiset of input->output paths", "<=", worst_tphi, 0,
        s.options.tol_norm);
  s.add("treeify-function", "20 inputs per net",
        "copies receive identical incoming weights, so all node values are unchanged", "<=",
        worst_tfn, 0, s.options.tol_fn);
  s.add("treeify-fixed-point", "re-running on a tree",
        "a tree-shaped net is returned unchanged", "==", total_second_copies, 0, 0);
}

void suite_convexity(Suite& s) {
  struct Combo {
    int d;
    NormParams params;
  };
  const Combo combos[] = {{2, NormParams::make(2, 2)},
                          {2, NormParams::make(1.5, 3)},
                          {2, NormParams::make(2, NormParams::inf)},
                          {2, NormParams::make(1, NormParams::inf)},
                          {3, NormParams::make(2, 4)},
                          {3, NormParams::make(2, NormParams::inf)},
                          {3, NormParams::make(1.5, 6)},
                          {3, NormParams::make(3, 3)}};

  double worst_fn = 0, worst_gamma = -1, worst_blocks = 0, worst_bound = -1;
  int width_violations = 0;
  for (int i = 0; i < 100; ++i) {
    const Combo& c = combos[i % 8];
    const int dim = s.rng.uniform_int(1, 3);
    const LayeredNet u = random_layered(s.rng, c.d, dim, dim, dim + 3);
    const LayeredNet v = random_layered(s.rng, c.d, dim, dim, dim + 3);
    const double alpha = s.rng.uniform();
    const LayeredNet w = convex_combine(u, v, alpha, c.params);

    for (int t = 0; t < 20; ++t) {
      const auto x = random_input(s.rng, dim);
      const double want = alpha * u.forward(x) + (1.0 - alpha) * v.forward(x);
      worst_fn = std::max(worst_fn, viol_eq(w.forward(x), want, s.options.tol_fn));
    }
    const double cap = std::max(gamma_pq(u, c.params), gamma_pq(v, c.params));
    worst_gamma = std::max(worst_gamma, viol_le(gamma_pq(w, c.params), cap, s.options.tol_fn));
    if (w.width() != u.width() + v.width()) ++width_violations;

    // Re-derive the per-side blocks and compare layer norms against the
    // stacked construction.
    const LayeredNet bu = balance_layers(u, c.params);
    const LayeredNet bv = balance_layers(v, c.params);
    const double inner = c.params.inv_q();
    const double last = 1.0 - (c.d - 1) * inner;
    for (int k = 0; k + 1 < c.d; ++k) {
      const double na =
          group_norm(std::pow(alpha, inner) * bu.layers()[static_cast<std::size_t>(k)], c.params);
      const double nb = group_norm(
          std::pow(1.0 - alpha, inner) * bv.layers()[static_cast<std::size_t>(k)], c.params);
      const double combined =
          c.params.q_is_inf()
              ? std::max(na, nb)
              : std::pow(std::pow(na, c.params.q) + std::pow(nb, c.params.q), 1.0 / c.params.q);
      const double actual = group_norm(w.layers()[static_cast<std::size_t>(k)], c.params);
      worst_blocks = std::max(worst_blocks, viol_eq(actual, combined, s.options.tol_norm));
      const double bound = std::pow(2.0, c.params.inv_q()) * std::pow(cap, 1.0 / c.d);
      worst_bound = std::max(worst_bound, viol_le(actual, bound, s.options.tol_norm));
    }
    (void)last;
  }
  s.add("combination-function", "100 random pairs at depth 2 and 3",
        "the side-by-side net computes alpha f + (1-alpha) g", "<=", worst_fn, 0,
        s.options.tol_fn);
  s.add("gamma-within-max", "same pairs, exponents satisfying 1/q <= (1-1/p)/(d-1)",
        "level sets of the product measure are convex: gamma(W) <= max(gamma(U), gamma(V))",
        "<=", worst_gamma, 0, s.options.tol_fn);
  s.add("width-additive", "same pairs (hidden widths >= input dim)",
        "width(W) = width(U) + width(V)", "==", static_cast<double>(width_violations), 0, 0);
  s.add("layer-norm-blocks", "inner layers of the stacked net",
        "block-diagonal rows: ||W_i||^q = ||A_i||^q + ||B_i||^q", "<=", worst_blocks, 0,
        s.options.tol_norm);
  s.add("layer-norm-bound", "inner layers of the stacked net",
        "||W_i|| <= 2^{1/q} max-gamma^{1/d}", "<=", worst_bound, 0, s.options.tol_norm);

  double worst_tri = -1, worst_tri_fn = 0;
  for (int i = 0; i < 30; ++i) {
    const Combo& c = combos[i % 8];
    const int dim = s.rng.uniform_int(1, 3);
    const LayeredNet u = random_layered(s.rng, c.d, dim, 1, 3);
    const LayeredNet v = random_layered(s.rng, c.d, dim, 1, 3);
    const double gu = gamma_pq(u, c.params), gv = gamma_pq(v, c.params);
    // Realize f+g as a convex combination of blown-up copies.
    const LayeredNet su = scale_layers(u, std::pow((gu + gv) / gu, 1.0 / c.d));
    const LayeredNet sv = scale_layers(v, std::pow((gu + gv) / gv, 1.0 / c.d));
    const LayeredNet w = convex_combine(su, sv, gu / (gu + gv), c.params);
    worst_tri = std::max(worst_tri, viol_le(gamma_pq(w, c.params), gu + gv, s.options.tol_fn));
    for (int t = 0; t < 10; ++t) {
      const auto x = random_input(s.rng, dim);
      worst_tri_fn = std::max(
          worst_tri_fn, viol_eq(w.forward(x), u.forward(x) + v.forward(x), s.options.tol_fn));
    }
  }
  s.add("triangle-inequality", "30 random sums of two nets",
        "gamma of the f+g realization is at most gamma(f) + gamma(g)", "<=", worst_tri, 0,
        s.options.tol_fn);
  s.add("triangle-function", "10 inputs per sum", "the realization computes f + g", "<=",
        worst_tri_fn, 0, s.options.tol_fn);
}

void suite_shattering(Suite& s) {
  for (int dim = 1; dim <= 3; ++dim) {
    const ShatterSpec spec{dim, 2, 1, NormParams::make(2, 2)};
    std::vector<std::vector<double>> points;
    const std::size_t m = std::size_t{1} << dim;
    for (std::size_t i = 0; i < m; ++i)
      points.push_back(hypercube_point_with_bias(dim, static_cast<unsigned>(i)));
    const auto rep = shatter_check(
        [&](const std::vector<int>& g) { return shattering_net(spec, g); }, points);
    s.add("all-labelings-D" + std::to_string(dim),
          "every labeling of the " + std::to_string(m) + "-point cube, depth 2",
          "unit-margin realization of all sign patterns", "<=", 1.0 - rep.worst, 0,
          s.options.tol_fn);
  }

  {
    // The deep recursion computes the same function as the flat net.
    double worst = 0, worst_margin = 0;
    const int dim = 2;
    const std::size_t m = std::size_t{1} << dim;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      std::vector<int> labels(m);
      for (std::size_t i = 0; i < m; ++i) labels[i] = (mask >> i) & 1u ? 1 : -1;
      const LayeredNet flat = shattering_layers({dim, 2, 1, NormParams::make(2, 2)}, labels);
      const LayeredNet deep = shattering_layers({dim, 4, 3, NormParams::make(2, 2)}, labels);
      for (std::size_t i = 0; i < m; ++i) {
        const auto x = hypercube_point_with_bias(dim, static_cast<unsigned>(i));
        worst = std::max(worst, viol_eq(deep.forward(x), flat.forward(x), s.options.tol_norm));
        worst_margin = std::max(worst_margin, 1.0 - deep.forward(x) * labels[i]);
      }
    }
    s.add("deep-recursion-exact", "all 16 labelings of the square, depth 4 vs depth 2",
          "splitting the output into positive/negative copies with +-1/H weights reproduces it",
          "<=", worst, 0, s.options.tol_norm);
    s.add("deep-recursion-margin", "same nets", "the deep construction keeps unit margins", "<=",
          worst_margin, 0, s.options.tol_fn);
  }

  {
    const NormParams pq = NormParams::make(2, 4);
    const int hs[] = {1, 2, 4, 8};
    std::vector<int> labels(4, 1);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double prev = 0, worst_inc = -1;
    for (int idx = 0; idx < 4; ++idx) {
      const double g = gamma_pq(shattering_layers({2, 4, hs[idx], pq}, labels), pq);
      const double lx = std::log(static_cast<double>(hs[idx])), ly = std::log(g);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      if (idx > 0) worst_inc = std::max(worst_inc, g - prev);
      prev = g;
    }
    const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
    const double want = -(4 - 2) * (0.5 - 0.25);  // -(d-2)(1/p* - 1/q)
    s.add("log-gamma-slope", "depth-4 nets over the square, H in {1,2,4,8}, p=2 q=4",
          "log gamma falls linearly in log H with slope -(d-2)(1/p*-1/q)", "==", slope, want,
          0.25);
    s.add("gamma-monotone-in-width", "same sweep (1/p + 1/q < 1)",
          "measured gamma strictly decreases in H", "<", worst_inc, 0, 0);
  }

  {
    double worst = -1;  // 1 - margin; integer arithmetic should keep it <= 0
    for (int k = 1; k <= 3; ++k) {
      for (int dim = 1; dim <= 4; ++dim) {
        for (int rep = 0; rep < 20; ++rep) {
          std::vector<std::vector<int>> normals(static_cast<std::size_t>(k),
                                                std::vector<int>(static_cast<std::size_t>(dim)));
          for (auto& w : normals)
            for (auto& c : w) c = s.rng.sign();
          const Network net = halfspace_intersection_net(normals);
          for (unsigned i = 0; i < (1u << dim); ++i) {
            const auto vertex = hypercube_vertex(dim, i);
            bool inside = true;
            for (const auto& w : normals) {
              int dot = 0;
              for (int j = 0; j < dim; ++j)
                dot += w[static_cast<std::size_t>(j)] *
                       (vertex[static_cast<std::size_t>(j)] > 0 ? 1 : -1);
              if (dot <= 0) {
                inside = false;
                break;
              }
            }
            const auto x = hypercube_point_with_bias(dim, i);
            const double margin = net.forward(x) * (inside ? 1.0 : -1.0);
            worst = std::max(worst, 1.0 - margin);
          }
        }
      }
    }
    s.add("halfspace-margins", "k <= 3 halfspaces, D <= 4, 20 random sign-normal sets each",
          "the two-unit step indicator separates the intersection with margin exactly one",
          "<=", worst, 0, 0);
  }

  {
    const NormParams pq = NormParams::make(2, 2);
    std::vector<std::vector<int>> normals = {{1, -1, 1}, {-1, 1, 1}};
    const auto rep = halfspace_gamma_report(normals, pq);
    s.add("halfspace-gamma-example", "k=2, D=3, p=2",
          "bias-free gamma stays within 4 D^{1/p} k^2", "<=",
          viol_le(rep.core, rep.formula, s.options.tol_fn), 0, s.options.tol_fn);
  }
}

void suite_rademacher(Suite& s) {
  {
    const CounterexampleSets sets = counterexample_sets();
    const RademacherReport rh = exact_rademacher_hull(sets.h);
    const RademacherReport rhp = exact_rademacher_hull(sets.h_prime);
    s.add("hull-numerators-12", "two-vertex hull over three points",
          "sum of per-sign-vector suprema is exactly 12", "==", rh.sup_total.value(), 12, 0);
    s.add("hull-numerators-13", "positive part adds the vertex (0.5,0,0)",
          "sum of per-sign-vector suprema is exactly 13", "==", rhp.sup_total.value(), 13, 0);
    s.add("hull-ordering", "the two exact values",
          "taking the positive part of the symmetric hull strictly raises the complexity", "<",
          rh.value - rhp.value, 0, 0);

    std::vector<Eigen::VectorXd> padded = sets.h;
    padded.push_back(0.5 * (sets.h[0] + sets.h[1]));
    s.add("hull-interior-vertex", "midpoint added as an extra vertex",
          "the supremum is attained at extreme points", "==",
          exact_rademacher_hull(padded).value - rh.value, 0, 0);
    std::vector<Eigen::VectorXd> negated;
    for (const auto& v : sets.h_prime) negated.push_back(-v);
    s.add("hull-sign-symmetry", "all vertices negated",
          "the definition's absolute value makes the exact value sign-invariant", "==",
          exact_rademacher_hull(negated).value - rhp.value, 0, 0);
  }

  double worst_recovery = 0, worst_d1 = -1, worst_lemma = -1;
  for (int i = 0; i < 20; ++i) {
    const double p = i % 5 == 4 ? 1.5 : 2.0;
    const int dim = 1 + i % 5;
    const int m = 3 + i % 5;
    const double cap = s.rng.uniform(0.5, 2.0);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(m));
    for (auto& r : rows) r = random_input(s.rng, dim);
    const SampleSet set = SampleSet::make(rows);

    const LayeredClass cls{1, 1, NormParams::make(p, 2), cap};
    const double lower =
        empirical_rademacher_lower(cls, set, s.options.seed + static_cast<std::uint64_t>(i),
                                   {24, 260})
            .value;
    const double exact = linear_rademacher_exact(set, p, cap).value;
    const double bound = linear_rademacher_bound(set, p, cap).value;
    worst_recovery = std::max(worst_recovery, viol_eq(lower, exact, 1e-6));
    worst_d1 = std::max(worst_d1, viol_le(lower, exact, s.options.tol_fn));
    worst_lemma = std::max(worst_lemma, viol_le(exact, bound, s.options.tol_fn));
  }
  s.add("linear-recovery-d1", "20 depth-1 classes, exact value enumerated",
        "the projected local search recovers the closed-form supremum", "<=", worst_recovery, 0,
        1e-6);
  s.add("lower-below-exact-d1", "same instances",
        "an optimization lower bound never exceeds the exact value", "<=", worst_d1, 0,
        s.options.tol_fn);
  s.add("exact-below-lemma-bound", "same instances",
        "the exact linear value stays below the closed-form bound", "<=", worst_lemma, 0,
        s.options.tol_fn);

  double worst_thm1 = -1, worst_cor2 = -1;
  for (int i = 0; i < 30; ++i) {
    const double ps[] = {1.0, 1.5, 2.0};
    const double qs[] = {1.0, 2.0, NormParams::inf};
    const NormParams params = NormParams::make(ps[i % 3], qs[(i / 3) % 3]);
    const int dim = 1 + i % 4;
    const int h = 1 + i % 4;
    const int m = 4 + i % 5;
    const double cap = s.rng.uniform(0.5, 2.0);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(m));
    for (auto& r : rows) r = random_input(s.rng, dim);
    const SampleSet set = SampleSet::make(rows);

    const LayeredClass cls{2, h, params, cap};
    const double lower =
        empirical_rademacher_lower(cls, set, s.options.seed + 1000 + static_cast<std::uint64_t>(i),
                                   {8, 150})
            .value;
    const double thm1 =
        network_rademacher_bound(2, h, params, cap, CapKind::gamma, set, NetworkBoundForm::thm1)
            .value;
    worst_thm1 = std::max(worst_thm1, viol_le(lower, thm1, s.options.tol_fn));
    if (params.q <= params.p_star()) {
      const double cor2 =
          network_rademacher_bound(2, h, params, cap, CapKind::gamma, set, NetworkBoundForm::cor2)
              .value;
      worst_cor2 = std::max(worst_cor2, viol_le(lower, cor2, s.options.tol_fn));
    }
  }
  s.add("lower-below-thm1-d2", "30 depth-2 classes, H <= 4, m <= 8",
        "optimization lower bounds stay below the width-carrying peel bound", "<=", worst_thm1, 0,
        s.options.tol_fn);
  s.add("lower-below-cor2-d2", "subset with q <= p*",
        "optimization lower bounds stay below the width-free peel bound", "<=", worst_cor2, 0,
        s.options.tol_fn);
}

void suite_convexnn(Suite& s) {
  const NormParams pq = NormParams::make(2, 2);
  double worst_eq = 0, worst_inv = 0, worst_gamma = 0, worst_fn = 0;
  for (int i = 0; i < 100; ++i) {
    const int dim = s.rng.uniform_int(1, 6);
    LayeredNet net = random_layered(s.rng, 2, dim, 1, 8);
    if (i % 5 == 0) {
      // Exercise the dead-unit conventions.
      std::vector<Eigen::MatrixXd> mats = net.layers();
      const Eigen::Index j = s.rng.uniform_int(0, static_cast<int>(mats[0].rows()) - 1);
      if (s.rng.coin())
        mats[0].row(j).setZero();
      else
        mats[1](0, j) = 0.0;
      net = LayeredNet::create(Activation::relu, std::move(mats));
    }
    const LayeredNet bal = balance_units(net, 2.0);
    const double mu = mu_pq(bal, pq);
    const double nu_b = nu_p(bal, 2.0);
    const double nu_orig = nu_p(net, 2.0);
    worst_eq = std::max(worst_eq, viol_eq(mu * mu, 2.0 * nu_b, s.options.tol_fn));
    worst_inv = std::max(worst_inv, viol_eq(nu_b, nu_orig, s.options.tol_norm));
    worst_gamma = std::max(worst_gamma, viol_eq(gamma_pq(bal, pq), nu_b, s.options.tol_norm));
    for (int t = 0; t < 20; ++t) {
      const auto x = random_input(s.rng, dim);
      worst_fn = std::max(worst_fn, viol_eq(bal.forward(x), net.forward(x), s.options.tol_fn));
    }
  }
  s.add("mu-squared-equals-2nu", "100 random depth-2 relu nets after per-unit balancing",
        "overall squared l_2 measure equals twice the convex-net measure", "<=", worst_eq, 0,
        s.options.tol_fn);
  s.add("nu-invariant", "same nets",
        "the convex-net measure ignores per-unit rescaling", "<=", worst_inv, 0,
        s.options.tol_norm);
  s.add("gamma-equals-nu", "same nets",
        "per-unit balancing also equalizes the two layer norms at sqrt(nu)", "<=", worst_gamma, 0,
        s.options.tol_norm);
  s.add("function-preserved", "20 inputs per net",
        "per-unit rescaling with matched in/out factors is function-preserving", "<=", worst_fn,
        0, s.options.tol_fn);
}

using SuiteFn = void (*)(Suite&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"balancing", suite_balancing},
      {"path-equivalence", suite_path_equivalence},
      {"transforms", suite_transforms},
      {"convexity", suite_convexity},
      {"shattering", suite_shattering},
      {"rademacher-sandwich", suite_rademacher},
      {"convexnn-equivalence", suite_convexnn},
  };
  return table;
}

}  // namespace

int VerifyReport::failures() const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(),
                                        [](const VerifyCase& c) { return c.status == "fail"; }));
}
int VerifyReport::passes() const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(),
                                        [](const VerifyCase& c) { return c.status == "pass"; }));
}
int VerifyReport::skips() const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(),
                                        [](const VerifyCase& c) { return c.status == "skip"; }));
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : suite_table()) n.push_back(name);
    return n;
  }();
  return names;
}

VerifyReport run_verify(const std::string& suite, const VerifyOptions& options) {
  VerifyReport report;
  report.suite = suite;
  report.seed = options.seed;
  report.tol_fn = options.tol_fn;
  report.tol_norm = options.tol_norm;

  if (suite == "all") {
    std::vector<std::future<std::vector<VerifyCase>>> futures;
    for (const auto& [name, fn] : suite_table())
      futures.push_back(std::async(std::launch::async, [name = name, fn = fn, options] {
        Suite s(options, name);
        fn(s);
        return std::move(s.cases);
      }));
    for (auto& f : futures) {
      auto cases = f.get();
      report.cases.insert(report.cases.end(), cases.begin(), cases.end());
    }
    return report;
  }

  for (const auto& [name, fn] : suite_table()) {
    if (name == suite) {
      Suite s(options, name);
      fn(s);
      report.cases = std::move(s.cases);
      return report;
    }
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

std::string verify_to_json(const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["tol_fn"] = report.tol_fn;
  j["tol_norm"] = report.tol_norm;
  j["cases"] = nlohmann::ordered_json::array();
  for (const VerifyCase& c : report.cases) {
    nlohmann::ordered_json cj;
    cj["id"] = c.id;
    cj["description"] = c.description;
    cj["claim"] = c.claim;
    cj["relation"] = c.relation;
    cj["measured"] = c.measured;
    cj["expected"] = c.expected;
    cj["tolerance"] = c.tolerance;
    cj["status"] = c.status;
    j["cases"].push_back(std::move(cj));
  }
  j["passed"] = report.passes();
  j["failed"] = report.failures();
  j["skipped"] = report.skips();
  return j.dump(2) + "\n";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string report_csv(const VerifyReport& report) {
  std::string out = "id,description,measured,expected,status\n";
  for (const VerifyCase& c : report.cases) {
    out += csv_field(c.id) + ',' + csv_field(c.description) + ',' + csv_double(c.measured) + ',' +
           csv_double(c.expected) + ',' + c.status + '\n';
  }
  return out;
}

}  // namespace netcap
