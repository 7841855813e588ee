#pragma once

#include <vector>

#include "netcap/graph.hpp"
#include "netcap/norms.hpp"

namespace netcap {

// Hypercube shattering request: D input coordinates (plus the bias),
// depth >= 2, and the copy count H used by the deep recursion.
struct ShatterSpec {
  int inputs = 1;  // D
  int depth = 2;   // d
  int width = 1;   // H
  NormParams params;
};

// Vertex of {-1,+1}^D for a labeling index: bit j of `index` selects
// coordinate j. The point fed to a bias-carrying net is (1, vertex).
std::vector<double> hypercube_vertex(int inputs, unsigned index);
std::vector<double> hypercube_point_with_bias(int inputs, unsigned index);

// Depth-d relu net over (bias, x) realizing any labeling of {-1,+1}^D with
// margin exactly one. First layer: one unit per vertex u with weights
// (-(D-1), u), an exact vertex indicator on the cube. Second layer carries
// the label signs. For d > 2, each extra level replaces the output with H
// positive-part and H negative-part copies averaged by +-1/H, which
// reproduces the function exactly while shrinking the layer norms.
LayeredNet shattering_layers(const ShatterSpec& spec, const std::vector<int>& labels);
Network shattering_net(const ShatterSpec& spec, const std::vector<int>& labels);

// Bias-free norm formula D^{1/p} m^{1/p+1/q} H^{-(d-2)[1/p*-1/q]_+};
// the measured gamma of the built net additionally carries the bias weights.
double shattering_gamma_formula(const ShatterSpec& spec);

// Depth-2 relu net over (bias, x) deciding membership of x in the
// intersection of k homogeneous halfspaces <w_i, x> > 0 with sign normals,
// with margin exactly one on {-1,+1}^D. Pairs of units compute
// [<w_i,x>]_+ and [<w_i,x>-1]_+ (an integer step indicator), a constant
// unit routes the bias, and the output is 2*sum(...) - 2k + 1.
LayeredNet halfspace_intersection_layers(const std::vector<std::vector<int>>& normals);
Network halfspace_intersection_net(const std::vector<std::vector<int>>& normals);

struct HalfspaceGammaReport {
  double measured = 0.0;  // gamma of the built net, bias weights included
  double core = 0.0;      // gamma of the bias-free part
  double formula = 0.0;   // 4 D^{1/p} k^2
  double bias_slack = 0.0;
};
HalfspaceGammaReport halfspace_gamma_report(const std::vector<std::vector<int>>& normals,
                                            const NormParams& params);

// The two evaluation-vector hulls over m = 3 points whose exact Rademacher
// complexities order strictly: taking the positive part of the symmetric
// convex hull grows the complexity.
struct CounterexampleSets {
  std::vector<Eigen::VectorXd> h;        // conv{(1,0,1),(0,1,1)}
  std::vector<Eigen::VectorXd> h_prime;  // conv{(1,0,1),(0,1,1),(0.5,0,0)}
};
CounterexampleSets counterexample_sets();

}  // namespace netcap
