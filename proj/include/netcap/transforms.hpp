#pragma once

#include <cstddef>

#include "netcap/graph.hpp"
#include "netcap/norms.hpp"

namespace netcap {

struct TreeifyResult {
  Network net;
  std::size_t copies = 0;  // duplicate nodes created
};

// Duplicate shared hidden nodes (one copy per consumer, processed from the
// output backwards) until every hidden node has out-degree one, so the
// subgraph induced by non-input nodes is a tree directed at the output.
// Dead nodes are pruned first. The multiset of input->output paths, and
// hence every path norm, is unchanged; so is the computed function.
TreeifyResult treeify(const Network& net, std::size_t max_nodes = 1000000);

struct LayerizeResult {
  LayeredNet net;
  // Set when an edge leaving an input node was subdivided; the rewrite is
  // then exact only for element-wise non-negative inputs (a relu copy of a
  // negative input clamps it).
  bool nonneg_inputs_only = false;
  std::size_t subdivisions = 0;
};

// Convert a relu DAG of longest-path length `depth` into an equivalent
// layered net by repeatedly subdividing a shortest-path edge (u->v) with
// d_in(u) + d_out(v) < depth-1 into sqrt|w|, sign(w)*sqrt|w| through a fresh
// relu node, until every input->output path has length `depth`; nodes are
// then assigned to layer d_in(v) and missing edges padded with zeros.
// Path norms are preserved exactly. Edge selection is deterministic
// (smallest (src,dst) pair first).
LayerizeResult layerize(const Network& net, int depth, std::size_t max_nodes = 1000000);

// Side-by-side combination of two balanced relu nets of equal depth and
// input dimension realizing alpha*f_U + (1-alpha)*f_V: stacked first layer,
// block-diagonal middle layers, concatenated output layer. The convex
// weights are spread across layers as alpha^{1/q} per inner layer and
// alpha^{1-(d-1)/q} at the output, which keeps gamma_pq(W) below
// max(gamma_pq(U), gamma_pq(V)) whenever 1/q <= (1-1/p)/(d-1).
LayeredNet convex_combine(const LayeredNet& u, const LayeredNet& v, double alpha,
                          const NormParams& params);

}  // namespace netcap
