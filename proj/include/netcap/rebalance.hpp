#pragma once

#include "netcap/graph.hpp"
#include "netcap/norms.hpp"

namespace netcap {

// Rescale every layer to group norm gamma^{1/d} (relu homogeneity keeps the
// computed function fixed and the gamma product unchanged). After balancing,
// mu_pq = d^{1/q} * gamma_pq^{1/d}. A zero-norm layer means the function is
// identically zero; the all-zero net of the same shape is returned.
LayeredNet balance_layers(const LayeredNet& net, const NormParams& params);

// Every layer multiplied by c.
LayeredNet scale_layers(const LayeredNet& net, double c);

// Per-unit rescaling of a depth-2 relu net so each hidden unit's incoming
// l_p norm equals the magnitude of its outgoing weight (both become
// sqrt(c_j * |w2_j|)). Degenerate units (zero row or zero outgoing weight)
// are zeroed on both sides. Function preserved; nu_p unchanged.
LayeredNet balance_units(const LayeredNet& net, double p);

// One topological pass over a relu DAG: divide each hidden node's incoming
// weights by their l_p norm c and multiply its outgoing weights by c; nodes
// with c = 0 are pruned together with their outgoing edges. Function and
// path norm preserved; every surviving hidden node ends with unit incoming
// l_p norm.
Network unitize_units(const Network& net, double p);

// Drop hidden nodes that lie on no input->output path. Structural only;
// zero-weight edges between surviving nodes are kept.
Network prune_dead(const Network& net);

}  // namespace netcap
