#pragma once

#include <span>

#include "netcap/graph.hpp"

namespace netcap {

// Deliberately naive reference routes used by the verification harness and
// the tests to cross-check the production implementations. Keep these
// independent: no shared traversal or accumulation code.

// Sum over explicitly enumerated input->output paths of the per-path
// |weight| products, raised 1/p. Exponential in the graph size.
double path_norm_by_enumeration(const Network& net, double p);

// Layered forward pass as per-unit scalar recursion, no matrix algebra.
double forward_by_scalar_recursion(const LayeredNet& net, std::span<const double> x);

}  // namespace netcap
