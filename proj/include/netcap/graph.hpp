#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace netcap {

enum class Activation { relu, ramp, identity };

// Applied at hidden nodes only; the output node is always a plain weighted sum.
double activate(Activation a, double z);
std::string to_string(Activation a);
Activation activation_from_string(const std::string& s);

enum class NodeRole { input, hidden, output };

struct Node {
  int id = 0;
  NodeRole role = NodeRole::hidden;
  int input_index = -1;  // position in x for input nodes, -1 otherwise
};

struct Edge {
  int src = 0;
  int dst = 0;
  double weight = 0.0;
};

// Feedforward network as a weighted DAG with D input nodes and one output
// node. Immutable after construction; construction validates acyclicity,
// role constraints and edge uniqueness, and precomputes adjacency and a
// deterministic topological order (ties broken by node id).
class Network {
 public:
  static Network create(int num_inputs, bool bias_input, Activation activation,
                        std::vector<Node> nodes, std::vector<Edge> edges);

  int num_inputs() const { return num_inputs_; }
  bool bias_input() const { return bias_input_; }
  Activation activation() const { return activation_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int output_id() const { return output_id_; }

  bool has_node(int id) const { return index_.count(id) != 0; }
  const Node& node(int id) const { return nodes_.at(index_.at(id)); }
  const std::vector<Edge>& incoming(int id) const { return incoming_.at(index_.at(id)); }
  const std::vector<Edge>& outgoing(int id) const { return outgoing_.at(index_.at(id)); }

  // Node ids, inputs-first order not guaranteed; deterministic.
  const std::vector<int>& topological_order() const { return topo_; }

  // Length of the longest directed path (in edges).
  int depth() const { return depth_; }
  // Maximum in-degree over all nodes.
  int width() const { return width_; }

  double forward(std::span<const double> x) const;

 private:
  Network() = default;

  int num_inputs_ = 0;
  bool bias_input_ = false;
  Activation activation_ = Activation::relu;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<int, std::size_t> index_;
  std::vector<std::vector<Edge>> incoming_;
  std::vector<std::vector<Edge>> outgoing_;
  std::vector<int> topo_;
  int output_id_ = -1;
  int depth_ = 0;
  int width_ = 0;
};

// Stack of weight matrices W_1 (H1 x D), W_k (Hk x H{k-1}), W_d (1 x H{d-1}).
// Row k of a matrix holds the incoming weights of unit k in that layer.
class LayeredNet {
 public:
  static LayeredNet create(Activation activation, std::vector<Eigen::MatrixXd> layers);

  Activation activation() const { return activation_; }
  const std::vector<Eigen::MatrixXd>& layers() const { return layers_; }
  int depth() const { return static_cast<int>(layers_.size()); }
  int input_dim() const { return static_cast<int>(layers_.front().cols()); }
  int width() const;

  double forward(std::span<const double> x) const;

 private:
  LayeredNet() = default;
  Activation activation_ = Activation::relu;
  std::vector<Eigen::MatrixXd> layers_;
};

// Equivalent DAG with every layered edge materialized, zero weights included.
// Input nodes get ids 0..D-1; hidden and output ids follow layer by layer.
Network to_dag(const LayeredNet& net, bool bias_input = false);

}  // namespace netcap
