#include "netcap/io.hpp"

#include <fstream>
#include <stdexcept>

namespace netcap {

namespace {

std::string role_to_string(const Node& n) {
  switch (n.role) {
    case NodeRole::input:
      return "input:" + std::to_string(n.input_index);
    case NodeRole::hidden:
      return "hidden";
    case NodeRole::output:
      return "output";
  }
  return "hidden";
}

Node node_from_json(const Json& j) {
  Node n;
  n.id = j.at("id").get<int>();
  const std::string role = j.at("role").get<std::string>();
  if (role == "hidden") {
    n.role = NodeRole::hidden;
  } else if (role == "output") {
    n.role = NodeRole::output;
  } else if (role.rfind("input:", 0) == 0) {
    n.role = NodeRole::input;
    n.input_index = std::stoi(role.substr(6));
  } else {
    throw std::invalid_argument("unknown node role: " + role);
  }
  return n;
}

}  // namespace

Json to_json(const Network& net) {
  Json j;
  j["inputs"] = net.num_inputs();
  j["bias_input"] = net.bias_input();
  j["activation"] = to_string(net.activation());
  j["nodes"] = Json::array();
  for (const Node& n : net.nodes()) j["nodes"].push_back({{"id", n.id}, {"role", role_to_string(n)}});
  j["edges"] = Json::array();
  for (const Edge& e : net.edges())
    j["edges"].push_back({{"src", e.src}, {"dst", e.dst}, {"w", e.weight}});
  return j;
}

Json to_json(const LayeredNet& net) {
  Json j;
  j["activation"] = to_string(net.activation());
  j["layers"] = Json::array();
  for (const auto& w : net.layers()) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < w.cols(); ++c) row.push_back(w(r, c));
      rows.push_back(std::move(row));
    }
    j["layers"].push_back(std::move(rows));
  }
  return j;
}

Network network_from_json(const Json& j) {
  std::vector<Node> nodes;
  for (const auto& n : j.at("nodes")) nodes.push_back(node_from_json(n));
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges"))
    edges.push_back({e.at("src").get<int>(), e.at("dst").get<int>(), e.at("w").get<double>()});
  return Network::create(j.at("inputs").get<int>(), j.value("bias_input", false),
                         activation_from_string(j.at("activation").get<std::string>()),
                         std::move(nodes), std::move(edges));
}

LayeredNet layered_from_json(const Json& j) {
  std::vector<Eigen::MatrixXd> layers;
  for (const auto& mat : j.at("layers")) {
    const auto rows = static_cast<Eigen::Index>(mat.size());
    if (rows == 0) throw std::invalid_argument("empty layer matrix");
    const auto cols = static_cast<Eigen::Index>(mat.at(0).size());
    Eigen::MatrixXd w(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& row = mat.at(static_cast<std::size_t>(r));
      if (static_cast<Eigen::Index>(row.size()) != cols)
        throw std::invalid_argument("ragged layer matrix");
      for (Eigen::Index c = 0; c < cols; ++c) w(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    layers.push_back(std::move(w));
  }
  return LayeredNet::create(activation_from_string(j.at("activation").get<std::string>()),
                            std::move(layers));
}

AnyNet net_from_json(const Json& j) {
  if (j.contains("layers")) return layered_from_json(j);
  if (j.contains("nodes")) return network_from_json(j);
  throw std::invalid_argument("net file has neither \"layers\" nor \"nodes\"");
}

AnyNet load_net(const std::string& path) { return net_from_json(load_json(path)); }

void save_net(const AnyNet& net, const std::string& path) {
  const Json j = std::visit([](const auto& n) { return to_json(n); }, net);
  save_text(j.dump(2) + "\n", path);
}

Json q_to_json(double q) {
  if (std::isinf(q)) return Json("inf");
  return Json(q);
}

double q_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return NormParams::inf;
    throw std::invalid_argument("q must be a number or \"inf\"");
  }
  return j.get<double>();
}

Json to_json(const NormReport& report) {
  Json j;
  j["mu"] = report.mu;
  if (report.gamma) j["gamma"] = *report.gamma;
  j["phi"] = report.phi;
  j["depth"] = report.depth;
  j["p"] = report.params.p;
  j["q"] = q_to_json(report.params.q);
  return j;
}

Json to_json(const RademacherReport& report) {
  Json j;
  j["value"] = report.value;
  j["method"] = to_string(report.method);
  j["definition"] = report.definition;
  if (report.seed) j["seed"] = *report.seed;
  if (report.std_error) j["std_error"] = *report.std_error;
  if (report.sup_total) j["sup_total"] = *report.sup_total;
  if (report.weaker) j["weaker_bound"] = *report.weaker;
  return j;
}

Json to_json(const HalfspaceGammaReport& report) {
  Json j;
  j["gamma_measured"] = report.measured;
  j["gamma_core"] = report.core;
  j["gamma_formula"] = report.formula;
  j["bias_slack"] = report.bias_slack;
  return j;
}

SampleSet sample_set_from_json(const Json& j) {
  std::vector<std::vector<double>> rows;
  for (const auto& row : j.at("points")) rows.push_back(row.get<std::vector<double>>());
  return SampleSet::make(std::move(rows));
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void save_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace netcap
