#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "netcap/constructions.hpp"
#include "netcap/graph.hpp"
#include "netcap/norms.hpp"
#include "netcap/rademacher.hpp"

namespace netcap {

using Json = nlohmann::ordered_json;

// Schemas round-trip bit-exactly for finite doubles (shortest-repr output).
Json to_json(const Network& net);
Json to_json(const LayeredNet& net);
Network network_from_json(const Json& j);
LayeredNet layered_from_json(const Json& j);

// A net file holds either schema; detected by the "layers" / "nodes" key.
using AnyNet = std::variant<Network, LayeredNet>;
AnyNet net_from_json(const Json& j);
AnyNet load_net(const std::string& path);
void save_net(const AnyNet& net, const std::string& path);

Json to_json(const NormReport& report);
Json to_json(const RademacherReport& report);
Json to_json(const HalfspaceGammaReport& report);

// {"points": [[...], ...]}
SampleSet sample_set_from_json(const Json& j);

Json load_json(const std::string& path);
void save_text(const std::string& text, const std::string& path);

// q serializes as the string "inf" when infinite, as a number otherwise.
Json q_to_json(double q);
double q_from_json(const Json& j);

}  // namespace netcap
