#pragma once

#include <json.hpp>

#include "qmeter/dynamics.hpp"
#include "qmeter/hamiltonian.hpp"
#include "qmeter/pumping.hpp"
#include "qmeter/spin_system.hpp"

namespace qmeter {

/// Invalid or incomplete configuration input. Messages name the offending
/// field.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using Json = nlohmann::json;

// Spin systems: {"sites": [{"label": "e1", "role": "electron", "multiplicity": 2}, ...]}
SpinSystem system_from_json(const Json& j);
Json system_to_json(const SpinSystem& system);

// Hamiltonian term lists; couplings carry explicit "uT" suffixes:
//   {"type": "zeeman",    "B_uT": [0,0,50], "electrons": ["e1","e2"]}
//   {"type": "hyperfine", "A_uT": [0,0,1000] | 3x3 nested, "electron": "e1", "nucleus": "n1"}
//   {"type": "exchange",  "J_uT": 500, "e1": "e1", "e2": "e2"}
//   {"type": "dipolar",   "V_uT": 1000, "axis": [0,0,1], "e1": "e1", "e2": "e2"}
HamiltonianSpec hamiltonian_from_json(const Json& j, const SpinSystem& system);
Json hamiltonian_to_json(const HamiltonianSpec& spec, const SpinSystem& system);

OpenSystemModel open_system_from_json(const Json& j);
Json open_system_to_json(const OpenSystemModel& model);

// Kinetic scheme files: levels, edges with rates in s^-1, optional pump,
// recycle and signal blocks.
KineticScheme scheme_from_json(const Json& j);
Json scheme_to_json(const KineticScheme& scheme);

/// FNV-1a 64-bit hash of a string, hex-encoded; used for config
/// provenance footers.
std::string fnv1a_hex(const std::string& text);

}  // namespace qmeter
