#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "specdim/cover.hpp"
#include "specdim/gauge.hpp"
#include "specdim/halfline.hpp"
#include "specdim/measure.hpp"
#include "specdim/sparse_barrier.hpp"

// JSON schemas for the domain types, shared by the CLI and by anything that
// wants to ship configs around.  Every parser raises BadConfig with the
// offending field path ("gauge.name", "measure.atoms[3]", ...).

namespace specdim {

using Json = nlohmann::json;

/// {"name": "power"|"log_power"|"f_delta"|"rho_beta", "params": {"alpha": ...}}
GaugeFunction gauge_from_json(const Json& j, const std::string& field = "gauge");

/// {"kind": "power"|"log_power"|"stretched"|"pow",
///  "index": {"lo": a, "hi": b, "lo_open"?, "hi_open"?, "lo_unbounded"?, "hi_unbounded"?},
///  "base": <gauge>}   (base only for stretched/pow)
CompleteFamily family_from_json(const Json& j, const std::string& field = "family");

/// {"atoms": [[pos, mass], ...],
///  "density": [{"interval": [a, b], "kind": "const"|"semicircle", "value": v}
///              | {"interval": [a, b], "kind": "table", "xs": [...], "ws": [...]}]}
SpectralMeasure measure_from_json(const Json& j, const std::string& field = "measure");

/// {"rule": "cantor", "ratio": r, "max_generation"?}
/// | {"rule": "log_cantor", "max_generation"?}
/// | {"rule": "custom_lengths", "generations": ...} or bare {"generations":
///   [[{"left": x, "log_len": l, "log_count"?}, ...], ...]}
CoverTree tree_from_json(const Json& j, const std::string& field = "tree");

/// {"beta": {"kind": "exp"} | {"kind": "exp_scaled", "c": ...} | {"kind": "power", "p": ...},
///  "eta": ...}
BarrierProfile profile_from_json(const Json& j, const std::string& field = "profile");

/// {"kind": "zero"} | {"kind": "constant", "value": c}
/// | {"kind": "table", "values": [...], "fill"?}
/// | {"kind": "sparse_barrier", "beta": ..., "eta": ..., "K": k}
Potential potential_from_json(const Json& j, const std::string& field = "potential");

/// Either a literal array of numbers or {"lo": a, "hi": b, "points": n,
/// "scale": "linear"|"geometric"} (default linear).
std::vector<double> grid_from_json(const Json& j, const std::string& field);

// Field-level accessors with BadConfig error paths; `field` is the prefix
// ("" for top level).
namespace jio {

std::string join(const std::string& field, const char* key);
const Json& need(const Json& j, const std::string& field, const char* key);
double num(const Json& j, const std::string& path);
double num_key(const Json& j, const std::string& field, const char* key);
double num_or(const Json& j, const std::string& field, const char* key, double dflt);
std::int64_t int_key(const Json& j, const std::string& field, const char* key);
std::int64_t int_or(const Json& j, const std::string& field, const char* key, std::int64_t dflt);
std::string str_key(const Json& j, const std::string& field, const char* key);
std::string str_or(const Json& j, const std::string& field, const char* key,
                   const std::string& dflt);
bool bool_or(const Json& j, const std::string& field, const char* key, bool dflt);
std::vector<double> num_array(const Json& j, const std::string& path);

}  // namespace jio

}  // namespace specdim
