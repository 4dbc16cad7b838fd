#pragma once

#include <json.hpp>

#include "qlock/core/channel.hpp"

namespace qlock {

/// Builds a channel from a JSON object. Either a named member of the zoo,
///   {"name": "depolarizing", "d": 2, "p": 0.5}
/// or explicit Kraus operators as interleaved (re, im) row-major arrays,
///   {"in_dim": 2, "out_dim": 2, "kraus": [[1,0, 0,0, 0,0, 1,0]]}.
/// Names: identity, depolarizing, erasure, dephasing, amplitude_damping,
/// constant_mixed, random, random_measure_prepare, qubit_depolarizing_eb_form.
/// Unknown keys and names throw ValidationError.
KrausChannel channel_from_config(const nlohmann::json& cfg);

}  // namespace qlock
