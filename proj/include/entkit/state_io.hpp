// JSON state files shared between the library and the CLI.
//
// Format: { "dims": [int,...], "kind": "pure"|"mixed", "data": ... } where
// data holds [re, im] pairs: a vector for pure states, a row-major square
// matrix for mixed states. Writers emit 17 significant digits so values
// round-trip bit-exactly. Ensembles are lists of pure-state objects with an
// added "probability" field per member.
#pragma once

#include "entkit/roof.hpp"
#include "entkit/types.hpp"

#include <iosfwd>
#include <string>
#include <variant>

namespace entkit {

using StateFile = std::variant<PureState, DensityOperator>;

void write_state(std::ostream& out, const PureState& psi);
void write_state(std::ostream& out, const DensityOperator& rho);
void write_ensemble(std::ostream& out, const Ensemble& ensemble);

void save_state(const std::string& path, const StateFile& state);
void save_ensemble(const std::string& path, const Ensemble& ensemble);

// Parse and validate; throws std::invalid_argument on malformed content or
// invariant violations, std::runtime_error on unreadable files.
StateFile load_state(const std::string& path);
StateFile parse_state(const std::string& json_text);
Ensemble parse_ensemble(const std::string& json_text);

// Dims of whichever alternative is held.
const std::vector<int>& state_dims(const StateFile& state);

}  // namespace entkit
