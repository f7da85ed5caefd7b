#pragma once

#include <filesystem>

#include "json.hpp"
#include "qqinv/casimir.hpp"
#include "qqinv/report.hpp"
#include "qqinv/states.hpp"
#include "qqinv/su_algebra.hpp"

namespace qqinv {

using Json = nlohmann::ordered_json;

/// Parses {"abc": {"a": [3], "b": [8], "C": [[8] x 3]}} or
/// {"rho": [[[re, im] x 6] x 6]}. Numbers may be JSON numbers or decimal
/// strings. Shape and type errors name the offending field.
QubitQutritState parse_state(const Json& doc);

/// Reads and parses a state file. Failures carry the path and the kind of
/// failure (unreadable, malformed JSON, invalid content).
QubitQutritState load_state(const std::filesystem::path& path);

/// The "abc" form.
Json state_to_json(const QubitQutritState& state);
/// The "rho" form.
Json matrix_to_json(const CMatrix& rho);

/// {"label", "n", "d": [[A, B, C, v]...], "f": [...]} with 1-based indices.
/// d lists A <= B <= C, f lists A < B < C; entries below 1e-14 are omitted.
Json basis_to_json(const SuBasis& basis, const StructureConstants& sc);

Json to_json(const PositivityReport& report);
Json to_json(const CheckReport& report);

}  // namespace qqinv
