#pragma once

#include <ostream>

#include <alat/point_set.hpp>

#include "config.hpp"

namespace alat::cli {

/// Builds the point set a config describes (generated or loaded from `input`).
PointSet make_pointset(const RunConfig& c);

/// Runs one subcommand. Reports go to `report` (or `out` when unset), CSV
/// artifacts to `output` (or `out` for generate when unset); diagnostics go
/// to `err`. Returns 0, 1 (invalid config), 2 (verification failure) or
/// 3 (budget exceeded).
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

/// JSON encoding of a group element: exact coordinates as decimal strings
/// plus the real embedding.
nlohmann::json element_json(const GroupElem& g);

}  // namespace alat::cli
