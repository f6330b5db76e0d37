#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>

#include "equilab/equidist.hpp"
#include "equilab/generators.hpp"
#include "equilab/schedule.hpp"

namespace equilab {

using Json = nlohmann::ordered_json;

/// Shortest decimal text that parses back to the same double (data files).
std::string format_shortest(double v);

/// 17 significant digits, printf("%.17g") (canonical JSON).
std::string format_canonical(double v);

/// Serializes with insertion-ordered keys, two-space indent and every float
/// printed by format_canonical. Parsing the output and dumping it again
/// reproduces the same bytes.
std::string dump_canonical(const Json& j);

Json to_json(const ShiftVector& shift);
ShiftVector shift_from_json(const Json& j);

/// {"c": real, "n_max": int}
Json to_json(const GaussianSchedule& schedule);
GaussianSchedule schedule_from_json(const Json& j);

/// {"kind": ..., "params": {...}, "shift": {...} | null, "seed": u64}
Json to_json(const GeneratorSpec& spec);
GeneratorSpec generator_spec_from_json(const Json& j);

/// Fields n, star_discrepancy, ratio_table, weyl_residuals, verdict,
/// threshold, then the outside-interval evidence.
Json to_json(const EquidistReport& report);

/// One row per ratio-table entry plus a trailing summary row.
std::string to_csv(const EquidistReport& report);

/// Parses "const:<c>", "linear:<slope>" or "list:<h1>,<h2>,...".
ShiftVector parse_shift(const std::string& text);
std::string shift_to_string(const ShiftVector& shift);

}  // namespace equilab
