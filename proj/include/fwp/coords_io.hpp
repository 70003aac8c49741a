/// \file coords_io.hpp
/// JSON form of coordinate files:
/// {"kind":"shear"|"diamond","model":"H","entries":[{"edge":["p/q","r/s"],"value":x},...]}
#pragma once

#include <string>
#include <string_view>

#include "fwp/coords.hpp"

namespace fwp {

/// Throws Error(kParse) on malformed input, unknown fields, duplicate edges,
/// non-edges or non-finite values.
CoordFn coords_from_json(std::string_view text);

/// Entries in canonical edge order; values round-trip exactly.
std::string coords_to_json(const CoordFn& f);

CoordFn load_coords(const std::string& path);
void save_coords(const std::string& path, const CoordFn& f);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace fwp
