#pragma once

#include <iosfwd>
#include <string>

#include "repgames/field.hpp"

namespace repgames {

// A field is stored as <stem>.csv (index columns, coordinates, value) and
// <stem>.json (grid metadata).
void write_field(const ScalarField& field, const std::string& stem);
ScalarField read_field(const std::string& stem);

void write_field_csv(const ScalarField& field, std::ostream& out);
std::string grid_header_json(const Grid& grid);
Grid grid_from_json(const std::string& text);

}  // namespace repgames
