#pragma once

// JSON interchange for packings and extension classes.

#include "json.hpp"

#include <string>

#include "cubepack/extension.hpp"
#include "cubepack/packing.hpp"

namespace cubepack {

using json = nlohmann::json;

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Coordinates are 0, 1, {"p":id,"s":shift} or "*" (FRESH).
json to_json(Coordinate c);
Coordinate coordinate_from_json(const json& j);

/// {"space":"cube"|"torus","dim":n,"cubes":[[coord,...],...]}
json to_json(const Packing& p);
/// Structure only; invariants are left to validate().
Packing packing_from_json(const json& j);

json to_json(const ExtensionClass& c);

/// Compact text form: cubes separated by ';' or newlines, coordinates by
/// spaces or commas, each one of 0, 1, tK, tK+1 (K >= 1).
Packing parse_packing_text(Space space, const std::string& text);
std::string to_text(const Packing& p);

Packing read_packing_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace cubepack
