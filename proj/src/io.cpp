#include "cubepack/io.hpp"

#include <fstream>

namespace cubepack {

json to_json(Coordinate c) {
  if (c.is_zero()) return 0;
  if (c.is_one()) return 1;
  if (c.is_fresh()) return "*";
  return json{{"p", c.param()}, {"s", c.shift()}};
}

Coordinate coordinate_from_json(const json& j) {
  if (j.is_number_integer()) {
    const auto v = j.get<long>();
    if (v == 0) return Coordinate::zero();
    if (v == 1) return Coordinate::one();
    throw FormatError("boundary coordinate must be 0 or 1, got " + j.dump());
  }
  if (j.is_string() && j.get<std::string>() == "*") return Coordinate::fresh();
  if (j.is_object() && j.contains("p")) {
    const auto p = j.at("p").get<long>();
    const auto s = j.value("s", 0L);
    if (p < 0) throw FormatError("negative parameter id");
    if (s != 0 && s != 1) throw FormatError("shift must be 0 or 1");
    return Coordinate::literal(static_cast<ParamId>(p), static_cast<int>(s));
  }
  throw FormatError("unrecognized coordinate " + j.dump());
}

json to_json(const Packing& p) {
  json cubes = json::array();
  for (const Cube& c : p.cubes()) {
    json row = json::array();
    for (Coordinate x : c) row.push_back(to_json(x));
    cubes.push_back(std::move(row));
  }
  return json{{"space", to_string(p.space())}, {"dim", p.dim()}, {"cubes", std::move(cubes)}};
}

Packing packing_from_json(const json& j) {
  try {
    const Space space = parse_space(j.at("space").get<std::string>());
    const int dim = j.at("dim").get<int>();
    std::vector<Cube> cubes;
    for (const auto& row : j.at("cubes")) {
      Cube c;
      for (const auto& x : row) c.push_back(coordinate_from_json(x));
      cubes.push_back(std::move(c));
    }
    return Packing(space, dim, std::move(cubes));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed packing JSON: ") + e.what());
  }
}

json to_json(const ExtensionClass& c) {
  json coords = json::array();
  for (Coordinate x : c.coords) coords.push_back(to_json(x));
  return json{{"coords", std::move(coords)}, {"nb", c.nb}};
}

Packing parse_packing_text(Space space, const std::string& text) {
  std::vector<Cube> cubes;
  Cube cur;
  std::string tok;
  auto flush_token = [&] {
    if (tok.empty()) return;
    if (tok == "0") {
      cur.push_back(Coordinate::zero());
    } else if (tok == "1") {
      cur.push_back(Coordinate::one());
    } else if (tok == "*") {
      cur.push_back(Coordinate::fresh());
    } else {
      int shift = 0;
      std::string body = tok;
      if (body.size() > 2 && body.compare(body.size() - 2, 2, "+1") == 0) {
        shift = 1;
        body.resize(body.size() - 2);
      }
      if (body.size() < 2 || body[0] != 't') throw FormatError("bad coordinate token '" + tok + "'");
      long k = 0;
      try {
        std::size_t used = 0;
        k = std::stol(body.substr(1), &used);
        if (used != body.size() - 1) throw FormatError("bad coordinate token '" + tok + "'");
      } catch (const std::logic_error&) {
        throw FormatError("bad coordinate token '" + tok + "'");
      }
      if (k < 1) throw FormatError("parameters are numbered from t1");
      cur.push_back(Coordinate::literal(static_cast<ParamId>(k - 1), shift));
    }
    tok.clear();
  };
  auto flush_cube = [&] {
    flush_token();
    if (!cur.empty()) cubes.push_back(std::move(cur));
    cur.clear();
  };
  for (char ch : text) {
    if (ch == ';' || ch == '\n') {
      flush_cube();
    } else if (ch == ' ' || ch == ',' || ch == '\t' || ch == '(' || ch == ')') {
      flush_token();
    } else {
      tok.push_back(ch);
    }
  }
  flush_cube();
  const int dim = cubes.empty() ? 0 : static_cast<int>(cubes.front().size());
  return Packing(space, dim, std::move(cubes));
}

std::string to_text(const Packing& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < p.cube(i).size(); ++j) {
      if (j) s += ' ';
      s += p.cube(i)[j].to_string();
    }
  }
  return s;
}

Packing read_packing_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return packing_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << j.dump(1) << '\n';
}

}  // namespace cubepack
