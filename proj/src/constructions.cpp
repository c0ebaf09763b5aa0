#include "cubepack/constructions.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include "cubepack/io.hpp"

namespace cubepack {

namespace {

Cube shift_params(const Cube& c, ParamId offset) {
  Cube out = c;
  for (Coordinate& x : out) {
    if (x.is_literal()) x = Coordinate::literal(x.param() + offset, x.shift());
  }
  return out;
}

Cube concat(const Cube& a, const Cube& b) {
  Cube out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void require_torus(const Packing& p, const char* what) {
  if (p.space() != Space::torus) throw std::invalid_argument(std::string(what) + " needs torus packings");
}

}  // namespace

Packing cp1() { return Packing(Space::torus, 1, {{Coordinate::literal(0, 0)}, {Coordinate::literal(0, 1)}}); }

Packing product(const Packing& p, const Packing& q) {
  require_torus(p, "product");
  require_torus(q, "product");
  const Packing a = p.normalized();
  const Packing b = q.normalized();
  std::vector<Cube> cubes;
  const std::vector<Cube> qcubes = b.empty() ? std::vector<Cube>{Cube{}} : b.cubes();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto offset = static_cast<ParamId>(a.param_count() + i * static_cast<std::size_t>(b.param_count()));
    for (const Cube& w : qcubes) cubes.push_back(concat(a.cube(i), shift_params(w, offset)));
  }
  return Packing(Space::torus, a.dim() + b.dim(), std::move(cubes));
}

Packing h_matrix(int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("h_matrix needs an odd n >= 3");
  std::vector<Cube> rows(static_cast<std::size_t>(n), Cube(static_cast<std::size_t>(n), Coordinate::zero()));
  auto at = [&](int r, int c) -> Coordinate& {
    return rows[static_cast<std::size_t>(((r % n) + n) % n)][static_cast<std::size_t>(c)];
  };
  ParamId next = static_cast<ParamId>(n);
  for (int i = 0; i < n; ++i) at(i, i) = Coordinate::literal(static_cast<ParamId>(i));
  for (int k = 1; k <= (n - 1) / 2; ++k) {
    for (int i = 0; i < n; ++i) {
      at(i + k, i) = Coordinate::literal(next, 0);
      at(i - k, i) = Coordinate::literal(next, 1);
      ++next;
    }
  }
  return Packing(Space::torus, n, std::move(rows)).normalized();
}

Permutation parse_cycles(const std::string& text, int n) {
  Permutation sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<int> cycle;
  std::string num;
  std::set<int> seen;
  auto flush_num = [&] {
    if (num.empty()) return;
    const int v = std::stoi(num) - 1;
    if (v < 0 || v >= n || !seen.insert(v).second) throw std::invalid_argument("bad permutation " + text);
    cycle.push_back(v);
    num.clear();
  };
  for (char ch : text) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      num.push_back(ch);
    } else if (ch == ',' || ch == ' ') {
      flush_num();
    } else if (ch == '(') {
      cycle.clear();
    } else if (ch == ')') {
      flush_num();
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        sigma[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
      }
      cycle.clear();
    } else {
      throw std::invalid_argument("bad permutation " + text);
    }
  }
  return sigma;
}

std::vector<Permutation> dihedral_orbit(const Permutation& sigma) {
  const int n = static_cast<int>(sigma.size());
  std::set<Permutation> orbit;
  for (int r = 0; r < n; ++r) {
    for (int refl = 0; refl < 2; ++refl) {
      Permutation g(static_cast<std::size_t>(n)), ginv(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        const int img = refl ? ((r - i) % n + n) % n : (i + r) % n;
        g[static_cast<std::size_t>(i)] = img;
        ginv[static_cast<std::size_t>(img)] = i;
      }
      Permutation c(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        c[static_cast<std::size_t>(i)] =
            g[static_cast<std::size_t>(sigma[static_cast<std::size_t>(ginv[static_cast<std::size_t>(i)])])];
      }
      orbit.insert(c);
    }
  }
  return {orbit.begin(), orbit.end()};
}

Packing hn_tiling(int n, const std::vector<Permutation>& perms) {
  const Packing h = h_matrix(n);
  std::vector<Cube> cubes = h.cubes();
  for (int i = 0; i < n; ++i) {
    Cube c = h.cube(static_cast<std::size_t>(i));
    c[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)].flipped();
    cubes.push_back(std::move(c));
  }
  std::set<Permutation> all;
  for (const auto& sigma : perms) {
    if (static_cast<int>(sigma.size()) != n) throw std::invalid_argument("permutation of the wrong degree");
    for (auto& c : dihedral_orbit(sigma)) all.insert(std::move(c));
  }
  for (const auto& sigma : all) {
    Cube z(static_cast<std::size_t>(n), Coordinate::zero());
    for (int j = 0; j < n; ++j) {
      const auto col = static_cast<std::size_t>(j);
      z[col] = h.cube(static_cast<std::size_t>(sigma[col]))[col].flipped();
    }
    cubes.push_back(std::move(z));
  }
  Packing p(Space::torus, n, std::move(cubes));
  if (auto v = validate(p)) throw ConstructionError("permutation cubes do not pack: " + v->message);
  if (!is_tiling(p)) {
    throw ConstructionError("permutation cubes give " + std::to_string(p.size()) + " cubes, not a tiling");
  }
  return p;
}

OneFactorization one_factorization(int vertices) {
  if (vertices < 2 || vertices % 2) throw std::invalid_argument("one_factorization needs an even vertex count");
  OneFactorization f;
  f.vertices = vertices;
  const int r = vertices - 1;
  for (int round = 0; round < r; ++round) {
    std::vector<std::pair<int, int>> m;
    m.emplace_back(round, r);
    for (int k = 1; k <= (vertices - 2) / 2; ++k) {
      m.emplace_back((round + k) % r, (round - k + r) % r);
    }
    f.matchings.push_back(std::move(m));
  }
  return f;
}

Packing factorization_packing(const OneFactorization& f) {
  const int n = static_cast<int>(f.matchings.size());
  std::vector<Cube> cubes(static_cast<std::size_t>(f.vertices), Cube(static_cast<std::size_t>(n), Coordinate::zero()));
  ParamId next = 0;
  for (int j = 0; j < n; ++j) {
    for (auto [u, v] : f.matchings[static_cast<std::size_t>(j)]) {
      cubes[static_cast<std::size_t>(u)][static_cast<std::size_t>(j)] = Coordinate::literal(next, 0);
      cubes[static_cast<std::size_t>(v)][static_cast<std::size_t>(j)] = Coordinate::literal(next, 1);
      ++next;
    }
  }
  return Packing(Space::torus, n, std::move(cubes)).normalized();
}

Packing rod_skeleton() {
  return parse_packing_text(Space::torus,
                            "t1 t2 t3; t1+1 t4 t5; t6 t2+1 t5+1; t1+1 t4+1 t5;"
                            "t6+1 t2+1 t5+1; t1 t2 t3+1; t1+1 t2 t5+1; t1 t2+1 t5");
}

Packing rod_tiling(int n, const std::vector<Packing>& fillers) {
  if (n < 3) throw std::invalid_argument("rod tilings need n >= 3");
  const Packing h = rod_skeleton();
  if (n > 3 && fillers.size() != 8) throw std::invalid_argument("rod tiling needs eight fillers");
  std::vector<Cube> cubes;
  ParamId offset = static_cast<ParamId>(h.param_count());
  for (std::size_t i = 0; i < 8; ++i) {
    if (n == 3) {
      cubes.push_back(h.cube(i));
      continue;
    }
    const Packing w = fillers[i].normalized();
    if (w.dim() != n - 3 || !is_tiling(w) || validate(w)) {
      throw std::invalid_argument("rod fillers must be (n-3)-dimensional tilings");
    }
    for (const Cube& c : w.cubes()) cubes.push_back(concat(h.cube(i), shift_params(c, offset)));
    offset += static_cast<ParamId>(w.param_count());
  }
  return Packing(Space::torus, n, std::move(cubes));
}

Packing rod_tiling(int n) {
  if (n == 3) return rod_tiling(3, {});
  Packing w = cp1();
  for (int k = 1; k < n - 3; ++k) w = product(w, cp1());
  return rod_tiling(n, std::vector<Packing>(8, w));
}

Rational rod_probability(int n) {
  if (n <= 3) throw std::domain_error("rod probability needs n >= 4");
  const Rational N = n;
  const Rational a = N - 3;
  const Rational b = (N - 3) * (N - 4);

  const Rational p3_1 = (N - 2) / N;

  const Rational p4_1 = p3_1 * 3 / (N * (N - 1) * (N - 2));
  const Rational p4_2 = p3_1 * 2 / (N * (N - 1) * (N - 2));
  const Rational delta4_2 = 3 * (N - 3) * (N - 4) + 3 * (N - 3) + 4;

  const Rational p5_1 = p4_1 * 2 / (2 * (N - 1) * (N - 2));
  const Rational p5_2 = p4_1 * 2 / (2 * (N - 1) * (N - 2)) + p4_2 * 3 / delta4_2;
  const Rational p5_3 = p4_2 * 1 / delta4_2;

  const Rational p6_1 = p5_1 * 1 / (3 * (N - 2));
  const Rational p6_2 = p5_1 * 2 / (3 * (N - 2)) + p5_2 * 2 / (N * (N - 2));
  const Rational p6_3 = p5_2 * 1 / (N * (N - 2)) + p5_3 * 3 / (3 * (N - 2));

  const Rational p7_1 = p6_1 + p6_2 * 1 / (N - 1);
  const Rational p7_2 = p6_2 * 1 / (N - 1) + p6_3 * 2 / (2 * (N - 2));

  const Rational p8_1 = p7_1 + p7_2 * 1 / (N - 2);

  const Rational p9_1 = p8_1 * (2 * a) / (8 * a + 3 * b);
  const Rational p9_2 = p8_1 * (6 * a) / (8 * a + 3 * b);

  const Rational p10_1 = p9_1 * a / (7 * a + 3 * b);
  const Rational p10_2 = p9_1 * (6 * a) / (7 * a + 3 * b) + p9_2 * (3 * a) / (7 * a + 2 * b);
  const Rational p10_3 = p9_2 * (4 * a) / (7 * a + 2 * b);

  const Rational p11_1 = p10_1 * (6 * a) / (6 * a + 3 * b) + p10_2 * (2 * a) / (6 * a + 2 * b);
  const Rational p11_2 = p10_2 * (4 * a) / (6 * a + 2 * b) + p10_3 * (4 * a) / (6 * a + b);
  const Rational p11_3 = p10_3 * (2 * a) / (6 * a + 2 * b);

  const Rational p12_1 = p11_1 * a / (5 * a + 2 * b);
  const Rational p12_2 = p11_1 * (4 * a) / (5 * a + 2 * b) + p11_2 * (3 * a) / (5 * a + 2 * b);
  const Rational p12_3 = p11_2 * (2 * a) / (5 * a + 2 * b) + p11_3 * (5 * a) / (5 * a + 2 * b);

  const Rational p13_1 = p12_1 * (4 * a) / (4 * a + 2 * b) + p12_2 * (2 * a) / (4 * a + b);
  const Rational p13_2 = p12_2 * (2 * a) / (4 * a + b) + p12_3 * (4 * a) / (4 * a);

  const Rational p14_1 = p13_1 * a / (3 * a + b);
  const Rational p14_2 = p13_1 * (2 * a) / (3 * a + b) + p13_2 * (3 * a) / (3 * a);

  const Rational p15_1 = p14_1 * (2 * a) / (2 * a + b) + p14_2;
  return p15_1;
}

// ---------------------------------------------------------------------------

std::vector<Fixture> builtin_fixtures() {
  const auto t = [](const char* text) { return parse_packing_text(Space::torus, text); };
  std::vector<Fixture> f;
  const Packing l2 = product(cp1(), cp1());

  f.push_back({"lamination-a", "figure2", product(cp1(), l2), {{"params", "7"}, {"limit_probability", "1/3"}}});
  // halves laminated along different coordinates
  f.push_back({"lamination-b", "figure2",
               t("t1 t2 t4; t1 t2 t4+1; t1 t2+1 t5; t1 t2+1 t5+1;"
                 "t1+1 t6 t3; t1+1 t6+1 t3; t1+1 t7 t3+1; t1+1 t7+1 t3+1"), {{"params", "7"}, {"limit_probability", "1/3"}}});
  f.push_back({"rod", "figure2", rod_skeleton(), {{"params", "6"}, {"limit_probability", "5/18"}}});
  f.push_back({"nonextensible", "figure2", t("t1 t2 t3; t1+1 t4 t5; t6 t2+1 t5+1; t6+1 t4+1 t3+1"),
               {{"params", "6"}, {"extensible", "false"}, {"limit_probability", "1/18"}}});

  const char* dim6[9] = {
      "t1 t5 t9 t14+1 t17+1 t19; t1+1 t6 t10 t13+1 t16+1 t19; t2 t5+1 t11 t13 t18 t20;"
      "t2+1 t7 t9+1 t15 t16 t21; t3 t6+1 t12 t14 t18+1 t21+1; t3+1 t8 t10+1 t15+1 t17 t20+1;"
      "t4 t7+1 t12+1 t13+1 t17+1 t19+1; t4+1 t8+1 t11+1 t14+1 t16+1 t19+1",

      "t1 t5 t9 t13 t17 t21; t1+1 t6 t10 t14 t18 t21; t2 t5+1 t10+1 t15 t19 t22;"
      "t2+1 t6+1 t9+1 t16 t20 t22; t3 t7 t11 t13+1 t18+1 t22+1; t3+1 t8 t12 t14+1 t17+1 t22+1;"
      "t4 t7+1 t12+1 t15+1 t20+1 t21+1; t4+1 t8+1 t11+1 t16+1 t19+1 t21+1",

      "t1 t5 t9 t13 t17 t21; t1+1 t6 t10 t14 t18 t21; t2 t5+1 t10+1 t15 t19 t22;"
      "t2+1 t6+1 t9+1 t16 t20 t22; t3 t7 t11 t13+1 t18+1 t22+1; t3+1 t8 t12 t14+1 t17+1 t22+1;"
      "t4 t7+1 t12+1 t16+1 t19+1 t21+1; t4+1 t8+1 t11+1 t15+1 t20+1 t21+1",

      "t1 t5 t9 t13 t17 t21; t1+1 t6 t10 t14 t18 t22; t2 t5+1 t10+1 t15 t19 t22;"
      "t2+1 t6+1 t9+1 t16 t20 t21; t3 t7 t11 t13+1 t20+1 t22+1; t3+1 t8 t12 t14+1 t19+1 t21+1;"
      "t4 t7+1 t12+1 t16+1 t17+1 t22+1; t4+1 t8+1 t11+1 t15+1 t18+1 t21+1",

      "t1 t5 t9 t13 t17 t21; t1+1 t6 t10 t14 t18 t22; t2 t5+1 t10+1 t15 t19 t22;"
      "t2+1 t6+1 t9+1 t16 t20 t21; t3 t7 t11 t13+1 t20+1 t22+1; t3+1 t8 t12 t16+1 t17+1 t22+1;"
      "t4 t7+1 t12+1 t14+1 t19+1 t21+1; t4+1 t8+1 t11+1 t15+1 t18+1 t21+1",

      "t1 t5 t9 t13 t17 t21; t1+1 t6 t10 t14 t18 t21; t2 t5+1 t11 t15 t18+1 t22;"
      "t2+1 t6+1 t9+1 t16 t19 t22; t3 t7 t10+1 t13+1 t20 t22+1; t3+1 t8 t12 t14+1 t17+1 t22+1;"
      "t4 t7+1 t12+1 t15+1 t19+1 t21+1; t4+1 t8+1 t11+1 t16+1 t20+1 t21+1",

      "t1 t5 t9 t13 t17 t21; t1+1 t6 t10 t14 t18 t22; t2 t5+1 t11 t15 t19 t22+1;"
      "t2+1 t6+1 t9+1 t16 t20 t21; t3 t7 t10+1 t13+1 t20+1 t22; t3+1 t8 t12 t14+1 t19+1 t21+1;"
      "t4 t7+1 t12+1 t15+1 t18+1 t21+1; t4+1 t8+1 t11+1 t16+1 t17+1 t22+1",

      "t1 t5 t9 t13 t17 t21; t1+1 t6 t10 t14 t18 t21; t2 t5+1 t11 t15 t18+1 t22;"
      "t2+1 t6+1 t9+1 t16 t19 t22; t3 t7 t10+1 t13+1 t20 t22+1; t3+1 t8 t12 t15+1 t19+1 t21+1;"
      "t4 t7+1 t12+1 t14+1 t17+1 t22+1; t4+1 t8+1 t11+1 t16+1 t20+1 t21+1",

      "t1 t5 t9 t13 t17 t21; t1+1 t6 t10 t14 t18 t22; t2 t5+1 t11 t15 t19 t22+1;"
      "t2+1 t6+1 t9+1 t16 t20 t21; t3 t7 t10+1 t13+1 t20+1 t22; t3+1 t8 t12 t15+1 t18+1 t21+1;"
      "t4 t7+1 t12+1 t14+1 t19+1 t21+1; t4+1 t8+1 t11+1 t16+1 t17+1 t22+1",
  };
  const char* params6[9] = {"21", "22", "22", "22", "22", "22", "22", "22", "22"};
  const char* aut6[9] = {"4", "64", "64", "16", "16", "16", "32", "8", "16"};
  for (int k = 0; k < 9; ++k) {
    f.push_back({"dim6-" + std::to_string(k + 1), "figure3", t(dim6[k]),
                 {{"params", params6[k]}, {"aut", aut6[k]}, {"extensible", "false"}, {"limit_probability", "0"}}});
  }

  f.push_back({"dim4-1over480", "dim4",
               t("t1 t2 t3 t4; t5 t6 t7 t4+1; t1+1 t8 t7+1 t9; t5+1 t8+1 t3+1 t10;"
                 "t1+1 t6+1 t7 t10+1; t5 t2+1 t7+1 t9+1"),
               {{"params", "10"}, {"cubes", "6"}, {"extensible", "false"}, {"census_probability", "1/480"}}});

  f.push_back({"h5", "h-matrices",
               t("t1 t7+1 t13+1 t14 t10; t6 t2 t8+1 t14+1 t15; t11 t7 t3 t9+1 t15+1;"
                 "t11+1 t12 t8 t4 t10+1; t6+1 t12+1 t13 t9 t5"),
               {{"params", "15"}, {"cubes", "5"}, {"extensible", "true"}}});
  return f;
}

std::vector<Fixture> load_fixtures(const std::string& dir, const std::string& group) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  const fs::path root = fs::path(dir) / group;
  if (!fs::is_directory(root)) throw FormatError("no fixture directory " + root.string());
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Fixture> out;
  for (const auto& path : files) {
    std::ifstream in(path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw FormatError(path.string() + ": " + e.what());
    }
    if (!j.contains("cubes")) continue;
    Fixture f{j.value("name", path.stem().string()), group, packing_from_json(j), {}};
    if (j.contains("expect")) {
      for (const auto& [k, v] : j["expect"].items()) f.expect[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::map<int, std::vector<std::string>> load_table4(const std::string& dir) {
  const std::string path = dir + "/table4/permutations.json";
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  const json j = json::parse(in);
  std::map<int, std::vector<std::string>> out;
  for (const auto& [k, v] : j.at("permutations").items()) out[std::stoi(k)] = v.get<std::vector<std::string>>();
  return out;
}

}  // namespace cubepack
