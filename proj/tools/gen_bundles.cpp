// Regenerates the code bundles under data/codes/. The generated files are
// committed; rerun this tool only when the constructions change.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "gkpsim/css_code.hpp"
#include "gkpsim/schedule.hpp"

namespace fs = std::filesystem;
using namespace gkpsim;
using nlohmann::json;

namespace {

void write_manifest(const fs::path& dir, const json& manifest) {
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

void write_bundle(const fs::path& dir, const std::string& name,
                  const CssCode& code, int declared_d,
                  const json& schedules, const std::string& default_schedule) {
  fs::create_directories(dir);
  save_matrix((dir / "hx.txt").string(), code.h_x);
  save_matrix((dir / "hz.txt").string(), code.h_z);
  json manifest;
  manifest["name"] = name;
  manifest["n"] = code.n;
  manifest["k"] = code.k;
  manifest["d"] = declared_d;
  manifest["h_x"] = "hx.txt";
  manifest["h_z"] = "hz.txt";
  if (!schedules.empty()) {
    manifest["schedules"] = schedules;
    manifest["default_schedule"] = default_schedule;
  }
  write_manifest(dir, manifest);
  std::printf("%-8s [[%d,%d,%d]]  h_x %dx%d  h_z %dx%d\n", name.c_str(),
              code.n, code.k, declared_d, code.h_x.rows(), code.h_x.cols(),
              code.h_z.rows(), code.h_z.cols());
}

// 3-qubit bit-flip repetition code; X checks are empty. The bundled schedule
// is the fully serialized one (one CNOT per level).
void gen_rep3(const fs::path& root) {
  const fs::path dir = root / "rep3";
  fs::create_directories(dir);
  BinaryMatrix h_z = repetition_checks(3);
  BinaryMatrix h_x(0, 3);
  CssCode code = validate_css(std::move(h_x), std::move(h_z), 3);
  save_schedule((dir / "schedule_z_serial.txt").string(),
                serialized_schedule(code.h_z));
  json schedules;
  schedules["serial4"] = {{"x", nullptr}, {"z", "schedule_z_serial.txt"}};
  write_bundle(dir, "rep3", code, 3, schedules, "serial4");
}

// Hypergraph product of the 3-bit repetition checks with themselves: the
// [[13,1,3]] surface-type code used for desk-scale experiments.
void gen_hgp13(const fs::path& root) {
  const fs::path dir = root / "hgp13";
  fs::create_directories(dir);
  const BinaryMatrix rep = repetition_checks(3);
  CssCode code = hypergraph_product(rep, rep);
  save_schedule((dir / "schedule_x_colored.txt").string(),
                edge_coloring_schedule(code.h_x));
  save_schedule((dir / "schedule_z_colored.txt").string(),
                edge_coloring_schedule(code.h_z));
  json schedules;
  schedules["colored"] = {{"x", "schedule_x_colored.txt"},
                          {"z", "schedule_z_colored.txt"}};
  write_bundle(dir, "hgp13", code, 3, schedules, "colored");
}

// Bivariate bicycle [[144,12,12]] code: l = 12, m = 6, A = x^3 + y + y^2,
// B = y^3 + x + x^2, H_X = [A | B], H_Z = [B^T | A^T].
void gen_bb144(const fs::path& root) {
  const int l = 12, m = 6, n2 = l * m;
  auto shift = [&](int a, int b) {
    // permutation index of x^a y^b acting on (i, j)
    return [=](int q) {
      const int i = q / m, j = q % m;
      return ((i + a) % l) * m + (j + b) % m;
    };
  };
  auto add_terms = [&](BinaryMatrix& mat, int row0, int col0,
                       std::initializer_list<std::pair<int, int>> terms,
                       bool transpose) {
    for (const auto& [a, b] : terms) {
      auto perm = shift(a, b);
      for (int q = 0; q < n2; ++q) {
        if (transpose)
          mat.add_entry(row0 + perm(q), col0 + q);
        else
          mat.add_entry(row0 + q, col0 + perm(q));
      }
    }
  };
  const std::initializer_list<std::pair<int, int>> a_terms = {
      {3, 0}, {0, 1}, {0, 2}};
  const std::initializer_list<std::pair<int, int>> b_terms = {
      {0, 3}, {1, 0}, {2, 0}};

  BinaryMatrix h_x(n2, 2 * n2);
  add_terms(h_x, 0, 0, a_terms, false);
  add_terms(h_x, 0, n2, b_terms, false);
  BinaryMatrix h_z(n2, 2 * n2);
  add_terms(h_z, 0, 0, b_terms, true);
  add_terms(h_z, 0, n2, a_terms, true);
  CssCode code = validate_css(std::move(h_x), std::move(h_z), 12);

  const fs::path dir = root / "bb144";
  fs::create_directories(dir);
  const Schedule sx = edge_coloring_schedule(code.h_x);
  const Schedule sz = edge_coloring_schedule(code.h_z);
  save_schedule((dir / "schedule_x_depth6.txt").string(), sx);
  save_schedule((dir / "schedule_z_depth6.txt").string(), sz);
  json schedules;
  schedules["depth6"] = {{"x", "schedule_x_depth6.txt"},
                         {"z", "schedule_z_depth6.txt"}};
  write_bundle(dir, "bb144", code, 12, schedules, "depth6");
}

// Lifted product of the (3,5) quasi-cyclic base with itself over Z_31
// (entries x^(5^i 2^j)): the [[1054,140,20]] code. Depth-8 schedules come
// from proper edge coloring; the depth-40 variants split each level in five.
void gen_lp1054(const fs::path& root) {
  GroupAlgebraMatrix base(3, std::vector<std::vector<int>>(5));
  int row_factor = 1;
  for (int i = 0; i < 3; ++i) {
    int e = row_factor;
    for (int j = 0; j < 5; ++j) {
      base[i][j] = {e % 31};
      e = (e * 2) % 31;
    }
    row_factor = (row_factor * 5) % 31;
  }
  CssCode code = lifted_product(base, base, 31);

  const fs::path dir = root / "lp1054";
  fs::create_directories(dir);
  const Schedule sx8 = edge_coloring_schedule(code.h_x);
  const Schedule sz8 = edge_coloring_schedule(code.h_z);
  save_schedule((dir / "schedule_x_depth8.txt").string(), sx8);
  save_schedule((dir / "schedule_z_depth8.txt").string(), sz8);
  save_schedule((dir / "schedule_x_depth40.txt").string(),
                split_schedule(sx8, 5));
  save_schedule((dir / "schedule_z_depth40.txt").string(),
                split_schedule(sz8, 5));
  json schedules;
  schedules["depth8"] = {{"x", "schedule_x_depth8.txt"},
                         {"z", "schedule_z_depth8.txt"}};
  schedules["depth40"] = {{"x", "schedule_x_depth40.txt"},
                          {"z", "schedule_z_depth40.txt"}};
  write_bundle(dir, "lp1054", code, 20, schedules, "depth8");
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path root = argc > 1 ? argv[1] : "data/codes";
  try {
    gen_rep3(root);
    gen_hgp13(root);
    gen_bb144(root);
    gen_lp1054(root);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
