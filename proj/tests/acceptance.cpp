// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is exact (zero-tolerance comparisons on rationals).
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "hk/suite.hpp"

using namespace hk;

namespace {

struct Criterion {
  std::string name;
  bool pass = true;
  std::string detail;
  double seconds = 0;
};

std::vector<Criterion> results;

template <class F>
void run(const std::string& name, F body) {
  Criterion c;
  c.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const Error& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  results.push_back(c);
  std::printf("[%s] %-28s %6.1fs  %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.seconds,
              c.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  std::vector<std::pair<int, int>> grid = {{4, 1}, {4, 2}, {5, 1}, {5, 2}, {6, 1}, {6, 2}};
  std::vector<GradedAlgebra> models;
  for (auto [b, m] : grid) models.push_back(standard_model(b, m));
  const std::uint64_t seed = 20260809;

  run("1 so(4,1) action", [&](Criterion& c) {
    for (size_t i = 0; i < grid.size(); ++i) {
      CheckResult r = check_so5(models[i], seed + i, 5);
      if (!r.pass) {
        c.pass = false;
        c.detail += "(b=" + std::to_string(grid[i].first) + ",m=" + std::to_string(grid[i].second) + ") ";
      }
    }
    if (c.pass) c.detail = "dim 10, Killing (4,6,0), graded (3,4,3) on all models x 5 triples";
  });

  run("2 structure algebra", [&](Criterion& c) {
    for (size_t i = 0; i < grid.size(); ++i) {
      CheckResult r = check_structure_algebra(models[i], seed + i);
      if (!r.pass) {
        c.pass = false;
        c.detail += r.data + " ";
      }
    }
    if (c.pass) c.detail = "dim (b+2)(b+1)/2, Killing (4(b-2), 6+(b-2)(b-3)/2, 0); m=1 invariant form";
  });

  run("3 graded dimensions", [&](Criterion& c) {
    for (size_t i = 0; i < grid.size(); ++i)
      if (!check_graded_dims(models[i]).pass) c.pass = false;
    if (c.pass) c.detail = "dim A_2i = C(b+i-1, i) below the middle, mirrored above";
  });

  run("4 BB independence", [&](Criterion& c) {
    for (size_t i = 0; i < grid.size(); ++i) {
      CheckResult r = check_bb_independence(models[i], seed + i, 10);
      if (!r.pass) c.pass = false;
    }
    if (c.pass) c.detail = "10 triples per model: one positive factor, inertia (3, b-3, 0)";
  });

  run("5 mumford-tate algebra", [&](Criterion& c) {
    for (size_t i = 0; i < grid.size(); ++i) {
      CheckResult r = check_mumford_tate(models[i], seed + i);
      if (!r.pass) c.pass = false;
    }
    if (c.pass) c.detail = "dim b(b-1)/2, exactly skew for the extracted pairing on A_2";
  });

  run("6 grading-zero part", [&](Criterion& c) {
    bool note_seen = false;
    for (size_t i = 0; i < grid.size(); ++i) {
      CheckResult r = check_grading_zero(models[i], seed + i);
      if (!r.pass) c.pass = false;
      if (r.data.find("Id") != std::string::npos) note_seen = true;
    }
    if (!note_seen) {
      c.pass = false;
      c.detail = "Id-vs-H note missing from the report";
    }
    if (c.pass) c.detail = "degree-0 part equals g_M + span(H); Id-vs-H note in report";
  });

  run("7 generalized pairing", [&](Criterion& c) {
    for (size_t i = 0; i < grid.size(); ++i) {
      CheckResult r = check_generalized_pairing(models[i], seed + i, 5);
      if (!r.pass) c.pass = false;
    }
    if (c.pass) c.detail = "non-degenerate per degree, positive factors across 5 triples, degree 2 = BB";
  });

  run("8 twistor connectivity", [&](Criterion& c) {
    CheckResult r = check_twistor_connect(diag_form({1, 1, 1, -1, -1}), seed, 100);
    c.pass = r.pass;
    c.detail = "100 seeded pairs at b=5: validator-confirmed, length <= 6; " + r.data;
  });

  run("9 admissible paths", [&](Criterion& c) {
    CheckResult r5 =
        check_twistor_admissible(diag_form({1, 1, 1, -1, -1}), {{0, 0, 0, 0, 1}}, seed, 20, 20);
    CheckResult r4 = check_twistor_admissible(diag_form({1, 1, 1, -1}), {}, seed + 1, 1, 20);
    c.pass = r5.pass && r4.pass;
    c.detail = "20 instances at b=5 with NS = Z e5, plus the b=4 NS = 0 demo";
    if (!r5.pass) c.detail += " | b=5: " + r5.data;
    if (!r4.pass) c.detail += " | b=4: " + r4.data;
  });

  run("10 membership and transforms", [&](Criterion& c) {
    for (size_t i = 0; i < grid.size(); ++i) {
      CheckResult r = check_d_set(models[i], seed + i, 10);
      if (!r.pass) c.pass = false;
    }
    if (c.pass) c.detail = "sampled triples satisfy all five equations; R^T G R = G exactly";
  });

  run("11 model oracle", [&](Criterion& c) {
    for (size_t i = 0; i < grid.size(); ++i) {
      auto [b, m] = grid[i];
      if (b > 5 || m > 2) continue;
      CheckResult r = check_model_oracle(models[i], seed + i, 200);
      if (!r.pass) c.pass = false;
    }
    if (c.pass) c.detail = "200 tuples per model (b <= 5): trace = constant x matching sum";
  });

  int failed = 0;
  for (const auto& c : results)
    if (!c.pass) ++failed;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed,
              results.size());
  return failed == 0 ? 0 : 1;
}
