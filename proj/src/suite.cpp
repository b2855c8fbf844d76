#include "hk/suite.hpp"

#include <algorithm>

#include <json.hpp>

namespace hk {

using json = nlohmann::ordered_json;

const char* kToolkitVersion = "0.1.0";

namespace {

int model_b(const GradedAlgebra& a) { return a.dim(2); }
int model_m(const GradedAlgebra& a) { return a.top_degree / 4; }

CheckResult base_result(const char* name, const GradedAlgebra& a, std::uint64_t seed) {
  CheckResult r;
  r.check = name;
  r.b = model_b(a);
  r.m = model_m(a);
  r.seed = seed;
  return r;
}

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// factor with b == factor * a, when one exists entrywise
std::optional<Rat> proportionality(const QMat& a, const QMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::nullopt;
  Rat f(0);
  bool found = false;
  for (size_t i = 0; i < a.data().size(); ++i) {
    if (is_zero(a.data()[i])) {
      if (!is_zero(b.data()[i])) return std::nullopt;
      continue;
    }
    Rat cand = b.data()[i] / a.data()[i];
    if (!found) {
      f = cand;
      found = true;
    } else if (cand != f) {
      return std::nullopt;
    }
  }
  if (!found) return std::nullopt;
  return f;
}

json inertia_json(const Inertia& in) { return json::array({in.n_pos, in.n_neg, in.n_zero}); }

std::map<int, int> graded_dims_of(const LieSpan& g) {
  std::map<int, int> out;
  for (const auto& [deg, bucket] : g.graded_parts()) out[deg] = static_cast<int>(bucket.size());
  return out;
}

/// Triples whose 3-plane spans are pairwise distinct; an unlucky transform
/// can fix the base plane, which would degenerate the Weil closure.
std::vector<HKTriple> distinct_triples(const GradedAlgebra& a, int want, std::uint64_t seed) {
  std::vector<HKTriple> out;
  std::vector<Subspace<Rat>> spans;
  auto pool = sample_hk_triples(a, 4 * want, seed);
  for (const auto& t : pool) {
    QMat rows(3, a.dim(2));
    rows.set_row(0, t.x);
    rows.set_row(1, t.y);
    rows.set_row(2, t.z);
    Subspace<Rat> sp = Subspace<Rat>::span(rows);
    bool fresh = true;
    for (const auto& prev : spans)
      if (prev == sp) fresh = false;
    if (!fresh) continue;
    spans.push_back(sp);
    out.push_back(t);
    if (static_cast<int>(out.size()) == want) break;
  }
  return out;
}

}  // namespace

CheckResult check_graded_dims(const GradedAlgebra& a) {
  CheckResult r = base_result("graded-dims", a, 0);
  int b = r.b, m = r.m;
  json dims = json::array();
  bool ok = a.top_degree == 4 * m;
  for (int i = 0; i <= 2 * m; ++i) {
    long expect = i <= m ? binom(b + i - 1, i) : binom(b + (2 * m - i) - 1, 2 * m - i);
    dims.push_back(a.dim(2 * i));
    if (a.dim(2 * i) != expect) ok = false;
    if (a.dim(2 * i) != a.dim(4 * m - 2 * i)) ok = false;
  }
  for (int i = 0; i <= a.top_degree; i += 2)
    if (i % 2 == 1 && a.dim(i) != 0) ok = false;
  r.pass = ok;
  r.data = json{{"dims", dims}}.dump();
  return r;
}

CheckResult check_so5(const GradedAlgebra& a, std::uint64_t seed, int triples) {
  CheckResult r = base_result("so5", a, seed);
  auto ts = sample_hk_triples(a, triples, seed);
  bool ok = true;
  json per = json::array();
  for (const auto& t : ts) {
    LieSpan g = so5_closure(a, t);
    Inertia ki = killing_inertia(g);
    auto parts = graded_dims_of(g);
    bool good = g.dim() == 10 && ki == Inertia{4, 6, 0} && parts[-2] == 3 && parts[0] == 4 &&
                parts[2] == 3;
    ok = ok && good;
    per.push_back({{"dim", g.dim()},
                   {"killing", inertia_json(ki)},
                   {"graded", {parts[-2], parts[0], parts[2]}}});
  }
  r.pass = ok;
  r.data = json{{"triples", per}}.dump();
  return r;
}

CheckResult check_structure_algebra(const GradedAlgebra& a, std::uint64_t seed) {
  CheckResult r = base_result("structure-algebra", a, seed);
  int b = r.b;
  LieSpan g = structure_lie_algebra(a, {seed, 64, 3});
  int expect_dim = (b + 2) * (b + 1) / 2;
  Inertia ki = killing_inertia(g);
  Inertia expect_ki{4 * (b - 2), 6 + (b - 2) * (b - 3) / 2, 0};
  bool ok = g.dim() == expect_dim && ki == expect_ki;
  json data{{"dim", g.dim()},
            {"expected_dim", expect_dim},
            {"killing", inertia_json(ki)},
            {"expected_killing", inertia_json(expect_ki)}};
  if (r.m == 1) {
    auto forms = invariant_symmetric_forms(g);
    data["invariant_form_space_dim"] = forms.size();
    if (forms.size() == 1) {
      Inertia fi = inertia_exact(forms[0]);
      data["invariant_form_inertia"] = inertia_json(fi);
      bool match = (fi.n_pos == 4 && fi.n_neg == b - 2 && fi.n_zero == 0) ||
                   (fi.n_pos == b - 2 && fi.n_neg == 4 && fi.n_zero == 0);
      ok = ok && match;
    } else {
      ok = false;
    }
  }
  r.pass = ok;
  r.data = data.dump();
  return r;
}

CheckResult check_bb_independence(const GradedAlgebra& a, std::uint64_t seed, int triples) {
  CheckResult r = base_result("bb-independence", a, seed);
  auto ts = sample_hk_triples(a, triples, seed);
  bool ok = true;
  json factors = json::array();
  QMat first = bb_extract(a, ts[0]);
  Inertia in = inertia_exact(first);
  ok = ok && in.n_pos == 3 && in.n_neg == r.b - 3 && in.n_zero == 0;
  auto to_q = proportionality(*a.reference_form, first);
  ok = ok && to_q && sgn(*to_q) > 0;
  for (const auto& t : ts) {
    QMat bb = bb_extract(a, t);
    auto f = proportionality(first, bb);
    if (!f || sgn(*f) <= 0) {
      ok = false;
      factors.push_back(nullptr);
    } else {
      factors.push_back(to_string(*f));
    }
  }
  r.pass = ok;
  r.data = json{{"inertia", inertia_json(in)},
                {"factor_to_reference", to_q ? to_string(*to_q) : "none"},
                {"pairwise_factors", factors}}
               .dump();
  return r;
}

CheckResult check_mumford_tate(const GradedAlgebra& a, std::uint64_t seed) {
  CheckResult r = base_result("mumford-tate", a, seed);
  int b = r.b;
  auto ts = distinct_triples(a, 3, seed);
  auto dirs = standard_directions(3);
  LieSpan gm = mumford_tate_algebra(a, ts, dirs);
  QMat bb = bb_extract(a, ts[0]);
  bool skew = true;
  for (const QMat& g : gm.basis()) {
    QMat g2 = endo_block(a, g, 2, 2);
    if (!QMat(bb * g2 + g2.transpose() * bb).all_zero()) skew = false;
  }
  r.pass = gm.dim() == b * (b - 1) / 2 && skew;
  r.data = json{{"dim", gm.dim()}, {"expected_dim", b * (b - 1) / 2}, {"bb_skew", skew}}.dump();
  return r;
}

CheckResult check_grading_zero(const GradedAlgebra& a, std::uint64_t seed) {
  CheckResult r = base_result("grading-zero", a, seed);
  LieSpan ga = structure_lie_algebra(a, {seed, 64, 3});
  auto ts = distinct_triples(a, 3, seed + 1);
  LieSpan gm = mumford_tate_algebra(a, ts, standard_directions(3));
  DegreeZeroMatch mz = degree_zero_match(ga, gm);
  // strict inclusion without H
  LieSpan g0(&a);
  for (const auto& [deg, bucket] : ga.graded_parts())
    if (deg == 0)
      for (const QMat& mtx : bucket) g0.insert(mtx);
  bool strict = true;
  for (const QMat& mtx : gm.basis())
    if (!g0.contains(mtx)) strict = false;
  strict = strict && gm.dim() < g0.dim();
  r.pass = mz.equal && strict;
  r.data = json{{"equal", mz.equal},
                {"dim_degree_zero", mz.dim_g0},
                {"dim_gm_plus_h", mz.dim_gm_h},
                {"gm_strictly_inside", strict},
                {"id_vs_h_note", mz.note}}
               .dump();
  return r;
}

CheckResult check_generalized_pairing(const GradedAlgebra& a, std::uint64_t seed, int triples) {
  CheckResult r = base_result("generalized-pairing", a, seed);
  auto ts = sample_hk_triples(a, triples, seed);
  bool ok = true;
  json factors = json::array();
  GradedPairing first = generalized_pairing(a, ts[0]);
  QMat bb0 = bb_extract(a, ts[0]);
  // degree-2 block proportional to the BB form with positive factor
  {
    auto it = std::find(first.degrees.begin(), first.degrees.end(), 2);
    if (it == first.degrees.end()) {
      ok = false;
    } else {
      auto f = proportionality(bb0, first.forms[it - first.degrees.begin()]);
      ok = ok && f && sgn(*f) > 0;
    }
  }
  for (const auto& t : ts) {
    GradedPairing gp = generalized_pairing(a, t);  // constructor verifies blocks
    json fs = json::array();
    for (size_t k = 0; k < gp.degrees.size(); ++k) {
      auto f = proportionality(first.forms[k], gp.forms[k]);
      if (!f || sgn(*f) <= 0) {
        ok = false;
        fs.push_back(nullptr);
      } else {
        fs.push_back(to_string(*f));
      }
    }
    factors.push_back(std::move(fs));
  }
  r.pass = ok;
  r.data = json{{"degrees", first.degrees}, {"per_degree_factors", factors}}.dump();
  return r;
}

CheckResult check_d_set(const GradedAlgebra& a, std::uint64_t seed, int samples) {
  CheckResult r = base_result("d-set", a, seed);
  const QMat& q = *a.reference_form;
  auto ts = sample_hk_triples(a, samples, seed);
  bool eqs = true;
  for (const auto& t : ts) {
    if (!is_zero(form_eval(q, t.x, t.y)) || !is_zero(form_eval(q, t.x, t.z)) ||
        !is_zero(form_eval(q, t.y, t.z)))
      eqs = false;
    Rat xx = form_eval(q, t.x, t.x);
    if (xx != form_eval(q, t.y, t.y) || xx != form_eval(q, t.z, t.z) || sgn(xx) <= 0) eqs = false;
  }
  // Cayley transforms preserve the form exactly
  SplitMix64 rng(seed ^ 0xca11e7ULL);
  int b = r.b;
  bool cayley_ok = true;
  int done = 0;
  for (int tries = 0; tries < 10 * samples && done < samples; ++tries) {
    QMat k(b, b);
    for (int i = 0; i < b; ++i)
      for (int j = i + 1; j < b; ++j) {
        k(i, j) = rng.rat(3);
        k(j, i) = -k(i, j);
      }
    QMat s = *inverse(q) * k;
    if (!inverse(QMat(QMat::identity(b) + s))) continue;
    QMat rot = cayley_orthogonal(q, s);
    if (rot.transpose() * q * rot != q) cayley_ok = false;
    ++done;
  }
  r.pass = eqs && cayley_ok && done == samples;
  r.data = json{{"membership_exact", eqs}, {"cayley_exact", cayley_ok}, {"transforms", done}}.dump();
  return r;
}

CheckResult check_model_oracle(const GradedAlgebra& a, std::uint64_t seed, int tuples) {
  CheckResult r = base_result("model-oracle", a, seed);
  const QMat& q = *a.reference_form;
  int b = r.b, m = r.m;
  SplitMix64 rng(seed);
  std::optional<Rat> constant;
  bool ok = true;
  for (int n = 0; n < tuples && ok; ++n) {
    std::vector<QVec> xs;
    for (int k = 0; k < 2 * m; ++k) {
      QVec v(b);
      for (int i = 0; i < b; ++i) v[i] = rng.rat(3);
      xs.push_back(v);
    }
    Rat lhs = trace_of_product(a, xs);
    Rat rhs = matching_sum(q, xs);
    if (is_zero(rhs)) {
      if (!is_zero(lhs)) ok = false;
      continue;
    }
    Rat f = lhs / rhs;
    if (!constant)
      constant = f;
    else if (*constant != f)
      ok = false;
  }
  r.pass = ok && constant.has_value();
  r.data = json{{"constant", constant ? to_string(*constant) : "none"}, {"tuples", tuples}}.dump();
  return r;
}

CheckResult check_twistor_connect(const QMat& gram, std::uint64_t seed, int pairs) {
  CheckResult r;
  r.check = "twistor-connect";
  r.b = gram.rows();
  r.seed = seed;
  PeriodSpace ps = make_period_space(gram, 0);
  TwistorPlane base = sample_plane(ps, 0);
  bool ok = true;
  int max_len = 0;
  for (int k = 0; k < pairs; ++k) {
    TwistorPlane other = sample_plane(ps, seed + k + 1);
    TwistorPath path = connect_planes(ps, base, other);
    PathCheck pc = validate_path(ps, path);
    if (!pc.ok || path.length() > 6) ok = false;
    max_len = std::max(max_len, path.length());
    if (!(path.edges.front().space == base.space) || !(path.edges.back().space == other.space))
      ok = false;
  }
  r.pass = ok;
  r.data = json{{"pairs", pairs}, {"max_length", max_len}}.dump();
  return r;
}

CheckResult check_twistor_admissible(const QMat& gram, const std::vector<std::vector<long>>& q_gens,
                                     std::uint64_t seed, int instances, unsigned max_height) {
  CheckResult r;
  r.check = "twistor-admissible";
  r.b = gram.rows();
  r.seed = seed;
  PeriodSpace ps = make_period_space(gram, 3);
  IntegralLattice lat = make_lattice(gram);
  NSLattice q_sub = span_lattice(gram.rows(), q_gens);
  bool ok = true;
  int done = 0;
  json lengths = json::array();
  for (int inst = 0; inst < instances; ++inst) {
    PeriodPoint i0{}, i1{};
    try {
      auto pair = sample_admissible_pair(lat, ps, q_sub, seed + 101 * inst);
      i0 = pair.first;
      i1 = pair.second;
    } catch (const Error& e) {
      ok = false;
      lengths.push_back(std::string("sample error: ") + e.what());
      continue;
    }
    try {
      TwistorPath path = connect_admissible(lat, ps, q_sub, i0, i1, {seed + inst, 400, max_height});
      AdmissibilityReport rep = is_admissible(lat, ps, path);
      if (!rep.ok || !validate_path(ps, path).ok) ok = false;
      // every vertex has the target Neron-Severi lattice exactly
      for (const auto& v : path.vertices)
        if (!v || !ns_equal(neron_severi(lat, ps, *v), q_sub)) ok = false;
      lengths.push_back(path.length());
      ++done;
    } catch (const Error& e) {
      ok = false;
      lengths.push_back(std::string("error: ") + e.what());
    }
  }
  r.pass = ok && done == instances;
  r.data = json{{"instances", instances}, {"completed", done}, {"lengths", lengths}}.dump();
  return r;
}

const std::vector<SuiteEntry>& suite_registry() {
  static const std::vector<SuiteEntry> reg = {
      {"graded-dims", "component dimensions follow the symmetric-power pattern",
       [](const GradedAlgebra& a, std::uint64_t) { return check_graded_dims(a); }},
      {"so5", "triple closures are so(4,1): dim 10, Killing (4,6,0), graded (3,4,3)",
       [](const GradedAlgebra& a, std::uint64_t s) { return check_so5(a, s, 5); }},
      {"structure-algebra", "structure Lie algebra is so(4, b-2) by dimension and Killing inertia",
       [](const GradedAlgebra& a, std::uint64_t s) { return check_structure_algebra(a, s); }},
      {"bb-independence", "extracted pairing is triple-independent up to a positive factor",
       [](const GradedAlgebra& a, std::uint64_t s) { return check_bb_independence(a, s, 10); }},
      {"mumford-tate", "Weil-operator closure has dim b(b-1)/2 and is skew for the pairing",
       [](const GradedAlgebra& a, std::uint64_t s) { return check_mumford_tate(a, s); }},
      {"grading-zero", "degree-0 part of the structure algebra equals g_M + span(H)",
       [](const GradedAlgebra& a, std::uint64_t s) { return check_grading_zero(a, s); }},
      {"generalized-pairing", "per-degree pairing is non-degenerate and triple-independent",
       [](const GradedAlgebra& a, std::uint64_t s) { return check_generalized_pairing(a, s, 5); }},
      {"d-set", "sampled triples satisfy the membership equations; transforms preserve q",
       [](const GradedAlgebra& a, std::uint64_t s) { return check_d_set(a, s, 10); }},
      {"model-oracle", "top traces equal one constant times the perfect-matching sum",
       [](const GradedAlgebra& a, std::uint64_t s) { return check_model_oracle(a, s, 200); }},
  };
  return reg;
}

std::string render_report(const std::string& config_echo, std::vector<CheckResult> records) {
  std::sort(records.begin(), records.end(), [](const CheckResult& a, const CheckResult& b) {
    if (a.check != b.check) return a.check < b.check;
    if (a.b != b.b) return a.b < b.b;
    if (a.m != b.m) return a.m < b.m;
    return a.seed < b.seed;
  });
  json out;
  out["toolkit_version"] = kToolkitVersion;
  out["config"] = config_echo;
  json recs = json::array();
  int pass = 0, fail = 0;
  for (const auto& r : records) {
    (r.pass ? pass : fail)++;
    recs.push_back({{"check", r.check},
                    {"model", {{"b", r.b}, {"m", r.m}}},
                    {"seed", r.seed},
                    {"status", r.pass ? "pass" : "fail"},
                    {"data", json::parse(r.data.empty() ? "{}" : r.data)}});
  }
  out["records"] = std::move(recs);
  out["summary"] = {{"pass", pass}, {"fail", fail}};
  return out.dump(2) + "\n";
}

}  // namespace hk
