#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "hk/suite.hpp"

namespace {

using namespace hk;

/// "diag:1,1,1,-1" or a path to a JSON lattice file with a gram matrix
QMat parse_form(const std::string& spec) {
  if (spec.rfind("diag:", 0) == 0) {
    std::vector<int> entries;
    std::string rest = spec.substr(5);
    size_t pos = 0;
    while (pos < rest.size()) {
      size_t comma = rest.find(',', pos);
      if (comma == std::string::npos) comma = rest.size();
      entries.push_back(std::stoi(rest.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    return diag_form(entries);
  }
  return load_lattice(read_file(spec)).gram;
}

int cmd_build(int b, int m, const std::string& qspec, const std::string& out) {
  ModelSpec spec{b, m, parse_form(qspec)};
  GradedAlgebra a = apolar_model(spec);
  ValidationReport rep = validate_algebra(a);
  if (!rep.ok) {
    for (const auto& e : rep.entries)
      if (!e.ok) std::cerr << "validation failed: " << e.name << " " << e.detail << "\n";
    return 1;
  }
  write_file(out, save_model(a));
  std::cout << "wrote " << out << " (b=" << b << ", m=" << m << ", dims";
  for (int i = 0; i <= a.top_degree; i += 2) std::cout << " " << a.dim(i);
  std::cout << ")\n";
  return 0;
}

int cmd_verify(const std::string& model_path, const std::string& suite, std::uint64_t seed,
               const std::string& report_path, bool list) {
  if (list) {
    for (const auto& e : suite_registry())
      std::cout << e.name << "  -  " << e.description << "\n";
    return 0;
  }
  GradedAlgebra a = load_model(read_file(model_path));
  std::vector<CheckResult> records;
  bool matched = false;
  for (const auto& e : suite_registry()) {
    if (suite != "all" && suite != e.name) continue;
    matched = true;
    records.push_back(e.run(a, seed));
  }
  if (!matched) {
    std::cerr << "unknown suite: " << suite << " (try --list)\n";
    return 2;
  }
  bool ok = true;
  for (const auto& r : records) {
    ok = ok && r.pass;
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.check << " (b=" << r.b << ", m=" << r.m
              << ", seed=" << r.seed << ")\n";
  }
  if (!report_path.empty()) {
    std::string cfg = "verify " + model_path + " --suite " + suite + " --seed " +
                      std::to_string(seed);
    write_file(report_path, render_report(cfg, std::move(records)));
  }
  return ok ? 0 : 1;
}

int cmd_twistor(const std::string& gram_spec, const std::string& mode, std::uint64_t seed,
                const std::string& ns_spec, int d, const std::string& out,
                const std::string& report_path, unsigned max_height) {
  QMat gram = parse_form(gram_spec);
  int b = gram.rows();
  std::vector<CheckResult> records;
  TwistorPath path;
  PeriodSpace ps = make_period_space(gram, mode == "admissible" ? d : (d == 3 ? 0 : d));

  if (mode == "connect") {
    TwistorPlane base = sample_plane(ps, 0);
    TwistorPlane other = sample_plane(ps, seed + 1);
    path = connect_planes(ps, base, other);
    PathCheck pc = validate_path(ps, path);
    CheckResult r;
    r.check = "twistor-connect";
    r.b = b;
    r.seed = seed;
    r.pass = pc.ok && path.length() <= 6;
    r.data = "{\"length\": " + std::to_string(path.length()) + "}";
    records.push_back(r);
  } else if (mode == "admissible") {
    if (ps.d <= 1) {
      std::cerr << "admissible mode needs a quadratic extension: rational vertices always "
                   "carry extra integral classes orthogonal to the period, so they are never "
                   "of general type\n";
      return 1;
    }
    std::vector<std::vector<long>> gens;
    if (ns_spec != "none" && ns_spec != "0") {
      if (ns_spec.size() < 2 || ns_spec[0] != 'e') {
        std::cerr << "--ns expects e<k> or none\n";
        return 2;
      }
      int idx = std::stoi(ns_spec.substr(1));
      if (idx < 1 || idx > b) {
        std::cerr << "--ns index out of range\n";
        return 2;
      }
      std::vector<long> gen(b, 0);
      gen[idx - 1] = 1;
      gens.push_back(gen);
    }
    CheckResult r = check_twistor_admissible(gram, gens, seed, 1, max_height);
    records.push_back(r);
    // rebuild the instance for the path file
    IntegralLattice lat = make_lattice(gram);
    NSLattice q_sub = span_lattice(b, gens);
    auto [i0, i1] = sample_admissible_pair(lat, ps, q_sub, seed + 101 * 0);
    path = connect_admissible(lat, ps, q_sub, i0, i1, {seed, 400, max_height});
  } else {
    std::cerr << "unknown mode: " << mode << "\n";
    return 2;
  }

  for (const auto& r : records)
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.check << " (seed=" << r.seed << ")\n";
  if (!out.empty()) write_file(out, save_path(ps, path));
  if (!report_path.empty()) {
    std::string cfg = "twistor --gram " + gram_spec + " --mode " + mode + " --seed " +
                      std::to_string(seed) + " --ns " + ns_spec;
    write_file(report_path, render_report(cfg, std::move(records)));
  }
  for (const auto& r : records)
    if (!r.pass) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification toolkit for hyperkahler cohomology models"};
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build", "construct a model and write it to a file");
  int b = 4, m = 1;
  std::string qspec = "diag:1,1,1,-1", out_path = "model.json";
  build->add_option("--b", b, "dimension of the degree-2 component");
  build->add_option("--m", m, "half the complex dimension");
  build->add_option("--q", qspec, "reference form: diag:... or a gram file");
  build->add_option("-o,--out", out_path, "output model file");

  auto* verify = app.add_subcommand("verify", "run verification suites on a model file");
  std::string model_path, suite = "all", report_path;
  std::uint64_t seed = 7;
  bool list = false;
  verify->add_option("model", model_path, "model JSON file");
  verify->add_option("--suite", suite, "suite name (see --list)");
  verify->add_option("--seed", seed, "sampler seed");
  verify->add_option("--report", report_path, "write a JSON report here");
  verify->add_flag("--list", list, "list available suites");

  auto* twistor = app.add_subcommand("twistor", "connectivity and admissibility on the period quadric");
  std::string gram_spec = "diag:1,1,1,-1,-1", mode = "connect", ns_spec = "none", path_out,
              treport;
  std::uint64_t tseed = 3;
  int dparam = 3;
  bool rational_only = false;
  twistor->add_option("--gram", gram_spec, "period form: diag:... or a gram file");
  twistor->add_option("--mode", mode, "connect | admissible");
  twistor->add_option("--seed", tseed, "instance seed");
  twistor->add_option("--ns", ns_spec, "target Neron-Severi lattice: e<k> or none");
  twistor->add_option("--d", dparam, "quadratic extension discriminant");
  twistor->add_flag("--rational", rational_only, "force rational-only scalars");
  twistor->add_option("-o,--out", path_out, "write the path file here");
  twistor->add_option("--report", treport, "write a JSON report here");

  CLI11_PARSE(app, argc, argv);

  unsigned max_height = 20;
  if (const char* env = std::getenv("HKCTL_MAX_HEIGHT")) max_height = std::atoi(env);

  try {
    if (build->parsed()) return cmd_build(b, m, qspec, out_path);
    if (verify->parsed()) {
      if (!list && model_path.empty()) {
        std::cerr << "verify needs a model file (or --list)\n";
        return 2;
      }
      return cmd_verify(model_path, suite, seed, report_path, list);
    }
    if (twistor->parsed())
      return cmd_twistor(gram_spec, mode, tseed, ns_spec, rational_only ? 0 : dparam, path_out,
                         treport, max_height);
  } catch (const hk::Error& e) {
    std::cerr << "error [" << e.code << "] " << e.what() << "\n";
    return e.code == "SearchExhausted" ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
