#pragma once

#include <functional>

#include "hk/hodge.hpp"
#include "hk/model_io.hpp"
#include "hk/twistor.hpp"

namespace hk {

struct CheckResult {
  std::string check;
  int b = 0, m = 0;
  std::uint64_t seed = 0;
  bool pass = false;
  std::string data;  // JSON object with the exact evidence
};

/// Named verification checks over one model. Counts are the acceptance
/// defaults; callers may lower them for quick runs.
CheckResult check_graded_dims(const GradedAlgebra& a);
CheckResult check_so5(const GradedAlgebra& a, std::uint64_t seed, int triples);
CheckResult check_structure_algebra(const GradedAlgebra& a, std::uint64_t seed);
CheckResult check_bb_independence(const GradedAlgebra& a, std::uint64_t seed, int triples);
CheckResult check_mumford_tate(const GradedAlgebra& a, std::uint64_t seed);
CheckResult check_grading_zero(const GradedAlgebra& a, std::uint64_t seed);
CheckResult check_generalized_pairing(const GradedAlgebra& a, std::uint64_t seed, int triples);
CheckResult check_d_set(const GradedAlgebra& a, std::uint64_t seed, int samples);
CheckResult check_model_oracle(const GradedAlgebra& a, std::uint64_t seed, int tuples);

/// Twistor checks working on a period space rather than a model.
CheckResult check_twistor_connect(const QMat& gram, std::uint64_t seed, int pairs);
CheckResult check_twistor_admissible(const QMat& gram, const std::vector<std::vector<long>>& q_gens,
                                     std::uint64_t seed, int instances, unsigned max_height);

struct SuiteEntry {
  std::string name;
  std::string description;
  std::function<CheckResult(const GradedAlgebra&, std::uint64_t)> run;
};

const std::vector<SuiteEntry>& suite_registry();

/// Deterministic JSON report: records sorted by (check, model, seed), the
/// verbatim configuration, and a pass/fail summary.
std::string render_report(const std::string& config_echo, std::vector<CheckResult> records);

extern const char* kToolkitVersion;

}  // namespace hk
