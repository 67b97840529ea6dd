#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zxs/tensor.hpp"

namespace zxs {

struct VerifyCase {
  std::string id;
  std::string anchor;  // the claim being checked, in words
  std::string mode;    // exact | phase | sign | stat | structure
  double error = 0.0;
  bool pass = false;
  bool expect_fail = false;  // negative controls: pass means the check failed as intended
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCase> cases;
  std::size_t passed() const;
  std::size_t failed() const;
  bool ok() const { return failed() == 0; }
};

std::vector<std::string> suite_names();  // excluding "all"

// Runs one suite by name, or every suite for "all". Throws
// std::invalid_argument for an unknown name.
std::vector<VerifyReport> run_suite(const std::string& name, std::uint64_t seed = 0, double tol = kDefaultTol);

VerifyReport verify_zx_rules(std::uint64_t seed, double tol);
VerifyReport verify_cnot(double tol);
VerifyReport verify_tgate(double tol);
VerifyReport verify_appendix(double tol);
VerifyReport verify_model_suite(double tol);
VerifyReport verify_physical(std::uint64_t seed);

std::string report_to_json(const std::vector<VerifyReport>& reports);
std::string report_to_text(const std::vector<VerifyReport>& reports);

// Expected CNOT dressing of one branch: K = scale * P * CNOT with P given per
// qubit as a product of letters, e.g. {"ZX", "X"} = (Z X) (x) X.
struct CnotExpectation {
  std::string variant;
  std::vector<std::string> conventions;  // "first"/"second", one per merge
  std::vector<int> outcomes;
  std::string control, target;
  EqMode mode = EqMode::exact;
  double scale = 1.0;
};

std::vector<CnotExpectation> cnot_expectations();
Matrix dressed_cnot(const CnotExpectation& e);

}  // namespace zxs
