#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "zxs/diagram.hpp"
#include "zxs/tensor.hpp"

namespace zxs {

// Smooth operations copy/merge in the Z basis, rough ones in the X basis.
enum class SurgeryKind { smooth, rough };
// Which parent receives the Pauli-frame correction on a -1 merge outcome.
enum class Convention { correct_first, correct_second };

std::string to_string(SurgeryKind k);
std::string to_string(Convention c);
Convention convention_from_string(const std::string& s);

// 4x2 split map: |00><0|+|11><1| (smooth) or |++><+|+|--><-| (rough).
Matrix split_kraus(SurgeryKind kind);
// 2x4 merge Kraus operator for outcome bit 0 (+1) or 1 (-1).
Matrix merge_kraus(SurgeryKind kind, Convention conv, int outcome);

class ProcedureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OpType { prep_green, prep_red, split_smooth, split_rough, merge_smooth, merge_rough, measure_z, measure_x, pauli };

inline constexpr int kAlways = -1;
inline constexpr int kMaxOutcomes = 20;

struct SurgeryOp {
  OpType type = OpType::pauli;
  std::vector<std::string> in;   // labels consumed
  std::vector<std::string> out;  // labels produced
  RationalPhase phase;           // preparations
  Convention conv = Convention::correct_first;
  char pauli = 'X';              // 'X' or 'Z'
  int cond = kAlways;            // outcome index gating the op, or kAlways

  static SurgeryOp prep_green(const std::string& q, RationalPhase phase, int cond = kAlways);
  static SurgeryOp prep_red(const std::string& q, RationalPhase phase, int cond = kAlways);
  static SurgeryOp split(SurgeryKind kind, const std::string& q, const std::string& q1, const std::string& q2,
                         int cond = kAlways);
  static SurgeryOp merge(SurgeryKind kind, const std::string& q1, const std::string& q2, const std::string& q,
                         Convention conv, int cond = kAlways);
  static SurgeryOp measure_z(const std::string& q, int cond = kAlways);
  static SurgeryOp measure_x(const std::string& q, int cond = kAlways);
  static SurgeryOp pauli_if(const std::string& q, char p, int cond);

  bool produces_outcome() const;
};

std::string to_string(OpType t);

struct Procedure {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<SurgeryOp> ops;
};

int outcome_count(const Procedure& p);
// Checks labels, dataflow on every realizable branch, condition indices and
// the outcome limit. Throws ProcedureError.
void validate_procedure(const Procedure& p);

// Outcome vectors that can occur: an op skipped by its condition cannot
// report -1, so its bit is pinned to 0.
std::vector<std::vector<int>> realizable_outcomes(const Procedure& p);

struct Branch {
  std::vector<int> outcomes;
  Matrix kraus;  // 2^outputs x 2^inputs, first label most significant
};

struct BranchEnsemble {
  int num_outcomes = 0;
  std::size_t num_inputs = 0;
  std::size_t num_outputs = 0;
  std::vector<Branch> branches;
};

Matrix branch_kraus(const Procedure& p, const std::vector<int>& outcomes);
BranchEnsemble enumerate_branches(const Procedure& p);
// sum_i K_i^dagger K_i
Matrix completeness(const BranchEnsemble& e);

namespace serial {
BranchEnsemble enumerate_branches(const Procedure& p);
Matrix branch_kraus(const Procedure& p, const std::vector<int>& outcomes);
}  // namespace serial

// Tr(K rho K^dagger)
double branch_probability(const BranchEnsemble& e, std::size_t index, const Matrix& rho);
Matrix density(const Matrix& ket);

struct SampleResult {
  std::size_t branch = 0;
  std::vector<int> outcomes;
  Matrix state;  // normalized post-measurement state
};

// Draws `trials` branches for pure input psi. Deterministic per seed.
std::vector<SampleResult> sample(const Procedure& p, const Matrix& psi, std::uint64_t seed, std::size_t trials = 1);

// ZX diagram of one branch: spiders for preparations, splits, merges and
// measurements; pi nodes for -1 corrections and fired Pauli ops.
// swap_conventions places merge corrections on the other parent (negative control).
Diagram branch_to_zx(const Procedure& p, const std::vector<int>& outcomes, bool swap_conventions = false);

struct ProbeCheck {
  std::string probe;
  double zx_norm_sq = 0.0;
  double probability = 0.0;
  bool pass = false;
};

struct BranchCheck {
  std::vector<int> outcomes;
  double kraus_error = 0.0;
  bool kraus_pass = false;
  std::vector<ProbeCheck> probes;
  std::string pauli_fingerprint;  // set when the diagram differs from the Kraus map by a Pauli
};

struct ModelReport {
  std::string procedure;
  bool pass = true;
  double completeness_error = 0.0;
  std::vector<BranchCheck> branches;
};

// Product probe states used for a given number of input qubits.
std::vector<std::string> probe_states(std::size_t num_inputs);

ModelReport verify_model(const Procedure& p, double tol = kDefaultTol, bool swap_conventions = false);

// Smallest-weight Pauli string P on the output wires with a ~ P b up to a
// global phase, or "" when none exists. Tries at most 4^n strings.
std::string pauli_fingerprint(const Matrix& a, const Matrix& b, std::size_t num_qubits, double tol = kDefaultTol);
Matrix pauli_string(const std::string& paulis);

std::vector<Procedure> builtin_procedures();
Procedure builtin_procedure(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace zxs
