#pragma once

#include <vector>

#include "zxs/lattice.hpp"
#include "zxs/tensor.hpp"

namespace zxs {

inline constexpr std::size_t kMaxDenseQubits = 12;

// Statevector over n qubits, qubit 0 most significant.
class DenseState {
 public:
  DenseState() = default;
  explicit DenseState(std::size_t n);  // |0...0>

  std::size_t num_qubits() const { return n_; }
  std::vector<cplx>& amplitudes() { return amp_; }
  const std::vector<cplx>& amplitudes() const { return amp_; }

  void apply(const PauliString& p);
  // Projects onto the (-1)^outcome eigenspace of p without renormalizing;
  // returns the remaining squared norm.
  double project(const PauliString& p, int outcome);
  double norm_sq() const;
  void normalize();
  double expectation(const PauliString& p) const;
  cplx inner(const DenseState& other) const;  // <this|other>

 private:
  std::size_t n_ = 0;
  std::vector<cplx> amp_;
};

// Encodes the single-qubit state psi into an (h, w) patch whose qubits are
// numbered by site index.
DenseState dense_encode(int h, int w, const Matrix& psi);

// Logical amplitudes <L_b|state> for b = 0, 1 of the patch occupying all qubits.
Matrix dense_decode(const PlanarPatch& patch, const DenseState& state);

struct DenseBranch {
  int outcome = 0;
  double probability = 0.0;
  double min_fidelity = 1.0;   // against the Kraus prediction, over physical outcome vectors
  double min_code_weight = 1.0;  // squared norm of the decoded logical vector
  double expect_x = 0.0, expect_y = 0.0, expect_z = 0.0;  // of the first realization
  std::size_t realizations = 0;
};

struct DenseMergeReport {
  SurgeryKind kind = SurgeryKind::smooth;
  Convention conv = Convention::correct_first;
  std::size_t num_qubits = 0;
  std::vector<DenseBranch> branches;  // indexed by merge outcome bit
  bool pass = true;
};

// Full statevector merge of two encoded (h, w) patches, enumerating every join
// and flank outcome vector.
DenseMergeReport dense_merge_check(SurgeryKind kind, Convention conv, const Matrix& psi1, const Matrix& psi2,
                                   int h = 2, int w = 2, double tol = 1e-9);

}  // namespace zxs
