#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zxs/surgery.hpp"
#include "zxs/tableau.hpp"

namespace zxs {

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (row, column) on the (2h-1) x (2w-1) grid of a patch. Data qubits sit where
// row+column is even. X-vertex stabilizers sit at (even, odd), Z-face
// stabilizers at (odd, even). Rough boundaries are left and right, smooth
// boundaries top and bottom.
using Site = std::pair<int, int>;

struct Plaquette {
  char type = 'Z';  // 'X' vertex or 'Z' face
  Site at;
  std::vector<Site> support;
};

class PlanarPatch {
 public:
  PlanarPatch() = default;
  PlanarPatch(int h, int w);

  int height() const { return h_; }
  int width() const { return w_; }
  std::size_t num_qubits() const { return sites_.size(); }
  const std::vector<Site>& sites() const { return sites_; }  // row-major
  bool contains(Site s) const;
  int index_of(Site s) const;  // -1 when s is not a data site

  const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }
  const Plaquette* plaquette_at(Site s) const;

  // Z_L along row 0 (w qubits), X_L down column 0 (h qubits).
  std::vector<Site> z_logical() const;
  std::vector<Site> x_logical() const;

 private:
  int h_ = 0, w_ = 0;
  std::vector<Site> sites_;
  std::vector<Plaquette> plaquettes_;
};

enum class LogicalState { zero, one, plus, minus, plus_i, minus_i };
LogicalState logical_state_from_string(const std::string& s);
std::string to_string(LogicalState s);
// Single-qubit state vector for the logical state.
Matrix logical_state_vector(LogicalState s);

// Geometry of a merge. Child coordinates: the first parent is left (rough) or
// top (smooth); the seam line between the parents holds the new qubits.
struct MergeLayout {
  SurgeryKind kind = SurgeryKind::rough;
  PlanarPatch first, second, child;
  int seam = 0;                       // child column (rough) or row (smooth) of the seam
  std::vector<Site> new_sites;        // child coordinates, in seam order
  bool new_in_plus = true;            // |+> for rough, |0> for smooth
  std::vector<Plaquette> joins;       // stabilizers spanning the seam, in seam order
  std::vector<std::pair<Plaquette, Plaquette>> flanks;  // per new site, the two plaquettes it completes

  Site from_first(Site s) const;
  Site from_second(Site s) const;
  // Frame update for adjusted join outcomes.
  std::vector<std::pair<Site, char>> join_correction(const std::vector<int>& outcomes, Convention conv) const;
  // Frame update when the flanking pair of new site i reports -1.
  std::pair<Site, char> flank_correction(std::size_t i) const;
};

MergeLayout merge_layout(SurgeryKind kind, int h1, int w1, int h2, int w2);

// Geometry of a split. The mother is cut after `cut` columns (rough) or rows
// (smooth). The measured seam qubits are retired.
struct SplitLayout {
  SurgeryKind kind = SurgeryKind::rough;
  PlanarPatch mother, first, second;
  int cut = 0;
  std::vector<Site> measured;  // mother coordinates
  char basis = 'Z';            // Z for rough, X for smooth

  Site first_to_mother(Site s) const;
  Site second_to_mother(Site s) const;
  // Frame update (mother coordinates) for a -1 at measured[i]. Chains run to
  // the top (rough) or left (smooth) boundary unless `toward_end` is set for
  // that daughter.
  std::vector<std::pair<Site, char>> correction(std::size_t i, bool first_toward_end, bool second_toward_end) const;
};

SplitLayout split_layout(SurgeryKind kind, int h, int w, int cut);

struct PauliFrame {
  std::vector<std::uint8_t> x, z;
  void resize(std::size_t n) {
    x.resize(n, 0);
    z.resize(n, 0);
  }
  void flip(std::size_t q, char p);
  // Sign (0 or 1) the frame contributes to a measurement of p.
  int parity(const PauliString& p) const;
};

struct OutcomeRecord {
  std::string op;
  std::vector<int> raw;       // physical outcomes
  std::vector<int> adjusted;  // frame-adjusted
  int logical = 0;            // merge outcome bit, 0 for splits
};

class LatticeWorkspace {
 public:
  explicit LatticeWorkspace(std::uint64_t seed = 1) : rng_(seed) {}

  void patch_init(const std::string& label, int h, int w, LogicalState s);
  bool has_patch(const std::string& label) const { return patches_.count(label) > 0; }
  const PlanarPatch& patch(const std::string& label) const;
  std::vector<std::string> labels() const;

  // Forced vectors index the measured seam qubits / join plaquettes in seam
  // order and hold adjusted outcome bits; -1 or a short vector draws.
  std::vector<int> rough_split_phys(const std::string& label, int cut, const std::string& l1, const std::string& l2,
                                    const std::vector<int>& forced = {}, bool toward_end = false,
                                    bool corrupt_second = false);
  std::vector<int> smooth_split_phys(const std::string& label, int cut, const std::string& l1, const std::string& l2,
                                     const std::vector<int>& forced = {}, bool toward_end = false,
                                     bool corrupt_second = false);
  int rough_merge_phys(const std::string& l1, const std::string& l2, const std::string& label, Convention conv,
                       const std::vector<int>& forced = {});
  int smooth_merge_phys(const std::string& l1, const std::string& l2, const std::string& label, Convention conv,
                        const std::vector<int>& forced = {});

  // Frame-adjusted expectation of a product of logical Paulis ('I','X','Y','Z')
  // on the given patches: +1, -1, or 0 when random.
  int logical_expectation(const std::vector<std::pair<std::string, char>>& factors) const;
  int logical_expectation(const std::string& label, char which) const {
    return logical_expectation({{label, which}});
  }

  // Every plaquette of the patch is deterministic and frame-adjusted +1.
  bool stabilizers_hold(const std::string& label) const;

  PauliString physical(const std::string& label, const std::vector<Site>& support, char p) const;
  const StabilizerTableau& tableau() const { return tab_; }
  const PauliFrame& frame() const { return frame_; }
  const std::vector<OutcomeRecord>& log() const { return log_; }

 private:
  struct Live {
    PlanarPatch geom;
    std::vector<std::size_t> qubit;  // by site index
  };

  std::size_t global(const Live& p, Site s) const;
  PauliString plaquette_string(const Live& p, const Plaquette& pl) const;
  int measure_adjusted(const PauliString& p, int forced, int* raw);
  void apply_frame(const Live& p, const std::vector<std::pair<Site, char>>& corr);
  std::vector<int> split(SurgeryKind kind, const std::string& label, int cut, const std::string& l1,
                         const std::string& l2, const std::vector<int>& forced, bool toward_end, bool corrupt_second);
  int merge(SurgeryKind kind, const std::string& l1, const std::string& l2, const std::string& label,
            Convention conv, const std::vector<int>& forced);
  void claim_label(const std::string& label) const;

  std::mt19937_64 rng_;
  StabilizerTableau tab_;
  PauliFrame frame_;
  std::map<std::string, Live> patches_;
  std::vector<OutcomeRecord> log_;
};

// tr(P rho) for a Pauli string such as "XZ".
double pauli_expectation(const Matrix& rho, const std::string& paulis);
// All 4^n - 1 non-identity Pauli strings in lexicographic IXYZ order.
std::vector<std::string> nontrivial_paulis(std::size_t n);

enum class PhysicalOp { split, merge };
std::string to_string(PhysicalOp op);

struct ChannelMismatch {
  std::string input;
  std::vector<int> forced;
  std::string observable;
  int observed = 0;
  double predicted = 0.0;
};

struct ChannelReport {
  PhysicalOp op = PhysicalOp::merge;
  SurgeryKind kind = SurgeryKind::rough;
  Convention conv = Convention::correct_first;
  int h = 0, w = 0;
  std::size_t runs = 0;
  std::size_t checks = 0;
  bool pass = true;
  std::vector<ChannelMismatch> mismatches;  // first few only
};

// Runs the physical operation on every Pauli-eigenstate input (products for
// merges) and every forced seam outcome vector, then compares all logical
// Pauli expectations with the Kraus-map prediction. Merges take two (h, w)
// parents; splits cut an (h, w) mother in the middle. For splits the
// convention picks the boundary both daughters correct toward (first = top or
// left); `corrupt` sends only the second daughter's chains the other way.
ChannelReport extract_logical_channel(PhysicalOp op, SurgeryKind kind, Convention conv, int h, int w,
                                      bool corrupt = false, std::uint64_t seed = 7);

}  // namespace zxs
