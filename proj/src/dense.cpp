#include "zxs/dense.hpp"

#include <bit>
#include <cmath>

namespace zxs {

namespace {

struct Masks {
  std::uint64_t x = 0, z = 0;
  int ny = 0;
  bool negative = false;
};

Masks masks_of(const PauliString& p, std::size_t n) {
  if (p.size() != n) throw std::invalid_argument("Pauli size does not match the state");
  Masks m;
  m.negative = p.negative;
  for (std::size_t q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    if (p.x[q]) m.x |= bit;
    if (p.z[q]) m.z |= bit;
    if (p.x[q] && p.z[q]) ++m.ny;
  }
  return m;
}

const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::vector<cplx> apply_masks(const std::vector<cplx>& amp, const Masks& m) {
  std::vector<cplx> out(amp.size());
  const cplx phase = m.negative ? -kIPow[m.ny % 4] : kIPow[m.ny % 4];
  for (std::uint64_t b = 0; b < amp.size(); ++b) {
    const bool neg = std::popcount(b & m.z) & 1;
    out[b ^ m.x] = (neg ? -phase : phase) * amp[b];
  }
  return out;
}

PauliString plaquette_on(const PlanarPatch& patch, const Plaquette& pl) {
  PauliString s(patch.num_qubits());
  for (Site site : pl.support) s.set(static_cast<std::size_t>(patch.index_of(site)), pl.type);
  return s;
}

// Pi_code X_L^b |0...0>, normalized.
DenseState logical_basis(const PlanarPatch& patch, int b) {
  DenseState st(patch.num_qubits());
  if (b) {
    PauliString xl(patch.num_qubits());
    for (Site s : patch.x_logical()) xl.set(static_cast<std::size_t>(patch.index_of(s)), 'X');
    st.apply(xl);
  }
  for (const auto& pl : patch.plaquettes()) st.project(plaquette_on(patch, pl), 0);
  if (st.norm_sq() < 1e-12) throw std::logic_error("codespace projection vanished");
  st.normalize();
  return st;
}

void check_cap(std::size_t n) {
  if (n > kMaxDenseQubits) {
    throw LatticeError("dense simulation limited to " + std::to_string(kMaxDenseQubits) + " qubits, need " +
                       std::to_string(n));
  }
}

}  // namespace

DenseState::DenseState(std::size_t n) : n_(n), amp_(std::size_t{1} << n) {
  check_cap(n);
  amp_[0] = 1.0;
}

void DenseState::apply(const PauliString& p) { amp_ = apply_masks(amp_, masks_of(p, n_)); }

double DenseState::project(const PauliString& p, int outcome) {
  auto pa = apply_masks(amp_, masks_of(p, n_));
  const double s = outcome ? -1.0 : 1.0;
  for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] = 0.5 * (amp_[i] + s * pa[i]);
  return norm_sq();
}

double DenseState::norm_sq() const {
  double acc = 0.0;
  for (const auto& a : amp_) acc += std::norm(a);
  return acc;
}

void DenseState::normalize() {
  const double n = std::sqrt(norm_sq());
  if (n == 0.0) throw std::logic_error("cannot normalize a zero state");
  for (auto& a : amp_) a /= n;
}

double DenseState::expectation(const PauliString& p) const {
  auto pa = apply_masks(amp_, masks_of(p, n_));
  cplx acc = 0.0;
  for (std::size_t i = 0; i < amp_.size(); ++i) acc += std::conj(amp_[i]) * pa[i];
  return acc.real();
}

cplx DenseState::inner(const DenseState& other) const {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < amp_.size(); ++i) acc += std::conj(amp_[i]) * other.amp_[i];
  return acc;
}

DenseState dense_encode(int h, int w, const Matrix& psi) {
  if (psi.rows() != 2 || psi.cols() != 1) throw std::invalid_argument("dense_encode: expected a 2-vector");
  PlanarPatch patch(h, w);
  check_cap(patch.num_qubits());
  DenseState zero = logical_basis(patch, 0);
  DenseState one = logical_basis(patch, 1);
  DenseState out(patch.num_qubits());
  for (std::size_t i = 0; i < out.amplitudes().size(); ++i)
    out.amplitudes()[i] = psi(0, 0) * zero.amplitudes()[i] + psi(1, 0) * one.amplitudes()[i];
  if (out.norm_sq() < 1e-12) throw std::invalid_argument("dense_encode: zero input state");
  out.normalize();
  return out;
}

Matrix dense_decode(const PlanarPatch& patch, const DenseState& state) {
  Matrix a(2, 1);
  for (int b = 0; b < 2; ++b) a(static_cast<std::size_t>(b), 0) = logical_basis(patch, b).inner(state);
  return a;
}

DenseMergeReport dense_merge_check(SurgeryKind kind, Convention conv, const Matrix& psi1, const Matrix& psi2, int h,
                                   int w, double tol) {
  DenseMergeReport rep;
  rep.kind = kind;
  rep.conv = conv;
  const MergeLayout lay = merge_layout(kind, h, w, h, w);
  const std::size_t n = lay.child.num_qubits();
  check_cap(n);
  rep.num_qubits = n;

  const DenseState e1 = dense_encode(h, w, psi1);
  const DenseState e2 = dense_encode(h, w, psi2);
  const std::size_t n1 = lay.first.num_qubits(), n2 = lay.second.num_qubits(), k = lay.new_sites.size();
  auto child_bit = [&](Site s) { return std::uint64_t{1} << (n - 1 - static_cast<std::size_t>(lay.child.index_of(s))); };
  std::vector<std::uint64_t> bits1(n1), bits2(n2), bits_new(k);
  for (std::size_t i = 0; i < n1; ++i) bits1[i] = child_bit(lay.from_first(lay.first.sites()[i]));
  for (std::size_t i = 0; i < n2; ++i) bits2[i] = child_bit(lay.from_second(lay.second.sites()[i]));
  for (std::size_t i = 0; i < k; ++i) bits_new[i] = child_bit(lay.new_sites[i]);
  auto spread = [](std::uint64_t local, std::size_t width, const std::vector<std::uint64_t>& bits) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < width; ++i)
      if ((local >> (width - 1 - i)) & 1u) out |= bits[i];
    return out;
  };

  DenseState start(n);
  start.amplitudes()[0] = 0.0;
  const double new_amp = lay.new_in_plus ? std::pow(2.0, -0.5 * static_cast<double>(k)) : 1.0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n1); ++a) {
    if (e1.amplitudes()[a] == cplx(0.0)) continue;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n2); ++b) {
      if (e2.amplitudes()[b] == cplx(0.0)) continue;
      const std::uint64_t base = spread(a, n1, bits1) | spread(b, n2, bits2);
      const cplx amp = e1.amplitudes()[a] * e2.amplitudes()[b];
      for (std::uint64_t c = 0; c < (lay.new_in_plus ? (std::uint64_t{1} << k) : 1u); ++c)
        start.amplitudes()[base | spread(c, k, bits_new)] = amp * new_amp;
    }
  }

  auto on_child = [&](const std::vector<std::pair<Site, char>>& ops) {
    PauliString p(n);
    for (const auto& [s, c] : ops) p.set(static_cast<std::size_t>(lay.child.index_of(s)), c);
    return p;
  };
  auto plaquette = [&](const Plaquette& pl) { return plaquette_on(lay.child, pl); };

  const Matrix psi = kron(psi1, psi2);
  rep.branches.resize(2);
  for (int m = 0; m < 2; ++m) rep.branches[m].outcome = m;
  std::vector<bool> seen(2, false);
  const std::size_t nj = lay.joins.size(), nf = lay.flanks.size();
  for (std::uint64_t jv = 0; jv < (std::uint64_t{1} << nj); ++jv) {
    std::vector<int> joins(nj);
    int m = 0;
    for (std::size_t i = 0; i < nj; ++i) {
      joins[i] = static_cast<int>((jv >> i) & 1u);
      m ^= joins[i];
    }
    for (std::uint64_t fv = 0; fv < (std::uint64_t{1} << nf); ++fv) {
      DenseState st = start;
      for (std::size_t i = 0; i < nj; ++i) st.project(plaquette(lay.joins[i]), joins[i]);
      if (st.norm_sq() < 1e-14) break;
      st.apply(on_child(lay.join_correction(joins, conv)));
      for (std::size_t i = 0; i < nf; ++i) {
        const int f = static_cast<int>((fv >> i) & 1u);
        st.project(plaquette(lay.flanks[i].first), f);
        st.project(plaquette(lay.flanks[i].second), f);
        if (f) st.apply(on_child({lay.flank_correction(i)}));
      }
      const double p = st.norm_sq();
      if (p < 1e-14) continue;
      st.normalize();
      DenseBranch& br = rep.branches[static_cast<std::size_t>(m)];
      br.probability += p;
      ++br.realizations;
      Matrix a = dense_decode(lay.child, st);
      const double weight = std::norm(a(0, 0)) + std::norm(a(1, 0));
      br.min_code_weight = std::min(br.min_code_weight, weight);
      Matrix pred = matmul(merge_kraus(kind, conv, m), psi);
      const double pn = std::norm(pred(0, 0)) + std::norm(pred(1, 0));
      double fid = 0.0;
      if (pn > 1e-14) fid = std::norm(std::conj(pred(0, 0)) * a(0, 0) + std::conj(pred(1, 0)) * a(1, 0)) / pn;
      br.min_fidelity = std::min(br.min_fidelity, fid);
      if (!seen[static_cast<std::size_t>(m)]) {
        seen[static_cast<std::size_t>(m)] = true;
        br.expect_x = 2.0 * (std::conj(a(0, 0)) * a(1, 0)).real();
        br.expect_y = 2.0 * (std::conj(a(0, 0)) * a(1, 0)).imag();
        br.expect_z = std::norm(a(0, 0)) - std::norm(a(1, 0));
      }
    }
  }
  for (int m = 0; m < 2; ++m) {
    DenseBranch& br = rep.branches[static_cast<std::size_t>(m)];
    Matrix pred = matmul(merge_kraus(kind, conv, m), psi);
    const double pn = std::norm(pred(0, 0)) + std::norm(pred(1, 0));
    if (std::abs(br.probability - pn) > tol) rep.pass = false;
    if (br.realizations == 0) {
      br.min_fidelity = 0.0;
      br.min_code_weight = 0.0;
      continue;
    }
    if (br.min_fidelity < 1.0 - tol || br.min_code_weight < 1.0 - tol) rep.pass = false;
  }
  return rep;
}

}  // namespace zxs
