#include "zxs/tableau.hpp"

#include <stdexcept>

namespace zxs {

void PauliString::resize(std::size_t n) {
  x.resize(n, 0);
  z.resize(n, 0);
}

void PauliString::set(std::size_t q, char p) {
  if (q >= size()) resize(q + 1);
  switch (p) {
    case 'X': x[q] ^= 1; break;
    case 'Z': z[q] ^= 1; break;
    case 'Y':
      x[q] ^= 1;
      z[q] ^= 1;
      break;
    case 'I': break;
    default: throw std::invalid_argument(std::string("unknown Pauli '") + p + "'");
  }
}

bool PauliString::commutes_with(const PauliString& o) const {
  int acc = 0;
  std::size_t n = std::min(size(), o.size());
  for (std::size_t q = 0; q < n; ++q) acc ^= (x[q] & o.z[q]) ^ (z[q] & o.x[q]);
  return acc == 0;
}

std::string PauliString::str() const {
  std::string s = negative ? "-" : "+";
  for (std::size_t q = 0; q < size(); ++q) s += "IZXY"[x[q] * 2 + z[q]];
  return s;
}

std::size_t StabilizerTableau::add_qubit(bool plus) {
  const std::size_t q = n_++;
  for (auto* rows : {&destab_, &stab_})
    for (auto& row : *rows) {
      row.x.push_back(0);
      row.z.push_back(0);
    }
  Row d, s;
  d.x.assign(n_, 0);
  d.z.assign(n_, 0);
  s = d;
  if (plus) {
    d.z[q] = 1;
    s.x[q] = 1;
  } else {
    d.x[q] = 1;
    s.z[q] = 1;
  }
  destab_.push_back(std::move(d));
  stab_.push_back(std::move(s));
  return q;
}

bool StabilizerTableau::anticommutes(const Row& row, const PauliString& p) {
  int acc = 0;
  for (std::size_t q = 0; q < row.x.size(); ++q) acc ^= (row.x[q] & p.z[q]) ^ (row.z[q] & p.x[q]);
  return acc != 0;
}

namespace {

// Power of i picked up by a single-qubit product (x1,z1)*(x2,z2).
int g(int x1, int z1, int x2, int z2) {
  if (x1 == 0 && z1 == 0) return 0;
  if (x1 == 1 && z1 == 1) return z2 - x2;
  if (x1 == 1 && z1 == 0) return z2 * (2 * x2 - 1);
  return x2 * (1 - 2 * z2);
}

}  // namespace

void StabilizerTableau::rowsum(Row& h, const Row& i) {
  int phase = 2 * h.r + 2 * i.r;
  for (std::size_t q = 0; q < h.x.size(); ++q) {
    phase += g(i.x[q], i.z[q], h.x[q], h.z[q]);
    h.x[q] ^= i.x[q];
    h.z[q] ^= i.z[q];
  }
  phase %= 4;
  if (phase < 0) phase += 4;
  if (phase != 0 && phase != 2) throw std::logic_error("rowsum produced an imaginary phase");
  h.r = phase / 2;
}

void StabilizerTableau::apply_pauli(const PauliString& p) {
  if (p.size() != n_) throw std::invalid_argument("apply_pauli: size mismatch");
  for (auto* rows : {&destab_, &stab_})
    for (auto& row : *rows)
      if (anticommutes(row, p)) row.r ^= 1;
}

StabilizerTableau::Row StabilizerTableau::deterministic_product(const PauliString& p) const {
  Row scratch;
  scratch.x.assign(n_, 0);
  scratch.z.assign(n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    if (anticommutes(destab_[i], p)) rowsum(scratch, stab_[i]);
  return scratch;
}

StabilizerTableau::Measurement StabilizerTableau::measure(const PauliString& p, std::mt19937_64& rng, int forced) {
  if (p.size() != n_) throw std::invalid_argument("measure: size mismatch");
  std::size_t pivot = n_;
  for (std::size_t i = 0; i < n_; ++i) {
    if (anticommutes(stab_[i], p)) {
      pivot = i;
      break;
    }
  }
  if (pivot == n_) {
    Row prod = deterministic_product(p);
    return {prod.r ^ static_cast<int>(p.negative), true};
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (i != pivot && anticommutes(stab_[i], p)) rowsum(stab_[i], stab_[pivot]);
    if (i != pivot && anticommutes(destab_[i], p)) rowsum(destab_[i], stab_[pivot]);
  }
  destab_[pivot] = stab_[pivot];
  int outcome = (forced == 0 || forced == 1) ? forced : static_cast<int>(rng() & 1u);
  Row& s = stab_[pivot];
  s.x = p.x;
  s.z = p.z;
  s.r = outcome ^ static_cast<int>(p.negative);
  return {outcome, false};
}

int StabilizerTableau::expectation(const PauliString& p) const {
  if (p.size() != n_) throw std::invalid_argument("expectation: size mismatch");
  for (const auto& row : stab_)
    if (anticommutes(row, p)) return 0;
  Row prod = deterministic_product(p);
  return (prod.r ^ static_cast<int>(p.negative)) ? -1 : 1;
}

}  // namespace zxs
