#include "zxs/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace zxs {

// ---------------------------------------------------------------- geometry

PlanarPatch::PlanarPatch(int h, int w) : h_(h), w_(w) {
  if (h < 1 || w < 1) throw LatticeError("patch dimensions must be positive");
  const int rows = 2 * h - 1, cols = 2 * w - 1;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if ((r + c) % 2 == 0) sites_.emplace_back(r, c);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if ((r + c) % 2 == 0) continue;
      Plaquette p;
      p.type = (r % 2 == 0) ? 'X' : 'Z';
      p.at = {r, c};
      for (Site s : {Site{r - 1, c}, Site{r + 1, c}, Site{r, c - 1}, Site{r, c + 1}})
        if (contains(s)) p.support.push_back(s);
      std::sort(p.support.begin(), p.support.end());
      plaquettes_.push_back(std::move(p));
    }
  }
}

bool PlanarPatch::contains(Site s) const {
  return s.first >= 0 && s.second >= 0 && s.first < 2 * h_ - 1 && s.second < 2 * w_ - 1 &&
         (s.first + s.second) % 2 == 0;
}

int PlanarPatch::index_of(Site s) const {
  if (!contains(s)) return -1;
  auto it = std::lower_bound(sites_.begin(), sites_.end(), s);
  return static_cast<int>(it - sites_.begin());
}

const Plaquette* PlanarPatch::plaquette_at(Site s) const {
  for (const auto& p : plaquettes_)
    if (p.at == s) return &p;
  return nullptr;
}

std::vector<Site> PlanarPatch::z_logical() const {
  std::vector<Site> out;
  for (int c = 0; c < 2 * w_ - 1; c += 2) out.emplace_back(0, c);
  return out;
}

std::vector<Site> PlanarPatch::x_logical() const {
  std::vector<Site> out;
  for (int r = 0; r < 2 * h_ - 1; r += 2) out.emplace_back(r, 0);
  return out;
}

LogicalState logical_state_from_string(const std::string& s) {
  if (s == "0") return LogicalState::zero;
  if (s == "1") return LogicalState::one;
  if (s == "+") return LogicalState::plus;
  if (s == "-") return LogicalState::minus;
  if (s == "+i" || s == "i") return LogicalState::plus_i;
  if (s == "-i" || s == "j") return LogicalState::minus_i;
  throw LatticeError("unknown logical state '" + s + "' (expected 0, 1, +, -, +i, -i)");
}

std::string to_string(LogicalState s) {
  switch (s) {
    case LogicalState::zero: return "0";
    case LogicalState::one: return "1";
    case LogicalState::plus: return "+";
    case LogicalState::minus: return "-";
    case LogicalState::plus_i: return "+i";
    case LogicalState::minus_i: return "-i";
  }
  return "?";
}

Matrix logical_state_vector(LogicalState s) {
  static const char symbols[] = {'0', '1', '+', '-', 'i', 'j'};
  return ket(std::string(1, symbols[static_cast<int>(s)]));
}

Site MergeLayout::from_first(Site s) const { return s; }

Site MergeLayout::from_second(Site s) const {
  if (kind == SurgeryKind::rough) return {s.first, s.second + seam + 1};
  return {s.first + seam + 1, s.second};
}

std::vector<std::pair<Site, char>> MergeLayout::join_correction(const std::vector<int>& outcomes,
                                                                Convention conv) const {
  std::vector<std::pair<Site, char>> out;
  const bool rough = kind == SurgeryKind::rough;
  const char p = rough ? 'Z' : 'X';
  // position along the seam of each -1 join
  std::vector<int> bad;
  for (std::size_t i = 0; i < outcomes.size() && i < joins.size(); ++i) {
    if (outcomes[i]) bad.push_back(rough ? joins[i].at.first : joins[i].at.second);
  }
  std::size_t i = 0;
  for (; i + 1 < bad.size(); i += 2) {
    for (int t = bad[i] + 1; t < bad[i + 1]; t += 2)
      out.emplace_back(rough ? Site{t, seam} : Site{seam, t}, p);
  }
  if (i < bad.size()) {
    const int along = bad[i];
    const int extent = rough ? child.width() : child.height();
    if (conv == Convention::correct_first) {
      for (int t = seam - 1; t >= 0; t -= 2) out.emplace_back(rough ? Site{along, t} : Site{t, along}, p);
    } else {
      for (int t = seam + 1; t < 2 * extent - 1; t += 2) out.emplace_back(rough ? Site{along, t} : Site{t, along}, p);
    }
  }
  return out;
}

std::pair<Site, char> MergeLayout::flank_correction(std::size_t i) const {
  return {new_sites.at(i), kind == SurgeryKind::rough ? 'X' : 'Z'};
}

MergeLayout merge_layout(SurgeryKind kind, int h1, int w1, int h2, int w2) {
  MergeLayout m;
  m.kind = kind;
  m.first = PlanarPatch(h1, w1);
  m.second = PlanarPatch(h2, w2);
  if (kind == SurgeryKind::rough) {
    if (h1 != h2) throw LatticeError("rough merge needs equal heights");
    m.child = PlanarPatch(h1, w1 + w2);
    m.seam = 2 * w1 - 1;
    m.new_in_plus = true;
    for (int r = 1; r < 2 * h1 - 1; r += 2) m.new_sites.emplace_back(r, m.seam);
    for (int r = 0; r < 2 * h1 - 1; r += 2) m.joins.push_back(*m.child.plaquette_at({r, m.seam}));
    for (Site s : m.new_sites)
      m.flanks.emplace_back(*m.child.plaquette_at({s.first, m.seam - 1}), *m.child.plaquette_at({s.first, m.seam + 1}));
  } else {
    if (w1 != w2) throw LatticeError("smooth merge needs equal widths");
    m.child = PlanarPatch(h1 + h2, w1);
    m.seam = 2 * h1 - 1;
    m.new_in_plus = false;
    for (int c = 1; c < 2 * w1 - 1; c += 2) m.new_sites.emplace_back(m.seam, c);
    for (int c = 0; c < 2 * w1 - 1; c += 2) m.joins.push_back(*m.child.plaquette_at({m.seam, c}));
    for (Site s : m.new_sites)
      m.flanks.emplace_back(*m.child.plaquette_at({m.seam - 1, s.second}), *m.child.plaquette_at({m.seam + 1, s.second}));
  }
  return m;
}

Site SplitLayout::first_to_mother(Site s) const { return s; }

Site SplitLayout::second_to_mother(Site s) const {
  if (kind == SurgeryKind::rough) return {s.first, s.second + 2 * cut};
  return {s.first + 2 * cut, s.second};
}

std::vector<std::pair<Site, char>> SplitLayout::correction(std::size_t i, bool first_toward_end,
                                                           bool second_toward_end) const {
  std::vector<std::pair<Site, char>> out;
  const Site m = measured.at(i);
  const bool rough = kind == SurgeryKind::rough;
  const char p = rough ? 'X' : 'Z';
  // rough: chains run along columns seam-1 and seam+1; smooth: along rows
  const int along = rough ? m.first : m.second;
  const int extent = rough ? mother.height() : mother.width();
  const int seam = 2 * cut - 1;
  for (int side = 0; side < 2; ++side) {
    const int line = side == 0 ? seam - 1 : seam + 1;
    const bool to_end = side == 0 ? first_toward_end : second_toward_end;
    if (!to_end) {
      for (int t = along - 1; t >= 0; t -= 2) out.emplace_back(rough ? Site{t, line} : Site{line, t}, p);
    } else {
      for (int t = along + 1; t < 2 * extent - 1; t += 2) out.emplace_back(rough ? Site{t, line} : Site{line, t}, p);
    }
  }
  return out;
}

SplitLayout split_layout(SurgeryKind kind, int h, int w, int cut) {
  SplitLayout s;
  s.kind = kind;
  s.mother = PlanarPatch(h, w);
  s.cut = cut;
  if (kind == SurgeryKind::rough) {
    if (cut < 2 || w - cut < 2) throw LatticeError("rough split needs daughters of width >= 2");
    s.first = PlanarPatch(h, cut);
    s.second = PlanarPatch(h, w - cut);
    s.basis = 'Z';
    for (int r = 1; r < 2 * h - 1; r += 2) s.measured.emplace_back(r, 2 * cut - 1);
  } else {
    if (cut < 2 || h - cut < 2) throw LatticeError("smooth split needs daughters of height >= 2");
    s.first = PlanarPatch(cut, w);
    s.second = PlanarPatch(h - cut, w);
    s.basis = 'X';
    for (int c = 1; c < 2 * w - 1; c += 2) s.measured.emplace_back(2 * cut - 1, c);
  }
  return s;
}

// ---------------------------------------------------------------- frame

void PauliFrame::flip(std::size_t q, char p) {
  resize(std::max(x.size(), q + 1));
  if (p == 'X' || p == 'Y') x[q] ^= 1;
  if (p == 'Z' || p == 'Y') z[q] ^= 1;
}

int PauliFrame::parity(const PauliString& p) const {
  int acc = 0;
  const std::size_t n = std::min(x.size(), p.size());
  for (std::size_t q = 0; q < n; ++q) acc ^= (x[q] & p.z[q]) ^ (z[q] & p.x[q]);
  return acc;
}

// ---------------------------------------------------------------- workspace

void LatticeWorkspace::claim_label(const std::string& label) const {
  if (patches_.count(label)) throw LatticeError("patch label '" + label + "' already in use");
}

const PlanarPatch& LatticeWorkspace::patch(const std::string& label) const {
  auto it = patches_.find(label);
  if (it == patches_.end()) throw LatticeError("no live patch '" + label + "'");
  return it->second.geom;
}

std::vector<std::string> LatticeWorkspace::labels() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : patches_) out.push_back(k);
  return out;
}

std::size_t LatticeWorkspace::global(const Live& p, Site s) const {
  int i = p.geom.index_of(s);
  if (i < 0) throw std::logic_error("site outside patch");
  return p.qubit[static_cast<std::size_t>(i)];
}

PauliString LatticeWorkspace::plaquette_string(const Live& p, const Plaquette& pl) const {
  PauliString s(tab_.num_qubits());
  for (Site site : pl.support) s.set(global(p, site), pl.type);
  return s;
}

PauliString LatticeWorkspace::physical(const std::string& label, const std::vector<Site>& support, char p) const {
  const Live& live = patches_.at(label);
  PauliString s(tab_.num_qubits());
  for (Site site : support) s.set(global(live, site), p);
  return s;
}

int LatticeWorkspace::measure_adjusted(const PauliString& p, int forced, int* raw) {
  const int par = frame_.parity(p);
  int want = (forced == 0 || forced == 1) ? (forced ^ par) : -1;
  auto m = tab_.measure(p, rng_, want);
  if (raw) *raw = m.outcome;
  return m.outcome ^ par;
}

void LatticeWorkspace::apply_frame(const Live& p, const std::vector<std::pair<Site, char>>& corr) {
  for (const auto& [site, pauli] : corr) frame_.flip(global(p, site), pauli);
}

void LatticeWorkspace::patch_init(const std::string& label, int h, int w, LogicalState s) {
  claim_label(label);
  if (h < 2 || w < 2) throw LatticeError("patches need h, w >= 2");
  Live live;
  live.geom = PlanarPatch(h, w);
  const bool x_basis = s == LogicalState::plus || s == LogicalState::minus;
  for (std::size_t i = 0; i < live.geom.num_qubits(); ++i) live.qubit.push_back(tab_.add_qubit(x_basis));
  frame_.resize(tab_.num_qubits());
  // the product state already fixes one plaquette family; force the other to +1
  const char forced_type = x_basis ? 'Z' : 'X';
  for (const auto& pl : live.geom.plaquettes())
    if (pl.type == forced_type) measure_adjusted(plaquette_string(live, pl), 0, nullptr);
  patches_[label] = live;
  if (s == LogicalState::one) tab_.apply_pauli(physical(label, live.geom.x_logical(), 'X'));
  if (s == LogicalState::minus) tab_.apply_pauli(physical(label, live.geom.z_logical(), 'Z'));
  if (s == LogicalState::plus_i || s == LogicalState::minus_i) {
    PauliString y = physical(label, live.geom.x_logical(), 'X');
    for (Site site : live.geom.z_logical()) y.set(global(live, site), 'Z');
    measure_adjusted(y, s == LogicalState::plus_i ? 0 : 1, nullptr);
  }
}

std::vector<int> LatticeWorkspace::split(SurgeryKind kind, const std::string& label, int cut, const std::string& l1,
                                         const std::string& l2, const std::vector<int>& forced, bool toward_end,
                                         bool corrupt_second) {
  auto it = patches_.find(label);
  if (it == patches_.end()) throw LatticeError("no live patch '" + label + "'");
  if (l1 == l2) throw LatticeError("split outputs need distinct labels");
  for (const auto& l : {l1, l2})
    if (l != label) claim_label(l);
  const Live mother = it->second;
  SplitLayout lay = split_layout(kind, mother.geom.height(), mother.geom.width(), cut);

  OutcomeRecord rec;
  rec.op = kind == SurgeryKind::rough ? "rough_split" : "smooth_split";
  for (std::size_t i = 0; i < lay.measured.size(); ++i) {
    PauliString p(tab_.num_qubits());
    p.set(global(mother, lay.measured[i]), lay.basis);
    int raw = 0;
    int adj = measure_adjusted(p, i < forced.size() ? forced[i] : -1, &raw);
    rec.raw.push_back(raw);
    rec.adjusted.push_back(adj);
    if (adj) apply_frame(mother, lay.correction(i, toward_end, toward_end != corrupt_second));
  }

  Live a, b;
  a.geom = lay.first;
  b.geom = lay.second;
  for (Site s : a.geom.sites()) a.qubit.push_back(global(mother, lay.first_to_mother(s)));
  for (Site s : b.geom.sites()) b.qubit.push_back(global(mother, lay.second_to_mother(s)));
  patches_.erase(label);
  patches_[l1] = std::move(a);
  patches_[l2] = std::move(b);
  log_.push_back(rec);
  return rec.adjusted;
}

std::vector<int> LatticeWorkspace::rough_split_phys(const std::string& label, int cut, const std::string& l1,
                                                    const std::string& l2, const std::vector<int>& forced,
                                                    bool toward_end, bool corrupt_second) {
  return split(SurgeryKind::rough, label, cut, l1, l2, forced, toward_end, corrupt_second);
}

std::vector<int> LatticeWorkspace::smooth_split_phys(const std::string& label, int cut, const std::string& l1,
                                                     const std::string& l2, const std::vector<int>& forced,
                                                     bool toward_end, bool corrupt_second) {
  return split(SurgeryKind::smooth, label, cut, l1, l2, forced, toward_end, corrupt_second);
}

int LatticeWorkspace::merge(SurgeryKind kind, const std::string& l1, const std::string& l2, const std::string& label,
                            Convention conv, const std::vector<int>& forced) {
  if (l1 == l2) throw LatticeError("merge inputs must be distinct patches");
  const Live& p1 = patches_.count(l1) ? patches_.at(l1) : throw LatticeError("no live patch '" + l1 + "'");
  const Live& p2 = patches_.count(l2) ? patches_.at(l2) : throw LatticeError("no live patch '" + l2 + "'");
  if (label != l1 && label != l2) claim_label(label);
  MergeLayout lay =
      merge_layout(kind, p1.geom.height(), p1.geom.width(), p2.geom.height(), p2.geom.width());

  Live child;
  child.geom = lay.child;
  child.qubit.assign(child.geom.num_qubits(), 0);
  for (std::size_t i = 0; i < p1.geom.num_qubits(); ++i)
    child.qubit[child.geom.index_of(lay.from_first(p1.geom.sites()[i]))] = p1.qubit[i];
  for (std::size_t i = 0; i < p2.geom.num_qubits(); ++i)
    child.qubit[child.geom.index_of(lay.from_second(p2.geom.sites()[i]))] = p2.qubit[i];
  for (Site s : lay.new_sites) child.qubit[child.geom.index_of(s)] = tab_.add_qubit(lay.new_in_plus);
  frame_.resize(tab_.num_qubits());

  OutcomeRecord rec;
  rec.op = kind == SurgeryKind::rough ? "rough_merge" : "smooth_merge";
  for (std::size_t i = 0; i < lay.joins.size(); ++i) {
    int raw = 0;
    int adj = measure_adjusted(plaquette_string(child, lay.joins[i]), i < forced.size() ? forced[i] : -1, &raw);
    rec.raw.push_back(raw);
    rec.adjusted.push_back(adj);
    rec.logical ^= adj;
  }
  apply_frame(child, lay.join_correction(rec.adjusted, conv));

  for (std::size_t i = 0; i < lay.flanks.size(); ++i) {
    int a = measure_adjusted(plaquette_string(child, lay.flanks[i].first), -1, nullptr);
    int b = measure_adjusted(plaquette_string(child, lay.flanks[i].second), -1, nullptr);
    if (a != b) throw std::logic_error("merge: flanking plaquettes disagree");
    if (a) apply_frame(child, {lay.flank_correction(i)});
  }

  patches_.erase(l1);
  patches_.erase(l2);
  patches_[label] = std::move(child);
  log_.push_back(rec);
  return rec.logical;
}

int LatticeWorkspace::rough_merge_phys(const std::string& l1, const std::string& l2, const std::string& label,
                                       Convention conv, const std::vector<int>& forced) {
  return merge(SurgeryKind::rough, l1, l2, label, conv, forced);
}

int LatticeWorkspace::smooth_merge_phys(const std::string& l1, const std::string& l2, const std::string& label,
                                        Convention conv, const std::vector<int>& forced) {
  return merge(SurgeryKind::smooth, l1, l2, label, conv, forced);
}

int LatticeWorkspace::logical_expectation(const std::vector<std::pair<std::string, char>>& factors) const {
  PauliString p(tab_.num_qubits());
  for (const auto& [label, which] : factors) {
    const Live& live = patches_.count(label) ? patches_.at(label) : throw LatticeError("no live patch '" + label + "'");
    if (which == 'X' || which == 'Y')
      for (Site s : live.geom.x_logical()) p.set(global(live, s), 'X');
    if (which == 'Z' || which == 'Y')
      for (Site s : live.geom.z_logical()) p.set(global(live, s), 'Z');
    if (which != 'X' && which != 'Y' && which != 'Z' && which != 'I')
      throw LatticeError(std::string("unknown logical Pauli '") + which + "'");
  }
  int e = tab_.expectation(p);
  return frame_.parity(p) ? -e : e;
}

bool LatticeWorkspace::stabilizers_hold(const std::string& label) const {
  const Live& live = patches_.at(label);
  for (const auto& pl : live.geom.plaquettes()) {
    PauliString p = plaquette_string(live, pl);
    int e = tab_.expectation(p);
    if (frame_.parity(p)) e = -e;
    if (e != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------- channel extraction

std::string to_string(PhysicalOp op) { return op == PhysicalOp::split ? "split" : "merge"; }

double pauli_expectation(const Matrix& rho, const std::string& paulis) {
  return trace(matmul(pauli_string(paulis), rho)).real();
}

std::vector<std::string> nontrivial_paulis(std::size_t n) {
  std::vector<std::string> out;
  std::size_t total = std::size_t{1} << (2 * n);
  for (std::size_t code = 1; code < total; ++code) {
    std::string s;
    for (std::size_t q = 0; q < n; ++q) s += "IXYZ"[(code >> (2 * (n - 1 - q))) & 3u];
    out.push_back(s);
  }
  return out;
}

namespace {

constexpr std::size_t kMaxRecorded = 8;

}  // namespace

ChannelReport extract_logical_channel(PhysicalOp op, SurgeryKind kind, Convention conv, int h, int w, bool corrupt,
                                      std::uint64_t seed) {
  ChannelReport rep;
  rep.op = op;
  rep.kind = kind;
  rep.conv = conv;
  rep.h = h;
  rep.w = w;
  const std::vector<LogicalState> singles = {LogicalState::zero,  LogicalState::one,    LogicalState::plus,
                                             LogicalState::minus, LogicalState::plus_i, LogicalState::minus_i};
  std::vector<std::vector<LogicalState>> inputs;
  if (op == PhysicalOp::split) {
    for (auto s : singles) inputs.push_back({s});
  } else {
    for (auto a : singles)
      for (auto b : singles) inputs.push_back({a, b});
  }
  const bool rough = kind == SurgeryKind::rough;
  const int cut = rough ? w / 2 : h / 2;
  const std::size_t seam_len =
      op == PhysicalOp::split ? split_layout(kind, h, w, cut).measured.size()
                              : merge_layout(kind, h, w, h, w).joins.size();
  const auto observables = nontrivial_paulis(2);
  const double tol = 1e-9;
  std::uint64_t run_seed = seed;

  auto record = [&](ChannelMismatch m) {
    rep.pass = false;
    if (rep.mismatches.size() < kMaxRecorded) rep.mismatches.push_back(std::move(m));
  };

  for (const auto& in : inputs) {
    Matrix psi = logical_state_vector(in[0]);
    std::string in_name = to_string(in[0]);
    if (in.size() == 2) {
      psi = kron(psi, logical_state_vector(in[1]));
      in_name += "," + to_string(in[1]);
    }
    const Matrix rho = density(psi);
    for (std::size_t mask = 0; mask < (std::size_t{1} << seam_len); ++mask) {
      std::vector<int> forced(seam_len);
      for (std::size_t i = 0; i < seam_len; ++i) forced[i] = static_cast<int>((mask >> i) & 1u);
      LatticeWorkspace ws(++run_seed);
      Matrix k;
      std::vector<std::pair<std::string, std::string>> outputs = {{"a", "b"}};
      if (op == PhysicalOp::split) {
        ws.patch_init("m", h, w, in[0]);
        if (rough)
          ws.rough_split_phys("m", cut, "a", "b", forced, conv == Convention::correct_second, corrupt);
        else
          ws.smooth_split_phys("m", cut, "a", "b", forced, conv == Convention::correct_second, corrupt);
        k = split_kraus(kind);
      } else {
        ws.patch_init("a", h, w, in[0]);
        ws.patch_init("b", h, w, in[1]);
        int m = rough ? ws.rough_merge_phys("a", "b", "c", conv, forced) : ws.smooth_merge_phys("a", "b", "c", conv, forced);
        k = merge_kraus(kind, conv, m);
      }
      ++rep.runs;
      Matrix out = matmul(matmul(k, rho), adjoint(k));
      const double p = trace(out).real();
      if (p < 1e-12) {
        record({in_name, forced, "branch", 1, 0.0});
        continue;
      }
      out *= cplx(1.0 / p, 0.0);
      const std::vector<std::string> labels = op == PhysicalOp::split ? std::vector<std::string>{"a", "b"}
                                                                      : std::vector<std::string>{"c"};
      for (const auto& l : labels) {
        if (!ws.stabilizers_hold(l)) record({in_name, forced, "plaquettes:" + l, 0, 1.0});
      }
      if (labels.size() == 2) {
        for (const auto& o : observables) {
          int obs = ws.logical_expectation({{"a", o[0]}, {"b", o[1]}});
          double pred = pauli_expectation(out, o);
          ++rep.checks;
          if (std::abs(obs - pred) > tol) record({in_name, forced, o, obs, pred});
        }
      } else {
        for (char o : std::string("XYZ")) {
          int obs = ws.logical_expectation("c", o);
          double pred = pauli_expectation(out, std::string(1, o));
          ++rep.checks;
          if (std::abs(obs - pred) > tol) record({in_name, forced, std::string(1, o), obs, pred});
        }
      }
    }
  }
  return rep;
}

}  // namespace zxs
