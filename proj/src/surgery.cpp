#include "zxs/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace zxs {

std::string to_string(SurgeryKind k) { return k == SurgeryKind::smooth ? "smooth" : "rough"; }

std::string to_string(Convention c) { return c == Convention::correct_first ? "first" : "second"; }

Convention convention_from_string(const std::string& s) {
  if (s == "first") return Convention::correct_first;
  if (s == "second") return Convention::correct_second;
  throw std::invalid_argument("unknown convention '" + s + "' (expected \"first\" or \"second\")");
}

std::string to_string(OpType t) {
  switch (t) {
    case OpType::prep_green: return "prep_g";
    case OpType::prep_red: return "prep_r";
    case OpType::split_smooth: return "split_s";
    case OpType::split_rough: return "split_r";
    case OpType::merge_smooth: return "merge_s";
    case OpType::merge_rough: return "merge_r";
    case OpType::measure_z: return "measure_z";
    case OpType::measure_x: return "measure_x";
    case OpType::pauli: return "pauli_if";
  }
  return "?";
}

Matrix split_kraus(SurgeryKind kind) {
  if (kind == SurgeryKind::smooth) return ket("00") * bra("0") + ket("11") * bra("1");
  return ket("++") * bra("+") + ket("--") * bra("-");
}

Matrix merge_kraus(SurgeryKind kind, Convention conv, int outcome) {
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("merge outcome must be 0 or 1");
  const bool first = conv == Convention::correct_first;
  if (kind == SurgeryKind::smooth) {
    if (outcome == 0) return ket("0") * bra("00") + ket("1") * bra("11");
    return first ? ket("0") * bra("10") + ket("1") * bra("01") : ket("0") * bra("01") + ket("1") * bra("10");
  }
  if (outcome == 0) return ket("+") * bra("++") + ket("-") * bra("--");
  return first ? ket("+") * bra("-+") + ket("-") * bra("+-") : ket("+") * bra("+-") + ket("-") * bra("-+");
}

SurgeryOp SurgeryOp::prep_green(const std::string& q, RationalPhase phase, int cond) {
  SurgeryOp op;
  op.type = OpType::prep_green;
  op.out = {q};
  op.phase = phase;
  op.cond = cond;
  return op;
}

SurgeryOp SurgeryOp::prep_red(const std::string& q, RationalPhase phase, int cond) {
  SurgeryOp op = prep_green(q, phase, cond);
  op.type = OpType::prep_red;
  return op;
}

SurgeryOp SurgeryOp::split(SurgeryKind kind, const std::string& q, const std::string& q1, const std::string& q2,
                           int cond) {
  SurgeryOp op;
  op.type = kind == SurgeryKind::smooth ? OpType::split_smooth : OpType::split_rough;
  op.in = {q};
  op.out = {q1, q2};
  op.cond = cond;
  return op;
}

SurgeryOp SurgeryOp::merge(SurgeryKind kind, const std::string& q1, const std::string& q2, const std::string& q,
                           Convention conv, int cond) {
  SurgeryOp op;
  op.type = kind == SurgeryKind::smooth ? OpType::merge_smooth : OpType::merge_rough;
  op.in = {q1, q2};
  op.out = {q};
  op.conv = conv;
  op.cond = cond;
  return op;
}

SurgeryOp SurgeryOp::measure_z(const std::string& q, int cond) {
  SurgeryOp op;
  op.type = OpType::measure_z;
  op.in = {q};
  op.cond = cond;
  return op;
}

SurgeryOp SurgeryOp::measure_x(const std::string& q, int cond) {
  SurgeryOp op = measure_z(q, cond);
  op.type = OpType::measure_x;
  return op;
}

SurgeryOp SurgeryOp::pauli_if(const std::string& q, char p, int cond) {
  SurgeryOp op;
  op.type = OpType::pauli;
  op.in = {q};
  op.out = {q};
  op.pauli = p;
  op.cond = cond;
  return op;
}

bool SurgeryOp::produces_outcome() const {
  return type == OpType::merge_smooth || type == OpType::merge_rough || type == OpType::measure_z ||
         type == OpType::measure_x;
}

int outcome_count(const Procedure& p) {
  return static_cast<int>(std::count_if(p.ops.begin(), p.ops.end(), [](const SurgeryOp& op) { return op.produces_outcome(); }));
}

namespace {

bool op_active(const SurgeryOp& op, const std::vector<int>& outcomes) {
  return op.cond == kAlways || outcomes[static_cast<std::size_t>(op.cond)] == 1;
}

std::string op_where(std::size_t i, const SurgeryOp& op) { return "ops[" + std::to_string(i) + "] (" + to_string(op.type) + ")"; }

void check_static(const Procedure& p) {
  const int m = outcome_count(p);
  if (m > kMaxOutcomes) {
    throw ProcedureError("procedure has " + std::to_string(m) + " outcome bits; at most " + std::to_string(kMaxOutcomes) +
                         " are supported");
  }
  std::set<std::string> seen(p.inputs.begin(), p.inputs.end());
  if (seen.size() != p.inputs.size()) throw ProcedureError("duplicate input label");
  std::set<std::string> outs(p.outputs.begin(), p.outputs.end());
  if (outs.size() != p.outputs.size()) throw ProcedureError("duplicate output label");

  int produced = 0;
  for (std::size_t i = 0; i < p.ops.size(); ++i) {
    const SurgeryOp& op = p.ops[i];
    if (op.cond != kAlways && (op.cond < 0 || op.cond >= produced)) {
      throw ProcedureError(op_where(i, op) + ": condition " + std::to_string(op.cond) +
                           " does not name an earlier outcome");
    }
    if (op.type == OpType::pauli && op.pauli != 'X' && op.pauli != 'Z') {
      throw ProcedureError(op_where(i, op) + ": Pauli must be X or Z");
    }
    if (op.produces_outcome()) ++produced;
  }
}

void check_dataflow(const Procedure& p, const std::vector<int>& outcomes) {
  std::vector<std::string> live = p.inputs;
  auto is_live = [&](const std::string& q) { return std::find(live.begin(), live.end(), q) != live.end(); };
  for (std::size_t i = 0; i < p.ops.size(); ++i) {
    const SurgeryOp& op = p.ops[i];
    if (!op_active(op, outcomes)) continue;
    for (const auto& q : op.in) {
      if (!is_live(q)) throw ProcedureError(op_where(i, op) + ": qubit '" + q + "' is not live");
    }
    if (op.in.size() == 2 && op.in[0] == op.in[1]) throw ProcedureError(op_where(i, op) + ": merge of a qubit with itself");
    for (const auto& q : op.in) live.erase(std::find(live.begin(), live.end(), q));
    for (const auto& q : op.out) {
      if (is_live(q)) throw ProcedureError(op_where(i, op) + ": qubit '" + q + "' is already live");
      live.push_back(q);
    }
  }
  std::set<std::string> a(live.begin(), live.end()), b(p.outputs.begin(), p.outputs.end());
  if (a != b) {
    std::string msg = "live qubits at the end do not match the outputs (live:";
    for (const auto& q : live) msg += " " + q;
    throw ProcedureError(msg + ")");
  }
}

// Applies local map L (acting on `targets`, in that significance order) to the
// row space of K. New labels are inserted at position insert_at of the labels
// that remain.
Matrix apply_local(const Matrix& K, const std::vector<std::string>& live, const std::vector<std::string>& targets,
                   const Matrix& L, const std::vector<std::string>& fresh, std::size_t insert_at,
                   std::vector<std::string>& new_live, bool parallel) {
  const int n = static_cast<int>(live.size());
  const int kin = static_cast<int>(targets.size());
  const int kout = static_cast<int>(fresh.size());
  std::vector<int> tpos;
  for (const auto& t : targets) tpos.push_back(static_cast<int>(std::find(live.begin(), live.end(), t) - live.begin()));
  std::vector<int> rpos;
  std::vector<std::string> remaining;
  for (int i = 0; i < n; ++i) {
    if (std::find(tpos.begin(), tpos.end(), i) == tpos.end()) {
      rpos.push_back(i);
      remaining.push_back(live[static_cast<std::size_t>(i)]);
    }
  }
  const int nr = static_cast<int>(rpos.size());
  const int nn = nr + kout;
  new_live.assign(remaining.begin(), remaining.begin() + static_cast<std::ptrdiff_t>(insert_at));
  new_live.insert(new_live.end(), fresh.begin(), fresh.end());
  new_live.insert(new_live.end(), remaining.begin() + static_cast<std::ptrdiff_t>(insert_at), remaining.end());

  // bit shifts (from the least significant end) of each index piece
  std::vector<int> r_old(static_cast<std::size_t>(nr)), r_new(static_cast<std::size_t>(nr));
  for (int i = 0; i < nr; ++i) {
    r_old[static_cast<std::size_t>(i)] = n - 1 - rpos[static_cast<std::size_t>(i)];
    int np = i < static_cast<int>(insert_at) ? i : i + kout;
    r_new[static_cast<std::size_t>(i)] = nn - 1 - np;
  }
  std::vector<std::size_t> t_old(std::size_t{1} << kin, 0);
  for (std::size_t t = 0; t < t_old.size(); ++t)
    for (int j = 0; j < kin; ++j)
      if ((t >> (kin - 1 - j)) & 1u) t_old[t] |= std::size_t{1} << (n - 1 - tpos[static_cast<std::size_t>(j)]);
  std::vector<std::size_t> o_new(std::size_t{1} << kout, 0);
  for (std::size_t o = 0; o < o_new.size(); ++o)
    for (int j = 0; j < kout; ++j)
      if ((o >> (kout - 1 - j)) & 1u) o_new[o] |= std::size_t{1} << (nn - 1 - (static_cast<int>(insert_at) + j));

  Matrix out(std::size_t{1} << nn, K.cols());
  const std::size_t cols = K.cols();
  const std::size_t nrem = std::size_t{1} << nr;
  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(cols * nrem);
#pragma omp parallel for schedule(static) if (parallel && total > 256)
  for (std::ptrdiff_t job = 0; job < total; ++job) {
    const std::size_t c = static_cast<std::size_t>(job) / nrem;
    const std::size_t r = static_cast<std::size_t>(job) % nrem;
    std::size_t base_old = 0, base_new = 0;
    for (int i = 0; i < nr; ++i) {
      if ((r >> (nr - 1 - i)) & 1u) {
        base_old |= std::size_t{1} << r_old[static_cast<std::size_t>(i)];
        base_new |= std::size_t{1} << r_new[static_cast<std::size_t>(i)];
      }
    }
    for (std::size_t o = 0; o < o_new.size(); ++o) {
      cplx acc{};
      for (std::size_t t = 0; t < t_old.size(); ++t) {
        cplx l = L(o, t);
        if (l != cplx{}) acc += l * K(base_old | t_old[t], c);
      }
      out(base_new | o_new[o], c) = acc;
    }
  }
  return out;
}

std::size_t position_of(const std::vector<std::string>& v, const std::string& q) {
  return static_cast<std::size_t>(std::find(v.begin(), v.end(), q) - v.begin());
}

Matrix prep_ket(Colour c, const RationalPhase& phase) {
  const cplx e = phase.unit();
  Matrix k = c == Colour::green ? ket("0") + e * ket("1") : ket("+") + e * ket("-");
  k *= std::sqrt(0.5);
  return k;
}

Matrix measure_bra(OpType t, int outcome) {
  if (t == OpType::measure_z) return bra(outcome ? "1" : "0");
  return bra(outcome ? "-" : "+");
}

Matrix run_branch(const Procedure& p, const std::vector<int>& outcomes, bool parallel) {
  std::vector<std::string> live = p.inputs;
  Matrix K = Matrix::identity(std::size_t{1} << p.inputs.size());
  std::size_t idx = 0;
  for (const SurgeryOp& op : p.ops) {
    int bit = 0;
    if (op.produces_outcome()) bit = outcomes[idx++];
    if (!op_active(op, outcomes)) {
      if (bit) throw ProcedureError("outcome vector reports -1 for a skipped operation");
      continue;
    }
    std::vector<std::string> next;
    switch (op.type) {
      case OpType::prep_green:
      case OpType::prep_red: {
        Colour c = op.type == OpType::prep_green ? Colour::green : Colour::red;
        K = apply_local(K, live, {}, prep_ket(c, op.phase), op.out, live.size(), next, parallel);
        break;
      }
      case OpType::split_smooth:
      case OpType::split_rough: {
        SurgeryKind kind = op.type == OpType::split_smooth ? SurgeryKind::smooth : SurgeryKind::rough;
        K = apply_local(K, live, op.in, split_kraus(kind), op.out, position_of(live, op.in[0]), next, parallel);
        break;
      }
      case OpType::merge_smooth:
      case OpType::merge_rough: {
        SurgeryKind kind = op.type == OpType::merge_smooth ? SurgeryKind::smooth : SurgeryKind::rough;
        std::size_t first = std::min(position_of(live, op.in[0]), position_of(live, op.in[1]));
        K = apply_local(K, live, op.in, merge_kraus(kind, op.conv, bit), op.out, first, next, parallel);
        break;
      }
      case OpType::measure_z:
      case OpType::measure_x:
        K = apply_local(K, live, op.in, measure_bra(op.type, bit), {}, 0, next, parallel);
        break;
      case OpType::pauli: {
        Matrix P = op.pauli == 'X' ? gates::X() : gates::Z();
        K = apply_local(K, live, op.in, P, op.out, position_of(live, op.in[0]), next, parallel);
        break;
      }
    }
    live = std::move(next);
  }
  std::vector<std::string> final_live;
  K = apply_local(K, live, p.outputs, Matrix::identity(std::size_t{1} << p.outputs.size()), p.outputs, 0, final_live,
                  parallel);
  return K;
}

}  // namespace

std::vector<std::vector<int>> realizable_outcomes(const Procedure& p) {
  const int m = outcome_count(p);
  if (m > kMaxOutcomes) throw ProcedureError("too many outcome bits");
  std::vector<int> gate(static_cast<std::size_t>(m), kAlways);
  {
    std::size_t idx = 0;
    for (const SurgeryOp& op : p.ops)
      if (op.produces_outcome()) gate[idx++] = op.cond;
  }
  std::vector<std::vector<int>> result;
  for (std::size_t v = 0; v < (std::size_t{1} << m); ++v) {
    std::vector<int> bits(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) bits[static_cast<std::size_t>(i)] = static_cast<int>((v >> (m - 1 - i)) & 1u);
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      int g = gate[static_cast<std::size_t>(i)];
      if (g != kAlways && bits[static_cast<std::size_t>(g)] == 0 && bits[static_cast<std::size_t>(i)] == 1) ok = false;
    }
    if (ok) result.push_back(std::move(bits));
  }
  return result;
}

void validate_procedure(const Procedure& p) {
  check_static(p);
  for (const auto& bits : realizable_outcomes(p)) check_dataflow(p, bits);
}

Matrix branch_kraus(const Procedure& p, const std::vector<int>& outcomes) {
  validate_procedure(p);
  if (static_cast<int>(outcomes.size()) != outcome_count(p)) throw ProcedureError("outcome vector has the wrong length");
  return run_branch(p, outcomes, true);
}

namespace serial {

Matrix branch_kraus(const Procedure& p, const std::vector<int>& outcomes) {
  validate_procedure(p);
  if (static_cast<int>(outcomes.size()) != outcome_count(p)) throw ProcedureError("outcome vector has the wrong length");
  return run_branch(p, outcomes, false);
}

BranchEnsemble enumerate_branches(const Procedure& p) {
  validate_procedure(p);
  BranchEnsemble e;
  e.num_outcomes = outcome_count(p);
  e.num_inputs = p.inputs.size();
  e.num_outputs = p.outputs.size();
  for (auto& bits : realizable_outcomes(p)) {
    Matrix k = run_branch(p, bits, false);
    e.branches.push_back({std::move(bits), std::move(k)});
  }
  return e;
}

}  // namespace serial

BranchEnsemble enumerate_branches(const Procedure& p) {
  validate_procedure(p);
  BranchEnsemble e;
  e.num_outcomes = outcome_count(p);
  e.num_inputs = p.inputs.size();
  e.num_outputs = p.outputs.size();
  auto all = realizable_outcomes(p);
  e.branches.resize(all.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(all.size());
  // Branches are independent; each thread runs its own serial kernel.
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto& b = e.branches[static_cast<std::size_t>(i)];
    b.outcomes = all[static_cast<std::size_t>(i)];
    b.kraus = run_branch(p, b.outcomes, false);
  }
  return e;
}

Matrix completeness(const BranchEnsemble& e) {
  Matrix sum(std::size_t{1} << e.num_inputs, std::size_t{1} << e.num_inputs);
  for (const auto& b : e.branches) sum += adjoint(b.kraus) * b.kraus;
  return sum;
}

Matrix density(const Matrix& k) { return k * adjoint(k); }

double branch_probability(const BranchEnsemble& e, std::size_t index, const Matrix& rho) {
  const Matrix& K = e.branches.at(index).kraus;
  if (rho.rows() != K.cols() || rho.cols() != K.cols()) throw std::invalid_argument("branch_probability: rho has the wrong shape");
  double tr = trace(rho).real();
  if (std::abs(tr - 1.0) > 1e-9) throw std::invalid_argument("branch_probability: rho does not have unit trace");
  return trace(K * rho * adjoint(K)).real();
}

std::vector<SampleResult> sample(const Procedure& p, const Matrix& psi, std::uint64_t seed, std::size_t trials) {
  BranchEnsemble e = enumerate_branches(p);
  if (psi.cols() != 1 || psi.rows() != (std::size_t{1} << e.num_inputs)) {
    throw std::invalid_argument("sample: input state has the wrong dimension");
  }
  std::vector<double> weights;
  std::vector<Matrix> states;
  for (const auto& b : e.branches) {
    Matrix out = b.kraus * psi;
    double w = two_norm(out);
    weights.push_back(w * w);
    if (w > 0) out *= 1.0 / w;
    states.push_back(std::move(out));
  }
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::vector<SampleResult> results;
  results.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t i = pick(rng);
    results.push_back({i, e.branches[i].outcomes, states[i]});
  }
  return results;
}

Diagram branch_to_zx(const Procedure& p, const std::vector<int>& outcomes, bool swap_conventions) {
  validate_procedure(p);
  if (static_cast<int>(outcomes.size()) != outcome_count(p)) throw ProcedureError("outcome vector has the wrong length");
  Diagram d;
  std::map<std::string, int> end;
  for (const auto& q : p.inputs) end[q] = d.add_input();
  const RationalPhase pi = RationalPhase::pi();

  std::size_t idx = 0;
  for (const SurgeryOp& op : p.ops) {
    int bit = 0;
    if (op.produces_outcome()) bit = outcomes[idx++];
    if (!op_active(op, outcomes)) continue;
    switch (op.type) {
      case OpType::prep_green:
      case OpType::prep_red:
        end[op.out[0]] = d.add_spider(op.type == OpType::prep_green ? Colour::green : Colour::red, op.phase);
        break;
      case OpType::split_smooth:
      case OpType::split_rough: {
        int s = d.add_spider(op.type == OpType::split_smooth ? Colour::green : Colour::red);
        d.add_edge(end.at(op.in[0]), s);
        end.erase(op.in[0]);
        end[op.out[0]] = s;
        end[op.out[1]] = s;
        break;
      }
      case OpType::merge_smooth:
      case OpType::merge_rough: {
        const Colour c = op.type == OpType::merge_smooth ? Colour::green : Colour::red;
        int m = d.add_spider(c);
        bool first = op.conv == Convention::correct_first;
        if (swap_conventions) first = !first;
        for (std::size_t j = 0; j < 2; ++j) {
          int src = end.at(op.in[j]);
          if (bit == 1 && (j == 0) == first) {
            int q = d.add_spider(opposite(c), pi);
            d.chain({src, q, m});
          } else {
            d.add_edge(src, m);
          }
          end.erase(op.in[j]);
        }
        end[op.out[0]] = m;
        break;
      }
      case OpType::measure_z:
      case OpType::measure_x: {
        const Colour c = op.type == OpType::measure_z ? Colour::red : Colour::green;
        int s = d.add_spider(c, bit ? pi : RationalPhase::zero());
        d.add_edge(end.at(op.in[0]), s);
        end.erase(op.in[0]);
        break;
      }
      case OpType::pauli: {
        int s = d.add_spider(op.pauli == 'X' ? Colour::red : Colour::green, pi);
        d.add_edge(end.at(op.in[0]), s);
        end[op.in[0]] = s;
        break;
      }
    }
  }
  for (const auto& q : p.outputs) {
    int o = d.add_output();
    d.add_edge(end.at(q), o);
  }
  return d;
}

std::vector<std::string> probe_states(std::size_t num_inputs) {
  if (num_inputs == 0) return {""};
  if (num_inputs == 1) return {"0", "1", "+", "-", "i"};
  if (num_inputs == 2) return {"00", "01", "++", "+-", "0+"};
  std::vector<std::string> probes;
  for (const std::string pattern : {"0", "01", "+", "+-", "0+"}) {
    std::string s;
    for (std::size_t i = 0; i < num_inputs; ++i) s += pattern[i % pattern.size()];
    probes.push_back(s);
  }
  return probes;
}

Matrix pauli_string(const std::string& paulis) {
  Matrix m = Matrix::identity(1);
  for (char c : paulis) {
    switch (c) {
      case 'I': m = kron(m, gates::I()); break;
      case 'X': m = kron(m, gates::X()); break;
      case 'Y': m = kron(m, gates::Y()); break;
      case 'Z': m = kron(m, gates::Z()); break;
      default: throw std::invalid_argument(std::string("unknown Pauli '") + c + "'");
    }
  }
  return m;
}

std::string pauli_fingerprint(const Matrix& a, const Matrix& b, std::size_t num_qubits, double tol) {
  if (num_qubits > 6) return "";
  const std::size_t total = std::size_t{1} << (2 * num_qubits);
  std::string best;
  int best_weight = -1;
  for (std::size_t code = 0; code < total; ++code) {
    std::string s;
    int weight = 0;
    for (std::size_t q = 0; q < num_qubits; ++q) {
      char c = "IXYZ"[(code >> (2 * (num_qubits - 1 - q))) & 3u];
      if (c != 'I') ++weight;
      s += c;
    }
    if (best_weight >= 0 && weight >= best_weight) continue;
    if (equal_up_to_global_phase(pauli_string(s) * b, a, tol)) {
      best = s;
      best_weight = weight;
    }
  }
  return best;
}

ModelReport verify_model(const Procedure& p, double tol, bool swap_conventions) {
  ModelReport report;
  report.procedure = p.name;
  BranchEnsemble e = enumerate_branches(p);
  Matrix comp = completeness(e);
  report.completeness_error = max_abs_diff(comp, Matrix::identity(comp.rows()));
  if (report.completeness_error > tol) report.pass = false;

  const auto probes = probe_states(p.inputs.size());
  for (std::size_t i = 0; i < e.branches.size(); ++i) {
    const Branch& br = e.branches[i];
    BranchCheck bc;
    bc.outcomes = br.outcomes;
    Diagram zx = branch_to_zx(p, br.outcomes, swap_conventions);
    Matrix m = evaluate(zx);
    bc.kraus_error = max_abs_diff(m, br.kraus);
    bc.kraus_pass = bc.kraus_error <= tol;
    if (!bc.kraus_pass) bc.pauli_fingerprint = pauli_fingerprint(br.kraus, m, p.outputs.size(), tol);
    for (const auto& probe : probes) {
      ProbeCheck pc;
      pc.probe = probe;
      Diagram with_probe = compose_sequential(state_diagram(probe), zx);
      double n = two_norm_of(with_probe);
      pc.zx_norm_sq = n * n;
      pc.probability = branch_probability(e, i, density(ket(probe)));
      pc.pass = std::abs(pc.zx_norm_sq - pc.probability) <= tol;
      bc.probes.push_back(pc);
      if (!pc.pass) report.pass = false;
    }
    if (!bc.kraus_pass) report.pass = false;
    report.branches.push_back(std::move(bc));
  }
  return report;
}

}  // namespace zxs
