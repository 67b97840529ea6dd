#include "zxs/experiment.hpp"

#include <cmath>
#include <random>

#include <json.hpp>

namespace zxs {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

template <class T>
T field(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key) || doc[key].is_null()) return fallback;
  try {
    return doc[key].get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("experiment: bad value for '") + key + "'");
  }
}

std::uint64_t run_seed(std::uint64_t seed, std::size_t run) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(run)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (std::uint64_t{words[0]} << 32) | words[1];
}

}  // namespace

ExperimentConfig parse_experiment(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("experiment: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("experiment: expected an object");
  ExperimentConfig cfg;
  const std::string op = field<std::string>(doc, "op", "");
  if (op == "rough_merge" || op == "smooth_merge") cfg.op = PhysicalOp::merge;
  else if (op == "rough_split" || op == "smooth_split") cfg.op = PhysicalOp::split;
  else throw std::invalid_argument("experiment: 'op' must be rough_merge, smooth_merge, rough_split or smooth_split");
  cfg.kind = op.rfind("rough", 0) == 0 ? SurgeryKind::rough : SurgeryKind::smooth;
  cfg.conv = convention_from_string(field<std::string>(doc, "conv", "first"));
  cfg.h = field<int>(doc, "h", 2);
  cfg.w = field<int>(doc, "w", 2);
  if (doc.contains("cut") && !doc["cut"].is_null()) cfg.cut = field<int>(doc, "cut", 0);
  const std::size_t want_inputs = cfg.op == PhysicalOp::merge ? 2 : 1;
  for (const auto& s : field<std::vector<std::string>>(doc, "inputs", {})) cfg.inputs.push_back(logical_state_from_string(s));
  if (cfg.inputs.empty()) cfg.inputs.assign(want_inputs, LogicalState::zero);
  if (cfg.inputs.size() != want_inputs) {
    throw std::invalid_argument("experiment: '" + op + "' takes " + std::to_string(want_inputs) + " input state(s)");
  }
  if (doc.contains("forced") && !doc["forced"].is_null()) {
    if (doc["forced"].is_string() && doc["forced"] == "sweep") cfg.sweep = true;
    else cfg.forced = field<std::vector<int>>(doc, "forced", {});
  }
  cfg.trials = field<std::size_t>(doc, "trials", 1);
  cfg.seed = field<std::uint64_t>(doc, "seed", 0);
  return cfg;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult res;
  const bool rough = cfg.kind == SurgeryKind::rough;
  const int cut = cfg.cut.value_or(rough ? cfg.w / 2 : cfg.h / 2);
  const std::size_t seam_len = cfg.op == PhysicalOp::split ? split_layout(cfg.kind, cfg.h, cfg.w, cut).measured.size()
                                                           : merge_layout(cfg.kind, cfg.h, cfg.w, cfg.h, cfg.w).joins.size();
  std::vector<std::optional<std::vector<int>>> plan;
  if (cfg.sweep) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << seam_len); ++mask) {
      std::vector<int> f(seam_len);
      for (std::size_t i = 0; i < seam_len; ++i) f[i] = static_cast<int>((mask >> i) & 1u);
      plan.emplace_back(f);
    }
  } else {
    plan.assign(cfg.trials, cfg.forced);
  }

  Matrix psi = logical_state_vector(cfg.inputs[0]);
  if (cfg.inputs.size() == 2) psi = kron(psi, logical_state_vector(cfg.inputs[1]));
  const Matrix rho = density(psi);
  const std::string op_name = (rough ? "rough_" : "smooth_") + to_string(cfg.op);

  for (std::size_t run = 0; run < plan.size(); ++run) {
    LatticeWorkspace ws(run_seed(cfg.seed, run));
    const std::vector<int> forced = plan[run].value_or(std::vector<int>{});
    Matrix k;
    int outcome = 0;
    std::vector<std::string> labels;
    if (cfg.op == PhysicalOp::split) {
      ws.patch_init("m", cfg.h, cfg.w, cfg.inputs[0]);
      const bool end = cfg.conv == Convention::correct_second;
      if (rough) ws.rough_split_phys("m", cut, "a", "b", forced, end);
      else ws.smooth_split_phys("m", cut, "a", "b", forced, end);
      k = split_kraus(cfg.kind);
      labels = {"a", "b"};
    } else {
      ws.patch_init("a", cfg.h, cfg.w, cfg.inputs[0]);
      ws.patch_init("b", cfg.h, cfg.w, cfg.inputs[1]);
      outcome = rough ? ws.rough_merge_phys("a", "b", "c", cfg.conv, forced)
                      : ws.smooth_merge_phys("a", "b", "c", cfg.conv, forced);
      k = merge_kraus(cfg.kind, cfg.conv, outcome);
      labels = {"c"};
      res.minus_outcomes += static_cast<std::size_t>(outcome);
    }
    ++res.runs;
    Matrix out = matmul(matmul(k, rho), adjoint(k));
    const double p = trace(out).real();
    bool pass = p > 1e-12;
    if (pass) out *= cplx(1.0 / p, 0.0);
    for (const auto& l : labels) pass = pass && ws.stabilizers_hold(l);

    ordered_json rec;
    rec["run"] = run;
    rec["op"] = op_name;
    rec["forced"] = plan[run] ? ordered_json(*plan[run]) : ordered_json(nullptr);
    rec["raw"] = ws.log().back().raw;
    rec["adjusted"] = ws.log().back().adjusted;
    if (cfg.op == PhysicalOp::merge) rec["outcome"] = outcome ? -1 : 1;
    ordered_json observed = ordered_json::object(), predicted = ordered_json::object();
    for (const auto& o : nontrivial_paulis(labels.size())) {
      std::vector<std::pair<std::string, char>> factors;
      for (std::size_t i = 0; i < labels.size(); ++i) factors.emplace_back(labels[i], o[i]);
      const int obs = ws.logical_expectation(factors);
      const double pred = p > 1e-12 ? pauli_expectation(out, o) : 0.0;
      const double rounded = std::round(pred * 1e9) / 1e9;
      observed[o] = obs;
      predicted[o] = rounded == 0.0 ? 0.0 : rounded;
      if (std::abs(obs - pred) > 1e-9) pass = false;
    }
    rec["observed"] = std::move(observed);
    rec["predicted"] = std::move(predicted);
    rec["pass"] = pass;
    res.pass = res.pass && pass;
    res.lines.push_back(rec.dump());
  }

  ordered_json summary;
  summary["summary"] = op_name;
  summary["h"] = cfg.h;
  summary["w"] = cfg.w;
  summary["conv"] = to_string(cfg.conv);
  summary["seed"] = cfg.seed;
  summary["runs"] = res.runs;
  if (cfg.op == PhysicalOp::merge) {
    summary["minus_outcomes"] = res.minus_outcomes;
    summary["minus_frequency"] = res.runs ? static_cast<double>(res.minus_outcomes) / static_cast<double>(res.runs) : 0.0;
  }
  summary["pass"] = res.pass;
  res.lines.push_back(summary.dump());
  return res;
}

}  // namespace zxs
