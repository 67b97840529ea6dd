#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zxs/lattice.hpp"

namespace zxs {

// One physical surgery operation run repeatedly on fresh patches.
//   {"op": "rough_merge"|"smooth_merge"|"rough_split"|"smooth_split",
//    "h": 2, "w": 2, "conv": "first"|"second", "inputs": ["0", "+"],
//    "forced": [bits] | "sweep" | null, "trials": 100, "seed": 0, "cut": k}
// Merges take two (h, w) parents; splits take one (h, w) mother cut after
// `cut` columns/rows (default half). "sweep" runs every forced vector once.
struct ExperimentConfig {
  PhysicalOp op = PhysicalOp::merge;
  SurgeryKind kind = SurgeryKind::rough;
  Convention conv = Convention::correct_first;
  int h = 2, w = 2;
  std::optional<int> cut;
  std::vector<LogicalState> inputs;
  std::optional<std::vector<int>> forced;
  bool sweep = false;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
};

ExperimentConfig parse_experiment(const std::string& json_text);

struct ExperimentResult {
  std::vector<std::string> lines;  // JSON records, one per run, then a summary
  bool pass = true;
  std::size_t runs = 0;
  std::size_t minus_outcomes = 0;  // merges only
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace zxs
