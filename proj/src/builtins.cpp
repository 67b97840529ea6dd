#include "zxs/surgery.hpp"

namespace zxs {

namespace {

using K = SurgeryKind;
constexpr Convention kFirst = Convention::correct_first;
constexpr Convention kSecond = Convention::correct_second;

Procedure cnot_standard() {
  // smooth split of the control, rough merge of the daughter into the target
  return {"cnot-standard",
          {"c", "t"},
          {"c", "t"},
          {SurgeryOp::split(K::smooth, "c", "c", "a"), SurgeryOp::merge(K::rough, "a", "t", "t", kFirst)}};
}

Procedure cnot_roughsplit() {
  return {"cnot-roughsplit",
          {"c", "t"},
          {"c", "t"},
          {SurgeryOp::split(K::rough, "t", "t", "a"), SurgeryOp::merge(K::smooth, "c", "a", "c", kFirst)}};
}

Procedure cnot_bellpair() {
  return {"cnot-bellpair",
          {"c", "t"},
          {"c", "t"},
          {SurgeryOp::prep_green("b", RationalPhase::zero()), SurgeryOp::split(K::smooth, "b", "b1", "b2"),
           SurgeryOp::merge(K::smooth, "c", "b1", "c", kFirst), SurgeryOp::merge(K::rough, "b2", "t", "t", kFirst)}};
}

Procedure cnot_splitsplit(bool rough_cap) {
  Procedure p{rough_cap ? "cnot-splitsplit-roughcap" : "cnot-splitsplit-smoothcap",
              {"c", "t"},
              {"c", "t"},
              {SurgeryOp::split(K::smooth, "c", "c", "a"), SurgeryOp::split(K::rough, "t", "b", "t")}};
  if (rough_cap) {
    p.ops.push_back(SurgeryOp::merge(K::rough, "a", "b", "m", kFirst));
    p.ops.push_back(SurgeryOp::measure_z("m"));
  } else {
    p.ops.push_back(SurgeryOp::merge(K::smooth, "a", "b", "m", kFirst));
    p.ops.push_back(SurgeryOp::measure_x("m"));
  }
  return p;
}

Procedure phase_merge(const std::string& name, RationalPhase phase) {
  return {name, {"q"}, {"q"}, {SurgeryOp::prep_green("m", phase), SurgeryOp::merge(K::smooth, "m", "q", "q", kFirst)}};
}

Procedure t_deterministic() {
  // T merge with the correction on the data qubit, undone by a conditional X;
  // a pi/2 merge then repairs the -pi/4 branch and a conditional Z fixes its
  // own -1 outcome.
  return {"t-deterministic",
          {"q"},
          {"q"},
          {SurgeryOp::prep_green("m", {1, 4}), SurgeryOp::merge(K::smooth, "m", "q", "q", kSecond),
           SurgeryOp::pauli_if("q", 'X', 0), SurgeryOp::prep_green("y", {1, 2}, 0),
           SurgeryOp::merge(K::smooth, "y", "q", "q", kFirst, 0), SurgeryOp::pauli_if("q", 'Z', 1)}};
}

}  // namespace

std::vector<Procedure> builtin_procedures() {
  return {cnot_standard(),
          cnot_roughsplit(),
          cnot_bellpair(),
          cnot_splitsplit(true),
          cnot_splitsplit(false),
          phase_merge("t-merge", {1, 4}),
          phase_merge("y-merge", {1, 2}),
          t_deterministic()};
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& p : builtin_procedures()) names.push_back(p.name);
  return names;
}

Procedure builtin_procedure(const std::string& name) {
  for (auto& p : builtin_procedures())
    if (p.name == name) return p;
  throw ProcedureError("no builtin procedure named '" + name + "'");
}

}  // namespace zxs
