#include <doctest.h>

#include <cmath>
#include <map>

#include "zxs/procedure_io.hpp"
#include "zxs/surgery.hpp"

using namespace zxs;

namespace {

const double r = 1 / std::sqrt(2.0);
const double kPi = std::acos(-1.0);

// Hand-expanded listings of the split and merge maps.
Matrix smooth_split() { return Matrix::from_rows({{1, 0}, {0, 0}, {0, 0}, {0, 1}}); }
Matrix rough_split() { return cplx(r, 0) * Matrix::from_rows({{1, 0}, {0, 1}, {0, 1}, {1, 0}}); }
Matrix smooth_k0() { return Matrix::from_rows({{1, 0, 0, 0}, {0, 0, 0, 1}}); }
Matrix smooth_k1_first() { return Matrix::from_rows({{0, 0, 1, 0}, {0, 1, 0, 0}}); }
Matrix smooth_k1_second() { return Matrix::from_rows({{0, 1, 0, 0}, {0, 0, 1, 0}}); }
Matrix rough_k0() { return cplx(r, 0) * Matrix::from_rows({{1, 0, 0, 1}, {0, 1, 1, 0}}); }
Matrix rough_k1_first() { return cplx(r, 0) * Matrix::from_rows({{1, 0, 0, -1}, {0, 1, -1, 0}}); }
Matrix rough_k1_second() { return cplx(r, 0) * Matrix::from_rows({{1, 0, 0, -1}, {0, -1, 1, 0}}); }

Matrix phase_state(double a) { return Matrix::column({r, std::polar(r, a)}); }

}  // namespace

TEST_SUITE("surgery") {
  TEST_CASE("split maps entry for entry") {
    CHECK(max_abs_diff(split_kraus(SurgeryKind::smooth), smooth_split()) < 1e-15);
    CHECK(max_abs_diff(split_kraus(SurgeryKind::rough), rough_split()) < 1e-15);
    for (auto k : {SurgeryKind::smooth, SurgeryKind::rough}) {
      const Matrix u = split_kraus(k);
      CHECK(max_abs_diff(matmul(adjoint(u), u), Matrix::identity(2)) < 1e-15);
    }
  }

  TEST_CASE("merge Kraus operators entry for entry") {
    const auto F = Convention::correct_first, S = Convention::correct_second;
    CHECK(max_abs_diff(merge_kraus(SurgeryKind::smooth, F, 0), smooth_k0()) < 1e-15);
    CHECK(max_abs_diff(merge_kraus(SurgeryKind::smooth, S, 0), smooth_k0()) < 1e-15);
    CHECK(max_abs_diff(merge_kraus(SurgeryKind::smooth, F, 1), smooth_k1_first()) < 1e-15);
    CHECK(max_abs_diff(merge_kraus(SurgeryKind::smooth, S, 1), smooth_k1_second()) < 1e-15);
    CHECK(max_abs_diff(merge_kraus(SurgeryKind::rough, F, 0), rough_k0()) < 1e-15);
    CHECK(max_abs_diff(merge_kraus(SurgeryKind::rough, S, 0), rough_k0()) < 1e-15);
    CHECK(max_abs_diff(merge_kraus(SurgeryKind::rough, F, 1), rough_k1_first()) < 1e-15);
    CHECK(max_abs_diff(merge_kraus(SurgeryKind::rough, S, 1), rough_k1_second()) < 1e-15);
    for (auto k : {SurgeryKind::smooth, SurgeryKind::rough})
      for (auto c : {F, S}) {
        const Matrix a = merge_kraus(k, c, 0), b = merge_kraus(k, c, 1);
        CHECK(max_abs_diff(matmul(adjoint(a), a) + matmul(adjoint(b), b), Matrix::identity(4)) < 1e-15);
      }
    CHECK_THROWS(merge_kraus(SurgeryKind::rough, F, 2));
  }

  TEST_CASE("builtins validate and have the expected outcome counts") {
    const std::map<std::string, int> outcomes = {
        {"cnot-standard", 1},  {"cnot-roughsplit", 1}, {"cnot-bellpair", 2},           {"cnot-splitsplit-roughcap", 2},
        {"cnot-splitsplit-smoothcap", 2}, {"t-merge", 1}, {"y-merge", 1}, {"t-deterministic", 2}};
    CHECK(builtin_names().size() == outcomes.size());
    for (const auto& p : builtin_procedures()) {
      CAPTURE(p.name);
      REQUIRE(outcomes.count(p.name) == 1);
      CHECK(outcome_count(p) == outcomes.at(p.name));
      CHECK_NOTHROW(validate_procedure(p));
      CHECK(max_abs_diff(completeness(enumerate_branches(p)), Matrix::identity(std::size_t{1} << p.inputs.size())) <
            1e-12);
    }
    CHECK_THROWS_AS(builtin_procedure("cnot-nonexistent"), ProcedureError);
  }

  TEST_CASE("t-merge branches from the hand-expanded merge") {
    const Matrix g = phase_state(kPi / 4);
    const Matrix k0 = matmul(smooth_k0(), kron(g, gates::I()));
    const BranchEnsemble e = enumerate_branches(builtin_procedure("t-merge"));
    REQUIRE(e.branches.size() == 2);
    CHECK(max_abs_diff(e.branches[0].kraus, k0) < 1e-14);
    CHECK(proportional(e.branches[0].kraus, gates::Rz(kPi / 4), EqMode::phase));
    CHECK(proportional(e.branches[1].kraus, gates::Rz(-kPi / 4), EqMode::phase));
  }

  TEST_CASE("standard CNOT positive branch") {
    const BranchEnsemble e = enumerate_branches(builtin_procedure("cnot-standard"));
    const Matrix want = matmul(kron(gates::I(), rough_k0()), kron(smooth_split(), gates::I()));
    CHECK(max_abs_diff(e.branches[0].kraus, want) < 1e-14);
    CHECK(max_abs_diff(e.branches[0].kraus, cplx(r, 0) * gates::CNOT()) < 1e-14);
  }

  TEST_CASE("skipped operations pin their outcome to +1") {
    const Procedure p = builtin_procedure("t-deterministic");
    const auto rs = realizable_outcomes(p);
    CHECK(rs == std::vector<std::vector<int>>{{0, 0}, {1, 0}, {1, 1}});
    CHECK_THROWS_AS(branch_kraus(p, {0, 1}), ProcedureError);
  }

  TEST_CASE("parallel and serial branch enumeration agree") {
    for (const auto& p : builtin_procedures()) {
      const auto a = enumerate_branches(p), b = serial::enumerate_branches(p);
      REQUIRE(a.branches.size() == b.branches.size());
      for (std::size_t i = 0; i < a.branches.size(); ++i) {
        CHECK(a.branches[i].outcomes == b.branches[i].outcomes);
        CHECK(max_abs_diff(a.branches[i].kraus, b.branches[i].kraus) < 1e-14);
      }
    }
  }

  TEST_CASE("validation catches dataflow errors") {
    Procedure p;
    p.name = "bad";
    p.inputs = {"a", "b"};
    p.outputs = {"a"};
    p.ops = {SurgeryOp::merge(SurgeryKind::smooth, "a", "b", "a", Convention::correct_first),
             SurgeryOp::measure_z("b")};
    CHECK_THROWS_WITH_AS(validate_procedure(p), doctest::Contains("not live"), ProcedureError);

    p.ops = {SurgeryOp::merge(SurgeryKind::smooth, "a", "a", "c", Convention::correct_first)};
    CHECK_THROWS_AS(validate_procedure(p), ProcedureError);

    p.ops = {SurgeryOp::merge(SurgeryKind::smooth, "a", "b", "a", Convention::correct_first),
             SurgeryOp::pauli_if("a", 'X', 3)};
    CHECK_THROWS_WITH_AS(validate_procedure(p), doctest::Contains("condition"), ProcedureError);
  }

  TEST_CASE("lsp-1 round trip keeps every branch") {
    for (const auto& p : builtin_procedures()) {
      CAPTURE(p.name);
      const Procedure q = parse_procedure(procedure_to_json(p));
      const auto a = enumerate_branches(p), b = enumerate_branches(q);
      REQUIRE(a.branches.size() == b.branches.size());
      for (std::size_t i = 0; i < a.branches.size(); ++i) CHECK(max_abs_diff(a.branches[i].kraus, b.branches[i].kraus) == 0.0);
      const Procedure f = read_procedure(std::string(ZXS_DATA_DIR) + "/procedures/" + p.name + ".json");
      CHECK(procedure_to_json(f) == procedure_to_json(p));
    }
    CHECK(load_procedure("t-merge").name == "t-merge");
  }

  TEST_CASE("lsp-1 errors carry the field path") {
    const std::string head = R"({"version":"lsp-1","name":"x","inputs":["a"],"outputs":["a"],"ops":[)";
    CHECK_THROWS_WITH_AS(parse_procedure(head + R"({"op":"teleport","q":"a"}]})"), doctest::Contains("ops[0].op"),
                         ProcedureError);
    CHECK_THROWS_WITH_AS(parse_procedure(head + R"({"op":"pauli_if","q":"a","p":"y","cond":0}]})"),
                         doctest::Contains("ops[0].p"), ProcedureError);
    CHECK_THROWS_WITH_AS(parse_procedure(head + R"({"op":"pauli_if","q":"a","p":"x"}]})"), doctest::Contains("cond"),
                         ProcedureError);
    CHECK_THROWS_AS(parse_procedure("[1,2"), ProcedureError);
  }

  TEST_CASE("sampling is seeded and follows the branch weights") {
    const Procedure p = builtin_procedure("t-merge");
    const auto a = sample(p, ket("+"), 9, 4000), b = sample(p, ket("+"), 9, 4000);
    std::size_t minus = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].outcomes == b[i].outcomes);
      minus += a[i].branch;
    }
    CHECK(static_cast<double>(minus) / 4000.0 == doctest::Approx(0.5).epsilon(0.05));
    // post-measurement state is Rz(+-pi/4)|+>
    for (const auto& s : a) {
      const Matrix want = matmul(gates::Rz(s.branch ? -kPi / 4 : kPi / 4), ket("+"));
      CHECK(proportional(s.state, want, EqMode::phase));
    }
    CHECK_THROWS(sample(p, ket("00"), 1, 1));
  }

  TEST_CASE("Pauli fingerprints") {
    CHECK(pauli_fingerprint(gates::X(), gates::I(), 1) == "X");
    CHECK(pauli_fingerprint(gates::CNOT(), matmul(kron(gates::Z(), gates::I()), gates::CNOT()), 2) == "ZI");
    CHECK(pauli_fingerprint(gates::I(), gates::H(), 1).empty());
    CHECK(max_abs_diff(pauli_string("XZ"), kron(gates::X(), gates::Z())) == 0.0);
  }

  TEST_CASE("branch diagrams evaluate to the Kraus operators") {
    for (const auto& p : builtin_procedures()) {
      const ModelReport m = verify_model(p);
      CAPTURE(p.name);
      CHECK(m.pass);
    }
    CHECK_FALSE(verify_model(builtin_procedure("cnot-standard"), kDefaultTol, true).pass);
  }
}
