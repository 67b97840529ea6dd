#include <doctest.h>

#include <cmath>

#include "zxs/dense.hpp"
#include "zxs/lattice.hpp"

using namespace zxs;

namespace {

std::size_t weight_count(const PlanarPatch& p, char type, std::size_t weight) {
  std::size_t n = 0;
  for (const auto& pl : p.plaquettes()) n += pl.type == type && pl.support.size() == weight;
  return n;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("distance-3 patch counts") {
    const PlanarPatch p(3, 3);
    CHECK(p.num_qubits() == 13);
    CHECK(p.plaquettes().size() == 12);
  }

  TEST_CASE("plaquette counts and weights") {
    for (int h = 2; h <= 5; ++h)
      for (int w = 2; w <= 5; ++w) {
        const PlanarPatch p(h, w);
        CAPTURE(h);
        CAPTURE(w);
        CHECK(p.num_qubits() == static_cast<std::size_t>(h * w + (h - 1) * (w - 1)));
        // X vertices: h rows of w-1, weight 3 on the top and bottom rows
        CHECK(weight_count(p, 'X', 3) == static_cast<std::size_t>(2 * (w - 1)));
        CHECK(weight_count(p, 'X', 4) == static_cast<std::size_t>((h - 2) * (w - 1)));
        // Z faces: h-1 rows of w, weight 3 on the left and right columns
        CHECK(weight_count(p, 'Z', 3) == static_cast<std::size_t>(2 * (h - 1)));
        CHECK(weight_count(p, 'Z', 4) == static_cast<std::size_t>((h - 1) * (w - 2)));
        CHECK(p.z_logical().size() == static_cast<std::size_t>(w));
        CHECK(p.x_logical().size() == static_cast<std::size_t>(h));
        for (const auto& s : p.sites()) CHECK((s.first + s.second) % 2 == 0);
      }
    CHECK_THROWS_AS(PlanarPatch(0, 3), LatticeError);
  }

  TEST_CASE("logical state names") {
    CHECK(logical_state_from_string("+i") == LogicalState::plus_i);
    CHECK(logical_state_from_string("-i") == LogicalState::minus_i);
    CHECK(to_string(LogicalState::minus) == "-");
    CHECK_THROWS_AS(logical_state_from_string("2"), LatticeError);
  }

  TEST_CASE("merge and split layouts") {
    const MergeLayout m = merge_layout(SurgeryKind::rough, 3, 3, 3, 4);
    CHECK(m.child.height() == 3);
    CHECK(m.child.width() == 7);
    CHECK(m.new_sites.size() == 2);
    CHECK(m.joins.size() == 3);
    CHECK(m.new_in_plus);
    const MergeLayout s = merge_layout(SurgeryKind::smooth, 2, 3, 3, 3);
    CHECK(s.child.height() == 5);
    CHECK(s.joins.size() == 3);
    CHECK_FALSE(s.new_in_plus);
    CHECK_THROWS_AS(merge_layout(SurgeryKind::rough, 2, 2, 3, 2), LatticeError);

    const SplitLayout r = split_layout(SurgeryKind::rough, 3, 7, 3);
    CHECK(r.first.width() == 3);
    CHECK(r.second.width() == 4);
    CHECK(r.measured.size() == 2);
    CHECK(r.basis == 'Z');
    CHECK(split_layout(SurgeryKind::smooth, 5, 2, 2).basis == 'X');
    CHECK_THROWS_AS(split_layout(SurgeryKind::rough, 2, 3, 1), LatticeError);
  }

  TEST_CASE("fresh patches hold their logical state") {
    LatticeWorkspace ws(3);
    ws.patch_init("z", 3, 3, LogicalState::zero);
    ws.patch_init("m", 3, 3, LogicalState::minus);
    ws.patch_init("y", 2, 3, LogicalState::minus_i);
    CHECK(ws.stabilizers_hold("z"));
    CHECK(ws.stabilizers_hold("y"));
    CHECK(ws.logical_expectation("z", 'Z') == 1);
    CHECK(ws.logical_expectation("z", 'X') == 0);
    CHECK(ws.logical_expectation("m", 'X') == -1);
    CHECK(ws.logical_expectation("y", 'Y') == -1);
    CHECK(ws.logical_expectation({{"z", 'Z'}, {"m", 'X'}}) == -1);
    CHECK_THROWS_AS(ws.patch_init("z", 2, 2, LogicalState::one), LatticeError);
    CHECK_THROWS_AS(ws.patch_init("tiny", 1, 3, LogicalState::one), LatticeError);
  }

  TEST_CASE("rough merge measures XX") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      LatticeWorkspace a(seed);
      a.patch_init("p", 2, 3, LogicalState::plus);
      a.patch_init("q", 2, 3, LogicalState::plus);
      CHECK(a.rough_merge_phys("p", "q", "c", Convention::correct_first) == 0);
      CHECK(a.stabilizers_hold("c"));
      CHECK(a.logical_expectation("c", 'X') == 1);
      CHECK_FALSE(a.has_patch("p"));

      LatticeWorkspace b(seed);
      b.patch_init("p", 2, 2, LogicalState::plus);
      b.patch_init("q", 2, 2, LogicalState::minus);
      CHECK(b.rough_merge_phys("p", "q", "c", Convention::correct_second) == 1);
      CHECK(b.logical_expectation("c", 'X') == 1);  // correcting the second parent keeps the first one's X
    }
  }

  TEST_CASE("smooth merge measures ZZ and XORs the labels") {
    LatticeWorkspace ws(4);
    ws.patch_init("p", 2, 2, LogicalState::zero);
    ws.patch_init("q", 2, 2, LogicalState::one);
    CHECK(ws.smooth_merge_phys("p", "q", "c", Convention::correct_first) == 1);
    CHECK(ws.logical_expectation("c", 'Z') == -1);  // correcting the first parent keeps the second one's Z
    CHECK(ws.log().back().logical == 1);
  }

  TEST_CASE("rough split copies X and distributes Z") {
    LatticeWorkspace ws(8);
    ws.patch_init("m", 2, 5, LogicalState::minus);
    ws.rough_split_phys("m", 2, "a", "b", {1});
    CHECK(ws.stabilizers_hold("a"));
    CHECK(ws.stabilizers_hold("b"));
    CHECK(ws.logical_expectation("a", 'X') == -1);
    CHECK(ws.logical_expectation("b", 'X') == -1);

    LatticeWorkspace z(8);
    z.patch_init("m", 3, 4, LogicalState::one);
    z.rough_split_phys("m", 2, "a", "b", {1, 0});
    CHECK(z.logical_expectation({{"a", 'Z'}, {"b", 'Z'}}) == -1);
    CHECK(z.logical_expectation("a", 'Z') == 0);
  }

  TEST_CASE("physical channels at small sizes") {
    for (auto conv : {Convention::correct_first, Convention::correct_second}) {
      CHECK(extract_logical_channel(PhysicalOp::merge, SurgeryKind::rough, conv, 2, 2).pass);
      CHECK(extract_logical_channel(PhysicalOp::merge, SurgeryKind::smooth, conv, 2, 3).pass);
      CHECK(extract_logical_channel(PhysicalOp::split, SurgeryKind::rough, conv, 2, 4).pass);
      CHECK(extract_logical_channel(PhysicalOp::split, SurgeryKind::smooth, conv, 4, 2).pass);
    }
    const auto bad = extract_logical_channel(PhysicalOp::split, SurgeryKind::rough, Convention::correct_first, 2, 4, true);
    CHECK_FALSE(bad.pass);
    CHECK_FALSE(bad.mismatches.empty());
  }

  TEST_CASE("Pauli expectation helpers") {
    CHECK(nontrivial_paulis(1) == std::vector<std::string>{"X", "Y", "Z"});
    CHECK(nontrivial_paulis(2).size() == 15);
    const Matrix rho = matmul(ket("0+"), adjoint(ket("0+")));
    CHECK(pauli_expectation(rho, "ZX") == doctest::Approx(1.0));
    CHECK(pauli_expectation(rho, "XZ") == doctest::Approx(0.0));
  }

  TEST_CASE("dense encoding round trip") {
    const PlanarPatch p(2, 2);
    for (const char* s : {"0", "1", "+", "i"}) {
      const Matrix psi = ket(s);
      const Matrix back = dense_decode(p, dense_encode(2, 2, psi));
      CHECK(proportional(back, psi, EqMode::phase));
      CHECK(two_norm(back) == doctest::Approx(1.0));
    }
    CHECK_THROWS(dense_encode(4, 4, ket("0")));
  }

  TEST_CASE("dense merge of a magic state") {
    const double pi = std::acos(-1.0);
    const Matrix g = Matrix::column({1 / std::sqrt(2.0), std::polar(1 / std::sqrt(2.0), pi / 4)});
    const auto r = dense_merge_check(SurgeryKind::smooth, Convention::correct_first, g, ket("+"));
    CHECK(r.pass);
    REQUIRE(r.branches.size() == 2);
    for (const auto& b : r.branches) {
      CHECK(b.probability == doctest::Approx(0.5).epsilon(1e-9));
      CHECK(b.min_fidelity >= 1 - 1e-9);
      CHECK(b.expect_x == doctest::Approx(std::cos(pi / 4)));
    }
    CHECK(r.branches[0].expect_y == doctest::Approx(std::sin(pi / 4)));
    CHECK(r.branches[1].expect_y == doctest::Approx(-std::sin(pi / 4)));
  }
}
