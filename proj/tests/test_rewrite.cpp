#include <doctest.h>

#include <cmath>

#include "zxs/diagram_io.hpp"
#include "zxs/rewrite.hpp"

using namespace zxs;

namespace {

const RationalPhase kPi = RationalPhase::pi();

void check_preserved(const Diagram& before, const Diagram& after) {
  CHECK(max_abs_diff(evaluate(after), evaluate(before)) < 1e-10);
}

}  // namespace

TEST_SUITE("rewrite") {
  TEST_CASE("fusion adds phases and keeps the tensor") {
    Diagram d;
    const int in = d.add_input(), out = d.add_output();
    const int a = d.add_green({1, 4}), b = d.add_green({1, 4});
    d.chain({in, a, b, out});
    d.add_edge(a, b);  // double edge: a self-loop after fusion
    REQUIRE(can_fuse(d, a, b));
    const Diagram before = d;
    const RewriteStep s = fuse_spiders(d, a, b);
    CHECK(s.rule == "fuse");
    CHECK(d.num_spiders() == 1);
    CHECK(d.node(a).phase == RationalPhase(1, 2));
    check_preserved(before, d);
  }

  TEST_CASE("fusion refuses mixed colours and non-neighbours") {
    Diagram d;
    const int in = d.add_input(), out = d.add_output();
    const int g = d.add_green(), r = d.add_red(), g2 = d.add_green();
    d.chain({in, g, r, g2, out});
    CHECK_FALSE(can_fuse(d, g, r));
    CHECK_FALSE(can_fuse(d, g, g2));
    CHECK_THROWS_AS(fuse_spiders(d, g, r), RewriteError);
  }

  TEST_CASE("fusing a closed pair leaves only a scalar") {
    Diagram d;
    const int a = d.add_green({1, 4}), b = d.add_green({1, 4});
    d.add_edge(a, b);
    const Diagram before = d;
    fuse_spiders(d, a, b);
    CHECK(d.num_spiders() == 0);
    check_preserved(before, d);

    // phases summing to pi close to zero, which the scalar cannot absorb
    Diagram z;
    const int c = z.add_green({1, 2}), e = z.add_green({1, 2});
    z.add_edge(c, e);
    CHECK_FALSE(can_fuse(z, c, e));
  }

  TEST_CASE("identity removal") {
    Diagram d;
    const int in = d.add_input(), out = d.add_output();
    const int r = d.add_red(), g = d.add_green({1, 2});
    d.chain({in, r, g, out});
    CHECK(can_remove_identity(d, r));
    CHECK_FALSE(can_remove_identity(d, g));
    const Diagram before = d;
    remove_identity(d, r);
    CHECK_FALSE(d.has_node(r));
    check_preserved(before, d);
  }

  TEST_CASE("pi copy negates the phase and scales by e^{i beta}") {
    Diagram d;
    const int in = d.add_input(), o1 = d.add_output(), o2 = d.add_output();
    const int pi = d.add_red(kPi), s = d.add_green({1, 4});
    d.chain({in, pi, s, o1});
    d.add_edge(s, o2);
    REQUIRE(can_copy_pi(d, pi, s));
    const Diagram before = d;
    const RewriteStep st = copy_pi_through(d, pi, s);
    CHECK(std::abs(st.scalar_delta - std::polar(1.0, std::acos(-1.0) / 4)) < 1e-14);
    CHECK(d.node(s).phase == RationalPhase(7, 4));
    std::size_t pis = 0;
    for (const auto& [id, n] : d.nodes())
      if (n.kind == NodeKind::red && n.phase.is_pi()) ++pis;
    CHECK(pis == 2);
    check_preserved(before, d);
  }

  TEST_CASE("negative t-merge display normalizes to one green -pi/4 spider") {
    Diagram d = read_diagram(std::string(ZXS_DATA_DIR) + "/t-negative.zxs");
    const Diagram before = d;
    normalize(d);
    CHECK(d.num_spiders() == 1);
    for (const auto& [id, n] : d.nodes())
      if (is_spider(n.kind)) {
        CHECK(n.kind == NodeKind::green);
        CHECK(n.phase == RationalPhase(-1, 4));
      }
    check_preserved(before, d);
  }

  TEST_CASE("normalize is idempotent") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Diagram d = random_diagram(seed);
      normalize(d);
      const std::string once = diagram_to_json(d);
      CHECK(normalize(d).empty());
      CHECK(diagram_to_json(d) == once);
    }
  }

  TEST_CASE("random diagrams are deterministic per seed") {
    CHECK(random_diagram(17) == random_diagram(17));
    bool differs = false;
    for (std::uint64_t s = 0; s < 5 && !differs; ++s) differs = !(random_diagram(s) == random_diagram(s + 100));
    CHECK(differs);
    RandomLimits lim;
    lim.max_spiders = 3;
    for (std::uint64_t s = 0; s < 20; ++s) CHECK(random_diagram(s, lim).num_spiders() <= 3);
  }

  TEST_CASE("every applicable rewrite is sound on random diagrams") {
    std::size_t applied = 0;
    for (std::uint64_t seed = 1000; seed < 1200; ++seed) {
      const Diagram d = random_diagram(seed);
      const Matrix t = evaluate(d);
      for (const auto& site : applicable_rewrites(d)) {
        Diagram r = d;
        apply_rewrite(r, site);
        ++applied;
        CAPTURE(seed);
        CAPTURE(site.rule);
        CHECK(max_abs_diff(evaluate(r), t) < 1e-10);
      }
    }
    CHECK(applied > 100);
  }

  TEST_CASE("semantics_equal honours the mode") {
    Diagram a = wire_diagram(), b = wire_diagram();
    b.set_scalar({-1, 0});
    CHECK_FALSE(semantics_equal(a, b, EqMode::exact).equal);
    CHECK(semantics_equal(a, b, EqMode::sign).equal);
    b.set_scalar({0, 1});
    CHECK_FALSE(semantics_equal(a, b, EqMode::sign).equal);
    CHECK(semantics_equal(a, b, EqMode::phase).equal);
    CHECK_FALSE(semantics_equal(a, cnot_diagram()).equal);
  }
}
