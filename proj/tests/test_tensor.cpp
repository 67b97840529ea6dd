#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "zxs/tensor.hpp"

using namespace zxs;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(r, c);
  for (auto& x : m.data()) x = {g(rng), g(rng)};
  return m;
}

}  // namespace

TEST_SUITE("tensor") {
  TEST_CASE("kron and matmul on small hand-worked matrices") {
    const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
    const Matrix b = Matrix::from_rows({{0, 1}, {1, 0}});
    const Matrix k = kron(a, b);
    const Matrix want = Matrix::from_rows({{0, 1, 0, 2}, {1, 0, 2, 0}, {0, 3, 0, 4}, {3, 0, 4, 0}});
    CHECK(max_abs_diff(k, want) == 0.0);
    CHECK(max_abs_diff(matmul(a, b), Matrix::from_rows({{2, 1}, {4, 3}})) == 0.0);
    CHECK(trace(a) == cplx(5, 0));
    CHECK_THROWS_AS(matmul(a, Matrix(3, 3)), std::invalid_argument);
  }

  TEST_CASE("adjoint conjugates and transposes") {
    const Matrix a = Matrix::from_rows({{cplx(1, 1), 2}, {0, cplx(0, -3)}});
    const Matrix h = adjoint(a);
    CHECK(h(0, 0) == cplx(1, -1));
    CHECK(h(1, 0) == cplx(2, 0));
    CHECK(h(1, 1) == cplx(0, 3));
  }

  TEST_CASE("parallel kernels agree with the serial reference") {
    std::mt19937_64 rng(5);
    for (std::size_t n : {3, 17, 64, 130}) {
      const Matrix a = random_matrix(n, n + 1, rng), b = random_matrix(n + 1, n, rng);
      CHECK(max_abs_diff(parallel::matmul(a, b), serial::matmul(a, b)) < 1e-9);
      CHECK(max_abs_diff(matmul(a, b), serial::matmul(a, b)) < 1e-9);
    }
    const Matrix a = random_matrix(16, 8, rng), b = random_matrix(32, 4, rng);
    CHECK(max_abs_diff(parallel::kron(a, b), serial::kron(a, b)) == 0.0);
  }

  TEST_CASE("gates: control is the most significant qubit") {
    CHECK(max_abs_diff(matmul(gates::CNOT(), ket("10")), ket("11")) < 1e-15);
    CHECK(max_abs_diff(matmul(gates::CNOT(), ket("01")), ket("01")) < 1e-15);
    CHECK(max_abs_diff(matmul(gates::SWAP(), ket("01")), ket("10")) < 1e-15);
    CHECK(max_abs_diff(matmul(gates::H(), ket("0")), ket("+")) < 1e-15);
    // Y = i X Z
    CHECK(max_abs_diff(gates::Y(), cplx(0, 1) * matmul(gates::X(), gates::Z())) < 1e-15);
    CHECK(gates::Rz(std::acos(-1.0) / 2)(1, 1).imag() == doctest::Approx(1.0));
  }

  TEST_CASE("ket symbols") {
    const double s = 1 / std::sqrt(2.0);
    const Matrix k = ket("1+");
    CHECK(k.rows() == 4);
    CHECK(std::abs(k(2, 0) - s) < 1e-15);
    CHECK(std::abs(k(3, 0) - s) < 1e-15);
    CHECK(std::abs(ket("i")(1, 0) - cplx(0, s)) < 1e-15);
    CHECK(std::abs(ket("j")(1, 0) - cplx(0, -s)) < 1e-15);
    CHECK(max_abs_diff(bra("0"), adjoint(ket("0"))) == 0.0);
    CHECK_THROWS(ket("q"));
  }

  TEST_CASE("comparison modes") {
    const Matrix x = gates::X();
    CHECK(equal_mode(x, x, EqMode::exact));
    CHECK_FALSE(equal_mode(x, cplx(-1, 0) * x, EqMode::exact));
    CHECK(equal_mode(x, cplx(-1, 0) * x, EqMode::sign));
    CHECK_FALSE(equal_mode(x, cplx(0, 1) * x, EqMode::sign));
    CHECK(equal_mode(x, cplx(0, 1) * x, EqMode::phase));
    CHECK_FALSE(equal_mode(x, cplx(2, 0) * x, EqMode::phase));

    CHECK(proportional(x, cplx(3, 0) * x, EqMode::exact));
    CHECK_FALSE(proportional(x, cplx(-3, 0) * x, EqMode::exact));
    CHECK(proportional(x, cplx(-3, 0) * x, EqMode::sign));
    CHECK(proportional(x, cplx(0, 3) * x, EqMode::phase));
    CHECK_FALSE(proportional(x, gates::Z(), EqMode::phase));
    CHECK(proportionality_factor(x, cplx(0, 2) * x) == cplx(0, 2));

    CHECK(eq_mode_from_string("sign") == EqMode::sign);
    CHECK(to_string(EqMode::phase) == "phase");
    CHECK_THROWS(eq_mode_from_string("close"));
  }

  TEST_CASE("ZXS_TOL overrides the default tolerance") {
    CHECK(default_tolerance() == kDefaultTol);
    setenv("ZXS_TOL", "1e-6", 1);
    CHECK(default_tolerance() == 1e-6);
    setenv("ZXS_TOL", "nonsense", 1);
    CHECK(default_tolerance() == kDefaultTol);
    unsetenv("ZXS_TOL");
  }
}
