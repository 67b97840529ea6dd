#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zxs {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

// Tolerance used across modules. ZXS_TOL in the environment overrides it.
double default_tolerance();

class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest number of stored entries a Matrix may hold.
inline constexpr std::size_t kMaxEntries = std::size_t{1} << 28;

// Dense row-major complex matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);
  static Matrix column(std::vector<cplx> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<cplx>& data() { return data_; }
  const std::vector<cplx>& data() const { return data_; }

  bool is_zero(double tol = 0.0) const;

  Matrix& operator*=(cplx s);
  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix adjoint(const Matrix& a);
Matrix transpose(const Matrix& a);
cplx trace(const Matrix& a);

// Frobenius norm.
double two_norm(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

bool approx_equal(const Matrix& a, const Matrix& b, double tol = kDefaultTol);
bool equal_up_to_global_phase(const Matrix& a, const Matrix& b, double tol = kDefaultTol);
bool equal_up_to_sign(const Matrix& a, const Matrix& b, double tol = kDefaultTol);

enum class EqMode { exact, phase, sign };

std::string to_string(EqMode mode);
EqMode eq_mode_from_string(std::string_view name);

bool equal_mode(const Matrix& a, const Matrix& b, EqMode mode, double tol = kDefaultTol);

// Compares a/|a| with b/|b|, so only the direction of the two tensors matters.
// Used for diagrams drawn without their scalar factor. With exact mode the
// hidden factor must be positive real; with sign mode, nonzero real; with
// phase mode, any nonzero complex number.
bool proportional(const Matrix& a, const Matrix& b, EqMode mode, double tol = kDefaultTol);

// Factor lambda with b ~= lambda a, taken from the largest-magnitude entry of a.
cplx proportionality_factor(const Matrix& a, const Matrix& b);

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(cplx s, const Matrix& a);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

// Product-state kets and bras built from one symbol per qubit:
// 0 1 + - i (|+i>) j (|-i>). The first symbol is the most significant qubit.
Matrix ket(std::string_view symbols);
Matrix bra(std::string_view symbols);

namespace gates {
Matrix I();
Matrix X();
Matrix Y();
Matrix Z();
Matrix H();
// diag(1, e^{i theta})
Matrix Rz(double theta);
// control is the most significant qubit
Matrix CNOT();
Matrix SWAP();
}  // namespace gates

// Single-threaded reference kernels. The public functions above dispatch to
// OpenMP versions once the problem is large enough; tests compare the two.
namespace serial {
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
}  // namespace serial

namespace parallel {
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
}  // namespace parallel

}  // namespace zxs
