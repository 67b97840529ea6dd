#include "zxs/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace zxs {

namespace {

// Below this many multiply-adds the OpenMP fork costs more than it saves.
constexpr std::size_t kParallelWork = std::size_t{1} << 15;

void check_dims(std::size_t rows, std::size_t cols) {
  if (cols != 0 && rows > kMaxEntries / cols) {
    throw DimensionError("matrix of " + std::to_string(rows) + "x" + std::to_string(cols) +
                         " exceeds the dimension limit");
  }
}

std::size_t safe_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    throw DimensionError("dimension product overflows");
  }
  return a * b;
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) +
                                "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()));
  }
}

std::size_t argmax_abs(const Matrix& a) {
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double v = std::abs(a.data()[i]);
    if (v > best_abs) {
      best_abs = v;
      best = i;
    }
  }
  return best;
}

}  // namespace

double default_tolerance() {
  if (const char* env = std::getenv("ZXS_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0.0 && std::isfinite(v)) return v;
  }
  return kDefaultTol;
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  data_.assign(rows * cols, cplx{});
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  check_dims(rows, cols);
  if (data_.size() != rows * cols) throw std::invalid_argument("Matrix: data size does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.begin()->size() : 0;
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("Matrix::from_rows: ragged rows");
    std::size_t j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix Matrix::column(std::vector<cplx> entries) {
  std::size_t n = entries.size();
  return Matrix(n, 1, std::move(entries));
}

bool Matrix::is_zero(double tol) const {
  return std::all_of(data_.begin(), data_.end(), [tol](const cplx& v) { return std::abs(v) <= tol; });
}

Matrix& Matrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

namespace serial {

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(safe_mul(a.rows(), b.rows()), safe_mul(a.cols(), b.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      cplx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

}  // namespace serial

namespace parallel {

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rows());
  const std::size_t inner = a.cols();
  const std::size_t m = b.cols();
  const cplx* pa = a.data().data();
  const cplx* pb = b.data().data();
  cplx* po = out.data().data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    cplx* row = po + static_cast<std::size_t>(i) * m;
    for (std::size_t k = 0; k < inner; ++k) {
      cplx aik = pa[static_cast<std::size_t>(i) * inner + k];
      if (aik == cplx{}) continue;
      const cplx* brow = pb + k * m;
      for (std::size_t j = 0; j < m; ++j) row[j] += aik * brow[j];
    }
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(safe_mul(a.rows(), b.rows()), safe_mul(a.cols(), b.cols()));
  const std::ptrdiff_t ar = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < ar; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      cplx aij = a(static_cast<std::size_t>(i), j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(static_cast<std::size_t>(i) * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

}  // namespace parallel

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()) + ")");
  }
  if (a.rows() * a.cols() * b.cols() >= kParallelWork) return parallel::matmul(a, b);
  return serial::matmul(a, b);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  std::size_t work = safe_mul(safe_mul(a.rows(), b.rows()), safe_mul(a.cols(), b.cols()));
  if (work >= kParallelWork) return parallel::kron(a, b);
  return serial::kron(a, b);
}

Matrix adjoint(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

cplx trace(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("trace: matrix is not square");
  cplx t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double two_norm(const Matrix& a) {
  double s = 0.0;
  for (const auto& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs_diff(a, b) <= tol;
}

cplx proportionality_factor(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "proportionality_factor");
  if (a.size() == 0) return 1.0;
  std::size_t k = argmax_abs(a);
  if (a.data()[k] == cplx{}) return 0.0;
  return b.data()[k] / a.data()[k];
}

bool equal_up_to_global_phase(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.is_zero(tol) || b.is_zero(tol)) return a.is_zero(tol) && b.is_zero(tol);
  cplx lambda = proportionality_factor(a, b);
  double mag = std::abs(lambda);
  if (mag == 0.0) return false;
  cplx phase = lambda / mag;
  Matrix scaled = a;
  scaled *= phase;
  return approx_equal(scaled, b, tol);
}

bool equal_up_to_sign(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (approx_equal(a, b, tol)) return true;
  Matrix neg = a;
  neg *= -1.0;
  return approx_equal(neg, b, tol);
}

std::string to_string(EqMode mode) {
  switch (mode) {
    case EqMode::exact: return "exact";
    case EqMode::phase: return "phase";
    case EqMode::sign: return "sign";
  }
  return "exact";
}

EqMode eq_mode_from_string(std::string_view name) {
  if (name == "exact") return EqMode::exact;
  if (name == "phase") return EqMode::phase;
  if (name == "sign") return EqMode::sign;
  throw std::invalid_argument("unknown equality mode '" + std::string(name) + "'");
}

bool equal_mode(const Matrix& a, const Matrix& b, EqMode mode, double tol) {
  switch (mode) {
    case EqMode::exact: return approx_equal(a, b, tol);
    case EqMode::phase: return equal_up_to_global_phase(a, b, tol);
    case EqMode::sign: return equal_up_to_sign(a, b, tol);
  }
  return false;
}

bool proportional(const Matrix& a, const Matrix& b, EqMode mode, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  double na = two_norm(a), nb = two_norm(b);
  if (na <= tol || nb <= tol) return na <= tol && nb <= tol;
  Matrix ua = a, ub = b;
  ua *= 1.0 / na;
  ub *= 1.0 / nb;
  return equal_mode(ua, ub, mode, tol);
}

Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

Matrix operator*(cplx s, const Matrix& a) {
  Matrix out = a;
  out *= s;
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  out += b;
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  out -= b;
  return out;
}

namespace {

Matrix single_ket(char symbol) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (symbol) {
    case '0': return Matrix::column({1.0, 0.0});
    case '1': return Matrix::column({0.0, 1.0});
    case '+': return Matrix::column({r, r});
    case '-': return Matrix::column({r, -r});
    case 'i': return Matrix::column({r, cplx(0, r)});
    case 'j': return Matrix::column({r, cplx(0, -r)});
    default: throw std::invalid_argument(std::string("unknown state symbol '") + symbol + "'");
  }
}

}  // namespace

Matrix ket(std::string_view symbols) {
  Matrix out = Matrix::column({1.0});
  for (char c : symbols) out = kron(out, single_ket(c));
  return out;
}

Matrix bra(std::string_view symbols) { return adjoint(ket(symbols)); }

namespace gates {

Matrix I() { return Matrix::identity(2); }
Matrix X() { return Matrix::from_rows({{0, 1}, {1, 0}}); }
Matrix Y() { return Matrix::from_rows({{0, cplx(0, -1)}, {cplx(0, 1), 0}}); }
Matrix Z() { return Matrix::from_rows({{1, 0}, {0, -1}}); }

Matrix H() {
  const double r = 1.0 / std::sqrt(2.0);
  return Matrix::from_rows({{r, r}, {r, -r}});
}

Matrix Rz(double theta) { return Matrix::from_rows({{1, 0}, {0, std::polar(1.0, theta)}}); }

Matrix CNOT() {
  return Matrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
}

Matrix SWAP() {
  return Matrix::from_rows({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
}

}  // namespace gates

}  // namespace zxs
