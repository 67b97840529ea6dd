#include "zxs/phase.hpp"

#include <numbers>
#include <numeric>
#include <stdexcept>

namespace zxs {

RationalPhase::RationalPhase(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("phase denominator is zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  const std::int64_t period = 2 * den;
  num %= period;
  if (num < 0) num += period;
  num_ = num;
  den_ = den;
}

double RationalPhase::radians() const {
  return std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
}

cplx RationalPhase::unit() const {
  // Exact values for the multiples of pi/2 keep tensors free of 1e-17 noise.
  if (den_ == 1) return num_ == 0 ? cplx(1, 0) : cplx(-1, 0);
  if (den_ == 2) return num_ == 1 ? cplx(0, 1) : cplx(0, -1);
  return std::polar(1.0, radians());
}

RationalPhase RationalPhase::operator+(const RationalPhase& o) const {
  std::int64_t l = std::lcm(den_, o.den_);
  return {num_ * (l / den_) + o.num_ * (l / o.den_), l};
}

RationalPhase RationalPhase::operator-() const { return {-num_, den_}; }

std::string RationalPhase::str() const {
  if (num_ == 0) return "0";
  std::string s = num_ == 1 ? "pi" : std::to_string(num_) + "pi";
  if (den_ != 1) s += "/" + std::to_string(den_);
  return s;
}

}  // namespace zxs
