#pragma once

#include <cstdint>
#include <string>

#include "zxs/tensor.hpp"

namespace zxs {

// A phase num/den * pi, kept reduced with 0 <= num/den < 2.
class RationalPhase {
 public:
  RationalPhase() = default;
  RationalPhase(std::int64_t num, std::int64_t den);

  static RationalPhase zero() { return {}; }
  static RationalPhase pi() { return {1, 1}; }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double radians() const;
  // e^{i * phase}
  cplx unit() const;

  bool is_zero() const { return num_ == 0; }
  bool is_pi() const { return num_ == 1 && den_ == 1; }

  RationalPhase operator+(const RationalPhase& o) const;
  RationalPhase operator-() const;
  RationalPhase operator-(const RationalPhase& o) const { return *this + (-o); }

  bool operator==(const RationalPhase& o) const = default;

  // "0", "pi", "pi/4", "3pi/2"
  std::string str() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace zxs
