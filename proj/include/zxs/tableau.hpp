#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace zxs {

// Hermitian Pauli product. A qubit with both x and z set carries Y.
struct PauliString {
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> z;
  bool negative = false;

  explicit PauliString(std::size_t n = 0) : x(n, 0), z(n, 0) {}

  std::size_t size() const { return x.size(); }
  void resize(std::size_t n);
  // Multiplies in a single-qubit Pauli 'X', 'Y' or 'Z', ignoring phase.
  void set(std::size_t q, char p);
  bool commutes_with(const PauliString& o) const;
  std::string str() const;
};

// Aaronson-Gottesman tableau with destabilizers, extended to measure
// arbitrary Pauli products.
class StabilizerTableau {
 public:
  StabilizerTableau() = default;

  std::size_t num_qubits() const { return n_; }

  // New qubit in |0> or |+>; returns its index.
  std::size_t add_qubit(bool plus = false);

  void apply_pauli(const PauliString& p);

  struct Measurement {
    int outcome = 0;  // 0 for the +1 eigenvalue
    bool deterministic = false;
  };

  // Projective measurement of p. A random outcome is taken from `forced`
  // when it is 0 or 1, otherwise drawn from rng.
  Measurement measure(const PauliString& p, std::mt19937_64& rng, int forced = -1);

  // +1 or -1 when the state is an eigenstate of p, 0 when the outcome is random.
  int expectation(const PauliString& p) const;

 private:
  struct Row {
    std::vector<std::uint8_t> x, z;
    int r = 0;  // sign bit
  };

  static bool anticommutes(const Row& row, const PauliString& p);
  static void rowsum(Row& h, const Row& i);
  Row deterministic_product(const PauliString& p) const;

  std::size_t n_ = 0;
  std::vector<Row> destab_;
  std::vector<Row> stab_;
};

}  // namespace zxs
