#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "zxs/diagram.hpp"

namespace zxs {

class RewriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One rule application. The diagram scalar is multiplied by scalar_delta so
// that evaluate() is unchanged.
struct RewriteStep {
  std::string rule;  // "fuse", "identity", "pi_copy"
  std::vector<int> site;
  cplx scalar_delta{1.0, 0.0};
};

// Merges adjacent same-coloured spiders a and b into a (phases add, every
// connecting edge is consumed). If nothing is left attached the spider
// disappears into the scalar.
RewriteStep fuse_spiders(Diagram& d, int a, int b);
bool can_fuse(const Diagram& d, int a, int b);

// Removes a phase-0 degree-2 spider whose two neighbours are distinct.
RewriteStep remove_identity(Diagram& d, int n);
bool can_remove_identity(const Diagram& d, int n);

// Pushes a degree-2 pi spider through an adjacent spider of the other colour:
// the pi node is removed and a copy appears on every other leg of `spider`,
// whose phase is negated. scalar_delta is e^{i beta} for the old phase beta.
RewriteStep copy_pi_through(Diagram& d, int pi_node, int spider);
bool can_copy_pi(const Diagram& d, int pi_node, int spider);

// Fusion (lowest ids first), identity removal and absorption of pi nodes into
// degree-one spiders, repeated until nothing fires. Every step removes a node.
std::vector<RewriteStep> normalize(Diagram& d);

struct RewriteSite {
  std::string rule;
  int a = -1;
  int b = -1;
};

// Every single rule application available in d.
std::vector<RewriteSite> applicable_rewrites(const Diagram& d);
RewriteStep apply_rewrite(Diagram& d, const RewriteSite& site);

struct SemanticsResult {
  bool equal = false;
  double error = 0.0;
  std::string reason;
};

SemanticsResult semantics_equal(const Diagram& a, const Diagram& b, EqMode mode = EqMode::exact,
                                double tol = kDefaultTol);

struct RandomLimits {
  int max_inputs = 2;
  int max_outputs = 2;
  int max_boundaries = 4;
  int max_spiders = 6;
  int max_degree = 4;
};

// Phases drawn from {0, pi/4, pi/2, pi, 3pi/2}. Deterministic per seed.
Diagram random_diagram(std::uint64_t seed, const RandomLimits& limits = {});

}  // namespace zxs
