#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zxs/phase.hpp"
#include "zxs/tensor.hpp"

namespace zxs {

enum class NodeKind { input, output, green, red };
enum class Colour { green, red };

inline bool is_spider(NodeKind k) { return k == NodeKind::green || k == NodeKind::red; }
inline bool is_boundary(NodeKind k) { return !is_spider(k); }
inline Colour colour_of(NodeKind k) { return k == NodeKind::red ? Colour::red : Colour::green; }
inline NodeKind kind_of(Colour c) { return c == Colour::red ? NodeKind::red : NodeKind::green; }
inline Colour opposite(Colour c) { return c == Colour::red ? Colour::green : Colour::red; }

std::string to_string(NodeKind k);

struct Node {
  int id = 0;
  NodeKind kind = NodeKind::green;
  // position among the inputs (or outputs); unused for spiders
  int order = -1;
  RationalPhase phase;
};

using Edge = std::pair<int, int>;

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::vector<std::string>& violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Evaluation refused because the diagram has too many wires.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Maximum number of wires (open plus internal) a diagram may have to be evaluated.
inline constexpr int kMaxEvalQubits = 24;

// Undirected multigraph of spiders and boundaries with an explicit scalar.
class Diagram {
 public:
  int add_input();
  int add_output();
  int add_spider(Colour c, RationalPhase phase = {});
  int add_green(RationalPhase phase = {}) { return add_spider(Colour::green, phase); }
  int add_red(RationalPhase phase = {}) { return add_spider(Colour::red, phase); }
  // Inserts a node with a caller-chosen id. Throws if the id is taken.
  void add_node(const Node& n);

  void add_edge(int a, int b);
  // Adds edges between consecutive ids.
  void chain(std::initializer_list<int> ids);
  void remove_edge_at(std::size_t index);
  void remove_node(int id);

  bool has_node(int id) const { return nodes_.count(id) != 0; }
  const Node& node(int id) const;
  Node& node(int id);
  const std::map<int, Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::vector<int> inputs() const;
  std::vector<int> outputs() const;
  std::size_t num_inputs() const;
  std::size_t num_outputs() const;
  std::size_t num_spiders() const;

  int degree(int id) const;
  // Neighbour ids, one entry per incident edge.
  std::vector<int> neighbours(int id) const;
  std::vector<std::size_t> incident_edges(int id) const;
  std::size_t edge_multiplicity(int a, int b) const;

  cplx scalar() const { return scalar_; }
  void set_scalar(cplx s) { scalar_ = s; }
  void multiply_scalar(cplx s) { scalar_ *= s; }

  int next_id() const { return next_id_; }

  // Empty when the diagram is well formed.
  std::vector<std::string> violations() const;
  void validate() const;

  bool operator==(const Diagram& o) const;

 private:
  int fresh_id() { return next_id_++; }

  std::map<int, Node> nodes_;
  std::vector<Edge> edges_;
  cplx scalar_{1.0, 0.0};
  int next_id_ = 0;
};

// Tensor of a single spider, 2^n_out rows by 2^n_in columns. Degree one
// spiders carry a 1/sqrt(2) so that they are unit states or effects.
Matrix node_tensor(Colour c, RationalPhase phase, int n_in, int n_out);

// Linear map of the diagram, rows indexed by outputs and columns by inputs,
// first boundary most significant. Throws ValidationError or CapExceeded.
Matrix evaluate(const Diagram& d);

Diagram dagger(const Diagram& d);
// g after f: outputs of f are plugged into inputs of g.
Diagram compose_sequential(const Diagram& f, const Diagram& g);
// f on the more significant wires, g below it.
Diagram compose_parallel(const Diagram& f, const Diagram& g);

double two_norm_of(const Diagram& d);

// Small building blocks.
Diagram wire_diagram();
Diagram cnot_diagram();
// Product state from symbols 0 1 + - i j, drawn with unit degree-one spiders.
Diagram state_diagram(const std::string& symbols);

}  // namespace zxs
