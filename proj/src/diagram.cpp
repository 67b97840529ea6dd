#include "zxs/diagram.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

namespace zxs {

std::string to_string(NodeKind k) {
  switch (k) {
    case NodeKind::input: return "in";
    case NodeKind::output: return "out";
    case NodeKind::green: return "z";
    case NodeKind::red: return "x";
  }
  return "?";
}

namespace {

std::string join_lines(const std::vector<std::string>& v) {
  std::string s = "invalid diagram:";
  for (const auto& line : v) s += "\n  " + line;
  return s;
}

}  // namespace

ValidationError::ValidationError(const std::vector<std::string>& violations)
    : std::runtime_error(join_lines(violations)), violations_(violations) {}

int Diagram::add_input() {
  Node n{fresh_id(), NodeKind::input, static_cast<int>(num_inputs()), {}};
  nodes_.emplace(n.id, n);
  return n.id;
}

int Diagram::add_output() {
  Node n{fresh_id(), NodeKind::output, static_cast<int>(num_outputs()), {}};
  nodes_.emplace(n.id, n);
  return n.id;
}

int Diagram::add_spider(Colour c, RationalPhase phase) {
  Node n{fresh_id(), kind_of(c), -1, phase};
  nodes_.emplace(n.id, n);
  return n.id;
}

void Diagram::add_node(const Node& n) {
  if (n.id < 0) throw std::invalid_argument("node id must be non-negative");
  if (!nodes_.emplace(n.id, n).second) throw std::invalid_argument("duplicate node id " + std::to_string(n.id));
  next_id_ = std::max(next_id_, n.id + 1);
}

void Diagram::add_edge(int a, int b) {
  if (!has_node(a) || !has_node(b)) {
    throw std::invalid_argument("edge references unknown node (" + std::to_string(a) + ", " +
                                std::to_string(b) + ")");
  }
  edges_.emplace_back(a, b);
}

void Diagram::chain(std::initializer_list<int> ids) {
  const int* prev = nullptr;
  for (const int& id : ids) {
    if (prev) add_edge(*prev, id);
    prev = &id;
  }
}

void Diagram::remove_edge_at(std::size_t index) { edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(index)); }

void Diagram::remove_node(int id) {
  std::erase_if(edges_, [id](const Edge& e) { return e.first == id || e.second == id; });
  nodes_.erase(id);
}

const Node& Diagram::node(int id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw std::out_of_range("no node with id " + std::to_string(id));
  return it->second;
}

Node& Diagram::node(int id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw std::out_of_range("no node with id " + std::to_string(id));
  return it->second;
}

namespace {

std::vector<int> boundary_ids(const std::map<int, Node>& nodes, NodeKind kind) {
  std::vector<std::pair<int, int>> found;
  for (const auto& [id, n] : nodes)
    if (n.kind == kind) found.emplace_back(n.order, id);
  std::sort(found.begin(), found.end());
  std::vector<int> ids;
  ids.reserve(found.size());
  for (const auto& f : found) ids.push_back(f.second);
  return ids;
}

}  // namespace

std::vector<int> Diagram::inputs() const { return boundary_ids(nodes_, NodeKind::input); }
std::vector<int> Diagram::outputs() const { return boundary_ids(nodes_, NodeKind::output); }

std::size_t Diagram::num_inputs() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const auto& p) { return p.second.kind == NodeKind::input; }));
}

std::size_t Diagram::num_outputs() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const auto& p) { return p.second.kind == NodeKind::output; }));
}

std::size_t Diagram::num_spiders() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const auto& p) { return is_spider(p.second.kind); }));
}

int Diagram::degree(int id) const {
  int d = 0;
  for (const auto& e : edges_) {
    if (e.first == id) ++d;
    if (e.second == id) ++d;
  }
  return d;
}

std::vector<int> Diagram::neighbours(int id) const {
  std::vector<int> out;
  for (const auto& e : edges_) {
    if (e.first == id) out.push_back(e.second);
    if (e.second == id) out.push_back(e.first);
  }
  return out;
}

std::vector<std::size_t> Diagram::incident_edges(int id) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].first == id || edges_[i].second == id) out.push_back(i);
  return out;
}

std::size_t Diagram::edge_multiplicity(int a, int b) const {
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [a, b](const Edge& e) {
    return (e.first == a && e.second == b) || (e.first == b && e.second == a);
  }));
}

std::vector<std::string> Diagram::violations() const {
  std::vector<std::string> v;
  if (!std::isfinite(scalar_.real()) || !std::isfinite(scalar_.imag())) v.push_back("scalar is not finite");
  if (scalar_ == cplx{}) v.push_back("scalar is zero");
  for (const auto& e : edges_) {
    if (!has_node(e.first) || !has_node(e.second)) {
      v.push_back("edge (" + std::to_string(e.first) + ", " + std::to_string(e.second) + ") references a missing node");
    } else if (e.first == e.second) {
      v.push_back("self-loop on node " + std::to_string(e.first));
    }
  }
  for (const auto& [id, n] : nodes_) {
    int d = degree(id);
    if (is_boundary(n.kind) && d != 1) {
      v.push_back("boundary " + std::to_string(id) + " has degree " + std::to_string(d) + " (must be 1)");
    }
    if (is_spider(n.kind) && d < 1) v.push_back("spider " + std::to_string(id) + " has degree 0");
  }
  for (NodeKind kind : {NodeKind::input, NodeKind::output}) {
    auto ids = boundary_ids(nodes_, kind);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (node(ids[i]).order != static_cast<int>(i)) {
        v.push_back(to_string(kind) + " boundary orders are not 0.." + std::to_string(ids.size() - 1));
        break;
      }
    }
  }
  return v;
}

void Diagram::validate() const {
  auto v = violations();
  if (!v.empty()) throw ValidationError(v);
}

bool Diagram::operator==(const Diagram& o) const {
  if (scalar_ != o.scalar_ || edges_ != o.edges_ || nodes_.size() != o.nodes_.size()) return false;
  for (const auto& [id, n] : nodes_) {
    auto it = o.nodes_.find(id);
    if (it == o.nodes_.end()) return false;
    const Node& m = it->second;
    if (m.kind != n.kind || m.order != n.order || m.phase != n.phase) return false;
  }
  return true;
}

namespace {

// Entry of a degree-d spider for the leg assignment `bits` (all legs treated alike).
cplx spider_entry(Colour c, const RationalPhase& phase, int degree, std::size_t bits) {
  const cplx e = phase.unit();
  cplx v;
  if (c == Colour::green) {
    const std::size_t all = (std::size_t{1} << degree) - 1;
    if (bits == 0) v = 1.0;
    else if (bits == all) v = e;
    else v = 0.0;
  } else {
    int parity = std::popcount(bits) & 1;
    v = (1.0 + (parity ? -e : e)) * std::pow(std::sqrt(0.5), degree);
  }
  if (degree == 1) v *= std::sqrt(0.5);
  return v;
}

// Dense tensor with one binary index per label; labels[0] is the most significant bit.
struct Tensor {
  std::vector<int> labels;
  std::vector<cplx> data;
  int rank() const { return static_cast<int>(labels.size()); }
};

Tensor spider_tensor(Colour c, const RationalPhase& phase, std::vector<int> labels) {
  Tensor t;
  int d = static_cast<int>(labels.size());
  t.labels = std::move(labels);
  t.data.resize(std::size_t{1} << d);
  for (std::size_t b = 0; b < t.data.size(); ++b) t.data[b] = spider_entry(c, phase, d, b);
  return t;
}

// Reorders the indices of t to `order`, which must be a permutation of t.labels.
std::vector<cplx> permuted(const Tensor& t, const std::vector<int>& order) {
  const int r = t.rank();
  std::vector<int> src_shift(static_cast<std::size_t>(r));
  for (int p = 0; p < r; ++p) {
    auto it = std::find(t.labels.begin(), t.labels.end(), order[static_cast<std::size_t>(p)]);
    int src_pos = static_cast<int>(it - t.labels.begin());
    src_shift[static_cast<std::size_t>(p)] = r - 1 - src_pos;
  }
  std::vector<cplx> out(t.data.size());
  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (total > (1 << 14))
  for (std::ptrdiff_t n = 0; n < total; ++n) {
    std::size_t src = 0;
    for (int p = 0; p < r; ++p) {
      std::size_t bit = (static_cast<std::size_t>(n) >> (r - 1 - p)) & 1u;
      src |= bit << src_shift[static_cast<std::size_t>(p)];
    }
    out[static_cast<std::size_t>(n)] = t.data[src];
  }
  return out;
}

Tensor contract_pair(const Tensor& a, const Tensor& b) {
  std::vector<int> shared, free_a, free_b;
  for (int l : a.labels) {
    if (std::find(b.labels.begin(), b.labels.end(), l) != b.labels.end()) shared.push_back(l);
    else free_a.push_back(l);
  }
  for (int l : b.labels)
    if (std::find(shared.begin(), shared.end(), l) == shared.end()) free_b.push_back(l);

  std::vector<int> order_a = free_a;
  order_a.insert(order_a.end(), shared.begin(), shared.end());
  std::vector<int> order_b = shared;
  order_b.insert(order_b.end(), free_b.begin(), free_b.end());

  const std::size_t fa = std::size_t{1} << free_a.size();
  const std::size_t sh = std::size_t{1} << shared.size();
  const std::size_t fb = std::size_t{1} << free_b.size();
  Matrix ma(fa, sh, permuted(a, order_a));
  Matrix mb(sh, fb, permuted(b, order_b));
  Matrix prod = matmul(ma, mb);

  Tensor out;
  out.labels = free_a;
  out.labels.insert(out.labels.end(), free_b.begin(), free_b.end());
  out.data = std::move(prod.data());
  return out;
}

int shared_count(const Tensor& a, const Tensor& b) {
  int n = 0;
  for (int l : a.labels)
    if (std::find(b.labels.begin(), b.labels.end(), l) != b.labels.end()) ++n;
  return n;
}

}  // namespace

Matrix node_tensor(Colour c, RationalPhase phase, int n_in, int n_out) {
  if (n_in < 0 || n_out < 0 || n_in + n_out < 1) throw std::invalid_argument("node_tensor: spider needs degree >= 1");
  if (n_in + n_out > kMaxEvalQubits) throw CapExceeded("node_tensor: degree exceeds evaluation cap");
  const int d = n_in + n_out;
  Matrix m(std::size_t{1} << n_out, std::size_t{1} << n_in);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t col = 0; col < m.cols(); ++col) m(r, col) = spider_entry(c, phase, d, (r << n_in) | col);
  return m;
}

Matrix evaluate(const Diagram& d) {
  d.validate();
  const int wires = static_cast<int>(d.edges().size());
  if (wires > kMaxEvalQubits) {
    throw CapExceeded("diagram has " + std::to_string(wires) + " wires; evaluation is capped at " +
                      std::to_string(kMaxEvalQubits));
  }

  std::vector<Tensor> tensors;
  for (const auto& [id, n] : d.nodes()) {
    if (!is_spider(n.kind)) continue;
    std::vector<int> labels;
    for (std::size_t e : d.incident_edges(id)) labels.push_back(static_cast<int>(e));
    tensors.push_back(spider_tensor(colour_of(n.kind), n.phase, std::move(labels)));
  }

  // Open label of each boundary. A wire joining two boundaries gets an identity tensor.
  int next_label = wires;
  std::map<int, int> open_label;
  for (std::size_t e = 0; e < d.edges().size(); ++e) {
    auto [a, b] = d.edges()[e];
    bool ba = is_boundary(d.node(a).kind), bb = is_boundary(d.node(b).kind);
    if (ba && bb) {
      int fresh = next_label++;
      Tensor delta;
      delta.labels = {static_cast<int>(e), fresh};
      delta.data = {1.0, 0.0, 0.0, 1.0};
      tensors.push_back(std::move(delta));
      open_label[a] = static_cast<int>(e);
      open_label[b] = fresh;
    } else if (ba) {
      open_label[a] = static_cast<int>(e);
    } else if (bb) {
      open_label[b] = static_cast<int>(e);
    }
  }

  // Greedy pairwise contraction: always merge the connected pair with the smallest result.
  while (tensors.size() > 1) {
    std::size_t bi = 0, bj = 1;
    int best = -1;
    for (std::size_t i = 0; i < tensors.size(); ++i)
      for (std::size_t j = i + 1; j < tensors.size(); ++j) {
        int s = shared_count(tensors[i], tensors[j]);
        if (s == 0) continue;
        int r = tensors[i].rank() + tensors[j].rank() - 2 * s;
        if (best < 0 || r < best) {
          best = r;
          bi = i;
          bj = j;
        }
      }
    if (best < 0) {
      // Disconnected pieces: take the outer product of the two smallest.
      std::vector<std::size_t> idx(tensors.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return tensors[x].rank() < tensors[y].rank(); });
      bi = std::min(idx[0], idx[1]);
      bj = std::max(idx[0], idx[1]);
      best = tensors[bi].rank() + tensors[bj].rank();
    }
    if (best > kMaxEvalQubits) throw CapExceeded("intermediate tensor exceeds the evaluation cap");
    Tensor merged = contract_pair(tensors[bi], tensors[bj]);
    tensors.erase(tensors.begin() + static_cast<std::ptrdiff_t>(bj));
    tensors[bi] = std::move(merged);
  }

  Tensor result;
  if (tensors.empty()) result.data = {1.0};
  else result = std::move(tensors.front());

  std::vector<int> order;
  for (int id : d.outputs()) order.push_back(open_label.at(id));
  for (int id : d.inputs()) order.push_back(open_label.at(id));
  Matrix m(std::size_t{1} << d.num_outputs(), std::size_t{1} << d.num_inputs(), permuted(result, order));
  m *= d.scalar();
  return m;
}

Diagram dagger(const Diagram& d) {
  Diagram out;
  for (const auto& [id, n] : d.nodes()) {
    Node m = n;
    if (n.kind == NodeKind::input) m.kind = NodeKind::output;
    else if (n.kind == NodeKind::output) m.kind = NodeKind::input;
    else m.phase = -n.phase;
    out.add_node(m);
  }
  for (const auto& e : d.edges()) out.add_edge(e.first, e.second);
  out.set_scalar(std::conj(d.scalar()));
  return out;
}

namespace {

// Removes a degree-2 boundary node left over from plugging, joining its two neighbours.
void splice(Diagram& d, int id) {
  auto inc = d.incident_edges(id);
  if (inc.size() == 1 && d.edges()[inc[0]].first == d.edges()[inc[0]].second) {
    // a closed loop of bare wire
    d.remove_node(id);
    d.multiply_scalar(2.0);
    return;
  }
  if (inc.size() != 2) throw std::logic_error("splice: node is not a pass-through");
  auto other = [&](std::size_t e) {
    const Edge& ed = d.edges()[e];
    return ed.first == id ? ed.second : ed.first;
  };
  int a = other(inc[0]), b = other(inc[1]);
  d.remove_node(id);
  if (a != b) {
    d.add_edge(a, b);
    return;
  }
  Node& n = d.node(a);
  if (!is_spider(n.kind)) {
    // boundary-to-boundary loop through a node still awaiting its own splice
    d.add_edge(a, a);
    return;
  }
  // Self-loop on a spider: trace out the two legs.
  int k = d.degree(a);
  if (k == 1) {
    d.multiply_scalar(std::sqrt(2.0));
  } else if (k == 0) {
    cplx v = 1.0 + n.phase.unit();
    if (std::abs(v) < 1e-300) throw std::domain_error("composition produces a zero diagram");
    d.remove_node(a);
    d.multiply_scalar(v);
  }
}

void shifted_copy_into(Diagram& target, const Diagram& src, int offset, int in_shift, int out_shift) {
  for (const auto& [id, n] : src.nodes()) {
    Node m = n;
    m.id = id + offset;
    if (n.kind == NodeKind::input) m.order += in_shift;
    if (n.kind == NodeKind::output) m.order += out_shift;
    target.add_node(m);
  }
  for (const auto& e : src.edges()) target.add_edge(e.first + offset, e.second + offset);
  target.multiply_scalar(src.scalar());
}

}  // namespace

Diagram compose_sequential(const Diagram& f, const Diagram& g) {
  if (f.num_outputs() != g.num_inputs()) {
    throw std::invalid_argument("compose_sequential: f has " + std::to_string(f.num_outputs()) +
                                " outputs but g has " + std::to_string(g.num_inputs()) + " inputs");
  }
  Diagram out;
  shifted_copy_into(out, f, 0, 0, 0);
  const int offset = f.next_id();
  shifted_copy_into(out, g, offset, 0, 0);
  auto fo = f.outputs();
  auto gi = g.inputs();
  std::vector<int> to_splice;
  for (std::size_t i = 0; i < fo.size(); ++i) {
    out.add_edge(fo[i], gi[i] + offset);
    to_splice.push_back(fo[i]);
    to_splice.push_back(gi[i] + offset);
  }
  for (int id : to_splice) splice(out, id);
  return out;
}

Diagram compose_parallel(const Diagram& f, const Diagram& g) {
  Diagram out;
  shifted_copy_into(out, f, 0, 0, 0);
  shifted_copy_into(out, g, f.next_id(), static_cast<int>(f.num_inputs()), static_cast<int>(f.num_outputs()));
  return out;
}

double two_norm_of(const Diagram& d) { return two_norm(evaluate(d)); }

Diagram wire_diagram() {
  Diagram d;
  int i = d.add_input();
  int o = d.add_output();
  d.add_edge(i, o);
  return d;
}

Diagram cnot_diagram() {
  Diagram d;
  int ic = d.add_input();
  int it = d.add_input();
  int oc = d.add_output();
  int ot = d.add_output();
  int g = d.add_green();
  int r = d.add_red();
  d.chain({ic, g, oc});
  d.chain({it, r, ot});
  d.add_edge(g, r);
  return d;
}

Diagram state_diagram(const std::string& symbols) {
  Diagram d;
  for (char c : symbols) {
    int s = 0;
    switch (c) {
      case '0': s = d.add_red(); break;
      case '1': s = d.add_red(RationalPhase::pi()); break;
      case '+': s = d.add_green(); break;
      case '-': s = d.add_green(RationalPhase::pi()); break;
      case 'i': s = d.add_green({1, 2}); break;
      case 'j': s = d.add_green({3, 2}); break;
      default: throw std::invalid_argument(std::string("unknown state symbol '") + c + "'");
    }
    int o = d.add_output();
    d.add_edge(s, o);
  }
  return d;
}

}  // namespace zxs
