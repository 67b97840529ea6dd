#include "zxs/rewrite.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace zxs {

namespace {

const double kInvSqrt2 = std::sqrt(0.5);

double leg_norm(int degree) { return degree == 1 ? kInvSqrt2 : 1.0; }

bool is_spider_node(const Diagram& d, int id) { return d.has_node(id) && is_spider(d.node(id).kind); }

int other_end(const Edge& e, int id) { return e.first == id ? e.second : e.first; }

}  // namespace

bool can_fuse(const Diagram& d, int a, int b) {
  if (a == b || !is_spider_node(d, a) || !is_spider_node(d, b)) return false;
  if (d.node(a).kind != d.node(b).kind) return false;
  std::size_t m = d.edge_multiplicity(a, b);
  if (m == 0) return false;
  int k = d.degree(a) + d.degree(b) - 2 * static_cast<int>(m);
  if (k == 0) {
    // The pair closes into a number; refuse when that number is zero.
    RationalPhase total = d.node(a).phase + d.node(b).phase;
    return std::abs(1.0 + total.unit()) > 1e-12;
  }
  return true;
}

RewriteStep fuse_spiders(Diagram& d, int a, int b) {
  if (!can_fuse(d, a, b)) {
    throw RewriteError("fuse_spiders: nodes " + std::to_string(a) + " and " + std::to_string(b) +
                       " are not adjacent spiders of one colour");
  }
  const int da = d.degree(a), db = d.degree(b);
  const RationalPhase total = d.node(a).phase + d.node(b).phase;

  std::vector<int> moved;
  for (std::size_t e : d.incident_edges(b)) {
    int o = other_end(d.edges()[e], b);
    if (o != a) moved.push_back(o);
  }
  d.remove_node(b);
  // remaining a-b edges went away with b
  for (int o : moved) d.add_edge(a, o);
  d.node(a).phase = total;

  const int k = d.degree(a);
  cplx delta = leg_norm(da) * leg_norm(db);
  if (k == 0) {
    delta *= 1.0 + total.unit();
    d.remove_node(a);
  } else {
    delta /= leg_norm(k);
  }
  d.multiply_scalar(delta);
  return {"fuse", {a, b}, delta};
}

bool can_remove_identity(const Diagram& d, int n) {
  if (!is_spider_node(d, n)) return false;
  const Node& node = d.node(n);
  if (!node.phase.is_zero() || d.degree(n) != 2) return false;
  auto nb = d.neighbours(n);
  return nb[0] != nb[1];
}

RewriteStep remove_identity(Diagram& d, int n) {
  if (!can_remove_identity(d, n)) {
    throw RewriteError("remove_identity: node " + std::to_string(n) + " is not a removable identity spider");
  }
  auto nb = d.neighbours(n);
  d.remove_node(n);
  d.add_edge(nb[0], nb[1]);
  return {"identity", {n}, 1.0};
}

bool can_copy_pi(const Diagram& d, int pi_node, int spider) {
  if (!is_spider_node(d, pi_node) || !is_spider_node(d, spider) || pi_node == spider) return false;
  const Node& p = d.node(pi_node);
  const Node& s = d.node(spider);
  if (!p.phase.is_pi() || d.degree(pi_node) != 2) return false;
  if (s.kind == p.kind) return false;
  return d.edge_multiplicity(pi_node, spider) == 1;
}

RewriteStep copy_pi_through(Diagram& d, int pi_node, int spider) {
  if (!is_spider_node(d, pi_node) || !d.node(pi_node).phase.is_pi()) {
    throw RewriteError("copy_pi_through: node " + std::to_string(pi_node) + " does not carry phase pi");
  }
  if (!can_copy_pi(d, pi_node, spider)) {
    throw RewriteError("copy_pi_through: preconditions unmet for pi node " + std::to_string(pi_node) +
                       " and spider " + std::to_string(spider));
  }
  const Colour pi_colour = colour_of(d.node(pi_node).kind);
  int far = -1;
  for (int o : d.neighbours(pi_node))
    if (o != spider) far = o;

  std::vector<int> others;
  for (std::size_t e : d.incident_edges(spider)) {
    int o = other_end(d.edges()[e], spider);
    if (o != pi_node) others.push_back(o);
  }
  d.remove_node(pi_node);
  // Detach the spider and rewire it with a pi copy on every remaining leg.
  std::vector<std::size_t> inc = d.incident_edges(spider);
  for (auto it = inc.rbegin(); it != inc.rend(); ++it) d.remove_edge_at(*it);
  d.add_edge(far, spider);
  for (int o : others) {
    int q = d.add_spider(pi_colour, RationalPhase::pi());
    d.add_edge(spider, q);
    d.add_edge(q, o);
  }
  Node& s = d.node(spider);
  const cplx delta = s.phase.unit();
  s.phase = -s.phase;
  d.multiply_scalar(delta);
  return {"pi_copy", {pi_node, spider}, delta};
}

std::vector<RewriteStep> normalize(Diagram& d) {
  std::vector<RewriteStep> steps;
  for (;;) {
    bool fired = false;
    for (const auto& [id, n] : d.nodes()) {
      if (!is_spider(n.kind)) continue;
      auto nb = d.neighbours(id);
      std::sort(nb.begin(), nb.end());
      for (int o : nb) {
        if (o > id && can_fuse(d, id, o)) {
          steps.push_back(fuse_spiders(d, id, o));
          fired = true;
          break;
        }
      }
      if (fired) break;
    }
    if (fired) continue;

    for (const auto& [id, n] : d.nodes()) {
      if (can_remove_identity(d, id)) {
        steps.push_back(remove_identity(d, id));
        fired = true;
        break;
      }
    }
    if (fired) continue;

    for (const auto& [id, n] : d.nodes()) {
      if (!is_spider(n.kind) || !n.phase.is_pi() || d.degree(id) != 2) continue;
      auto nb = d.neighbours(id);
      std::sort(nb.begin(), nb.end());
      for (int o : nb) {
        if (is_spider_node(d, o) && d.degree(o) == 1 && can_copy_pi(d, id, o)) {
          steps.push_back(copy_pi_through(d, id, o));
          fired = true;
          break;
        }
      }
      if (fired) break;
    }
    if (!fired) break;
  }
  return steps;
}

std::vector<RewriteSite> applicable_rewrites(const Diagram& d) {
  std::vector<RewriteSite> sites;
  for (const auto& [id, n] : d.nodes()) {
    if (!is_spider(n.kind)) continue;
    std::set<int> nb;
    for (int o : d.neighbours(id)) nb.insert(o);
    for (int o : nb) {
      if (o > id && can_fuse(d, id, o)) sites.push_back({"fuse", id, o});
    }
    if (can_remove_identity(d, id)) sites.push_back({"identity", id, -1});
    for (int o : nb) {
      if (can_copy_pi(d, id, o)) sites.push_back({"pi_copy", id, o});
    }
  }
  return sites;
}

RewriteStep apply_rewrite(Diagram& d, const RewriteSite& site) {
  if (site.rule == "fuse") return fuse_spiders(d, site.a, site.b);
  if (site.rule == "identity") return remove_identity(d, site.a);
  if (site.rule == "pi_copy") return copy_pi_through(d, site.a, site.b);
  throw RewriteError("unknown rule '" + site.rule + "'");
}

SemanticsResult semantics_equal(const Diagram& a, const Diagram& b, EqMode mode, double tol) {
  SemanticsResult r;
  if (a.num_inputs() != b.num_inputs() || a.num_outputs() != b.num_outputs()) {
    r.reason = "boundary signature mismatch: " + std::to_string(a.num_inputs()) + "->" +
               std::to_string(a.num_outputs()) + " vs " + std::to_string(b.num_inputs()) + "->" +
               std::to_string(b.num_outputs());
    return r;
  }
  Matrix ma = evaluate(a), mb = evaluate(b);
  r.error = max_abs_diff(ma, mb);
  if (mode == EqMode::sign) {
    r.error = std::min(r.error, max_abs_diff(-1.0 * ma, mb));
  } else if (mode == EqMode::phase) {
    cplx lambda = proportionality_factor(ma, mb);
    if (std::abs(lambda) > 0) r.error = std::min(r.error, max_abs_diff((lambda / std::abs(lambda)) * ma, mb));
  }
  r.equal = equal_mode(ma, mb, mode, tol);
  if (!r.equal) r.reason = "tensors differ (max deviation " + std::to_string(r.error) + ")";
  return r;
}

Diagram random_diagram(std::uint64_t seed, const RandomLimits& limits) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  static const RationalPhase kPhases[] = {{0, 1}, {1, 4}, {1, 2}, {1, 1}, {3, 2}};

  Diagram d;
  const int n_spiders = uniform(1, limits.max_spiders);
  int n_in = uniform(0, limits.max_inputs);
  int n_out = uniform(0, limits.max_outputs);
  while (n_in + n_out > limits.max_boundaries) (n_in > n_out ? n_in : n_out)--;

  std::vector<int> ins, outs, spiders, target;
  for (int i = 0; i < n_in; ++i) ins.push_back(d.add_input());
  for (int i = 0; i < n_out; ++i) outs.push_back(d.add_output());
  for (int i = 0; i < n_spiders; ++i) {
    Colour c = uniform(0, 1) ? Colour::red : Colour::green;
    spiders.push_back(d.add_spider(c, kPhases[uniform(0, 4)]));
    target.push_back(uniform(1, limits.max_degree));
  }

  auto pick_open = [&](int exclude) {
    std::vector<int> open;
    for (int s : spiders)
      if (s != exclude && d.degree(s) < limits.max_degree) open.push_back(s);
    if (open.empty()) return -1;
    return open[static_cast<std::size_t>(uniform(0, static_cast<int>(open.size()) - 1))];
  };

  // spanning tree first, then boundaries, then extra edges up to each target degree
  for (std::size_t i = 1; i < spiders.size(); ++i) {
    std::vector<int> earlier;
    for (std::size_t j = 0; j < i; ++j)
      if (d.degree(spiders[j]) < limits.max_degree) earlier.push_back(spiders[j]);
    if (earlier.empty()) continue;
    d.add_edge(earlier[static_cast<std::size_t>(uniform(0, static_cast<int>(earlier.size()) - 1))], spiders[i]);
  }
  for (int b : ins) {
    int s = pick_open(-1);
    d.add_edge(b, s < 0 ? spiders.front() : s);
  }
  for (int b : outs) {
    int s = pick_open(-1);
    d.add_edge(s < 0 ? spiders.back() : s, b);
  }
  for (std::size_t i = 0; i < spiders.size(); ++i) {
    for (int attempt = 0; attempt < 4 && d.degree(spiders[i]) < target[i]; ++attempt) {
      int o = pick_open(spiders[i]);
      if (o < 0) break;
      d.add_edge(spiders[i], o);
    }
  }
  // a lone spider without boundaries still needs a leg
  for (int s : spiders) {
    if (d.degree(s) == 0) d.add_edge(s, d.add_output());
  }
  return d;
}

}  // namespace zxs
