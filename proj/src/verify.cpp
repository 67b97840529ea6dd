#include "zxs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "zxs/dense.hpp"
#include "zxs/diagram.hpp"
#include "zxs/diagram_io.hpp"
#include "zxs/experiment.hpp"
#include "zxs/lattice.hpp"
#include "zxs/rewrite.hpp"
#include "zxs/surgery.hpp"

namespace zxs {

std::size_t VerifyReport::passed() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const VerifyCase& c) { return c.pass; }));
}

std::size_t VerifyReport::failed() const { return cases.size() - passed(); }

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const RationalPhase kPi = RationalPhase::pi();

// Distance between b and the closest lambda*a allowed by the mode.
double residual(const Matrix& a, const Matrix& b, EqMode mode) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  cplx lambda = 1.0;
  if (mode != EqMode::exact) {
    lambda = proportionality_factor(a, b);
    if (mode == EqMode::sign) lambda = lambda.real() < 0 ? -1.0 : 1.0;
    if (mode == EqMode::phase && std::abs(lambda) > 0) lambda /= std::abs(lambda);
  }
  return max_abs_diff(lambda * a, b);
}

Matrix unit_direction(const Matrix& a) {
  const double n = two_norm(a);
  return n > 0 ? cplx(1.0 / n, 0.0) * a : a;
}

VerifyCase tensor_case(std::string id, std::string anchor, const Matrix& got, const Matrix& want, EqMode mode,
                       double tol) {
  VerifyCase c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.mode = to_string(mode);
  c.error = residual(got, want, mode);
  c.pass = equal_mode(got, want, mode, tol);
  return c;
}

// For diagrams drawn without their scalar: compares directions only.
VerifyCase display_case(std::string id, std::string anchor, const Diagram& lhs, const Diagram& rhs, EqMode mode,
                        double tol) {
  VerifyCase c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.mode = to_string(mode);
  try {
    const Matrix a = evaluate(lhs), b = evaluate(rhs);
    c.error = residual(unit_direction(a), unit_direction(b), mode);
    c.pass = proportional(a, b, mode, tol);
  } catch (const std::exception& e) {
    c.error = INFINITY;
    c.detail = e.what();
  }
  return c;
}

VerifyCase display_case_m(std::string id, std::string anchor, const Matrix& a, const Matrix& b, EqMode mode,
                          double tol) {
  VerifyCase c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.mode = to_string(mode);
  c.error = residual(unit_direction(a), unit_direction(b), mode);
  c.pass = proportional(a, b, mode, tol);
  return c;
}

VerifyCase flag_case(std::string id, std::string anchor, std::string mode, bool pass, double error = 0.0,
                     std::string detail = {}) {
  VerifyCase c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.mode = std::move(mode);
  c.pass = pass;
  c.error = error;
  c.detail = std::move(detail);
  return c;
}

std::string bits_str(const std::vector<int>& bits) {
  std::string s;
  for (int b : bits) s += static_cast<char>('0' + b);
  return s.empty() ? "-" : s;
}

// Builds a path of fresh spiders between two existing nodes. Tokens:
// z = green pi, x = red pi, g = green 0, r = red 0, G / R = a phase-0
// spider of that colour with a phase-0 leaf of the same colour hanging off it.
void path(Diagram& d, int from, const std::string& tokens, int to) {
  int prev = from;
  for (char t : tokens) {
    int n = 0;
    switch (t) {
      case 'z': n = d.add_green(kPi); break;
      case 'x': n = d.add_red(kPi); break;
      case 'g': n = d.add_green(); break;
      case 'r': n = d.add_red(); break;
      case 'G':
        n = d.add_green();
        d.add_edge(n, d.add_green());
        break;
      case 'R':
        n = d.add_red();
        d.add_edge(n, d.add_red());
        break;
      default: throw std::logic_error(std::string("bad sketch token ") + t);
    }
    d.add_edge(prev, n);
    prev = n;
  }
  d.add_edge(prev, to);
}

// CNOT-shaped display: the control wire passes a green spider, the target
// wire a red one, and a link joins them. Token strings are read in time order
// along each wire (and from green to red along the link).
struct Shape {
  std::string pre_c, post_c, pre_t, post_t, link;
};

Diagram cnot_shape(const Shape& s) {
  Diagram d;
  const int ic = d.add_input(), it = d.add_input();
  const int oc = d.add_output(), ot = d.add_output();
  const int g = d.add_green(), r = d.add_red();
  path(d, ic, s.pre_c, g);
  path(d, g, s.post_c, oc);
  path(d, it, s.pre_t, r);
  path(d, r, s.post_t, ot);
  path(d, g, s.link, r);
  return d;
}

struct Spot {
  Colour colour;
  RationalPhase phase;
};

// Single wire through the listed spiders, in time order.
Diagram line(const std::vector<Spot>& spots) {
  Diagram d;
  int prev = d.add_input();
  const int out = d.add_output();
  for (const auto& s : spots) {
    int n = d.add_spider(s.colour, s.phase);
    d.add_edge(prev, n);
    prev = n;
  }
  d.add_edge(prev, out);
  return d;
}

// A state of phase alpha merged into the data wire by a green spider; pi nodes
// optionally on the state leg, the data input and the output.
Diagram phase_merge_display(RationalPhase alpha, bool pi_on_state, bool pi_on_input, bool pi_on_output) {
  Diagram d;
  const int in = d.add_input(), out = d.add_output();
  const int merge = d.add_green();
  const int prep = d.add_green(alpha);
  path(d, prep, pi_on_state ? "x" : "", merge);
  path(d, in, pi_on_input ? "x" : "", merge);
  path(d, merge, pi_on_output ? "x" : "", out);
  return d;
}

Procedure with_conventions(Procedure p, const std::vector<Convention>& convs) {
  std::size_t k = 0;
  for (auto& op : p.ops) {
    if (op.type == OpType::merge_rough || op.type == OpType::merge_smooth) {
      if (k >= convs.size()) throw std::logic_error("with_conventions: too few conventions");
      op.conv = convs[k++];
    }
  }
  return p;
}

std::size_t merge_count(const Procedure& p) {
  return static_cast<std::size_t>(std::count_if(p.ops.begin(), p.ops.end(), [](const SurgeryOp& op) {
    return op.type == OpType::merge_rough || op.type == OpType::merge_smooth;
  }));
}

std::vector<std::vector<Convention>> all_conventions(std::size_t merges) {
  std::vector<std::vector<Convention>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << merges); ++mask) {
    std::vector<Convention> c;
    for (std::size_t i = 0; i < merges; ++i)
      c.push_back(((mask >> (merges - 1 - i)) & 1u) ? Convention::correct_second : Convention::correct_first);
    out.push_back(c);
  }
  return out;
}

std::vector<std::string> conv_names(const std::vector<Convention>& c) {
  std::vector<std::string> out;
  for (auto x : c) out.push_back(to_string(x));
  return out;
}

std::string conv_tag(const std::vector<Convention>& c) {
  std::string s;
  for (auto x : c) s += x == Convention::correct_first ? 'f' : 's';
  return s.empty() ? "-" : s;
}

Matrix letters(const std::string& s) {
  Matrix m = gates::I();
  for (char c : s) {
    switch (c) {
      case 'I': break;
      case 'X': m = matmul(m, gates::X()); break;
      case 'Y': m = matmul(m, gates::Y()); break;
      case 'Z': m = matmul(m, gates::Z()); break;
      default: throw std::logic_error(std::string("bad Pauli letter ") + c);
    }
  }
  return m;
}

std::vector<std::string> pauli_eigen_products() {
  std::vector<std::string> out;
  for (char a : std::string("01+-ij"))
    for (char b : std::string("01+-ij")) out.push_back(std::string{a, b});
  return out;
}

Matrix magic(double alpha) {
  return Matrix::column({kInvSqrt2, std::polar(kInvSqrt2, alpha)});
}

}  // namespace

// ---------------------------------------------------------------- expectations

std::vector<CnotExpectation> cnot_expectations() {
  std::vector<CnotExpectation> out;
  auto add = [&](const std::string& v, std::vector<std::string> conv, std::vector<int> bits, std::string c,
                 std::string t, EqMode mode, double scale) {
    out.push_back({v, std::move(conv), std::move(bits), std::move(c), std::move(t), mode, scale});
  };
  const EqMode E = EqMode::exact, S = EqMode::sign;
  const double h = kInvSqrt2, q = 0.5;
  for (std::string cv : {"first", "second"}) {
    const bool f = cv == "first";
    add("cnot-standard", {cv}, {0}, "I", "I", E, h);
    add("cnot-standard", {cv}, {1}, "Z", f ? "I" : "Z", E, h);
    add("cnot-roughsplit", {cv}, {0}, "I", "I", E, h);
    add("cnot-roughsplit", {cv}, {1}, f ? "X" : "I", "X", E, h);
    for (std::string v : {"cnot-splitsplit-roughcap", "cnot-splitsplit-smoothcap"}) {
      const bool rough = v == "cnot-splitsplit-roughcap";
      add(v, {cv}, {0, 0}, "I", "I", E, q);
      add(v, {cv}, {1, 0}, rough ? "Z" : "I", rough ? "I" : "X", E, q);
      add(v, {cv}, {0, 1}, rough ? "I" : "Z", rough ? "X" : "I", E, q);
      add(v, {cv}, {1, 1}, "Z", "X", S, q);
    }
  }
  for (std::string cs : {"first", "second"}) {
    for (std::string cr : {"first", "second"}) {
      const bool sf = cs == "first", rf = cr == "first";
      add("cnot-bellpair", {cs, cr}, {0, 0}, "I", "I", E, q);
      add("cnot-bellpair", {cs, cr}, {1, 0}, sf ? "X" : "I", "X", E, q);
      add("cnot-bellpair", {cs, cr}, {0, 1}, "Z", rf ? "I" : "Z", E, q);
      if (sf && rf) add("cnot-bellpair", {cs, cr}, {1, 1}, "ZX", "X", E, q);
      if (!sf && rf) add("cnot-bellpair", {cs, cr}, {1, 1}, "Z", "X", S, q);
      if (sf && !rf) add("cnot-bellpair", {cs, cr}, {1, 1}, "XZ", "ZX", S, q);
      if (!sf && !rf) add("cnot-bellpair", {cs, cr}, {1, 1}, "Z", "ZX", S, q);
    }
  }
  return out;
}

Matrix dressed_cnot(const CnotExpectation& e) {
  return cplx(e.scale, 0.0) * matmul(kron(letters(e.control), letters(e.target)), gates::CNOT());
}

// ---------------------------------------------------------------- zx-rules

VerifyReport verify_zx_rules(std::uint64_t seed, double tol) {
  VerifyReport rep;
  rep.suite = "zx-rules";
  const std::vector<RationalPhase> phases = {{0, 1}, {1, 4}, {1, 2}, {1, 1}, {3, 2}};

  // dagger: mirror image with negated phases is the adjoint
  for (Colour c : {Colour::green, Colour::red}) {
    for (auto ph : phases) {
      for (auto [ni, no] : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}}) {
        Diagram d;
        const int s = d.add_spider(c, ph);
        for (int i = 0; i < ni; ++i) d.add_edge(d.add_input(), s);
        for (int i = 0; i < no; ++i) d.add_edge(s, d.add_output());
        std::ostringstream id;
        id << "dagger/" << (c == Colour::green ? "green" : "red") << "/" << ph.str() << "/" << ni << "to" << no;
        rep.cases.push_back(tensor_case(id.str(), "dagger reflects a spider and negates its phase",
                                        evaluate(dagger(d)), adjoint(evaluate(d)), EqMode::exact, tol));
      }
    }
  }
  {
    Diagram prep;
    prep.add_edge(prep.add_green({1, 4}), prep.add_output());
    Diagram eff;
    eff.add_edge(eff.add_input(), eff.add_green({-1, 4}));
    rep.cases.push_back(flag_case("dagger/state-to-effect", "dagger of a phase state is the effect with opposite phase",
                                  "structure", semantics_equal(dagger(prep), eff).equal));
  }

  // Frobenius-type shapes, drawn without scalars
  for (Colour c : {Colour::green, Colour::red}) {
    const std::string cn = c == Colour::green ? "green" : "red";
    Diagram unit;
    {
      const int in = unit.add_input(), out = unit.add_output();
      const int s = unit.add_spider(c);
      unit.chain({in, s, out});
      unit.add_edge(s, unit.add_spider(c));
    }
    Diagram special;
    {
      const int in = special.add_input(), out = special.add_output();
      const int a = special.add_spider(c), b = special.add_spider(c);
      special.chain({in, a, b, out});
      special.add_edge(a, b);
    }
    Diagram plain_spider = line({{c, {}}});
    rep.cases.push_back(display_case("frobenius/" + cn + "/unit", "a unit leaf on a spider leaves a plain spider",
                                     unit, plain_spider, EqMode::exact, tol));
    rep.cases.push_back(display_case("frobenius/" + cn + "/special",
                                     "two spiders joined by a double edge reduce to one", special, plain_spider,
                                     EqMode::exact, tol));
    Diagram unit_n = unit, special_n = special;
    normalize(unit_n);
    normalize(special_n);
    rep.cases.push_back(tensor_case("frobenius/" + cn + "/unit-normalize", "fusion accounts for the unit law exactly",
                                    evaluate(unit_n), evaluate(unit), EqMode::exact, tol));
    rep.cases.push_back(tensor_case("frobenius/" + cn + "/special-normalize",
                                    "fusion accounts for specialness exactly", evaluate(special_n), evaluate(special),
                                    EqMode::exact, tol));

    // (1 (x) mu)(delta (x) 1) = delta mu = (mu (x) 1)(1 (x) delta)
    auto frob = [&](int variant) {
      Diagram d;
      const int i0 = d.add_input(), i1 = d.add_input();
      const int o0 = d.add_output(), o1 = d.add_output();
      const int a = d.add_spider(c), b = d.add_spider(c);
      if (variant == 0) {
        d.chain({i0, a, o0});
        d.chain({a, b, o1});
        d.add_edge(i1, b);
      } else if (variant == 1) {
        d.add_edge(i0, a);
        d.add_edge(i1, a);
        d.add_edge(a, b);
        d.add_edge(b, o0);
        d.add_edge(b, o1);
      } else {
        d.chain({i1, a, o1});
        d.chain({a, b, o0});
        d.add_edge(i0, b);
      }
      return d;
    };
    rep.cases.push_back(tensor_case("frobenius/" + cn + "/left-middle", "Frobenius law, left form equals merge-then-copy",
                                    evaluate(frob(0)), evaluate(frob(1)), EqMode::exact, tol));
    rep.cases.push_back(tensor_case("frobenius/" + cn + "/right-middle",
                                    "Frobenius law, right form equals merge-then-copy", evaluate(frob(2)),
                                    evaluate(frob(1)), EqMode::exact, tol));

    Diagram crossed;
    {
      const int i0 = crossed.add_input(), i1 = crossed.add_input(), o = crossed.add_output();
      const int s = crossed.add_spider(c, {1, 4});
      crossed.add_edge(s, o);
      crossed.add_edge(i1, s);
      crossed.add_edge(i0, s);
    }
    rep.cases.push_back(tensor_case("frobenius/" + cn + "/commutative", "spider legs may be permuted freely",
                                    evaluate(crossed), matmul(evaluate(crossed), gates::SWAP()), EqMode::exact, tol));
  }

  // spider fusion
  for (Colour c : {Colour::green, Colour::red}) {
    for (auto a : phases) {
      for (auto b : phases) {
        Diagram d;
        const int i0 = d.add_input(), i1 = d.add_input(), o0 = d.add_output(), o1 = d.add_output();
        const int s = d.add_spider(c, a), t = d.add_spider(c, b);
        d.add_edge(i0, s);
        d.add_edge(i1, s);
        d.add_edge(s, t);
        d.add_edge(t, o0);
        d.add_edge(t, o1);
        Diagram fused;
        const int j0 = fused.add_input(), j1 = fused.add_input(), p0 = fused.add_output(), p1 = fused.add_output();
        const int u = fused.add_spider(c, a + b);
        fused.add_edge(j0, u);
        fused.add_edge(j1, u);
        fused.add_edge(u, p0);
        fused.add_edge(u, p1);
        std::string id = std::string("fusion/") + (c == Colour::green ? "green" : "red") + "/" + a.str() + "+" + b.str();
        rep.cases.push_back(tensor_case(id, "adjacent same-colour spiders fuse and their phases add", evaluate(fused),
                                        evaluate(d), EqMode::exact, tol));
        Diagram r = d;
        fuse_spiders(r, s, t);
        rep.cases.push_back(
            tensor_case(id + "/rule", "the fusion rule preserves the tensor", evaluate(r), evaluate(d), EqMode::exact, tol));
      }
    }
  }

  // pi copy through a spider of the other colour
  for (Colour c : {Colour::green, Colour::red}) {
    for (auto beta : std::vector<RationalPhase>{{0, 1}, {1, 4}, {1, 2}, {1, 1}}) {
      for (int legs_out : {1, 2, 3}) {
        Diagram d;
        const int in = d.add_input();
        const int pi = d.add_spider(c, kPi);
        const int s = d.add_spider(opposite(c), beta);
        d.chain({in, pi, s});
        Diagram copied;
        const int cin = copied.add_input();
        const int cs = copied.add_spider(opposite(c), -beta);
        copied.add_edge(cin, cs);
        for (int k = 0; k < legs_out; ++k) {
          d.add_edge(s, d.add_output());
          const int p2 = copied.add_spider(c, kPi);
          copied.add_edge(cs, p2);
          copied.add_edge(p2, copied.add_output());
        }
        std::ostringstream id;
        id << "pi-copy/" << (c == Colour::green ? "z" : "x") << "/" << beta.str() << "/" << legs_out;
        rep.cases.push_back(display_case(id.str(), "a pi copies through the other colour and flips its phase", d,
                                         copied, EqMode::phase, tol));
        Diagram r = d;
        copy_pi_through(r, pi, s);
        rep.cases.push_back(tensor_case(id.str() + "/rule", "the pi-copy rule preserves the tensor with its scalar",
                                        evaluate(r), evaluate(d), EqMode::exact, tol));
      }
    }
  }

  // random soundness
  std::size_t fuse = 0, ident = 0, copy = 0, fails = 0, norm_fails = 0;
  double worst = 0.0;
  std::string first_fail;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const Diagram d = random_diagram(seed + s);
    const Matrix t = evaluate(d);
    for (const auto& site : applicable_rewrites(d)) {
      Diagram r = d;
      apply_rewrite(r, site);
      const double err = max_abs_diff(evaluate(r), t);
      worst = std::max(worst, err);
      if (site.rule == "fuse") ++fuse;
      else if (site.rule == "identity") ++ident;
      else ++copy;
      if (err > tol) {
        ++fails;
        if (first_fail.empty()) first_fail = "seed " + std::to_string(seed + s) + " " + site.rule;
      }
    }
    Diagram n = d;
    normalize(n);
    const double err = max_abs_diff(evaluate(n), t);
    worst = std::max(worst, err);
    if (err > tol) ++norm_fails;
  }
  std::ostringstream detail;
  detail << fuse << " fusions, " << ident << " identity removals, " << copy << " pi copies, 1000 normalize runs";
  if (!first_fail.empty()) detail << "; first failure " << first_fail;
  rep.cases.push_back(flag_case("soundness/random-1000", "every rewrite preserves the evaluated tensor", "exact",
                                fails == 0 && norm_fails == 0 && fuse > 0 && ident > 0 && copy > 0, worst,
                                detail.str()));
  return rep;
}

// ---------------------------------------------------------------- cnot

VerifyReport verify_cnot(double tol) {
  VerifyReport rep;
  rep.suite = "cnot";
  const Matrix target = cplx(kInvSqrt2, 0.0) * gates::CNOT();
  rep.cases.push_back(tensor_case("cnot/diagram", "green copy joined to red merge is CNOT up to a factor sqrt2",
                                  evaluate(cnot_diagram()), target, EqMode::exact, 1e-12));
  const std::filesystem::path bundled = std::filesystem::path(ZXS_DATA_DIR) / "cnot.zxs";
  if (std::filesystem::exists(bundled)) {
    rep.cases.push_back(tensor_case("cnot/bundled-file", "bundled CNOT diagram evaluates to CNOT over sqrt2",
                                    evaluate(read_diagram(bundled.string())), target, EqMode::exact, 1e-12));
  }

  const auto table = cnot_expectations();
  for (const std::string name : {"cnot-standard", "cnot-roughsplit", "cnot-bellpair", "cnot-splitsplit-roughcap",
                                 "cnot-splitsplit-smoothcap"}) {
    const Procedure base = builtin_procedure(name);
    for (const auto& convs : all_conventions(merge_count(base))) {
      const Procedure p = with_conventions(base, convs);
      const BranchEnsemble e = enumerate_branches(p);
      for (const auto& br : e.branches) {
        const std::string id = name + "/" + conv_tag(convs) + "/" + bits_str(br.outcomes);
        auto it = std::find_if(table.begin(), table.end(), [&](const CnotExpectation& x) {
          return x.variant == name && x.conventions == conv_names(convs) && x.outcomes == br.outcomes;
        });
        if (it == table.end()) {
          rep.cases.push_back(flag_case(id, "branch listed among the CNOT realizations", "exact", false, 0.0,
                                        "no expected dressing for this branch"));
          continue;
        }
        std::string anchor = "branch is a Pauli-dressed CNOT: (" + it->control + ") x (" + it->target + ")";
        rep.cases.push_back(tensor_case(id, anchor, br.kraus, dressed_cnot(*it), it->mode, tol));
      }
    }
  }

  // positive branch of the standard realization happens half the time
  const Procedure standard = builtin_procedure("cnot-standard");
  const BranchEnsemble e = enumerate_branches(standard);
  double worst = 0.0;
  std::vector<std::string> probes = pauli_eigen_products();
  for (const auto& pr : probe_states(2)) probes.push_back(pr);
  for (const auto& pr : probes) worst = std::max(worst, std::abs(branch_probability(e, 0, density(ket(pr))) - 0.5));
  rep.cases.push_back(flag_case("cnot-standard/positive-probability", "the positive branch occurs with probability 1/2",
                                "exact", worst <= tol, worst, std::to_string(probes.size()) + " product inputs"));
  for (const std::string name : {"cnot-standard", "cnot-roughsplit", "cnot-bellpair", "cnot-splitsplit-roughcap",
                                 "cnot-splitsplit-smoothcap"}) {
    const BranchEnsemble en = enumerate_branches(builtin_procedure(name));
    const double want = 1.0 / static_cast<double>(en.branches.size());
    double w = 0.0;
    for (const auto& pr : probes)
      for (std::size_t i = 0; i < en.branches.size(); ++i)
        w = std::max(w, std::abs(branch_probability(en, i, density(ket(pr))) - want));
    rep.cases.push_back(flag_case(name + "/uniform-branches", "every branch is equally likely on any input", "exact",
                                  w <= tol, w));
  }
  return rep;
}

// ---------------------------------------------------------------- tgate

VerifyReport verify_tgate(double tol) {
  VerifyReport rep;
  rep.suite = "tgate";
  const double q = std::numbers::pi / 4, y = std::numbers::pi / 2;
  std::vector<Matrix> inputs;
  for (const char* s : {"0", "1", "+", "-", "i", "j"}) inputs.push_back(ket(s));
  inputs.push_back(magic(q));

  struct Want {
    std::string proc;
    Convention conv;
    int bit;
    Matrix op;
  };
  const std::vector<Want> wants = {
      {"t-merge", Convention::correct_first, 0, gates::Rz(q)},
      {"t-merge", Convention::correct_first, 1, gates::Rz(-q)},
      {"t-merge", Convention::correct_second, 0, gates::Rz(q)},
      {"t-merge", Convention::correct_second, 1, matmul(gates::X(), gates::Rz(-q))},
      {"y-merge", Convention::correct_first, 0, gates::Rz(y)},
      {"y-merge", Convention::correct_first, 1, gates::Rz(-y)},
      {"y-merge", Convention::correct_second, 0, gates::Rz(y)},
      {"y-merge", Convention::correct_second, 1, matmul(gates::X(), gates::Rz(-y))},
  };
  for (const auto& w : wants) {
    const Procedure p = with_conventions(builtin_procedure(w.proc), {w.conv});
    const BranchEnsemble e = enumerate_branches(p);
    const Branch& br = e.branches.at(static_cast<std::size_t>(w.bit));
    const std::string id = w.proc + "/" + to_string(w.conv) + "/" + std::to_string(w.bit);
    rep.cases.push_back(tensor_case(id, "merging a phase state rotates the data qubit by plus or minus that phase",
                                    cplx(std::sqrt(2.0), 0.0) * br.kraus, w.op, EqMode::phase, tol));
    double worst = 0.0;
    for (const auto& psi : inputs) worst = std::max(worst, std::abs(branch_probability(e, br.outcomes[0], density(psi)) - 0.5));
    rep.cases.push_back(flag_case(id + "/probability", "each merge outcome occurs with probability 1/2", "exact",
                                  worst <= tol, worst));
  }
  {
    // The second convention's negative branch is the first one's followed by a NOT.
    const auto k1 = enumerate_branches(with_conventions(builtin_procedure("t-merge"), {Convention::correct_first}));
    const auto k2 = enumerate_branches(with_conventions(builtin_procedure("t-merge"), {Convention::correct_second}));
    rep.cases.push_back(tensor_case("t-merge/conventions-differ-by-not",
                                    "the two frame conventions differ by a NOT controlled on the merge outcome",
                                    matmul(gates::X(), k1.branches[1].kraus), k2.branches[1].kraus, EqMode::exact, tol));
    rep.cases.push_back(tensor_case("t-merge/conventions-agree-positive", "the positive branch ignores the convention",
                                    k1.branches[0].kraus, k2.branches[0].kraus, EqMode::exact, tol));
  }
  {
    const Procedure p = builtin_procedure("t-deterministic");
    const BranchEnsemble e = enumerate_branches(p);
    const Matrix T = gates::Rz(q);
    double total_worst = 0.0;
    for (const auto& br : e.branches) {
      rep.cases.push_back(display_case_m("t-deterministic/" + bits_str(br.outcomes),
                                         "repeat-until-success realizes T on every branch", br.kraus, T, EqMode::phase,
                                         tol));
    }
    for (const auto& psi : inputs) {
      double sum = 0.0;
      for (std::size_t i = 0; i < e.branches.size(); ++i) sum += branch_probability(e, i, density(psi));
      total_worst = std::max(total_worst, std::abs(sum - 1.0));
    }
    rep.cases.push_back(
        flag_case("t-deterministic/complete", "the branches exhaust the outcomes", "exact", total_worst <= tol, total_worst));
  }

  // displays, drawn without scalars
  for (auto [name, alpha] : std::vector<std::pair<std::string, RationalPhase>>{{"t", {1, 4}}, {"y", {1, 2}}}) {
    const Diagram pos = phase_merge_display(alpha, false, false, false);
    rep.cases.push_back(display_case(name + "-display/positive", "positive branch is the phase gate",
                                     pos, line({{Colour::green, alpha}}), EqMode::phase, tol));
    const Diagram n1 = phase_merge_display(alpha, true, false, false);
    const Diagram n2 = phase_merge_display(alpha, false, true, true);
    const Diagram n3 = line({{Colour::red, kPi}, {Colour::green, alpha}, {Colour::red, kPi}});
    const Diagram n4 = line({{Colour::green, -alpha}});
    rep.cases.push_back(display_case(name + "-display/negative-1", "negative branch: pi on the state leg copies through",
                                     n1, n2, EqMode::phase, tol));
    rep.cases.push_back(display_case(name + "-display/negative-2", "negative branch: merge with the state becomes the gate",
                                     n2, n3, EqMode::phase, tol));
    rep.cases.push_back(display_case(name + "-display/negative-3", "negative branch: conjugating by NOT negates the phase",
                                     n3, n4, EqMode::phase, tol));
    Diagram z = n1;
    normalize(z);
    const bool single = z.num_spiders() == 1 && z.nodes().size() == 3;
    bool phase_ok = false;
    for (const auto& [id, node] : z.nodes())
      if (is_spider(node.kind)) phase_ok = node.kind == NodeKind::green && node.phase == -alpha;
    rep.cases.push_back(flag_case(name + "-display/normal-form", "the negative branch normalizes to one green spider of opposite phase",
                                  "structure", single && phase_ok, 0.0, std::to_string(z.num_spiders()) + " spiders"));
  }
  {
    const RationalPhase a{1, 4};
    const Diagram m1 = phase_merge_display(a, false, true, false);
    const Diagram m2 = line({{Colour::red, kPi}, {Colour::green, a}});
    const Diagram m3 = line({{Colour::green, -a}, {Colour::red, kPi}});
    rep.cases.push_back(display_case("t-display/other-convention-1", "other convention: correction on the data input",
                                     m1, m2, EqMode::phase, tol));
    rep.cases.push_back(display_case("t-display/other-convention-2", "other convention: gate followed by a NOT",
                                     m2, m3, EqMode::phase, tol));
  }
  return rep;
}

// ---------------------------------------------------------------- appendix

VerifyReport verify_appendix(double tol) {
  VerifyReport rep;
  rep.suite = "appendix";
  const EqMode E = EqMode::exact, S = EqMode::sign;
  struct Step {
    Shape to;
    EqMode rel;
  };
  auto chain = [&](const std::string& id, const std::string& anchor, const Shape& start, const std::vector<Step>& steps) {
    Shape prev = start;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      rep.cases.push_back(display_case(id + "/step" + std::to_string(i + 1), anchor, cnot_shape(prev),
                                       cnot_shape(steps[i].to), steps[i].rel, tol));
      prev = steps[i].to;
    }
  };
  // smooth split then rough merge
  chain("standard/positive", "standard realization, positive branch", {"", "", "", "", "G"}, {{{"", "", "", "", ""}, E}});
  chain("standard/first", "standard realization, correction on the first parent", {"", "", "", "", "z"},
        {{{"", "z", "", "", ""}, E}});
  chain("standard/second", "standard realization, correction on the second parent", {"", "", "z", "", ""},
        {{{"", "", "", "z", "z"}, E}, {{"", "z", "", "z", ""}, E}});
  // rough split then smooth merge
  chain("roughsplit/first", "rough-split realization, correction on the first parent", {"x", "", "", "", ""},
        {{{"", "x", "", "", "x"}, E}, {{"", "x", "", "x", ""}, E}});
  chain("roughsplit/second", "rough-split realization, correction on the second parent", {"", "", "", "", "x"},
        {{{"", "", "", "x", ""}, E}});
  // Bell pair
  chain("bellpair/positive", "Bell-pair realization, either split gives the bare link", {"", "", "", "", "G"},
        {{{"", "", "", "", "R"}, E}, {{"", "", "", "", ""}, E}});
  chain("bellpair/first-first", "Bell-pair realization, both corrections on first parents", {"x", "", "", "", "z"},
        {{{"x", "z", "", "", ""}, E}, {{"", "xz", "", "", "x"}, E}, {{"", "xz", "", "x", ""}, E}});
  chain("bellpair/second-first", "Bell-pair realization, smooth second and rough first", {"", "", "", "", "xz"},
        {{{"", "", "", "", "zx"}, S}, {{"", "z", "", "x", ""}, E}});
  chain("bellpair/first-second", "Bell-pair realization, smooth first and rough second", {"x", "", "z", "", ""},
        {{{"", "x", "", "z", "xz"}, E}, {{"", "x", "", "z", "zx"}, S}, {{"", "zx", "", "xz", ""}, E}});
  chain("bellpair/second-second", "Bell-pair realization, both corrections on second parents", {"", "", "z", "", "x"},
        {{{"", "", "", "z", "xz"}, E}, {{"", "", "", "z", "zx"}, S}, {{"", "z", "", "xz", ""}, E}});
  // two splits closed by a rough merge and Z measurement
  chain("roughcap/positive", "split-split with rough cap, positive branch", {"", "", "", "", "R"},
        {{{"", "", "", "", "r"}, E}, {{"", "", "", "", ""}, E}});
  chain("roughcap/first", "split-split with rough cap, correction on the first parent", {"", "", "", "", "zr"},
        {{{"", "z", "", "", "r"}, E}});
  chain("roughcap/second", "split-split with rough cap, correction on the second parent", {"", "", "", "", "rz"},
        {{{"", "", "", "", "zr"}, E}, {{"", "z", "", "", "r"}, E}});
  // two splits closed by a smooth merge and X measurement
  chain("smoothcap/positive", "split-split with smooth cap, positive branch", {"", "", "", "", "G"},
        {{{"", "", "", "", "g"}, E}, {{"", "", "", "", ""}, E}});
  chain("smoothcap/first", "split-split with smooth cap, correction on the first parent", {"", "", "", "", "xg"},
        {{{"", "", "", "", "gx"}, E}, {{"", "", "", "x", "g"}, E}});
  chain("smoothcap/second", "split-split with smooth cap, correction on the second parent", {"", "", "", "", "gx"},
        {{{"", "", "", "x", "g"}, E}});

  // The four Bell-pair conventions against the actual branch operators.
  const auto table = cnot_expectations();
  const Procedure bell = builtin_procedure("cnot-bellpair");
  for (const auto& convs : all_conventions(2)) {
    const BranchEnsemble e = enumerate_branches(with_conventions(bell, convs));
    for (const auto& br : e.branches) {
      if (br.outcomes != std::vector<int>{1, 1}) continue;
      auto it = std::find_if(table.begin(), table.end(), [&](const CnotExpectation& x) {
        return x.variant == "cnot-bellpair" && x.conventions == conv_names(convs) && x.outcomes == br.outcomes;
      });
      rep.cases.push_back(tensor_case("bellpair-table/" + conv_tag(convs),
                                      "Bell-pair table entry, equality or equality up to sign as printed", br.kraus,
                                      dressed_cnot(*it), it->mode, tol));
    }
  }
  return rep;
}

// ---------------------------------------------------------------- model

VerifyReport verify_model_suite(double tol) {
  VerifyReport rep;
  rep.suite = "model";
  for (const auto& p : builtin_procedures()) {
    const ModelReport m = verify_model(p, tol);
    rep.cases.push_back(flag_case(p.name + "/completeness", "the branch Kraus operators form a complete instrument",
                                  "exact", m.completeness_error <= tol, m.completeness_error));
    for (const auto& bc : m.branches) {
      double worst = 0.0;
      bool ok = true;
      for (const auto& pc : bc.probes) {
        worst = std::max(worst, std::abs(pc.zx_norm_sq - pc.probability));
        ok = ok && pc.pass;
      }
      rep.cases.push_back(flag_case(p.name + "/" + bits_str(bc.outcomes) + "/kraus",
                                    "each branch diagram evaluates to its Kraus operator", "exact", bc.kraus_pass,
                                    bc.kraus_error));
      rep.cases.push_back(flag_case(p.name + "/" + bits_str(bc.outcomes) + "/probes",
                                    "squared diagram norm with an input attached is the branch probability", "exact", ok,
                                    worst));
    }
  }
  // negative control: placing every correction on the other parent breaks the correspondence
  for (const std::string name : {"cnot-standard", "t-merge"}) {
    const ModelReport m = verify_model(builtin_procedure(name), tol, true);
    VerifyCase c = flag_case(name + "/swapped-conventions", "diagram with corrections on the wrong parent is rejected",
                             "exact", !m.pass);
    c.expect_fail = true;
    for (const auto& bc : m.branches)
      if (!bc.kraus_pass) c.detail = "branch " + bits_str(bc.outcomes) + " differs by Pauli " + bc.pauli_fingerprint;
    rep.cases.push_back(c);
  }
  return rep;
}

// ---------------------------------------------------------------- physical

VerifyReport verify_physical(std::uint64_t seed) {
  VerifyReport rep;
  rep.suite = "physical";
  {
    PlanarPatch p(3, 3);
    rep.cases.push_back(flag_case("geometry/3x3-counts", "a distance-3 patch has 13 qubits and 12 stabilizers",
                                  "structure", p.num_qubits() == 13 && p.plaquettes().size() == 12, 0.0,
                                  std::to_string(p.num_qubits()) + " qubits, " + std::to_string(p.plaquettes().size()) +
                                      " plaquettes"));
  }
  {
    bool ok = true;
    std::string detail;
    for (int h = 2; h <= 5; ++h) {
      for (int w = 2; w <= 5; ++w) {
        PlanarPatch p(h, w);
        const std::size_t n = p.num_qubits();
        auto str = [&](const std::vector<Site>& sup, char t) {
          PauliString s(n);
          for (Site x : sup) s.set(static_cast<std::size_t>(p.index_of(x)), t);
          return s;
        };
        std::vector<PauliString> stabs;
        for (const auto& pl : p.plaquettes()) stabs.push_back(str(pl.support, pl.type));
        const PauliString zl = str(p.z_logical(), 'Z'), xl = str(p.x_logical(), 'X');
        bool good = n == static_cast<std::size_t>(h * w + (h - 1) * (w - 1)) && stabs.size() == n - 1;
        for (std::size_t i = 0; i < stabs.size(); ++i) {
          good = good && stabs[i].commutes_with(zl) && stabs[i].commutes_with(xl);
          for (std::size_t j = i + 1; j < stabs.size(); ++j) good = good && stabs[i].commutes_with(stabs[j]);
        }
        good = good && !zl.commutes_with(xl);
        // independence: measuring every generator on a fresh tableau is random each time
        StabilizerTableau t;
        for (std::size_t i = 0; i < n; ++i) t.add_qubit(true);
        std::mt19937_64 rng(1);
        std::size_t random_count = 0;
        for (const auto& s : stabs) random_count += t.measure(s, rng).deterministic ? 0 : 1;
        // X generators are fixed by |+...+>, so only the Z ones are random; the
        // X ones must be independent too, checked on |0...0>
        StabilizerTableau t0;
        for (std::size_t i = 0; i < n; ++i) t0.add_qubit(false);
        for (const auto& s : stabs)
          if (s.x != std::vector<std::uint8_t>(n, 0)) random_count += t0.measure(s, rng).deterministic ? 0 : 1;
        good = good && random_count == stabs.size();
        if (!good && detail.empty()) detail = "fails at " + std::to_string(h) + "x" + std::to_string(w);
        ok = ok && good;
      }
    }
    rep.cases.push_back(flag_case("geometry/2..5", "plaquettes commute, are independent, and fix one logical qubit",
                                  "structure", ok, 0.0, detail));
  }

  struct Config {
    PhysicalOp op;
    SurgeryKind kind;
    Convention conv;
    int h, w;
  };
  std::vector<Config> configs;
  for (auto conv : {Convention::correct_first, Convention::correct_second}) {
    for (auto hw : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}, {2, 5}, {3, 7}}) {
      configs.push_back({PhysicalOp::merge, SurgeryKind::rough, conv, hw.first, hw.second});
      configs.push_back({PhysicalOp::merge, SurgeryKind::smooth, conv, hw.first, hw.second});
    }
    for (auto hw : std::vector<std::pair<int, int>>{{2, 5}, {3, 7}}) {
      configs.push_back({PhysicalOp::split, SurgeryKind::rough, conv, hw.first, hw.second});
      configs.push_back({PhysicalOp::split, SurgeryKind::smooth, conv, hw.second, hw.first});
    }
  }
  std::vector<ChannelReport> results(configs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& c = configs[i];
    results[i] = extract_logical_channel(c.op, c.kind, c.conv, c.h, c.w, false, seed + 7 + i);
  }
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& c = configs[i];
    const auto& r = results[i];
    std::string id = "channel/" + to_string(c.kind) + "-" + to_string(c.op) + "/" + to_string(c.conv) + "/" +
                     std::to_string(c.h) + "x" + std::to_string(c.w);
    std::string detail = std::to_string(r.runs) + " runs, " + std::to_string(r.checks) + " expectation checks";
    if (!r.mismatches.empty()) detail += "; first mismatch on input " + r.mismatches[0].input + " " + r.mismatches[0].observable;
    rep.cases.push_back(flag_case(id, "physical operation realizes the logical Kraus map on every branch", "exact",
                                  r.pass, 0.0, detail));
  }
  {
    // negative control: daughters correcting toward different boundaries
    const auto r = extract_logical_channel(PhysicalOp::split, SurgeryKind::rough, Convention::correct_first, 3, 7, true,
                                           seed + 99);
    VerifyCase c = flag_case("channel/rough-split/mixed-boundaries",
                             "daughters must correct toward the same boundary", "exact", !r.pass);
    c.expect_fail = true;
    if (!r.mismatches.empty()) c.detail = "sign flip on " + r.mismatches[0].observable;
    rep.cases.push_back(c);
  }

  // dense statevector checks at distance 2
  {
    const Matrix a = magic(std::numbers::pi / 4), yv = magic(std::numbers::pi / 2);
    const auto r = dense_merge_check(SurgeryKind::smooth, Convention::correct_first, a, ket("+"));
    double err = 0.0;
    for (const auto& b : r.branches) err = std::max({err, std::abs(b.probability - 0.5), 1.0 - b.min_fidelity});
    rep.cases.push_back(flag_case("dense/t-merge", "encoded magic state merge gives Rz(+-pi/4)|+> with probability 1/2",
                                  "phase", r.pass && err <= 1e-9, err, std::to_string(r.num_qubits) + " qubits"));
    const auto ry = dense_merge_check(SurgeryKind::smooth, Convention::correct_second, yv, ket("+"));
    double erry = 0.0;
    for (const auto& b : ry.branches) erry = std::max({erry, std::abs(b.probability - 0.5), 1.0 - b.min_fidelity});
    rep.cases.push_back(flag_case("dense/y-merge", "encoded Y state merge gives Rz(+-pi/2) branches",
                                  "phase", ry.pass && erry <= 1e-9, erry));
    const auto r0 = dense_merge_check(SurgeryKind::rough, Convention::correct_first, ket("0"), ket("0"));
    bool zero_ok = r0.pass;
    for (const auto& b : r0.branches) zero_ok = zero_ok && std::abs(b.expect_z - 1.0) <= 1e-9;
    rep.cases.push_back(flag_case("dense/rough-zero-zero", "rough merge of two zeros decodes to zero in both branches",
                                  "exact", zero_ok, 0.0));
  }
  {
    // dense and tableau agree on stabilizer inputs
    double worst = 0.0;
    bool ok = true;
    for (auto kind : {SurgeryKind::rough, SurgeryKind::smooth}) {
      for (auto conv : {Convention::correct_first, Convention::correct_second}) {
        for (const char* s1 : {"0", "1", "+", "-", "i", "j"}) {
          for (const char* s2 : {"0", "1", "+", "-", "i", "j"}) {
            const auto d = dense_merge_check(kind, conv, ket(s1), ket(s2));
            ok = ok && d.pass;
            const std::string n1 = std::string(s1) == "i" ? "+i" : std::string(s1) == "j" ? "-i" : s1;
            const std::string n2 = std::string(s2) == "i" ? "+i" : std::string(s2) == "j" ? "-i" : s2;
            std::size_t count[2] = {0, 0};
            std::size_t total = 0;
            const MergeLayout lay = merge_layout(kind, 2, 2, 2, 2);
            for (std::size_t mask = 0; mask < (std::size_t{1} << lay.joins.size()); ++mask) {
              std::vector<int> forced(lay.joins.size());
              for (std::size_t i = 0; i < forced.size(); ++i) forced[i] = static_cast<int>((mask >> i) & 1u);
              LatticeWorkspace ws(seed + mask);
              ws.patch_init("a", 2, 2, logical_state_from_string(n1));
              ws.patch_init("b", 2, 2, logical_state_from_string(n2));
              const int m = kind == SurgeryKind::rough ? ws.rough_merge_phys("a", "b", "c", conv, forced)
                                                       : ws.smooth_merge_phys("a", "b", "c", conv, forced);
              const auto& br = d.branches[static_cast<std::size_t>(m)];
              worst = std::max({worst, std::abs(ws.logical_expectation("c", 'X') - br.expect_x),
                                std::abs(ws.logical_expectation("c", 'Y') - br.expect_y),
                                std::abs(ws.logical_expectation("c", 'Z') - br.expect_z)});
              // a deterministic tableau outcome means the other branch has zero weight
              ++count[m];
              ++total;
            }
            for (int m = 0; m < 2; ++m) {
              const double p = d.branches[static_cast<std::size_t>(m)].probability;
              // the tableau reaches a branch iff the dense probability is nonzero; with
              // random outcomes each branch is hit by exactly half the forced vectors
              if ((p > 1e-9) != (count[m] > 0)) ok = false;
              if (p > 1e-9 && p < 1 - 1e-9) worst = std::max(worst, std::abs(p - static_cast<double>(count[m]) / total));
              if (p >= 1 - 1e-9 && count[m] != total) ok = false;
            }
          }
        }
      }
    }
    rep.cases.push_back(flag_case("dense/tableau-consistency",
                                  "statevector and tableau agree on probabilities and logical expectations", "exact",
                                  ok && worst <= 1e-9, worst));
  }
  {
    // Monte Carlo merge statistics
    ExperimentConfig cfg;
    cfg.op = PhysicalOp::merge;
    cfg.kind = SurgeryKind::rough;
    cfg.inputs = {LogicalState::zero, LogicalState::zero};
    cfg.trials = 10000;
    cfg.seed = seed;
    const auto r = run_experiment(cfg);
    const double f = static_cast<double>(r.minus_outcomes) / static_cast<double>(r.runs);
    rep.cases.push_back(flag_case("stats/rough-merge-00", "merging two zeros in X gives -1 half the time", "stat",
                                  std::abs(f - 0.5) <= 0.015 && r.pass, std::abs(f - 0.5),
                                  "frequency " + std::to_string(f)));
    cfg.inputs = {LogicalState::plus, LogicalState::minus};
    cfg.trials = 1000;
    const auto r2 = run_experiment(cfg);
    const double f2 = static_cast<double>(r2.minus_outcomes) / static_cast<double>(r2.runs);
    rep.cases.push_back(flag_case("stats/rough-merge-+-", "merging plus with minus always gives -1", "stat",
                                  f2 == 1.0 && r2.pass, 1.0 - f2));
  }
  return rep;
}

// ---------------------------------------------------------------- driver

std::vector<std::string> suite_names() { return {"zx-rules", "cnot", "tgate", "appendix", "model", "physical"}; }

std::vector<VerifyReport> run_suite(const std::string& name, std::uint64_t seed, double tol) {
  const std::vector<std::string> known = suite_names();
  std::vector<std::string> names;
  if (name == "all") names = known;
  else if (std::find(known.begin(), known.end(), name) != known.end()) names = {name};
  else throw std::invalid_argument("unknown suite '" + name + "'");
  std::vector<VerifyReport> out;
  for (const auto& n : names) {
    if (n == "zx-rules") out.push_back(verify_zx_rules(seed, tol));
    else if (n == "cnot") out.push_back(verify_cnot(tol));
    else if (n == "tgate") out.push_back(verify_tgate(tol));
    else if (n == "appendix") out.push_back(verify_appendix(tol));
    else if (n == "model") out.push_back(verify_model_suite(tol));
    else out.push_back(verify_physical(seed));
  }
  return out;
}

std::string report_to_json(const std::vector<VerifyReport>& reports) {
  nlohmann::ordered_json doc;
  bool ok = true;
  doc["suites"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json s;
    s["suite"] = r.suite;
    s["cases"] = nlohmann::ordered_json::array();
    for (const auto& c : r.cases) {
      nlohmann::ordered_json j;
      j["id"] = c.id;
      j["anchor"] = c.anchor;
      j["mode"] = c.mode;
      j["max_error"] = std::isfinite(c.error) ? c.error : -1.0;
      j["pass"] = c.pass;
      if (c.expect_fail) j["negative_control"] = true;
      if (!c.detail.empty()) j["detail"] = c.detail;
      s["cases"].push_back(std::move(j));
    }
    s["summary"] = {{"total", r.cases.size()}, {"passed", r.passed()}, {"failed", r.failed()}};
    ok = ok && r.ok();
    doc["suites"].push_back(std::move(s));
  }
  doc["ok"] = ok;
  return doc.dump(2) + "\n";
}

std::string report_to_text(const std::vector<VerifyReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << "== " << r.suite << "\n";
    for (const auto& c : r.cases) {
      os << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(48) << c.id << " [" << c.mode << "] err=" << std::scientific
         << std::setprecision(2) << c.error << std::defaultfloat << "  " << c.anchor;
      if (c.expect_fail) os << " (negative control)";
      if (!c.detail.empty()) os << " {" << c.detail << "}";
      os << "\n";
    }
    os << r.suite << ": " << r.passed() << "/" << r.cases.size() << " passed\n";
  }
  return os.str();
}

}  // namespace zxs
