#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "zxs/diagram_io.hpp"
#include "zxs/experiment.hpp"
#include "zxs/procedure_io.hpp"
#include "zxs/rewrite.hpp"
#include "zxs/surgery.hpp"
#include "zxs/verify.hpp"

namespace zxs::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") out << text;
  else write_text_file(path, text);
}

bool load(const std::string& file, Diagram& d, std::ostream& err) {
  try {
    std::vector<std::string> warnings;
    d = read_diagram(file, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << "\n";
    return true;
  } catch (const ValidationError& e) {
    err << "error: " << file << ": invalid diagram\n";
    for (const auto& v : e.violations()) err << "  " << v << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return false;
}

std::string step_json(const RewriteStep& s) {
  ordered_json j;
  j["rule"] = s.rule;
  j["site"] = s.site;
  j["scalar_delta"] = {{"re", s.scalar_delta.real()}, {"im", s.scalar_delta.imag()}};
  return j.dump();
}

}  // namespace

int zx_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  Diagram d;
  if (!load(a.file, d, err)) return kBadInput;
  try {
    emit(a.out, matrix_to_json(evaluate(d)) + "\n", out);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kOk;
}

int zx_simplify(const SimplifyArgs& a, std::ostream& out, std::ostream& err) {
  const double tol = default_tolerance();
  if (a.fuzz > 0) {
    std::size_t steps = 0;
    for (std::size_t i = 0; i < a.fuzz; ++i) {
      const std::uint64_t s = a.seed + i;
      const Diagram d = random_diagram(s);
      const Matrix before = evaluate(d);
      Diagram n = d;
      steps += normalize(n).size();
      const double e = max_abs_diff(evaluate(n), before);
      if (e > tol) {
        err << "unsound: seed " << s << " changed the tensor by " << e << "\n";
        return kUnsound;
      }
    }
    out << "fuzz: " << a.fuzz << " diagrams, " << steps << " rewrite steps, all preserved\n";
    return kOk;
  }
  if (a.file.empty()) {
    err << "error: simplify needs a diagram file or --fuzz\n";
    return kBadInput;
  }
  Diagram d;
  if (!load(a.file, d, err)) return kBadInput;
  Matrix before;
  try {
    before = evaluate(d);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCapExceeded;
  }
  Diagram n = d;
  const auto log = normalize(n);
  if (a.steps)
    for (const auto& s : log) err << step_json(s) << "\n";
  const double e = max_abs_diff(evaluate(n), before);
  if (e > tol) {
    err << "unsound: normalization changed the tensor by " << e << "\n";
    return kUnsound;
  }
  emit(a.out, diagram_to_json(n), out);
  return kOk;
}

int zx_dot(const DotArgs& a, std::ostream& out, std::ostream& err) {
  Diagram d;
  if (!load(a.file, d, err)) return kBadInput;
  emit(a.out, diagram_to_dot(d), out);
  return kOk;
}

int surgery_list(std::ostream& out) {
  for (const auto& p : builtin_procedures()) {
    out << p.name << "  inputs=" << p.inputs.size() << " outputs=" << p.outputs.size()
        << " outcomes=" << outcome_count(p) << "\n";
  }
  return kOk;
}

int surgery_sample(const SampleArgs& a, std::ostream& out, std::ostream& err) {
  Procedure p;
  Matrix psi;
  try {
    p = load_procedure(a.procedure);
    psi = ket(a.state);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  if (a.state.size() != p.inputs.size()) {
    err << "error: " << p.name << " takes " << p.inputs.size() << " input qubit(s), state has " << a.state.size()
        << "\n";
    return kBadInput;
  }
  std::map<std::vector<int>, std::size_t> hist;
  for (const auto& r : sample(p, psi, a.seed, a.trials)) ++hist[r.outcomes];
  ordered_json doc;
  doc["procedure"] = p.name;
  doc["state"] = a.state;
  doc["seed"] = a.seed;
  doc["trials"] = a.trials;
  ordered_json rows = ordered_json::array();
  for (const auto& [outcomes, count] : hist) {
    std::string bits;
    for (int b : outcomes) bits += static_cast<char>('0' + b);
    rows.push_back({{"outcomes", bits},
                    {"count", count},
                    {"frequency", static_cast<double>(count) / static_cast<double>(a.trials)}});
  }
  doc["histogram"] = std::move(rows);
  out << doc.dump(2) << "\n";
  return kOk;
}

int surface_run(const SurfaceArgs& a, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  try {
    cfg = parse_experiment(read_text_file(a.config));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  if (a.seed_given) cfg.seed = a.seed;
  ExperimentResult r;
  try {
    r = run_experiment(cfg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  std::ostringstream os;
  for (const auto& l : r.lines) os << l << "\n";
  emit(a.out, os.str(), out);
  return r.pass ? kOk : kCheckFailed;
}

int verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<VerifyReport> reports;
  try {
    reports = run_suite(a.suite, a.seed, default_tolerance());
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.ok();
  if (!a.json.empty()) emit(a.json, report_to_json(reports), out);
  if (a.json != "-" && !a.quiet) out << report_to_text(reports);
  else if (a.json != "-") {
    for (const auto& r : reports) out << r.suite << ": " << r.passed() << "/" << r.cases.size() << " passed\n";
  }
  return ok ? kOk : kCheckFailed;
}

}  // namespace zxs::cli
