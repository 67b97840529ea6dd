// zxs: command-line front end.
//
//   zxs zx eval <file> [--out m.json]       exit 2 parse error, 3 too large
//   zxs zx simplify <file> [--steps] [--out f] | --fuzz N [--seed S]
//                                           exit 4 if a rewrite is unsound
//   zxs zx dot <file> [--out f.dot]
//   zxs surgery list
//   zxs surgery sample <proc> --state ++ --seed S --trials N
//   zxs surface run <config.json> [--seed S] [--out f.jsonl]
//   zxs verify [--suite NAME] [--json out|-] [--seed S] [--quiet]
//
// Exit codes: 0 ok, 1 check failed, 2 bad input, 3 cap exceeded, 4 unsound.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "zxs/verify.hpp"

int main(int argc, char** argv) {
  using namespace zxs::cli;
  CLI::App app{"ZX diagrams and lattice surgery"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "zxs 1.0");

  auto* zx = app.add_subcommand("zx", "evaluate, simplify or draw a diagram");
  zx->require_subcommand(1);

  EvalArgs eval;
  auto* eval_cmd = zx->add_subcommand("eval", "print the linear map of a diagram");
  eval_cmd->add_option("file", eval.file, "zxs-1 diagram")->required();
  eval_cmd->add_option("--out", eval.out, "write the matrix here instead of stdout");

  SimplifyArgs simp;
  auto* simp_cmd = zx->add_subcommand("simplify", "normalize a diagram and check the tensor is unchanged");
  simp_cmd->add_option("file", simp.file, "zxs-1 diagram");
  simp_cmd->add_option("--out", simp.out, "write the normalized diagram here");
  simp_cmd->add_flag("--steps", simp.steps, "log each rewrite step to stderr");
  simp_cmd->add_option("--fuzz", simp.fuzz, "normalize N seeded random diagrams instead");
  simp_cmd->add_option("--seed", simp.seed, "first fuzz seed");

  DotArgs dot;
  auto* dot_cmd = zx->add_subcommand("dot", "Graphviz rendering");
  dot_cmd->add_option("file", dot.file, "zxs-1 diagram")->required();
  dot_cmd->add_option("--out", dot.out, "output path");

  auto* surgery = app.add_subcommand("surgery", "logical surgery procedures");
  surgery->require_subcommand(1);
  auto* list_cmd = surgery->add_subcommand("list", "builtin procedures");
  SampleArgs samp;
  auto* samp_cmd = surgery->add_subcommand("sample", "outcome histogram for a product input");
  samp_cmd->add_option("procedure", samp.procedure, "builtin name or lsp-1 file")->required();
  samp_cmd->add_option("--state", samp.state, "one symbol per input: 0 1 + - i j")->required();
  samp_cmd->add_option("--seed", samp.seed, "random seed");
  samp_cmd->add_option("--trials", samp.trials, "number of samples")->check(CLI::PositiveNumber);

  auto* surface = app.add_subcommand("surface", "physical surface-code simulation");
  surface->require_subcommand(1);
  SurfaceArgs surf;
  auto* run_cmd = surface->add_subcommand("run", "run an experiment config, JSON lines out");
  run_cmd->add_option("config", surf.config, "experiment JSON")->required();
  run_cmd->add_option("--out", surf.out, "output path");
  auto* seed_opt = run_cmd->add_option("--seed", surf.seed, "override the config seed");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suites = zxs::suite_names();
  suites.insert(suites.begin(), "all");
  ver_cmd->add_option("--suite", ver.suite, "suite name")->check(CLI::IsMember(suites));
  ver_cmd->add_option("--json", ver.json, "write the JSON report here ('-' for stdout)");
  ver_cmd->add_option("--seed", ver.seed, "random seed");
  ver_cmd->add_flag("--quiet", ver.quiet, "summary lines only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  if (eval_cmd->parsed()) return zx_eval(eval, std::cout, std::cerr);
  if (simp_cmd->parsed()) return zx_simplify(simp, std::cout, std::cerr);
  if (dot_cmd->parsed()) return zx_dot(dot, std::cout, std::cerr);
  if (list_cmd->parsed()) return surgery_list(std::cout);
  if (samp_cmd->parsed()) return surgery_sample(samp, std::cout, std::cerr);
  if (run_cmd->parsed()) {
    surf.seed_given = seed_opt->count() > 0;
    return surface_run(surf, std::cout, std::cerr);
  }
  if (ver_cmd->parsed()) return verify(ver, std::cout, std::cerr);
  return kBadInput;
}
