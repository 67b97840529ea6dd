#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace zxs::cli {

// Exit codes shared by every subcommand.
enum Exit : int {
  kOk = 0,
  kCheckFailed = 1,   // a verification, sample or surface check reported a failure
  kBadInput = 2,      // unreadable or malformed input file, unknown name
  kCapExceeded = 3,   // diagram too large to evaluate
  kUnsound = 4,       // a rewrite changed the evaluated tensor
};

struct EvalArgs {
  std::string file;
  std::string out;  // empty: stdout
};

struct SimplifyArgs {
  std::string file;
  std::string out;
  bool steps = false;  // step log as JSON lines on stderr
  std::size_t fuzz = 0;
  std::uint64_t seed = 0;
};

struct DotArgs {
  std::string file;
  std::string out;
};

struct SampleArgs {
  std::string procedure;  // builtin name or lsp-1 file
  std::string state;      // one symbol per input: 0 1 + - i j
  std::uint64_t seed = 0;
  std::size_t trials = 1;
};

struct SurfaceArgs {
  std::string config;
  std::string out;
  bool seed_given = false;
  std::uint64_t seed = 0;
};

struct VerifyArgs {
  std::string suite = "all";
  std::string json;  // path, or "-" for stdout
  std::uint64_t seed = 0;
  bool quiet = false;
};

int zx_eval(const EvalArgs& a, std::ostream& out, std::ostream& err);
int zx_simplify(const SimplifyArgs& a, std::ostream& out, std::ostream& err);
int zx_dot(const DotArgs& a, std::ostream& out, std::ostream& err);
int surgery_sample(const SampleArgs& a, std::ostream& out, std::ostream& err);
int surgery_list(std::ostream& out);
int surface_run(const SurfaceArgs& a, std::ostream& out, std::ostream& err);
int verify(const VerifyArgs& a, std::ostream& out, std::ostream& err);

}  // namespace zxs::cli
