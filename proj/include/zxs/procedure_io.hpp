#pragma once

#include <string>

#include "zxs/surgery.hpp"

namespace zxs {

inline constexpr const char* kProcedureFormat = "lsp-1";

// lsp-1 JSON procedures. Errors are reported as ProcedureError with the
// offending field path.
Procedure parse_procedure(const std::string& text);
Procedure read_procedure(const std::string& path);
std::string procedure_to_json(const Procedure& p);

// A builtin name or a path to an lsp-1 file.
Procedure load_procedure(const std::string& name_or_path);

}  // namespace zxs
