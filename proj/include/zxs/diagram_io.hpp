#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "zxs/diagram.hpp"

namespace zxs {

inline constexpr const char* kDiagramFormat = "zxs-1";

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses the zxs-1 JSON format. Phases that are not in lowest terms are
// reduced and reported through `warnings` when it is non-null.
Diagram parse_diagram(const std::string& text, std::vector<std::string>* warnings = nullptr);
Diagram read_diagram(const std::string& path, std::vector<std::string>* warnings = nullptr);

std::string diagram_to_json(const Diagram& d);
void write_diagram(const Diagram& d, const std::string& path);

// Graphviz rendering: green and red filled circles labelled with their
// phase, boundaries as points.
std::string diagram_to_dot(const Diagram& d);
void export_dot(const Diagram& d, const std::string& path);

// Matrix as {"rows","cols","re":[[...]],"im":[[...]]}.
std::string matrix_to_json(const Matrix& m);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace zxs
