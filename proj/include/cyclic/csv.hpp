#pragma once

#include <string>
#include <vector>

#include "cyclic/linalg.hpp"

namespace cyclic {

// Input CSVs are headerless, comma-separated, plain decimal.
Matrix read_matrix_csv(const std::string& path);
Vector read_vector_csv(const std::string& path);  // one value per line

// All numeric output is printed with %.17g so re-runs are byte-identical.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace cyclic
