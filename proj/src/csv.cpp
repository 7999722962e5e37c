#include "cyclic/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cyclic/errors.hpp"

namespace cyclic {

namespace {

std::vector<std::vector<double>> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  size_t lineno = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool bad = false;
    while (!bad && std::getline(ss, cell, ',')) {
      try {
        size_t used = 0;
        double v = std::stod(cell, &used);
        while (used < cell.size() &&
               (cell[used] == ' ' || cell[used] == '\r' || cell[used] == '\t')) {
          ++used;
        }
        if (used != cell.size()) throw std::invalid_argument(cell);
        row.push_back(v);
      } catch (const std::exception&) {
        // One leading header line is tolerated so our own outputs load back.
        if (first_content) {
          bad = true;
          break;
        }
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": not a number: '" + cell + "'");
      }
    }
    first_content = false;
    if (!bad && !row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Matrix read_matrix_csv(const std::string& path) {
  auto rows = read_rows(path);
  if (rows.empty()) throw ParseError(path + ": empty matrix");
  size_t cols = rows.front().size();
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw ParseError(path + ": row " + std::to_string(i + 1) +
                       " has ragged width");
    }
  }
  Matrix M(static_cast<int>(rows.size()), static_cast<int>(cols));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < cols; ++j) M(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  return M;
}

Vector read_vector_csv(const std::string& path) {
  auto rows = read_rows(path);
  Vector v;
  for (const auto& row : rows) {
    if (row.size() != 1) throw ParseError(path + ": expected one value per line");
    v.push_back(row[0]);
  }
  if (v.empty()) throw ParseError(path + ": empty vector");
  return v;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << content;
  if (!out) throw IoError("short write: " + path);
}

}  // namespace cyclic
