#pragma once

// OEIS b-file style tables: one "n a(n)" pair per line, '#' comments.

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "deqsort/count.hpp"
#include "deqsort/permutation.hpp"

namespace deqsort {

using BFile = std::map<int, Count>;

inline BFile read_bfile(std::istream& in) {
  BFile out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string n_text, a_text, extra;
    if (!(fields >> n_text)) continue;
    if (!(fields >> a_text) || (fields >> extra))
      throw ParseError("b-file line " + std::to_string(lineno) + ": expected 'n a(n)'");
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(n_text, &used);
      if (used != n_text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("b-file line " + std::to_string(lineno) + ": bad index '" + n_text + "'");
    }
    if (!out.emplace(n, Count::parse(a_text)).second)
      throw ParseError("b-file line " + std::to_string(lineno) + ": index " + n_text + " repeated");
  }
  return out;
}

inline BFile read_bfile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_bfile(in);
}

inline void write_bfile_line(std::ostream& out, int n, const Count& a) { out << n << ' ' << a << '\n'; }

inline void write_bfile(std::ostream& out, const BFile& table) {
  for (const auto& [n, a] : table) write_bfile_line(out, n, a);
}

}  // namespace deqsort
