#include "rearr/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace rearr {

namespace {

[[noreturn]] void parse_error(const std::string& source, std::size_t line_no,
                              const std::string& what) {
  throw std::runtime_error(source + ":" + std::to_string(line_no) + ": " + what);
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

SparseFunction parse_sparse_function(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;
  int dim = 0;
  std::vector<std::pair<Point, double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::vector<std::string> fields = split_tabs(line);
    if (fields.size() < 2) parse_error(source_name, line_no, "expected coordinates and a value");
    if (dim == 0)
      dim = static_cast<int>(fields.size()) - 1;
    else if (static_cast<int>(fields.size()) - 1 != dim)
      parse_error(source_name, line_no, "inconsistent dimension");
    Point x(dim);
    for (int k = 0; k < dim; ++k) {
      const std::string& f = fields[k];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), x[k]);
      if (ec != std::errc() || ptr != f.data() + f.size())
        parse_error(source_name, line_no, "bad coordinate '" + f + "'");
    }
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(fields.back(), &used);
      if (used != fields.back().size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      parse_error(source_name, line_no, "bad value '" + fields.back() + "'");
    }
    if (!(value > 0.0)) parse_error(source_name, line_no, "value must be positive");
    rows.emplace_back(std::move(x), value);
  }
  if (rows.empty()) throw std::runtime_error(source_name + ": no data lines");
  SparseFunction u(dim);
  for (auto& [x, v] : rows) {
    if (u.at(x) != 0.0) throw std::runtime_error(source_name + ": duplicate point");
    u.set(x, v);
  }
  return u;
}

SparseFunction read_sparse_function(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_sparse_function(in, path.string());
}

void write_sparse_function(std::ostream& out, const SparseFunction& u) {
  char buf[64];
  for (const auto& [x, v] : u.entries()) {
    for (int c : x) out << c << '\t';
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << '\n';
  }
}

void write_sparse_function(const std::filesystem::path& path, const SparseFunction& u) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_sparse_function(out, u);
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::uint64_t hash = 0xcbf29ce484222325ull;
  char c;
  while (in.get(c)) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace rearr
