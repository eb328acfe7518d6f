#include "saddle/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace saddle {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  for (std::string t; ss >> t;) tokens.push_back(t);
  return tokens;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

long long parse_index(const std::string& token, std::size_t line_no) {
  long long value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ParseError(line_no, "expected an integer, got '" + token + "'");
  return value;
}

double parse_real(const std::string& token, std::size_t line_no) {
  // from_chars for double is not available in every libstdc++ we target
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ParseError(line_no, "expected a real number, got '" + token + "'");
  }
  if (used != token.size()) throw ParseError(line_no, "expected a real number, got '" + token + "'");
  return value;
}

}  // namespace

SparseMatrix parse_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw ParseError(1, "empty input, missing %%MatrixMarket banner");
  ++line_no;
  const auto banner = split(line);
  if (banner.empty() || banner[0] != "%%MatrixMarket") {
    throw ParseError(line_no, "missing %%MatrixMarket banner");
  }
  if (banner.size() != 5) throw ParseError(line_no, "banner must have 5 fields");
  if (lower(banner[1]) != "matrix") throw ParseError(line_no, "unsupported object '" + banner[1] + "'");
  if (lower(banner[2]) != "coordinate") {
    throw ParseError(line_no, "unsupported format '" + banner[2] + "', only coordinate is read");
  }
  const std::string field = lower(banner[3]);
  if (field != "real" && field != "integer") {
    throw ParseError(line_no, "unsupported field '" + banner[3] + "'");
  }
  const std::string symmetry = lower(banner[4]);
  if (symmetry != "general" && symmetry != "symmetric") {
    throw ParseError(line_no, "unsupported symmetry '" + banner[4] + "'");
  }
  const bool symmetric = symmetry == "symmetric";

  // size line, after comments
  std::vector<std::string> size_tokens;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.starts_with('%') || blank(line)) continue;
    size_tokens = split(line);
    break;
  }
  if (size_tokens.size() != 3) throw ParseError(line_no, "expected size line 'rows cols entries'");
  const long long rows = parse_index(size_tokens[0], line_no);
  const long long cols = parse_index(size_tokens[1], line_no);
  const long long count = parse_index(size_tokens[2], line_no);
  if (rows < 0 || cols < 0 || count < 0) throw ParseError(line_no, "negative size");
  if (symmetric && rows != cols) throw ParseError(line_no, "symmetric matrix must be square");

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(symmetric ? 2 * count : count));
  long long seen = 0;
  while (seen < count && std::getline(in, line)) {
    ++line_no;
    if (line.starts_with('%') || blank(line)) continue;
    const auto tokens = split(line);
    if (tokens.size() != 3) throw ParseError(line_no, "expected 'row col value'");
    const long long r = parse_index(tokens[0], line_no);
    const long long c = parse_index(tokens[1], line_no);
    const double v = parse_real(tokens[2], line_no);
    if (r < 1 || r > rows || c < 1 || c > cols) {
      throw ParseError(line_no, "index (" + tokens[0] + ", " + tokens[1] + ") out of range");
    }
    if (!std::isfinite(v)) throw ParseError(line_no, "non-finite value");
    triplets.push_back({static_cast<Index>(r - 1), static_cast<Index>(c - 1), v});
    if (symmetric && r != c) triplets.push_back({static_cast<Index>(c - 1), static_cast<Index>(r - 1), v});
    ++seen;
  }
  if (seen != count) {
    throw ParseError(line_no, "expected " + std::to_string(count) + " entries, found " + std::to_string(seen));
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.starts_with('%') || blank(line)) continue;
    throw ParseError(line_no, "more entries than the " + std::to_string(count) + " declared");
  }
  return SparseMatrix::from_triplets(static_cast<Index>(rows), static_cast<Index>(cols), std::move(triplets));
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open Matrix Market file " + path.string());
  return parse_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& m) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows << ' ' << m.cols << ' ' << m.nonzeros() << '\n';
  out << std::setprecision(17);
  for (Index r = 0; r < m.rows; ++r) {
    for (Index k = m.row_offsets[static_cast<std::size_t>(r)];
         k < m.row_offsets[static_cast<std::size_t>(r + 1)]; ++k) {
      out << r + 1 << ' ' << m.col_indices[static_cast<std::size_t>(k)] + 1 << ' '
          << m.values[static_cast<std::size_t>(k)] << '\n';
    }
  }
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_matrix_market(out, m);
}

}  // namespace saddle
