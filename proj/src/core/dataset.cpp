#include "ovkit/core/dataset.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ovkit/core/errors.hpp"

namespace ovkit {

namespace {

std::size_t parse_count(const std::string& token, const char* what) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidArgument(std::string("dataset header: malformed ") + what + " '" + token + "'");
  return std::stoull(token);
}

}  // namespace

VectorFamily read_family(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("dataset is empty");
  std::istringstream header(line);
  std::string d_tok, n_tok, s_tok, extra;
  header >> d_tok >> n_tok;
  if (n_tok.empty()) throw InvalidArgument("dataset header must be 'd n [sparse_bound]'");
  const std::size_t d = parse_count(d_tok, "dimension");
  const std::size_t n = parse_count(n_tok, "count");
  std::optional<std::size_t> sparse_bound;
  if (header >> s_tok) sparse_bound = parse_count(s_tok, "sparse bound");
  if (header >> extra) throw InvalidArgument("dataset header has trailing tokens");

  VectorFamily family(d, sparse_bound);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line))
      throw InvalidArgument("dataset declares " + std::to_string(n) + " vectors but has " + std::to_string(i));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t line_no = i + 2;
    if (line.size() != d)
      throw InvalidArgument("line " + std::to_string(line_no) + ": expected " + std::to_string(d) + " characters, got " +
                            std::to_string(line.size()));
    try {
      family.push_back(BitVector::from_string(line));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw InvalidArgument("dataset has trailing data");
  return family;
}

void write_family(std::ostream& out, const VectorFamily& family) {
  out << family.dim() << ' ' << family.size();
  if (family.sparse_bound()) out << ' ' << *family.sparse_bound();
  out << '\n';
  for (const auto& v : family) out << v.to_string() << '\n';
}

VectorFamily load_family(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open dataset '" + path.string() + "'");
  return read_family(in);
}

void save_family(const std::filesystem::path& path, const VectorFamily& family) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write dataset '" + path.string() + "'");
  write_family(out, family);
}

}  // namespace ovkit
