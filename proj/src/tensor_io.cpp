#include "zeig/tensor_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace zeig {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokens_of(const std::string& raw) {
  std::string text = raw.substr(0, raw.find('#'));
  std::istringstream ss(text);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

int parse_int(const std::string& tok, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    parse_fail(line, "expected an integer, got '" + tok + "'");
  }
  return v;
}

double parse_double(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used == tok.size()) return v;
  } catch (const std::exception&) {
  }
  parse_fail(line, "expected a number, got '" + tok + "'");
}

}  // namespace

Tensor read_tensor(std::istream& in) {
  int order = 0, dim = 0;
  bool have_header = false;
  std::vector<Entry> entries;
  std::vector<int> entry_lines;
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    auto toks = tokens_of(raw);
    if (toks.empty()) continue;
    if (!have_header) {
      if (toks.size() != 2) parse_fail(line, "header must be 'm n'");
      order = parse_int(toks[0], line);
      dim = parse_int(toks[1], line);
      if (order < 2 || dim < 1) parse_fail(line, "header needs m >= 2 and n >= 1");
      have_header = true;
      continue;
    }
    if (toks.size() != static_cast<std::size_t>(order) + 1) {
      parse_fail(line, "expected " + std::to_string(order) + " indices and a value, got " +
                           std::to_string(toks.size()) + " fields");
    }
    Entry e;
    for (int p = 0; p < order; ++p) e.index.push_back(parse_int(toks[p], line));
    e.value = parse_double(toks.back(), line);
    entries.push_back(std::move(e));
    entry_lines.push_back(line);
  }
  if (!have_header) throw Error(Errc::ParseError, "missing 'm n' header (empty input)");

  // Validate entry by entry so errors point at the offending line.
  for (std::size_t k = 0; k < entries.size(); ++k) {
    try {
      Tensor probe(order, dim, std::span<const Entry>(&entries[k], 1));
    } catch (const Error& err) {
      throw Error(err.code(), "line " + std::to_string(entry_lines[k]) + ": " + err.what());
    }
  }
  try {
    return Tensor(order, dim, entries);
  } catch (const Error& err) {
    throw Error(err.code(), std::string("in tensor file: ") + err.what());
  }
}

Tensor load_tensor(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path.string() + "'");
  return read_tensor(in);
}

void write_tensor(std::ostream& out, const Tensor& a) {
  out << a.order() << ' ' << a.dim() << '\n';
  const auto prec = out.precision(17);
  for (const Entry& e : a.entries()) {
    for (int i : e.index) out << i << ' ';
    out << e.value << '\n';
  }
  out.precision(prec);
}

}  // namespace zeig
