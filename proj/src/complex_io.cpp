#include "rsc/complex_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace rsc {

namespace {

[[noreturn]] void fail(long line, const std::string& message) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + message);
}

std::string render(const VertexList& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out + ")";
}

}  // namespace

Complex read_complex(std::istream& in) {
  Complex y;
  bool have_n = false, have_d = false;
  std::optional<BinomialTable> binom;
  std::unordered_set<std::uint64_t> seen;
  std::string raw;
  long line = 0;

  while (std::getline(in, raw)) {
    ++line;
    std::istringstream fields(raw);
    std::string head;
    if (!(fields >> head) || head[0] == '#') continue;

    if (head == "n" || head == "d") {
      long long value;
      if (!(fields >> value)) fail(line, "expected an integer after '" + head + "'");
      std::string extra;
      if (fields >> extra) fail(line, "trailing text after '" + head + "' value");
      if (head == "n") {
        if (have_n) fail(line, "n given twice");
        if (value < 0 || value > INT32_MAX) fail(line, "n out of range");
        y.n = static_cast<std::int32_t>(value);
        have_n = true;
      } else {
        if (have_d) fail(line, "d given twice");
        if (value < 1 || value > INT32_MAX - 1) fail(line, "d out of range");
        y.d = static_cast<std::int32_t>(value);
        have_d = true;
      }
      continue;
    }

    if (head != "simplex")
      fail(line, "unknown directive '" + head + "'");
    if (!have_n || !have_d)
      fail(line, "simplex before both n and d are set");

    VertexList v;
    long long vertex;
    while (fields >> vertex) {
      if (vertex < 0 || vertex >= y.n)
        fail(line, "vertex " + std::to_string(vertex) + " outside [0, " +
                       std::to_string(y.n) + ")");
      v.push_back(static_cast<std::int32_t>(vertex));
    }
    if (!fields.eof()) fail(line, "non-integer vertex");
    if (static_cast<std::int32_t>(v.size()) != y.d + 1)
      fail(line, "expected " + std::to_string(y.d + 1) + " vertices, got " +
                     std::to_string(v.size()));
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i - 1] >= v[i])
        fail(line, "vertices not strictly increasing in " + render(v));
    if (!binom) binom.emplace(y.n > 0 ? y.n : 1, y.d + 1);
    if (!seen.insert(tuple_key(v, *binom)).second)
      fail(line, "duplicate simplex " + render(v));
    y.simplices.push_back(std::move(v));
  }

  if (!have_n) throw std::runtime_error("missing 'n' line");
  if (!have_d) throw std::runtime_error("missing 'd' line");
  std::sort(y.simplices.begin(), y.simplices.end());
  return y;
}

Complex read_complex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  try {
    return read_complex(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_complex(std::ostream& out, const Complex& y) {
  out << "n " << y.n << '\n' << "d " << y.d << '\n';
  auto sorted = y.simplices;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& v : sorted) {
    out << "simplex";
    for (const std::int32_t x : v) out << ' ' << x;
    out << '\n';
  }
}

void write_complex_file(const std::string& path, const Complex& y) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  write_complex(out, y);
  out.flush();
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace rsc
