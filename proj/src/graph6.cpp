// graph6 encoding, as documented with nauty (formats.txt):
//   N(n) then R(x) where x is the upper triangle of the adjacency matrix
//   read column by column, x(0,1) x(0,2) x(1,2) x(0,3) ... packed six bits
//   per byte, most significant bit first, each byte offset by 63.

#include <cstdint>
#include <string>
#include <string_view>

#include "linarb/graph.hpp"

namespace linarb {
namespace {

constexpr int kOffset = 63;
constexpr std::string_view kHeader = ">>graph6<<";

int sextet(char ch) {
  int value = static_cast<unsigned char>(ch) - kOffset;
  if (value < 0 || value > 63) throw GraphError(std::string("graph6: byte out of range: '") + ch + "'");
  return value;
}

}  // namespace

Graph parse_graph6(std::string_view text) {
  if (text.substr(0, kHeader.size()) == kHeader) text.remove_prefix(kHeader.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw GraphError("graph6: empty input");
  if (text.front() == ':' || text.front() == '&') throw GraphError("graph6: sparse6/digraph6 input is not graph6");

  std::size_t pos = 0;
  std::int64_t n = 0;
  if (text[0] != '~') {
    n = sextet(text[0]);
    pos = 1;
  } else if (text.size() >= 2 && text[1] != '~') {
    if (text.size() < 4) throw GraphError("graph6: truncated size field");
    for (std::size_t i = 1; i < 4; ++i) n = (n << 6) | sextet(text[i]);
    pos = 4;
  } else {
    if (text.size() < 8) throw GraphError("graph6: truncated size field");
    for (std::size_t i = 2; i < 8; ++i) n = (n << 6) | sextet(text[i]);
    pos = 8;
  }
  if (n > (1 << 20)) throw GraphError("graph6: vertex count too large");

  const std::int64_t bits = n * (n - 1) / 2;
  const std::int64_t bytes = (bits + 5) / 6;
  if (static_cast<std::int64_t>(text.size() - pos) < bytes) throw GraphError("graph6: truncated bit stream");
  if (static_cast<std::int64_t>(text.size() - pos) > bytes) throw GraphError("graph6: trailing bytes");

  std::vector<Edge> edges;
  std::int64_t k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      int byte = sextet(text[pos + k / 6]);
      if (byte >> (5 - k % 6) & 1) edges.emplace_back(i, j);
    }
  // padding bits must be zero
  if (bytes > 0) {
    int last = sextet(text[pos + bytes - 1]);
    int used = static_cast<int>(bits - (bytes - 1) * 6);
    if (used < 6 && (last & ((1 << (6 - used)) - 1)) != 0) throw GraphError("graph6: nonzero padding");
  }
  return Graph::build(static_cast<int>(n), edges);
}

std::string to_graph6(const Graph& g) {
  std::string out;
  const std::int64_t n = g.order();
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kOffset));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + kOffset));
  } else {
    out += "~~";
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + kOffset));
  }
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + kOffset));
        acc = 0;
        filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + kOffset));
  return out;
}

}  // namespace linarb
