#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "sgt/core.hpp"

namespace sgt {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_int(std::string_view tok, std::size_t line, const char* what) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(tok) + "'");
  }
  return value;
}

constexpr std::string_view kDegreeDirective = "degree_bound";

}  // namespace

SignedGraph load_edge_list(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  long long n = 0, m = 0;
  std::optional<int> degree_bound;
  std::vector<SignedEdge> edges;
  std::unordered_set<std::uint64_t> seen;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0].front() == '#') {
      // "# degree_bound d" carries the bounded-model promise.
      if (tokens.size() == 3 && tokens[0] == "#" && tokens[1] == kDegreeDirective) {
        long long d = parse_int(tokens[2], line_no, "degree bound");
        if (d < 1) throw ParseError(line_no, "degree bound must be positive");
        degree_bound = static_cast<int>(d);
      }
      continue;
    }
    if (!have_header) {
      if (tokens.size() != 2) throw ParseError(line_no, "header must be 'n m'");
      n = parse_int(tokens[0], line_no, "node count");
      m = parse_int(tokens[1], line_no, "edge count");
      if (n < 1) throw ParseError(line_no, "node count must be at least 1");
      if (n > std::numeric_limits<Node>::max() - 1) throw ParseError(line_no, "node count too large");
      if (m < 0) throw ParseError(line_no, "edge count must be non-negative");
      have_header = true;
      edges.reserve(static_cast<std::size_t>(std::min<long long>(m, 1 << 24)));
      continue;
    }
    if (tokens.size() != 3) throw ParseError(line_no, "edge line must be 'u v s'");
    long long u = parse_int(tokens[0], line_no, "node id");
    long long v = parse_int(tokens[1], line_no, "node id");
    if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError(line_no, "node id out of range");
    if (u == v) throw ParseError(line_no, "self-loop at " + std::to_string(u));
    Sign s;
    if (tokens[2] == "+") {
      s = Sign::Plus;
    } else if (tokens[2] == "-") {
      s = Sign::Minus;
    } else {
      throw ParseError(line_no, "sign must be '+' or '-', got '" + std::string(tokens[2]) + "'");
    }
    const auto lo = static_cast<std::uint64_t>(std::min(u, v));
    const auto hi = static_cast<std::uint64_t>(std::max(u, v));
    if (!seen.insert((lo << 32) | hi).second) {
      throw ParseError(line_no, "duplicate edge (" + std::to_string(lo) + "," + std::to_string(hi) + ")");
    }
    edges.push_back({static_cast<Node>(u), static_cast<Node>(v), s});
  }
  if (!have_header) throw ParseError(line_no, "missing header 'n m'");
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError(line_no, "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  try {
    return SignedGraph::from_edges(static_cast<Node>(n), edges, degree_bound);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
}

SignedGraph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return load_edge_list(in);
}

void save_edge_list(const SignedGraph& g, std::ostream& out) {
  if (auto d = g.degree_bound()) out << "# " << kDegreeDirective << ' ' << *d << '\n';
  const auto edges = g.edges();
  out << g.node_count() << ' ' << edges.size() << '\n';
  for (const auto& e : edges) out << e.u << ' ' << e.v << ' ' << to_char(e.sign) << '\n';
}

std::string to_edge_list(const SignedGraph& g) {
  std::ostringstream out;
  save_edge_list(g, out);
  return out.str();
}

}  // namespace sgt
