#include <algorithm>
#include <charconv>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "palcolor/graph.hpp"

namespace palcolor {

namespace detail {

std::uint64_t parse_index(std::string_view token, std::size_t lineno) {
  if (!token.empty() && token.front() == '-') {
    throw Error(Errc::bad_index, "line " + std::to_string(lineno) + ": negative index " + std::string(token));
  }
  std::uint64_t v = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": not an index: " + std::string(token));
  }
  return v;
}

}  // namespace detail

ExplicitGraph load_edge_list(std::istream& in, GraphFormat format, ExplicitGraph::BuildReport* report) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  std::uint64_t declared = 0;
  bool have_declared = false;
  bool mtx = format == GraphFormat::matrix_market;
  bool mtx_size_seen = false;

  if (format != GraphFormat::edge_list) {
    const int c = in.peek();
    if (c == '%') {
      std::getline(in, line);
      ++lineno;
      if (line.rfind("%%MatrixMarket", 0) == 0) {
        mtx = true;
        if (line.find("coordinate") == std::string::npos) {
          throw Error(Errc::parse_error, "only coordinate MatrixMarket files are supported");
        }
      }
    }
    if (format == GraphFormat::matrix_market && !mtx) throw Error(Errc::parse_error, "missing %%MatrixMarket header");
  }

  std::uint64_t max_index = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = detail::trim(line);
    if (body.empty()) continue;
    if (body.front() == '#' || body.front() == '%') {
      constexpr std::string_view directive = "vertices:";
      auto rest = detail::trim(body.substr(1));
      if (!mtx && rest.rfind(directive, 0) == 0) {
        declared = detail::parse_index(detail::trim(rest.substr(directive.size())), lineno);
        have_declared = true;
      }
      continue;
    }
    const auto tok = detail::split_ws(body);
    if (mtx && !mtx_size_seen) {
      if (tok.size() < 3) throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": bad size line");
      const auto rows = detail::parse_index(tok[0], lineno);
      const auto cols = detail::parse_index(tok[1], lineno);
      if (rows != cols) throw Error(Errc::parse_error, "MatrixMarket matrix is not square");
      declared = rows;
      have_declared = true;
      mtx_size_seen = true;
      continue;
    }
    if (tok.size() < 2) throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": expected two indices");
    auto u = detail::parse_index(tok[0], lineno);
    auto v = detail::parse_index(tok[1], lineno);
    if (mtx) {
      if (u == 0 || v == 0) throw Error(Errc::bad_index, "line " + std::to_string(lineno) + ": MatrixMarket is one-based");
      --u;
      --v;
    }
    if (have_declared && (u >= declared || v >= declared)) {
      throw Error(Errc::bad_index, "line " + std::to_string(lineno) + ": index beyond " + std::to_string(declared) +
                                       " vertices");
    }
    if (u >= std::numeric_limits<vertex_t>::max() || v >= std::numeric_limits<vertex_t>::max()) {
      throw Error(Errc::bad_index, "line " + std::to_string(lineno) + ": index too large");
    }
    max_index = std::max({max_index, u, v});
    any = true;
    edges.emplace_back(static_cast<vertex_t>(u), static_cast<vertex_t>(v));
  }
  if (mtx && !mtx_size_seen) throw Error(Errc::parse_error, "MatrixMarket size line missing");
  const std::size_t n = have_declared ? declared : (any ? max_index + 1 : 0);
  return ExplicitGraph::from_edges(n, edges, report);
}

void write_edge_list(std::ostream& out, const ExplicitGraph& g) {
  out << "# vertices: " << g.num_vertices() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_matrix_market(std::ostream& out, const ExplicitGraph& g) {
  out << "%%MatrixMarket matrix coordinate pattern symmetric\n";
  out << g.num_vertices() << ' ' << g.num_vertices() << ' ' << g.num_edges() << '\n';
  // Lower triangle, one-based.
  for (auto [u, v] : g.edges()) out << (v + 1) << ' ' << (u + 1) << '\n';
}

namespace {

template <class T>
void put_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<unsigned char>(value >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw Error(Errc::parse_error, "truncated CSR file");
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
  return value;
}

}  // namespace

constexpr char kCsrMagic[4] = {'P', 'C', 'S', 'R'};
constexpr std::uint32_t kCsrVersion = 1;

void write_csr_binary(std::ostream& out, const ExplicitGraph& g) {
  out.write(kCsrMagic, 4);
  put_le<std::uint32_t>(out, kCsrVersion);
  put_le<std::uint64_t>(out, g.num_vertices());
  put_le<std::uint64_t>(out, g.adjacency().size());
  for (auto o : g.offsets()) put_le<std::uint64_t>(out, o);
  for (auto v : g.adjacency()) put_le<std::uint32_t>(out, v);
}

ExplicitGraph read_csr_binary(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kCsrMagic, 4) != 0) throw Error(Errc::parse_error, "not a PCSR file");
  if (get_le<std::uint32_t>(in) != kCsrVersion) throw Error(Errc::parse_error, "unsupported PCSR version");
  const auto n = get_le<std::uint64_t>(in);
  const auto nnz = get_le<std::uint64_t>(in);
  std::vector<std::uint64_t> offsets(n + 1);
  for (auto& o : offsets) o = get_le<std::uint64_t>(in);
  std::vector<vertex_t> adj(nnz);
  for (auto& v : adj) v = get_le<std::uint32_t>(in);
  if (offsets.back() != nnz) throw Error(Errc::parse_error, "PCSR offsets inconsistent with nnz");
  return ExplicitGraph(std::move(offsets), std::move(adj));
}

}  // namespace palcolor
