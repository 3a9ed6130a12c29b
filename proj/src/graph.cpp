// SPDX-License-Identifier: Apache-2.0
#include "lanematch/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <string_view>
#include <unordered_map>

namespace lanematch {

namespace {

constexpr char kMagic[4] = {'G', 'M', 'G', '1'};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::uint64_t> parse_u64(std::string_view token) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

// "# Nodes: 36692 Edges: 367662" -> 36692
std::optional<std::uint64_t> parse_nodes_header(std::string_view line) {
  std::string lower(line);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  auto pos = lower.find("nodes:");
  if (pos == std::string::npos) return std::nullopt;
  auto tokens = split_ws(std::string_view(lower).substr(pos + 6));
  if (tokens.empty()) return std::nullopt;
  return parse_u64(tokens.front());
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
void write_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<unsigned char>(static_cast<std::uint64_t>(value) >> (8 * i));
  }
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
void write_le_array(std::ostream& out, std::span<const T> values) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size_bytes()));
  } else {
    for (T v : values) write_le(out, v);
  }
}

template <typename T>
T read_le(std::istream& in, const char* what) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw FormatError(std::string("truncated binary graph while reading ") + what);
  }
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= std::uint64_t{bytes[i]} << (8 * i);
  return static_cast<T>(value);
}

template <typename T>
void read_le_array(std::istream& in, std::vector<T>& out, std::uint64_t count, const char* what) {
  out.resize(count);
  if constexpr (std::endian::native == std::endian::little) {
    if (!in.read(reinterpret_cast<char*>(out.data()),
                 static_cast<std::streamsize>(count * sizeof(T)))) {
      throw FormatError(std::string("truncated binary graph while reading ") + what);
    }
  } else {
    for (auto& v : out) v = read_le<T>(in, what);
  }
}

}  // namespace

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges, std::vector<LabelId> labels,
                        LoadReport* report) {
  if (n > std::numeric_limits<VertexId>::max()) throw RangeError("vertex count exceeds 32-bit ids");
  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  std::uint64_t self_loops = 0;
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw RangeError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") references a vertex >= n = " + std::to_string(n));
    }
    if (u == v) {
      ++self_loops;
      continue;
    }
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  const auto before = directed.size();
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (auto [u, v] : directed) ++g.offsets_[u + 1];
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.neighbors_.resize(directed.size());
  for (std::size_t i = 0; i < directed.size(); ++i) g.neighbors_[i] = directed[i].second;

  if (labels.empty()) labels.assign(n, 0);
  if (labels.size() != n) throw RangeError("label array size does not match vertex count");
  g.labels_ = std::move(labels);
  LabelId max_label = 0;
  for (auto l : g.labels_) max_label = std::max(max_label, l);
  g.label_count_ = static_cast<std::uint32_t>(max_label) + 1;
  g.refresh_stats();

  if (report != nullptr) {
    report->self_loops_dropped += self_loops;
    report->duplicate_edges_dropped += (before - directed.size()) / 2;
  }
  return g;
}

Graph Graph::from_csr(std::vector<EdgeOffset> offsets, std::vector<VertexId> neighbors,
                      std::vector<LabelId> labels, std::uint32_t label_count) {
  const std::size_t n = labels.size();
  if (offsets.size() != n + 1) throw FormatError("offsets must have n + 1 entries");
  if (offsets.front() != 0 || offsets.back() != neighbors.size()) {
    throw FormatError("offsets must start at 0 and end at the neighbor count");
  }
  if (label_count == 0) throw FormatError("label_count must be positive");
  for (std::size_t v = 0; v < n; ++v) {
    if (offsets[v] > offsets[v + 1]) throw FormatError("offsets are not nondecreasing");
    if (labels[v] >= label_count) throw FormatError("label id out of range");
    for (EdgeOffset e = offsets[v]; e < offsets[v + 1]; ++e) {
      const VertexId w = neighbors[e];
      if (w >= n) throw FormatError("neighbor id out of range");
      if (w == v) throw FormatError("self-loop in adjacency");
      if (e > offsets[v] && neighbors[e - 1] >= w) {
        throw FormatError("neighbor slice is not strictly increasing");
      }
    }
  }
  Graph g;
  g.offsets_ = std::move(offsets);
  g.neighbors_ = std::move(neighbors);
  g.labels_ = std::move(labels);
  g.label_count_ = label_count;
  for (std::size_t v = 0; v < n; ++v) {
    for (VertexId w : g.neighbors(static_cast<VertexId>(v))) {
      if (!contains_edge(g, w, static_cast<VertexId>(v))) {
        throw FormatError("adjacency is not symmetric");
      }
    }
  }
  g.refresh_stats();
  return g;
}

void Graph::set_external_ids(std::vector<std::uint64_t> ids) {
  if (!ids.empty() && ids.size() != num_vertices()) {
    throw RangeError("external id map size does not match vertex count");
  }
  external_ids_ = std::move(ids);
}

Graph Graph::with_labels(std::vector<LabelId> labels, std::uint32_t label_count) const {
  if (labels.size() != num_vertices()) throw RangeError("label array size does not match");
  for (auto l : labels) {
    if (l >= label_count) throw RangeError("label id out of range");
  }
  Graph g = *this;
  g.labels_ = std::move(labels);
  g.label_count_ = label_count;
  return g;
}

void Graph::refresh_stats() {
  const auto stats = degree_stats(*this);
  d_max_ = stats.d_max;
  d_avg_ = stats.d_avg;
}

Graph parse_text(std::istream& edges, std::istream* labels, LoadReport* report,
                 const std::string& edges_name, const std::string& labels_name) {
  LoadReport local;
  LoadReport& rep = report != nullptr ? *report : local;

  std::optional<std::uint64_t> declared_n;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(edges, line)) {
    ++lineno;
    auto body = strip(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      if (!declared_n && raw.empty()) declared_n = parse_nodes_header(body);
      continue;
    }
    auto tokens = split_ws(body);
    if (tokens.size() != 2) {
      throw ParseError(edges_name, lineno, "expected \"u v\", got \"" + std::string(body) + "\"");
    }
    auto u = parse_u64(tokens[0]);
    auto v = parse_u64(tokens[1]);
    if (!u || !v) throw ParseError(edges_name, lineno, "vertex ids must be nonnegative integers");
    if (declared_n && (*u >= *declared_n || *v >= *declared_n)) {
      throw RangeError(edges_name + ":" + std::to_string(lineno) + ": vertex id >= declared n = " +
                       std::to_string(*declared_n));
    }
    raw.emplace_back(*u, *v);
    ++rep.edge_lines;
  }

  // External id -> dense id.
  std::size_t n = 0;
  std::vector<std::uint64_t> external;
  std::unordered_map<std::uint64_t, VertexId> dense;
  if (declared_n) {
    n = *declared_n;
  } else {
    for (auto [u, v] : raw) {
      external.push_back(u);
      external.push_back(v);
    }
    std::sort(external.begin(), external.end());
    external.erase(std::unique(external.begin(), external.end()), external.end());
    n = external.size();
    if (!external.empty() && external.back() + 1 != external.size()) {
      rep.remapped = true;
      dense.reserve(external.size());
      for (std::size_t i = 0; i < external.size(); ++i) {
        dense.emplace(external[i], static_cast<VertexId>(i));
      }
    } else {
      external.clear();
    }
  }
  if (n > std::numeric_limits<VertexId>::max()) {
    throw RangeError(edges_name + ": vertex count exceeds 32-bit ids");
  }
  auto to_dense = [&](std::uint64_t id) -> std::optional<VertexId> {
    if (rep.remapped) {
      auto it = dense.find(id);
      if (it == dense.end()) return std::nullopt;
      return it->second;
    }
    if (id >= n) return std::nullopt;
    return static_cast<VertexId>(id);
  };

  std::vector<Edge> list;
  list.reserve(raw.size());
  for (auto [u, v] : raw) list.emplace_back(*to_dense(u), *to_dense(v));
  raw.clear();
  raw.shrink_to_fit();

  std::vector<LabelId> label_array(n, 0);
  if (labels != nullptr) {
    lineno = 0;
    while (std::getline(*labels, line)) {
      ++lineno;
      auto body = strip(line);
      if (body.empty() || body.front() == '#') continue;
      auto tokens = split_ws(body);
      if (tokens.size() != 2) {
        throw ParseError(labels_name, lineno, "expected \"v label\", got \"" + std::string(body) + "\"");
      }
      auto v = parse_u64(tokens[0]);
      auto l = parse_u64(tokens[1]);
      if (!v) throw ParseError(labels_name, lineno, "vertex id must be a nonnegative integer");
      if (!l || *l > std::numeric_limits<LabelId>::max()) {
        throw ParseError(labels_name, lineno, "label must be an integer in [0, 65535]");
      }
      auto d = to_dense(*v);
      if (!d) {
        if (declared_n) {
          throw RangeError(labels_name + ":" + std::to_string(lineno) +
                           ": vertex id >= declared n = " + std::to_string(n));
        }
        ++rep.unknown_label_vertices;
        continue;
      }
      label_array[*d] = static_cast<LabelId>(*l);
    }
  }

  Graph g = Graph::from_edges(n, list, std::move(label_array), &rep);
  if (rep.remapped) g.set_external_ids(std::move(external));
  return g;
}

Graph load_text(const std::filesystem::path& path,
                const std::optional<std::filesystem::path>& labels_path, LoadReport* report) {
  std::ifstream edges(path);
  if (!edges) throw IoError("cannot open " + path.string());
  std::ifstream labels;
  if (labels_path) {
    labels.open(*labels_path);
    if (!labels) throw IoError("cannot open " + labels_path->string());
  }
  return parse_text(edges, labels_path ? &labels : nullptr, report, path.string(),
                    labels_path ? labels_path->string() : std::string());
}

void save_text(const Graph& g, const std::filesystem::path& path,
               const std::optional<std::filesystem::path>& labels_path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "# Nodes: " << g.num_vertices() << " Edges: " << g.num_edges() << '\n';
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    for (VertexId v : g.neighbors(u)) {
      if (u < v) out << u << ' ' << v << '\n';
    }
  }
  if (!out) throw Error("write failed: " + path.string());
  if (labels_path) {
    std::ofstream lab(*labels_path);
    if (!lab) throw Error("cannot write " + labels_path->string());
    for (VertexId v = 0; v < g.num_vertices(); ++v) lab << v << ' ' << g.label(v) << '\n';
    if (!lab) throw Error("write failed: " + labels_path->string());
  }
}

void save_binary(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(kMagic, sizeof(kMagic));
  write_le<std::uint64_t>(out, g.num_vertices());
  write_le<std::uint64_t>(out, g.adjacency().size());
  write_le_array(out, g.offsets());
  write_le_array(out, g.adjacency());
  write_le<std::uint32_t>(out, g.label_count());
  write_le_array(out, g.labels());
  if (!out) throw Error("write failed: " + path.string());
}

Graph load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[4] = {};
  if (!in.read(magic, sizeof(magic))) throw FormatError("truncated binary graph: missing magic");
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw FormatError(path.string() + ": bad magic or unsupported version (expected GMG1)");
  }
  const auto n = read_le<std::uint64_t>(in, "n");
  const auto m = read_le<std::uint64_t>(in, "m");
  if (n > std::numeric_limits<VertexId>::max()) throw FormatError("vertex count exceeds 32-bit ids");
  // Reject absurd headers before allocating.
  const auto here = in.tellg();
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::uint64_t>(in.tellg());
  in.seekg(here);
  const std::uint64_t need = 4 + 16 + (n + 1) * 8 + m * 4 + 4 + n * 2;
  if (size < need) throw FormatError(path.string() + ": truncated binary graph");

  std::vector<EdgeOffset> offsets;
  std::vector<VertexId> neighbors;
  std::vector<LabelId> labels;
  read_le_array(in, offsets, n + 1, "offsets");
  read_le_array(in, neighbors, m, "neighbors");
  const auto label_count = read_le<std::uint32_t>(in, "label_count");
  read_le_array(in, labels, n, "labels");
  return Graph::from_csr(std::move(offsets), std::move(neighbors), std::move(labels), label_count);
}

Graph load_graph(const std::filesystem::path& path,
                 const std::optional<std::filesystem::path>& labels_path, LoadReport* report) {
  {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw IoError("cannot open " + path.string());
    char magic[4] = {};
    if (probe.read(magic, sizeof(magic)) && std::memcmp(magic, kMagic, sizeof(kMagic)) == 0) {
      if (labels_path) throw ConfigError("binary graphs carry their own labels");
      return load_binary(path);
    }
  }
  return load_text(path, labels_path, report);
}

bool contains_edge(const Graph& g, VertexId u, VertexId v) noexcept {
  auto slice = g.neighbors(u);
  return std::binary_search(slice.begin(), slice.end(), v);
}

DegreeStats degree_stats(const Graph& g) noexcept {
  DegreeStats s;
  const auto offsets = g.offsets();
  const std::size_t n = offsets.size() - 1;
  for (std::size_t v = 0; v < n; ++v) {
    s.d_max = std::max<std::uint32_t>(s.d_max, static_cast<std::uint32_t>(offsets[v + 1] - offsets[v]));
  }
  s.d_avg = n == 0 ? 0.0 : static_cast<double>(offsets[n]) / static_cast<double>(n);
  return s;
}

}  // namespace lanematch
