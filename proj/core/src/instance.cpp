#include "revmax/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "revmax/rng.hpp"

namespace revmax {

namespace {

// Shortest decimal form that round-trips to the same double.
std::string format_number(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace

Instance::Instance(std::vector<NodeDecl> nodes, std::vector<EdgeDecl> edges,
                   double budget, double cpe) {
  if (!(budget > 0) || !std::isfinite(budget))
    throw std::invalid_argument("budget must be positive and finite");
  if (!(cpe >= 0) || !std::isfinite(cpe))
    throw std::invalid_argument("cpe must be non-negative and finite");
  budget_ = budget;
  cpe_ = cpe;

  std::sort(nodes.begin(), nodes.end(),
            [](const NodeDecl& a, const NodeDecl& b) { return a.id < b.id; });
  std::unordered_map<std::string, NodeId> index;
  index.reserve(nodes.size());
  for (const NodeDecl& nd : nodes) {
    if (nd.id.empty())
      throw std::invalid_argument("node id must be non-empty");
    if (!(nd.cost >= 0) || !std::isfinite(nd.cost))
      throw std::invalid_argument("node '" + nd.id +
                                  "': cost must be non-negative and finite");
    if (!index.emplace(nd.id, NodeId(names_.size())).second)
      throw std::invalid_argument("duplicate node id '" + nd.id + "'");
    names_.push_back(nd.id);
    costs_.push_back(nd.cost);
    max_cost_ = std::max(max_cost_, nd.cost);
  }

  edges_.reserve(edges.size());
  for (const EdgeDecl& ed : edges) {
    auto src = index.find(ed.src);
    auto dst = index.find(ed.dst);
    if (src == index.end())
      throw std::invalid_argument("edge references unknown node '" + ed.src + "'");
    if (dst == index.end())
      throw std::invalid_argument("edge references unknown node '" + ed.dst + "'");
    if (src->second == dst->second)
      throw std::invalid_argument("self-loop on node '" + ed.src + "'");
    if (!(ed.rho >= 0.0 && ed.rho <= 1.0))
      throw std::invalid_argument("edge " + ed.src + " -> " + ed.dst +
                                  ": probability must lie in [0, 1]");
    edges_.push_back(Edge{src->second, dst->second, ed.rho});
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i].src == edges_[i - 1].src && edges_[i].dst == edges_[i - 1].dst)
      throw std::invalid_argument("duplicate edge " + names_[edges_[i].src] +
                                  " -> " + names_[edges_[i].dst]);

  out_begin_.assign(num_nodes() + 1, 0);
  for (const Edge& e : edges_) ++out_begin_[e.src + 1];
  for (std::size_t v = 1; v <= num_nodes(); ++v)
    out_begin_[v] += out_begin_[v - 1];
  edge_ids_.resize(edges_.size());
  std::iota(edge_ids_.begin(), edge_ids_.end(), EdgeId(0));
  for (EdgeId e = 0; e < edges_.size(); ++e)
    if (edges_[e].rho > 0.0 && edges_[e].rho < 1.0) uncertain_.push_back(e);
}

double Instance::total_cost(std::span<const NodeId> seeds) const {
  double sum = 0;
  for (NodeId v : seeds) sum += costs_[v];
  return sum;
}

std::optional<NodeId> Instance::find_node(std::string_view id) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), id);
  if (it == names_.end() || *it != id) return std::nullopt;
  return NodeId(it - names_.begin());
}

std::span<const EdgeId> Instance::out_edges(NodeId v) const {
  // Edges are sorted by (src, dst), so the out-edges of v occupy the
  // contiguous id range [out_begin_[v], out_begin_[v+1]).
  return std::span<const EdgeId>(edge_ids_).subspan(
      out_begin_[v], out_begin_[v + 1] - out_begin_[v]);
}

bool Instance::operator==(const Instance& other) const {
  auto edge_eq = [](const Edge& a, const Edge& b) {
    return a.src == b.src && a.dst == b.dst && a.rho == b.rho;
  };
  return names_ == other.names_ && costs_ == other.costs_ &&
         budget_ == other.budget_ && cpe_ == other.cpe_ &&
         edges_.size() == other.edges_.size() &&
         std::equal(edges_.begin(), edges_.end(), other.edges_.begin(), edge_eq);
}

namespace {

// One whitespace-split line with its 1-based position; comments stripped.
struct Line {
  std::size_t no;
  std::vector<std::string> fields;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                       : eol - pos);
    ++line_no;
    if (std::size_t hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    Line line{line_no, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i])))
        ++i;
      std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])))
        ++i;
      if (i > start) line.fields.emplace_back(raw.substr(start, i - start));
    }
    if (!line.fields.empty()) lines.push_back(std::move(line));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

double parse_number(const Line& line, const std::string& field,
                    const char* what) {
  double value = 0;
  const char* first = field.data();
  const char* last = first + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(line.no, std::string("invalid ") + what + " '" + field + "'");
  return value;
}

std::size_t parse_count(const Line& line, const std::string& field,
                        const char* what) {
  double value = parse_number(line, field, what);
  if (value < 0 || value != std::floor(value) || value > 1e9)
    throw ParseError(line.no,
                     std::string(what) + " must be a non-negative integer");
  return static_cast<std::size_t>(value);
}

}  // namespace

Instance parse_instance(std::string_view text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty instance (missing 'ic' header)");

  const Line& header = lines[0];
  if (header.fields[0] != "ic" || header.fields.size() != 5)
    throw ParseError(header.no,
                     "expected header 'ic <nodes> <edges> <budget> <cpe>'");
  std::size_t n = parse_count(header, header.fields[1], "node count");
  std::size_t m = parse_count(header, header.fields[2], "edge count");
  double budget = parse_number(header, header.fields[3], "budget");
  double cpe = parse_number(header, header.fields[4], "cpe");

  if (lines.size() != 1 + n + m)
    throw ParseError(header.no, "header announces " + std::to_string(n) +
                                    " nodes and " + std::to_string(m) +
                                    " edges but file has " +
                                    std::to_string(lines.size() - 1) +
                                    " declarations");

  std::vector<NodeDecl> nodes;
  nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Line& line = lines[1 + i];
    if (line.fields[0] != "node" || line.fields.size() != 3)
      throw ParseError(line.no, "expected 'node <id> <cost>'");
    nodes.push_back(
        NodeDecl{line.fields[1], parse_number(line, line.fields[2], "cost")});
  }
  std::vector<EdgeDecl> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Line& line = lines[1 + n + i];
    if (line.fields[0] != "edge" || line.fields.size() != 4)
      throw ParseError(line.no, "expected 'edge <src> <dst> <rho>'");
    edges.push_back(EdgeDecl{line.fields[1], line.fields[2],
                             parse_number(line, line.fields[3], "probability")});
  }

  try {
    return Instance(std::move(nodes), std::move(edges), budget, cpe);
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

Instance load_instance(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

Instance load_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return load_instance(in);
}

std::string to_text(const Instance& inst) {
  std::string out = "ic " + std::to_string(inst.num_nodes()) + ' ' +
                    std::to_string(inst.num_edges()) + ' ' +
                    format_number(inst.budget()) + ' ' +
                    format_number(inst.cpe()) + '\n';
  for (NodeId v = 0; v < inst.num_nodes(); ++v)
    out += "node " + inst.node_name(v) + ' ' + format_number(inst.cost(v)) + '\n';
  for (const Edge& e : inst.edges())
    out += "edge " + inst.node_name(e.src) + ' ' + inst.node_name(e.dst) + ' ' +
           format_number(e.rho) + '\n';
  return out;
}

void save_instance(const Instance& inst, std::ostream& out) {
  out << to_text(inst);
}

void save_instance_file(const Instance& inst,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  save_instance(inst, out);
  if (!out.flush()) throw std::runtime_error("write failed for '" + path.string() + "'");
}

Instance generate_random_instance(std::size_t n, std::size_t m,
                                  double prob_lo, double prob_hi,
                                  double cost_lo, double cost_hi,
                                  double budget, double cpe,
                                  std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("need at least one node");
  if (m > n * (n - 1))
    throw std::invalid_argument("cannot place " + std::to_string(m) +
                                " distinct edges on " + std::to_string(n) +
                                " nodes");
  if (!(0.0 <= prob_lo && prob_lo <= prob_hi && prob_hi <= 1.0))
    throw std::invalid_argument("probability range must satisfy 0 <= lo <= hi <= 1");
  if (!(0.0 <= cost_lo && cost_lo <= cost_hi))
    throw std::invalid_argument("cost range must satisfy 0 <= lo <= hi");

  Rng rng(splitmix64(seed));

  // Zero-padded ids so lexicographic order matches numeric order.
  std::size_t width = std::to_string(n - 1).size();
  std::vector<NodeDecl> nodes;
  nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string num = std::to_string(i);
    nodes.push_back(NodeDecl{"u" + std::string(width - num.size(), '0') + num,
                             cost_lo + uniform01(rng) * (cost_hi - cost_lo)});
  }

  // Pick m distinct ordered pairs. For small pair spaces a partial
  // Fisher-Yates over the full enumeration is exact and fast; for large
  // sparse graphs rejection sampling terminates quickly.
  std::vector<std::pair<NodeId, NodeId>> picked;
  picked.reserve(m);
  std::size_t pair_space = n * (n - 1);
  if (pair_space <= (1u << 20)) {
    std::vector<std::pair<NodeId, NodeId>> all;
    all.reserve(pair_space);
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v)
        if (u != v) all.emplace_back(u, v);
    for (std::size_t k = 0; k < m; ++k) {
      std::size_t j = k + bounded(rng, all.size() - k);
      std::swap(all[k], all[j]);
      picked.push_back(all[k]);
    }
  } else {
    std::unordered_set<std::uint64_t> seen;
    while (picked.size() < m) {
      NodeId u = NodeId(bounded(rng, n));
      NodeId v = NodeId(bounded(rng, n));
      if (u == v) continue;
      if (seen.insert((std::uint64_t(u) << 32) | v).second)
        picked.emplace_back(u, v);
    }
  }

  std::vector<EdgeDecl> edges;
  edges.reserve(m);
  for (auto [u, v] : picked)
    edges.push_back(EdgeDecl{nodes[u].id, nodes[v].id,
                             prob_lo + uniform01(rng) * (prob_hi - prob_lo)});
  return Instance(std::move(nodes), std::move(edges), budget, cpe);
}

NodeSet users_within_cost(const Instance& inst, double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("spend limit must be finite");
  NodeSet out;
  for (NodeId v = 0; v < inst.num_nodes(); ++v)
    if (inst.cost(v) <= x) out.push_back(v);
  return out;
}

}  // namespace revmax
