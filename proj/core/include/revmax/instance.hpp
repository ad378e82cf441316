// Problem instance: a directed network of users with engagement costs,
// influence probabilities on the edges, an advertiser budget, and a
// cost-per-engagement conversion factor. Instances are immutable after
// construction and canonically ordered (nodes lexicographic by id, edges
// lexicographic by endpoint pair), so equality and serialization are
// well-defined and deterministic.
#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "revmax/types.hpp"

namespace revmax {

struct Edge {
  NodeId src;
  NodeId dst;
  double rho;  // probability that dst engages once src engaged, in [0, 1]
};

// Raised on malformed instance text; `line` is 1-based (0 = not line-bound).
struct ParseError : std::runtime_error {
  ParseError(std::size_t line_no, const std::string& what)
      : std::runtime_error(line_no == 0 ? what
                                        : "line " + std::to_string(line_no) +
                                              ": " + what),
        line(line_no) {}
  std::size_t line;
};

struct NodeDecl {
  std::string id;
  double cost;
};
struct EdgeDecl {
  std::string src;
  std::string dst;
  double rho;
};

class Instance {
 public:
  // Validates and canonicalizes; throws std::invalid_argument on violations
  // (duplicate ids, unknown endpoints, self-loops, rho outside [0,1],
  // negative costs, budget <= 0, cpe < 0).
  Instance(std::vector<NodeDecl> nodes, std::vector<EdgeDecl> edges,
           double budget, double cpe = 1.0);

  std::size_t num_nodes() const { return costs_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  double budget() const { return budget_; }
  double cpe() const { return cpe_; }

  double cost(NodeId v) const { return costs_[v]; }
  double max_cost() const { return max_cost_; }
  double total_cost(std::span<const NodeId> seeds) const;

  const std::string& node_name(NodeId v) const { return names_[v]; }
  std::optional<NodeId> find_node(std::string_view id) const;

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  // Edge ids leaving v, ascending (edges are sorted by (src, dst)).
  std::span<const EdgeId> out_edges(NodeId v) const;

  // True iff every rho is exactly 0 or 1 (single possible propagation).
  bool deterministic() const { return uncertain_.empty(); }
  // Edges with 0 < rho < 1, ascending; the only source of randomness.
  std::span<const EdgeId> uncertain_edges() const { return uncertain_; }

  bool operator==(const Instance& other) const;

 private:
  std::vector<std::string> names_;   // sorted lexicographically
  std::vector<double> costs_;        // parallel to names_
  std::vector<Edge> edges_;          // sorted by (src, dst)
  std::vector<EdgeId> out_begin_;    // CSR offsets into edges_, size n+1
  std::vector<EdgeId> edge_ids_;     // 0..m-1, backing storage for out_edges
  std::vector<EdgeId> uncertain_;
  double budget_ = 0;
  double cpe_ = 1;
  double max_cost_ = 0;
};

// Line-oriented text format:
//   ic <num_nodes> <num_edges> <budget> <cpe>
//   node <id> <cost>            (num_nodes times)
//   edge <src> <dst> <rho>      (num_edges times)
// '#' starts a comment; blank lines are ignored. Throws ParseError.
Instance parse_instance(std::string_view text);
Instance load_instance(std::istream& in);
Instance load_instance_file(const std::filesystem::path& path);

// Canonical serialization; parse_instance(to_text(I)) == I.
std::string to_text(const Instance& inst);
void save_instance(const Instance& inst, std::ostream& out);
void save_instance_file(const Instance& inst, const std::filesystem::path& path);

// Random instance with m distinct directed edges (no self-loops), costs and
// probabilities uniform in the given ranges. Deterministic in `seed`.
// Throws std::invalid_argument if m > n*(n-1) or a range is invalid.
Instance generate_random_instance(std::size_t n, std::size_t m,
                                  double prob_lo, double prob_hi,
                                  double cost_lo, double cost_hi,
                                  double budget, double cpe,
                                  std::uint64_t seed);

// Nodes affordable at spend x: { v : cost(v) <= x }, ascending. x must be
// finite; a negative x yields the empty set.
NodeSet users_within_cost(const Instance& inst, double x);

}  // namespace revmax
