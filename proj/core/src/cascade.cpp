#include "revmax/cascade.hpp"

#include <algorithm>
#include <stdexcept>

namespace revmax {

namespace {

// BFS from `seeds` along Live edges; appends engaged nodes to `order` and
// marks them in `visited` (caller provides cleared buffers).
void propagate(const Instance& inst, std::span<const NodeId> seeds,
               const Realization& phi, std::vector<char>& visited,
               std::vector<NodeId>& order) {
  for (NodeId s : seeds) {
    if (s >= inst.num_nodes())
      throw std::invalid_argument("seed id out of range");
    if (!visited[s]) {
      visited[s] = 1;
      order.push_back(s);
    }
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    NodeId u = order[head];
    for (EdgeId e : inst.out_edges(u)) {
      NodeId v = inst.edge(e).dst;
      if (phi.live(e) && !visited[v]) {
        visited[v] = 1;
        order.push_back(v);
      }
    }
  }
}

}  // namespace

Realization sample_realization(const Instance& inst, Rng& rng) {
  Realization phi(inst.num_edges());
  for (EdgeId e = 0; e < inst.num_edges(); ++e)
    phi.set_live(e, uniform01(rng) < inst.edge(e).rho);
  return phi;
}

std::size_t engagements(const Instance& inst, std::span<const NodeId> seeds,
                        const Realization& phi) {
  if (seeds.empty()) return 0;
  std::vector<char> visited(inst.num_nodes(), 0);
  std::vector<NodeId> order;
  order.reserve(inst.num_nodes());
  propagate(inst, seeds, phi, visited, order);
  return order.size();
}

NodeMask engaged_mask(const Instance& inst, std::span<const NodeId> seeds,
                      const Realization& phi) {
  std::vector<char> visited(inst.num_nodes(), 0);
  std::vector<NodeId> order;
  propagate(inst, seeds, phi, visited, order);
  NodeMask mask = 0;
  for (NodeId v : order) mask |= NodeMask(1) << v;
  return mask;
}

std::vector<NodeMask> reach_masks(const Instance& inst, const Realization& phi) {
  std::size_t n = inst.num_nodes();
  std::vector<NodeMask> reach(n);
  std::vector<char> visited(n, 0);
  std::vector<NodeId> order;
  order.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    std::fill(visited.begin(), visited.end(), 0);
    order.clear();
    NodeId seed[1] = {v};
    propagate(inst, seed, phi, visited, order);
    NodeMask mask = 0;
    for (NodeId u : order) mask |= NodeMask(1) << u;
    reach[v] = mask;
  }
  return reach;
}

std::size_t PartialRealization::observed_count() const {
  std::size_t count = 0;
  for (EdgeId e = 0; e < num_edges(); ++e)
    if (observed(e)) ++count;
  return count;
}

PartialRealization observe(const Instance& inst, std::span<const NodeId> seeds,
                           const Realization& phi) {
  std::vector<char> visited(inst.num_nodes(), 0);
  std::vector<NodeId> order;
  order.reserve(inst.num_nodes());
  propagate(inst, seeds, phi, visited, order);

  PartialRealization psi(inst.num_edges());
  NodeSet dom(seeds.begin(), seeds.end());
  std::sort(dom.begin(), dom.end());
  dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
  psi.set_dom(std::move(dom));
  for (NodeId u : order)
    for (EdgeId e : inst.out_edges(u)) psi.record(e, phi.live(e));
  return psi;
}

bool is_consistent(const Instance& inst, const Realization& phi,
                   const PartialRealization& psi) {
  return observe(inst, psi.dom(), phi) == psi;
}

bool closure_holds(const Instance& inst, const PartialRealization& psi) {
  // Walk from dom along edges psi labels Live; collect the engaged set.
  std::vector<char> visited(inst.num_nodes(), 0);
  std::vector<NodeId> order;
  for (NodeId s : psi.dom()) {
    if (s >= inst.num_nodes()) return false;
    if (!visited[s]) {
      visited[s] = 1;
      order.push_back(s);
    }
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (EdgeId e : inst.out_edges(order[head])) {
      NodeId v = inst.edge(e).dst;
      if (psi.observed(e) && psi.live(e) && !visited[v]) {
        visited[v] = 1;
        order.push_back(v);
      }
    }
  }
  // The observed set must be exactly the out-edges of engaged users.
  std::vector<char> required(inst.num_edges(), 0);
  for (NodeId u : order)
    for (EdgeId e : inst.out_edges(u)) required[e] = 1;
  for (EdgeId e = 0; e < inst.num_edges(); ++e)
    if (required[e] != (psi.observed(e) ? 1 : 0)) return false;
  return true;
}

Realization conditional_sample(const Instance& inst,
                               const PartialRealization& psi, Rng& rng) {
  if (psi.num_edges() != inst.num_edges())
    throw std::invalid_argument("observation does not match instance");
  if (!closure_holds(inst, psi))
    throw std::invalid_argument("observation violates the closure property");
  Realization phi(inst.num_edges());
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    if (psi.observed(e))
      phi.set_live(e, psi.live(e));
    else
      phi.set_live(e, uniform01(rng) < inst.edge(e).rho);
  }
  return phi;
}

bool is_subrealization(const PartialRealization& psi,
                       const PartialRealization& psi_prime) {
  if (!std::includes(psi_prime.dom().begin(), psi_prime.dom().end(),
                     psi.dom().begin(), psi.dom().end()))
    return false;
  for (EdgeId e = 0; e < psi.num_edges(); ++e)
    if (psi.observed(e) &&
        (!psi_prime.observed(e) || psi.live(e) != psi_prime.live(e)))
      return false;
  return true;
}

}  // namespace revmax
