// Shared fixtures: tiny instances whose objective values are known in
// closed form, used across the unit tests.
#pragma once

#include <string>

#include "revmax/instance.hpp"

namespace testing {

// a -> b always fires, b -> c fires half the time; unit costs, budget 4.
//   seed {a}: engages {a,b} or {a,b,c} with equal probability.
inline revmax::Instance chain3() {
  return revmax::parse_instance(
      "ic 3 2 4 1\n"
      "node a 1\nnode b 1\nnode c 1\n"
      "edge a b 1\nedge b c 0.5\n");
}

// Hub s (cost 2) deterministically engages three unit-cost leaves; budget 5.
inline revmax::Instance star4() {
  return revmax::parse_instance(
      "ic 4 3 5 1\n"
      "node s 2\nnode v1 1\nnode v2 1\nnode v3 1\n"
      "edge s v1 1\nedge s v2 1\nedge s v3 1\n");
}

// Two independent paths a->b->d and a->c->d; P(d | seed a) = 3/4.
inline revmax::Instance diamond() {
  return revmax::parse_instance(
      "ic 4 4 10 1\n"
      "node a 1\nnode b 1\nnode c 1\nnode d 1\n"
      "edge a b 0.5\nedge a c 0.5\nedge b d 1\nedge c d 1\n");
}

inline revmax::NodeId id_of(const revmax::Instance& inst, const char* name) {
  return *inst.find_node(name);
}

}  // namespace testing
