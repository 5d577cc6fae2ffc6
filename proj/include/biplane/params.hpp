#pragma once

#include <cstddef>

namespace biplane {

// Order n, block size k = n + 2, and point count v = 1 + k(k-1)/2 of a
// symmetric 2-(v,k,2) design.
struct BiplaneParams {
  int order = 0;
  int k = 0;
  int v = 0;

  static BiplaneParams from_order(int order);

  friend bool operator==(const BiplaneParams&, const BiplaneParams&) = default;
};

inline BiplaneParams params_from_order(int order) { return BiplaneParams::from_order(order); }

}  // namespace biplane
