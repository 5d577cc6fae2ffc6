#include "biplane/params.hpp"

#include <stdexcept>
#include <string>

namespace biplane {

BiplaneParams BiplaneParams::from_order(int order) {
  if (order < 1) throw std::invalid_argument("biplane order must be >= 1, got " + std::to_string(order));
  BiplaneParams p;
  p.order = order;
  p.k = order + 2;
  p.v = 1 + p.k * (p.k - 1) / 2;
  return p;
}

}  // namespace biplane
