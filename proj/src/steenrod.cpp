// SPDX-License-Identifier: MIT
#include "steenrod.hpp"

namespace invforge {

Polynomial total_sq(const Polynomial& p) {
  if (p.ring() != Ring::F2)
    fail(Errc::Unsupported, "Steenrod squares are defined over F2 only");
  const auto& table = *p.table();
  std::vector<size_t> vars;
  std::vector<Polynomial> images;
  for (size_t v = 0; v < table.size(); ++v) {
    if (!p.involves(v)) continue;
    if (table.weight(v) != 1)
      fail(Errc::NonLinearVariablePresent,
           "variable " + table.name(v) + " has weight " +
               std::to_string(table.weight(v)));
    Polynomial x = Polynomial::variable(p.table(), Ring::F2, v);
    vars.push_back(v);
    images.push_back(x + x * x);
  }
  return p.substitute(vars, images);
}

Polynomial sq(uint64_t i, const Polynomial& p) {
  if (!p.is_homogeneous())
    fail(Errc::NonHomogeneous, "Sq^i needs a homogeneous argument");
  if (p.is_zero()) return p;
  uint64_t d = p.degree();
  if (i > d) return Polynomial::zero(p.table(), p.ring());
  return total_sq(p).component(d + i);
}

}  // namespace invforge
