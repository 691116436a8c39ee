#include "wsts/qo.hpp"

#include <algorithm>
#include <stdexcept>

namespace wsts {

RadoConstraint RadoConstraint::phi(std::int64_t a, std::int64_t b) {
  if (!(0 <= a && a < b)) throw std::invalid_argument("rado: need 0 <= a < b");
  RadoConstraint c;
  c.a = a;
  c.b = b;
  return c;
}

RadoConstraint RadoConstraint::psi(std::int64_t j) {
  if (j < 1) throw std::invalid_argument("rado: need j >= 1");
  RadoConstraint c;
  c.disjunctive = true;
  c.j = j;
  return c;
}

bool RadoConstraint::contains(std::int64_t c, std::int64_t d) const {
  if (!(0 <= c && c < d)) return false;
  if (!disjunctive) return c > b || (c == a && d >= b);
  // psi_j = union of phi_{a,j} over a < j: c > j, or c < j and d >= j.
  return c > j || (c < j && d >= j);
}

std::string RadoConstraint::str() const {
  if (disjunctive) return "psi_" + std::to_string(j);
  return "phi_" + std::to_string(a) + "," + std::to_string(b);
}

bool rado_entails(const RadoConstraint& c1, const RadoConstraint& c2,
                  std::int64_t index_limit) {
  if (c1.max_constant() > index_limit || c2.max_constant() > index_limit)
    throw std::invalid_argument("rado_entails: index exceeds limit");
  std::int64_t top = std::max(c1.max_constant(), c2.max_constant()) + 2;
  for (std::int64_t c = 0; c < top; ++c)
    for (std::int64_t d = c + 1; d <= top; ++d)
      if (c2.contains(c, d) && !c1.contains(c, d)) return false;
  return true;
}

} // namespace wsts
