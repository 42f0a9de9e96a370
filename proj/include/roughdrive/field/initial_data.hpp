#pragma once

#include <string>
#include <vector>

#include "roughdrive/field/analytic.hpp"
#include "roughdrive/field/vector_fields.hpp"

namespace rd {

// Analytic initial datum with a coded gradient and the exact sup of |f0|
// (the reference value of the maximum principle checks).
struct InitialDatum {
  std::string id;
  int dim = 2;
  std::vector<SepTerm> terms;
  double sup_abs = 1.0;

  double value(double x1, double x2) const { return sep_partial(terms, 0, 0, x1, x2); }
  Vec2 grad(double x1, double x2) const {
    return Vec2{sep_partial(terms, 1, 0, x1, x2),
                dim == 2 ? sep_partial(terms, 0, 1, x1, x2) : 0.0};
  }
};

const InitialDatum& initial_datum(const std::string& id);
std::vector<std::string> initial_datum_ids(int dim);

}  // namespace rd
