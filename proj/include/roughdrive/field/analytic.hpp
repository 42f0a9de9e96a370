#pragma once

#include <functional>
#include <vector>

#include "roughdrive/errors.hpp"

namespace rd {

// 1-d analytic building block with coded derivatives up to third order.
struct Fn1 {
  std::function<double(double)> f, d1, d2, d3;
};

double fn1_eval(const Fn1& fn, int order, double x);

Fn1 fn_const(double c);
Fn1 fn_sin(double freq, double phase, double amp);  // amp sin(freq x + phase)
Fn1 fn_bump(double k, double center);               // exp(k (cos(x-c) - 1))

// Separable term c * g(x1) h(x2); sums of these carry every analytic
// scalar function in the library, with all partials available in closed
// form. h is the constant 1 for d = 1.
struct SepTerm {
  double coef = 1.0;
  Fn1 g, h;
};

// partial derivative of order (a1, a2), a1 + a2 <= 3
double sep_partial(const std::vector<SepTerm>& terms, int a1, int a2, double x1,
                   double x2);

}  // namespace rd
