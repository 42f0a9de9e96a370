#include "roughdrive/field/analytic.hpp"

#include <cmath>

namespace rd {

double fn1_eval(const Fn1& fn, int order, double x) {
  switch (order) {
    case 0: return fn.f(x);
    case 1: return fn.d1(x);
    case 2: return fn.d2(x);
    case 3: return fn.d3(x);
    default: throw Error("fn1_eval: derivative order out of range");
  }
}

Fn1 fn_const(double c) {
  Fn1 fn;
  fn.f = [c](double) { return c; };
  fn.d1 = fn.d2 = fn.d3 = [](double) { return 0.0; };
  return fn;
}

Fn1 fn_sin(double freq, double phase, double amp) {
  Fn1 fn;
  fn.f = [=](double x) { return amp * std::sin(freq * x + phase); };
  fn.d1 = [=](double x) { return amp * freq * std::cos(freq * x + phase); };
  fn.d2 = [=](double x) { return -amp * freq * freq * std::sin(freq * x + phase); };
  fn.d3 = [=](double x) {
    return -amp * freq * freq * freq * std::cos(freq * x + phase);
  };
  return fn;
}

Fn1 fn_bump(double k, double center) {
  // b = e^g with g = k (cos u - 1), u = x - center:
  // b' = g' b, b'' = (g'' + g'^2) b, b''' = (g''' + 3 g' g'' + g'^3) b
  Fn1 fn;
  auto b = [=](double x) { return std::exp(k * (std::cos(x - center) - 1.0)); };
  fn.f = b;
  fn.d1 = [=](double x) {
    const double u = x - center;
    return -k * std::sin(u) * b(x);
  };
  fn.d2 = [=](double x) {
    const double u = x - center;
    const double g1 = -k * std::sin(u), g2 = -k * std::cos(u);
    return (g2 + g1 * g1) * b(x);
  };
  fn.d3 = [=](double x) {
    const double u = x - center;
    const double g1 = -k * std::sin(u), g2 = -k * std::cos(u), g3 = k * std::sin(u);
    return (g3 + 3.0 * g1 * g2 + g1 * g1 * g1) * b(x);
  };
  return fn;
}

double sep_partial(const std::vector<SepTerm>& terms, int a1, int a2, double x1,
                   double x2) {
  if (a1 + a2 > 3 || a1 < 0 || a2 < 0)
    throw Error("sep_partial: derivative order out of range");
  double acc = 0.0;
  for (const auto& t : terms)
    acc += t.coef * fn1_eval(t.g, a1, x1) * fn1_eval(t.h, a2, x2);
  return acc;
}

}  // namespace rd
