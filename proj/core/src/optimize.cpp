#include "rbminit/optimize.hpp"

#include <cmath>
#include <utility>

#include "rbminit/errors.hpp"

namespace rbminit {

GoldenSectionResult golden_section_maximize(const std::function<double(double)>& f, double lo,
                                            double hi, double tolerance) {
  if (!(lo < hi) || !(tolerance > 0.0)) {
    throw DomainError("golden-section search needs lo < hi and a positive tolerance");
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  int evaluations = 2;

  while (hi - lo > tolerance) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
    ++evaluations;
  }
  return f1 >= f2 ? GoldenSectionResult{x1, f1, evaluations}
                  : GoldenSectionResult{x2, f2, evaluations};
}

}  // namespace rbminit
