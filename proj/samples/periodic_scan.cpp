// Periodic points and multipliers of a skew product, period by period.

#include <iostream>

#include "skewprod/skewprod.hpp"

using namespace skewprod;

int main(int argc, char** argv) {
  const std::string text = argc > 1 ? argv[1] : "(z^2, w^2 - 2*z)";
  const int top = argc > 2 ? std::atoi(argv[2]) : 2;
  const ToleranceContext ctx;
  const SkewProduct f = SkewProduct::from_map(parse_map(text).map);
  for (int n = 1; n <= top; ++n) {
    std::cout << "period " << n << "\n";
    for (const auto& pt : base_periodic_points(f, n, ctx)) {
      std::cout << "  z = " << to_string(pt.z, 12) << "  (p^n)' = " << to_string(pt.base_multiplier, 12) << "\n";
      for (const auto& fp : fiber_periodic_points(f, pt.z, n, ctx)) {
        std::cout << "    w = " << to_string(*fp.w, 12) << "  dQ/dw = " << to_string(*fp.fiber_multiplier, 12) << "\n";
      }
    }
  }
}
