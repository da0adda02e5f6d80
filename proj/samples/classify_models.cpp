// Classifies a few maps and prints the verdict with the normal form reached.

#include <iostream>

#include "skewprod/skewprod.hpp"

using namespace skewprod;

int main() {
  const ToleranceContext ctx;
  const char* maps[] = {
      "(z^2, w^2)",
      "(z^2, w^2 - 2*z)",
      "(z^2, w^2 + z)",
      "(z^2 - 2, w^2 - 2)",
      "(z^3, w^3 - 3*z*w)",
      // a triangular conjugate of the previous map
      "(4*z^3 + 6*z^2 + 3*z, w^3 - 3*z*w^2 - 3/2*w^2 + 3*z^2*w - 3*z*w - 9/4*w + 3*z^3 + 21/2*z^2 + 33/4*z + 15/8)",
  };
  for (const char* text : maps) {
    const SkewProduct f = SkewProduct::from_map(parse_map(text).map);
    const Classification c = classify_skew(f, ctx);
    std::cout << text << "\n  ";
    if (c.kind == SkewKind::dagger1) {
      std::cout << "dagger1 (" << form_kind_name(c.p_kind) << ", " << form_kind_name(c.q_kind) << ")";
    } else if (c.kind == SkewKind::dagger2) {
      std::cout << "dagger2 zeta=" << to_string(c.zeta) << " m=" << c.m;
    } else {
      std::cout << "not special, step " << c.failed_step;
    }
    if (c.normal_form) std::cout << " -> " << to_string(c.normal_form->as_map());
    std::cout << "\n";
  }
}
