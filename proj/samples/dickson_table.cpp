// D_d(x, a) for small d, and D_d(x, 1) = T_d.

#include <iostream>

#include "skewprod/skewprod.hpp"

using namespace skewprod;

int main(int argc, char** argv) {
  const int top = argc > 1 ? std::atoi(argv[1]) : 8;
  for (int d = 0; d <= top; ++d) std::cout << "D_" << d << " = " << to_string(dickson(d).poly) << "\n";
  std::cout << "\n";
  for (int d = 1; d <= top; ++d) std::cout << "T_" << d << " = " << to_string(chebyshev(d)) << "\n";
}
