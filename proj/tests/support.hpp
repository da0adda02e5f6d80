#ifndef SKEWPROD_TESTS_SUPPORT_HPP
#define SKEWPROD_TESTS_SUPPORT_HPP

// Hand-rolled generators for property tests.

#include <random>
#include <string>
#include <vector>

#include "skewprod/skewprod.hpp"

namespace gen {

using namespace skewprod;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
  bool coin() { return integer(0, 1) == 1; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<long>(v.size()) - 1))];
  }

  mpq_class rational(long num_bound = 9, long den_bound = 5) {
    mpq_class q(integer(-num_bound, num_bound), integer(1, den_bound));
    q.canonicalize();
    return q;
  }

  Scalar gaussian(long num_bound = 9, long den_bound = 5) { return Scalar(rational(num_bound, den_bound), rational(num_bound, den_bound)); }

  Scalar nonzero_gaussian(long num_bound = 9, long den_bound = 5) {
    for (;;) {
      Scalar s = gaussian(num_bound, den_bound);
      if (!s.is_zero()) return s;
    }
  }

  UniPoly poly(int degree, char var = 'x') {
    std::vector<Scalar> c;
    for (int k = 0; k < degree; ++k) c.push_back(gaussian());
    c.push_back(nonzero_gaussian());
    return UniPoly(std::move(c), var);
  }

  AffineMap1 affine() { return AffineMap1(nonzero_gaussian(4, 3), gaussian(4, 3)); }

  AffineTriangular triangular() {
    return {affine(), nonzero_gaussian(4, 3), gaussian(4, 3), gaussian(4, 3)};
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline UniPoly P(const std::string& s) { return parse_poly(s).as_uni(); }
inline BiPoly Q(const std::string& s) { return parse_poly(s, {.vars = VarPair{'z', 'w'}}).poly; }
inline SkewProduct F(const std::string& s) { return SkewProduct::from_map(parse_map(s).map); }

}  // namespace gen

#endif  // SKEWPROD_TESTS_SUPPORT_HPP
