#ifndef SKEWPROD_SKEWPROD_HPP
#define SKEWPROD_SKEWPROD_HPP

#include "skewprod/error.hpp"
#include "skewprod/numerics.hpp"
#include "skewprod/poly.hpp"
#include "skewprod/parse.hpp"
#include "skewprod/dickson.hpp"
#include "skewprod/identities.hpp"
#include "skewprod/ritt.hpp"
#include "skewprod/roots.hpp"
#include "skewprod/skewdyn.hpp"
#include "skewprod/classify.hpp"

#endif  // SKEWPROD_SKEWPROD_HPP
