#ifndef HSOB_HSOB_HPP
#define HSOB_HSOB_HPP

#include "hsob/coeff_vec.hpp"
#include "hsob/hermite.hpp"
#include "hsob/interpolation.hpp"
#include "hsob/monotonicity.hpp"
#include "hsob/multiplier.hpp"
#include "hsob/operators.hpp"
#include "hsob/sequences.hpp"

#endif  // HSOB_HSOB_HPP
