#pragma once

#include "symkit/number.hpp"

/// Arbitrary-precision evaluation of the elementary and special functions.
/// Every function works at `p` decimal digits, or at the coarser precision
/// of an inexact argument.
namespace symkit::numeric {

Number pi(Precision p);
Number euler(Precision p);
Number catalan(Precision p);

Number sin(const Number& x, Precision p);
Number cos(const Number& x, Precision p);
Number exp(const Number& x, Precision p);
/// Principal branch. log(0) raises PoleError.
Number log(const Number& x, Precision p);

/// Real argument only. Shifted Stirling series with reflection below 1/2.
Number gamma(const Number& x, Precision p);
/// Real argument only. Euler-Maclaurin summation, reflection for s < 0.
Number zeta(const Number& s, Precision p);

} // namespace symkit::numeric
