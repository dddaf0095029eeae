#pragma once

#include "skewcert/ratfunc.hpp"

#include <string_view>

namespace skewcert {

/// Reads expressions such as `1 + y - 1/2*x^2` or `(x-1)/(x*y)^2` over the
/// given variables. Integer exponents may be negative.
RatFunc parse_ratfunc(std::string_view text, const Vars& vars);

/// As parse_ratfunc, but the result must be a polynomial.
MultiPoly parse_poly(std::string_view text, const Vars& vars);

}  // namespace skewcert
