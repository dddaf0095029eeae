#pragma once

// Maps shared by the unit tests, written out independently of the fixture files.

#include "skewcert/fieldendo.hpp"
#include "skewcert/parser.hpp"

namespace testsupport {

inline const skewcert::Vars& xy() {
  static const skewcert::Vars v = skewcert::make_vars({"x", "y"});
  return v;
}

inline skewcert::RatFunc rf(const char* s) { return skewcert::parse_ratfunc(s, xy()); }

inline skewcert::FieldEndo henon_map() {
  return skewcert::FieldEndo(xy(), {rf("1+y-x^2"), rf("x")}, {rf("y"), rf("x-1+y^2")});
}

inline skewcert::FieldEndo monomial_map() {
  return skewcert::FieldEndo(xy(), {rf("x"), rf("x*y")}, {rf("x"), rf("y/x")});
}

inline skewcert::FieldEndo cremona_involution() {
  return skewcert::FieldEndo(xy(), {rf("1/x"), rf("1/y")}, {rf("1/x"), rf("1/y")});
}

inline skewcert::FieldEndo swap_map() {
  return skewcert::FieldEndo(xy(), {rf("y"), rf("x")}, {rf("y"), rf("x")});
}

}  // namespace testsupport
