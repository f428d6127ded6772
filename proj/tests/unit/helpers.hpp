#pragma once

#include <doctest.h>

#include "giry/rational.hpp"

namespace testing_support {

inline giry::UnitRational U(std::int64_t n, std::int64_t d = 1) { return giry::UnitRational(n, d); }

}  // namespace testing_support

namespace doctest {
template <>
struct StringMaker<giry::UnitRational> {
  static String convert(const giry::UnitRational& u) { return giry::to_string(u).c_str(); }
};
}  // namespace doctest
