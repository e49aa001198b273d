#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "gibbsfrag/rational.hpp"

namespace gibbsfrag {

// 60 significant decimal digits; every transcendental comparison goes through this type.
using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<60>>;

inline Real to_real(const Rational& q) {
  return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

inline Real to_real(const BigInt& z) { return Real(z.get_str()); }

}  // namespace gibbsfrag
