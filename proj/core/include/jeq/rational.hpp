#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace jeq {

using Rational = boost::multiprecision::cpp_rational;

/// "p/q" in lowest terms; integers print without a denominator.
inline std::string to_string(const Rational& r) {
    return r.str();
}

inline bool is_integer(const Rational& r) {
    return boost::multiprecision::denominator(r) == 1;
}

}  // namespace jeq
