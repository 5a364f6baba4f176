#pragma once
#include <gmpxx.h>
#include <string>

namespace sftweyl {

// Exact rational coefficients. GMP keeps values canonical (reduced,
// denominator positive) under arithmetic.
using Rational = mpq_class;
using Integer  = mpz_class;

// "n" or "n/d", reduced.
std::string to_string(const Rational& r);

// Accepts ["-"] digits ["/" digits]; throws std::invalid_argument otherwise.
Rational rational_from_string(const std::string& s);

} // namespace sftweyl
