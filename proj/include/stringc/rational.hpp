#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace stringc {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p/q" or "p" (optional sign, decimal digits). Throws SchemaError.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& r);

// True iff the reduced denominator is a power of two.
bool has_dyadic_denominator(const Rational& r);

}  // namespace stringc
