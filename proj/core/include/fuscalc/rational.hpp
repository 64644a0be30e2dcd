#pragma once

#include <gmpxx.h>

#include <string>

namespace fuscalc {

// All Burnside-module coefficients are exact rationals.
using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical "num" / "num/den" form, always with positive denominator.
std::string to_fraction_string(const Rational& q);

/// Parses "num" or "num/den". Throws InputError on malformed input or den = 0.
Rational parse_fraction(const std::string& text);

bool is_integral(const Rational& q);

/// True when the (canonical) denominator of q is coprime to p.
bool denominator_coprime_to(const Rational& q, int p);

/// Canonical residue in [0, m) of a rational whose denominator is invertible
/// mod m: num * den^{-1} mod m. Throws PreconditionError otherwise.
Integer residue_mod(const Rational& q, const Integer& m);

Integer integer_power(int base, int exp);

}  // namespace fuscalc
