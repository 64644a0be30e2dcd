#include "fuscalc/rational.hpp"

#include "fuscalc/error.hpp"

namespace fuscalc {

std::string to_fraction_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_fraction(const std::string& text) {
  if (text.empty()) throw InputError("empty fraction");
  try {
    Rational q(text);
    if (q.get_den() == 0) throw InputError("zero denominator in fraction: " + text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InputError("malformed fraction: " + text);
  }
}

bool is_integral(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_den() == 1;
}

bool denominator_coprime_to(const Rational& q, int p) {
  Rational c = q;
  c.canonicalize();
  return c.get_den() % p != 0;
}

Integer residue_mod(const Rational& q, const Integer& m) {
  Rational c = q;
  c.canonicalize();
  Integer den = c.get_den();
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
    throw PreconditionError("denominator not invertible modulo " + m.get_str());
  Integer r = (c.get_num() % m) * inv % m;
  if (r < 0) r += m;
  return r;
}

Integer integer_power(int base, int exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return r;
}

}  // namespace fuscalc
