#ifndef WSCK_RATIONAL_HPP
#define WSCK_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace wsck {

// Exact scalars. mpq_class keeps den > 0 and gcd(|num|, den) = 1 after
// canonicalize(); all arithmetic operators preserve canonical form.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p" or "p/q", optional sign, arbitrary precision.
inline Rational rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class z(s);
      return Rational(z);
    }
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (...) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

// Canonical printing: "p" when the denominator is 1, else "p/q".
inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline Rational binom(long n, long k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rational(b);
}

inline Rational factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

}  // namespace wsck

#endif
