#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "toeplitz/common.hpp"
#include "toeplitz/params.hpp"

namespace toeplitz {

// Exact rational, always reduced with positive denominator.
struct Rational {
  mpz_class num = 0;
  mpz_class den = 1;

  Rational() = default;
  Rational(i64 a, i64 b = 1);
  Rational(mpz_class a, mpz_class b);
  void reduce();

  bool is_zero() const { return num == 0; }
  std::string str() const;  // "a" or "a/b"
  static Rational parse(const std::string& s);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

Rational add(const Rational& a, const Rational& b);
Rational neg(const Rational& a);
Rational mul(const Rational& a, const Rational& b);
Rational pow_pq(const Params& P, int i);  // (p/q)^i, i >= 0

// Integer coefficients (k_0, ..., k_j) against the generators (p/q)^t.
struct CoeffVector {
  std::vector<i64> k;

  bool is_normal(const Params& P) const;  // all in [-p', p'], last nonzero
  std::string str() const;                // "[k0,k1,...]"
  static CoeffVector parse(const std::string& s);

  friend bool operator==(const CoeffVector&, const CoeffVector&) = default;
};

Rational to_rational(const Params& P, const CoeffVector& c);
// Balanced-digit reduction; unique normal form. Requires member(x).
CoeffVector from_rational(const Params& P, Rational x);

// x lies in the group iff every prime factor of its reduced denominator
// divides q (for prime q: the denominator is a power of q).
bool member(const Params& P, const Rational& x);

// num * den^{-1} mod modulus; modulus coprime to the denominator.
i64 residue_mod(const Rational& x, i64 modulus);

// Least e with denominator | q^e.
int denominator_exponent(const Params& P, const Rational& x);

// (p/q)^{E+1} for E the maximal denominator exponent over the sample: a group
// element outside the subgroup generated by the inputs.
Rational nonfg_witness(const Params& P, const std::vector<Rational>& sample);

}  // namespace toeplitz
