#include "toeplitz/lifting_group.hpp"

#include <algorithm>

namespace toeplitz {

Rational::Rational(i64 a, i64 b) : num((long)a), den((long)b) { reduce(); }

Rational::Rational(mpz_class a, mpz_class b)
    : num(std::move(a)), den(std::move(b)) {
  reduce();
}

void Rational::reduce() {
  if (den == 0) fail(Err::BadInput, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  if (den == 1) return num.get_str();
  return num.get_str() + "/" + den.get_str();
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(s), 1);
    return Rational(mpz_class(s.substr(0, slash)),
                    mpz_class(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    fail(Err::BadInput, "cannot parse rational '" + s + "'");
  }
}

Rational add(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}

Rational neg(const Rational& a) { return Rational(-a.num, a.den); }

Rational mul(const Rational& a, const Rational& b) {
  return Rational(a.num * b.num, a.den * b.den);
}

Rational pow_pq(const Params& P, int i) {
  if (i < 0) fail(Err::BadInput, "pow_pq: negative exponent");
  mpz_class n, d;
  mpz_ui_pow_ui(n.get_mpz_t(), (unsigned long)P.p, (unsigned long)i);
  mpz_ui_pow_ui(d.get_mpz_t(), (unsigned long)P.q, (unsigned long)i);
  return Rational(n, d);
}

bool CoeffVector::is_normal(const Params& P) const {
  if (k.empty()) return true;
  if (k.back() == 0) return false;
  for (i64 v : k)
    if (v < -P.p_prime || v > P.p_prime) return false;
  return true;
}

std::string CoeffVector::str() const {
  std::string out = "[";
  for (size_t i = 0; i < k.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(k[i]);
  }
  return out + "]";
}

CoeffVector CoeffVector::parse(const std::string& s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    fail(Err::BadInput, "coefficient vector must look like [k0,k1,...]");
  CoeffVector c;
  std::string body = s.substr(1, s.size() - 2);
  if (body.empty()) return c;
  size_t pos = 0;
  while (pos <= body.size()) {
    size_t comma = body.find(',', pos);
    std::string tok = body.substr(pos, comma - pos);
    c.k.push_back(std::stoll(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return c;
}

Rational to_rational(const Params& P, const CoeffVector& c) {
  Rational acc(0);
  for (size_t t = 0; t < c.k.size(); ++t)
    acc = add(acc, mul(Rational(c.k[t]), pow_pq(P, (int)t)));
  return acc;
}

bool member(const Params& P, const Rational& x) {
  mpz_class d = x.den;
  mpz_class q(P.q);
  while (d > 1) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), q.get_mpz_t());
    if (g == 1) return false;
    while (mpz_divisible_p(d.get_mpz_t(), g.get_mpz_t())) d /= g;
  }
  return true;
}

CoeffVector from_rational(const Params& P, Rational x) {
  if (!member(P, x))
    fail(Err::NotMember,
         "denominator of " + x.str() + " is not supported by q = " +
             std::to_string(P.q));
  CoeffVector c;
  mpz_class p(P.p), q(P.q);
  while (!x.is_zero()) {
    // Balanced digit: the unique k0 in [-p', p'] congruent to x mod p.
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), x.den.get_mpz_t(), p.get_mpz_t()) == 0)
      fail(Err::NotMember, "denominator not invertible mod p");
    mpz_class r = (x.num * inv) % p;
    if (r < 0) r += p;
    i64 k0 = r.get_si();
    if (k0 > P.p_prime) k0 -= P.p;
    c.k.push_back(k0);
    // x <- (x - k0) * q / p
    Rational shifted = add(x, Rational(-k0));
    x = Rational(shifted.num * q, shifted.den * p);
  }
  while (!c.k.empty() && c.k.back() == 0) c.k.pop_back();
  return c;
}

i64 residue_mod(const Rational& x, i64 modulus) {
  if (modulus < 1) fail(Err::BadInput, "residue: modulus must be >= 1");
  mpz_class m((long)modulus), inv;
  if (mpz_invert(inv.get_mpz_t(), x.den.get_mpz_t(), m.get_mpz_t()) == 0)
    fail(Err::BadInput, "residue: denominator shares a factor with modulus");
  mpz_class r = (x.num * inv) % m;
  if (r < 0) r += m;
  return r.get_si();
}

int denominator_exponent(const Params& P, const Rational& x) {
  if (!member(P, x)) fail(Err::NotMember, x.str() + " is not a group element");
  mpz_class pw(1), q(P.q);
  int e = 0;
  while (!mpz_divisible_p(pw.get_mpz_t(), x.den.get_mpz_t())) {
    pw *= q;
    ++e;
  }
  return e;
}

Rational nonfg_witness(const Params& P, const std::vector<Rational>& sample) {
  int e_max = 0;
  for (const auto& x : sample)
    e_max = std::max(e_max, denominator_exponent(P, x));
  return pow_pq(P, e_max + 1);
}

}  // namespace toeplitz
