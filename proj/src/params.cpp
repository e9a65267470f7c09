#include "toeplitz/params.hpp"

#include <numeric>

#include "toeplitz/substrate.hpp"

namespace toeplitz {

static bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; (i64)d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::string> Params::violations(int p, int p_prime, int q,
                                            const std::string& w) {
  std::vector<std::string> out;
  for (char c : w)
    if (!is_cell(c)) {
      out.push_back("w contains a character outside {0,1,_}");
      return out;
    }
  if ((i64)w.size() != p) out.push_back("length of w differs from p");
  if (p != 2 * p_prime + 1) out.push_back("p = 2*p' + 1 fails");
  if (!(1 < q && q <= p_prime)) out.push_back("1 < q <= p' fails");
  if (p > 0 && std::gcd(q, p) != 1) out.push_back("gcd(q, p) = 1 fails");
  if (!is_prime(p)) out.push_back("p is not prime");
  if (w.empty()) return out;
  if (w.front() == kHole) out.push_back("w_0 is a hole");
  if (w.back() == kHole) out.push_back("w_{p-1} is a hole");
  if (w.find("__") != std::string::npos) out.push_back("__ is a factor of w");
  i64 holes = 0;
  for (char c : w) holes += (c == kHole);
  if (holes != q) out.push_back("hole count of w differs from q");
  // One period suffices: w^Z is p-periodic by construction.
  if ((i64)w.size() == p && holes > 0 && least_lazy_period(w) != p)
    out.push_back("w^Z has a lazy period smaller than p");
  return out;
}

Params Params::make(int p, int p_prime, int q, const std::string& w) {
  auto bad = violations(p, p_prime, q, w);
  if (!bad.empty()) {
    std::string msg = "assumptions violated:";
    for (const auto& b : bad) msg += " [" + b + "]";
    fail(Err::AssumptionViolated, msg);
  }
  Params P;
  P.p = p;
  P.p_prime = p_prime;
  P.q = q;
  P.w = w;
  P.hole_rank.assign(p, -1);
  for (int r = 0; r < p; ++r)
    if (w[r] == kHole) {
      P.hole_rank[r] = (int)P.hole_offsets.size();
      P.hole_offsets.push_back(r);
    }
  return P;
}

}  // namespace toeplitz
