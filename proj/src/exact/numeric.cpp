#include "ekt/exact/numeric.hpp"

#include "ekt/error.hpp"

namespace ekt::exact {

Rat pow2(long e) {
  Rat r;
  if (e >= 0) {
    mpz_mul_2exp(r.get_num_mpz_t(), Int(1).get_mpz_t(), static_cast<unsigned long>(e));
  } else {
    mpz_set_ui(r.get_num_mpz_t(), 1);
    mpz_mul_2exp(r.get_den_mpz_t(), Int(1).get_mpz_t(), static_cast<unsigned long>(-e));
  }
  r.canonicalize();
  return r;
}

Int isqrt_floor(const Int& n) {
  if (n < 0) throw Error("isqrt_floor: negative input");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const Rat& x, Rat* root) {
  if (x < 0) return false;
  const Int& num = x.get_num();
  const Int& den = x.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  if (root != nullptr) {
    *root = Rat(isqrt_floor(num), isqrt_floor(den));
    root->canonicalize();
  }
  return true;
}

void sqrt_bounds(const Rat& x, long g, Rat& lo, Rat& hi) {
  if (x < 0) throw Error("sqrt_bounds: negative input");
  if (x == 0) {
    lo = 0;
    hi = 0;
    return;
  }
  Rat r;
  if (is_perfect_square(x, &r)) {
    lo = r;
    hi = r;
    return;
  }
  // sqrt(p/q) = sqrt(p*q)/q; scale by 4^g for granularity 1/(q*2^g) <= 2^-g.
  Int p = x.get_num(), q = x.get_den();
  Int scaled = p * q;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(2 * g));
  Int s = isqrt_floor(scaled);
  Int denom = q;
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), static_cast<unsigned long>(g));
  lo = Rat(s, denom);
  lo.canonicalize();
  hi = Rat(s + 1, denom);
  hi.canonicalize();
}

Rat sqrt_upper(const Rat& x, long g) {
  Rat lo, hi;
  sqrt_bounds(x, g, lo, hi);
  return hi;
}

Rat sqrt_lower(const Rat& x, long g) {
  Rat lo, hi;
  sqrt_bounds(x, g, lo, hi);
  return lo;
}

std::string rat_to_string(const Rat& x) { return x.get_str(); }

}  // namespace ekt::exact

#include "ekt/exact/gaussian.hpp"

namespace ekt::exact {

std::string GaussianRational::str() const {
  if (im == 0) return re.get_str();
  if (re == 0) return im.get_str() + "i";
  return re.get_str() + (im > 0 ? "+" : "") + im.get_str() + "i";
}

}  // namespace ekt::exact
