#include "phiorbit/mertens.hpp"

#include <cmath>
#include <limits>

#include "mpfr_util.hpp"
#include "phiorbit/primes.hpp"

namespace phiorbit {

using detail::Mpfr;

namespace {

constexpr mpfr_prec_t kPrec = 256;

mpz_class product_range(std::span<const u64> v) {
  if (v.size() <= 16) {
    mpz_class acc = 1;
    unsigned long small = 1;
    for (u64 x : v) {
      unsigned long next;
      if (__builtin_mul_overflow(small, static_cast<unsigned long>(x), &next)) {
        acc *= small;
        next = x;
      }
      small = next;
    }
    acc *= small;
    return acc;
  }
  const std::size_t mid = v.size() / 2;
  return product_range(v.first(mid)) * product_range(v.subspan(mid));
}

// Fills the bound fields of `env` for its x and product.
void evaluate_envelope(MertensEnvelope& env) {
  Mpfr gamma(kPrec), eg(kPrec), L(kPrec), L2(kPrec), base(kPrec), t(kPrec);
  Mpfr lower(kPrec), upper(kPrec), P(kPrec), lm(kPrec), um(kPrec);
  mpfr_set_str(gamma.get(), std::string(kEulerGamma50).c_str(), 10, MPFR_RNDN);
  mpfr_neg(eg.get(), gamma.get(), MPFR_RNDN);
  mpfr_exp(eg.get(), eg.get(), MPFR_RNDN);
  mpfr_set_ui(L.get(), env.x, MPFR_RNDN);
  mpfr_log(L.get(), L.get(), MPFR_RNDN);
  mpfr_sqr(L2.get(), L.get(), MPFR_RNDN);
  mpfr_div(base.get(), eg.get(), L.get(), MPFR_RNDN);

  // lower = base * (1 - 1/L^2)
  mpfr_ui_div(t.get(), 1, L2.get(), MPFR_RNDN);
  mpfr_ui_sub(t.get(), 1, t.get(), MPFR_RNDN);
  mpfr_mul(lower.get(), base.get(), t.get(), MPFR_RNDN);
  // upper = base * (1 + 1/(2 L^2))
  mpfr_mul_ui(t.get(), L2.get(), 2, MPFR_RNDN);
  mpfr_ui_div(t.get(), 1, t.get(), MPFR_RNDN);
  mpfr_add_ui(t.get(), t.get(), 1, MPFR_RNDN);
  mpfr_mul(upper.get(), base.get(), t.get(), MPFR_RNDN);

  mpfr_set_q(P.get(), env.product.get_mpq_t(), MPFR_RNDN);
  mpfr_sub(lm.get(), P.get(), lower.get(), MPFR_RNDN);
  mpfr_sub(um.get(), upper.get(), P.get(), MPFR_RNDN);

  // gamma carries 50 digits; every other step is a correctly rounded 256-bit
  // operation. Both terms are far below 1e-45 relative.
  env.error_bound = 1e-45 * base.to_double();
  env.rs_lower = lower.to_double();
  env.rs_upper = upper.to_double();
  env.lower_margin = lm.to_double();
  env.upper_margin = um.to_double();
  env.lower_ok = env.lower_margin > 10 * env.error_bound;
  env.upper_ok = env.upper_margin > 10 * env.error_bound;
}

std::vector<u64> widen(const std::vector<std::uint32_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

mpz_class product_tree(std::span<const u64> values) {
  if (values.empty()) return 1;
  return product_range(values);
}

MertensEnvelope mertens_product(u64 x) {
  if (x < 2) throw InvalidArgument("mertens_product: x must be at least 2");
  if (x >= (u64{1} << 32)) throw ResourceExhausted("mertens_product: x beyond the 32-bit sieve range");
  const std::vector<u64> primes = widen(primes_up_to(static_cast<std::uint32_t>(x)));
  std::vector<u64> minus_one(primes);
  for (u64& p : minus_one) --p;
  MertensEnvelope env;
  env.x = x;
  env.product = mpq_class(product_tree(minus_one), product_tree(primes));
  env.product.canonicalize();
  evaluate_envelope(env);
  return env;
}

MertensSweep::MertensSweep() = default;

MertensEnvelope MertensSweep::at(u64 x) {
  if (x < 2) throw InvalidArgument("MertensSweep: x must be at least 2");
  if (x < reached_) throw InvalidArgument("MertensSweep: x must not decrease");
  if (x > reached_) {
    std::vector<u64> ps, ms;
    PrimeStream stream(reached_, x);
    for (u64 p = stream.next(); p != 0; p = stream.next()) {
      ps.push_back(p);
      ms.push_back(p - 1);
    }
    den_ *= product_tree(ps);
    num_ *= product_tree(ms);
    reached_ = x;
  }
  MertensEnvelope env;
  env.x = x;
  env.product = mpq_class(num_, den_);
  env.product.canonicalize();
  evaluate_envelope(env);
  return env;
}

CorollaryCheck check_corollary(u64 x, u64 max_prime) {
  if (x < 6) throw InvalidArgument("check_corollary: requires x >= 6");
  if (x > 2'000'000) throw ResourceExhausted("check_corollary: x^3 out of range");
  const u64 top = x * x * x;
  if (top > max_prime) {
    throw ResourceExhausted("check_corollary: x^3 = " + std::to_string(top) + " exceeds prime cap " +
                            std::to_string(max_prime));
  }
  std::vector<u64> ps, ms;
  PrimeStream stream(x, top);
  for (u64 p = stream.next(); p != 0; p = stream.next()) {
    ps.push_back(p);
    ms.push_back(p - 1);
  }
  CorollaryCheck out;
  out.x = x;
  out.prime_count = ps.size();
  const mpz_class P = product_tree(ps);
  const mpz_class Q = product_tree(ms);
  out.ok = 2 * Q < P;
  out.product = mpq_class(Q, P);
  out.product.canonicalize();
  return out;
}

ChebyshevCheck chebyshev_check(u64 x) {
  if (x == 0) throw InvalidArgument("chebyshev_check: x must be positive");
  if (x >= (u64{1} << 32)) throw ResourceExhausted("chebyshev_check: x beyond the 32-bit sieve range");
  ChebyshevCheck out;
  out.x = x;
  const auto primes = primes_up_to(static_cast<std::uint32_t>(x));
  double s = 0;
  for (auto p : primes) s += std::log2(static_cast<double>(p));
  out.primorial_log2 = s;
  out.margin = 2.0 * static_cast<double>(x) - s;
  // one ulp per log2 plus one rounding per addition
  out.error_bound = 2.0 * static_cast<double>(primes.size() + 1) * std::numeric_limits<double>::epsilon() *
                    std::max(s, 1.0);

  mpz_class primorial;
  mpz_primorial_ui(primorial.get_mpz_t(), static_cast<unsigned long>(x));
  out.exact_ok = mpz_sizeinbase(primorial.get_mpz_t(), 2) <= 2 * x;
  out.ok = out.exact_ok && out.margin > out.error_bound;
  return out;
}

}  // namespace phiorbit
