#include <algorithm>
#include <cmath>
#include <deque>

#include "mpfr_util.hpp"
#include "phiorbit/mertens.hpp"
#include "phiorbit/primes.hpp"
#include "phiorbit/totient.hpp"

namespace phiorbit {

using detail::Mpfr;

std::span<const u64> CrtWitness::block(std::size_t j) const {
  if (j + 1 >= r.size()) throw InvalidArgument("CrtWitness::block: index out of range");
  return std::span<const u64>(primes).subspan(r[j] - 1, r[j + 1] - r[j]);
}

namespace {

std::vector<u64> minus_one(std::span<const u64> ps) {
  std::vector<u64> out(ps.begin(), ps.end());
  for (u64& p : out) --p;
  return out;
}

// Prime source with push-back, so a block can hand primes to the next one.
class PrimeFeed {
 public:
  PrimeFeed(u64 after, u64 bound) : stream_(after, bound) {}

  u64 take() {
    if (!pending_.empty()) {
      u64 p = pending_.front();
      pending_.pop_front();
      return p;
    }
    return stream_.next();
  }
  void give_back(u64 p) { pending_.push_front(p); }

 private:
  PrimeStream stream_;
  std::deque<u64> pending_;
};

[[noreturn]] void exhausted(u64 j, u64 max_prime) {
  throw ResourceExhausted("build_crt_witness: block " + std::to_string(j) + " needs primes above the cap " +
                          std::to_string(max_prime));
}

}  // namespace

CrtWitness build_crt_witness(u64 X, u64 k, u64 max_prime) {
  if (X < 6) throw InvalidArgument("build_crt_witness: requires X >= 6");
  if (k % 2 != 0) throw InvalidArgument("build_crt_witness: k must be even");
  if (max_prime <= X) exhausted(0, max_prime);

  CrtWitness w;
  w.X = X;
  w.k = k;
  w.r.push_back(1);
  PrimeFeed feed(X, max_prime);
  const long double half_log = std::log(0.5L);

  for (u64 j = 0; j <= k; ++j) {
    std::vector<u64> block;
    // Locate the crossing with a running log-sum, then settle it exactly.
    long double s = 0;
    while (s >= half_log) {
      const u64 p = feed.take();
      if (p == 0) exhausted(j, max_prime);
      block.push_back(p);
      s += std::log1p(-1.0L / static_cast<long double>(p));
    }
    mpz_class P = product_tree(block);
    mpz_class Q = product_tree(minus_one(block));
    while (2 * Q >= P) {
      const u64 p = feed.take();
      if (p == 0) exhausted(j, max_prime);
      block.push_back(p);
      P *= static_cast<unsigned long>(p);
      Q *= static_cast<unsigned long>(p - 1);
    }
    for (;;) {
      const u64 last = block.back();
      mpz_class P_prev = P / static_cast<unsigned long>(last);
      mpz_class Q_prev = Q / static_cast<unsigned long>(last - 1);
      if (2 * Q_prev > P_prev) break;
      feed.give_back(last);
      block.pop_back();
      P = std::move(P_prev);
      Q = std::move(Q_prev);
    }
    w.primes.insert(w.primes.end(), block.begin(), block.end());
    w.r.push_back(w.primes.size() + 1);
    w.q.push_back(std::move(P));
  }

  // Garner-style accumulation of y = j (mod q_j).
  mpz_class y = 0, m = 1;
  for (u64 j = 0; j <= k; ++j) {
    const mpz_class& qj = w.q[j];
    mpz_class diff = mpz_class(static_cast<unsigned long>(j)) - y;
    mpz_fdiv_r(diff.get_mpz_t(), diff.get_mpz_t(), qj.get_mpz_t());
    mpz_class inv = m % qj;
    if (mpz_invert(inv.get_mpz_t(), inv.get_mpz_t(), qj.get_mpz_t()) == 0) {
      throw Error("build_crt_witness: block moduli are not coprime");
    }
    mpz_class t = diff * inv % qj;
    y += m * t;
    m *= qj;
  }
  if (y <= X) y += m;
  w.y = std::move(y);
  return w;
}

WitnessVerification verify_crt_witness(const CrtWitness& w) {
  WitnessVerification v;
  auto note = [&](const std::string& msg) {
    if (!v.detail.empty()) v.detail += "; ";
    v.detail += msg;
  };
  const u64 blocks = w.k + 1;
  if (w.primes.empty() || w.r.size() != blocks + 1 || w.q.size() != blocks || w.r.front() != 1 ||
      w.r.back() != w.primes.size() + 1) {
    note("malformed witness shape");
    return v;
  }
  for (u64 j = 0; j < blocks; ++j) {
    if (w.r[j + 1] <= w.r[j]) {
      note("block boundaries not strictly increasing");
      return v;
    }
  }

  // The prime list must be exactly the first primes above X.
  const u64 last = w.primes.back();
  if (last < (u64{1} << 32)) {
    const auto all = primes_up_to(static_cast<std::uint32_t>(last));
    auto it = std::upper_bound(all.begin(), all.end(), w.X);
    v.primes_ok = static_cast<u64>(all.end() - it) == w.primes.size() &&
                  std::equal(w.primes.begin(), w.primes.end(), it);
  } else {
    v.primes_ok = w.primes.front() > w.X;
    for (std::size_t i = 0; i < w.primes.size() && v.primes_ok; ++i) {
      v.primes_ok = is_prime_u64(w.primes[i]) && (i == 0 || w.primes[i] > w.primes[i - 1]);
    }
    note("prime list above 2^32: primality and order checked, gaps not re-sieved");
  }
  if (!v.primes_ok) note("prime list is not the consecutive primes above X");

  // q_j from primorial ratios.
  v.q_ok = true;
  for (u64 j = 0; j < blocks; ++j) {
    const auto b = w.block(j);
    mpz_class hi, lo;
    mpz_primorial_ui(hi.get_mpz_t(), static_cast<unsigned long>(b.back()));
    mpz_primorial_ui(lo.get_mpz_t(), static_cast<unsigned long>(b.front() - 1));
    if (!mpz_divisible_p(hi.get_mpz_t(), lo.get_mpz_t()) || hi / lo != w.q[j]) {
      v.q_ok = false;
      note("q_" + std::to_string(j) + " differs from the primorial ratio");
    }
  }

  // Both block inequalities through a 256-bit product. Each of the 2n
  // correctly rounded operations contributes at most 2^-256 relative error.
  v.blocks_ok = true;
  for (u64 j = 0; j < blocks; ++j) {
    const auto b = w.block(j);
    Mpfr prod(256), prev(256), tol(256), lo(256), hi(256);
    mpfr_set_ui(prod.get(), 1, MPFR_RNDN);
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i + 1 == b.size()) mpfr_set(prev.get(), prod.get(), MPFR_RNDN);
      mpfr_mul_ui(prod.get(), prod.get(), static_cast<unsigned long>(b[i] - 1), MPFR_RNDN);
      mpfr_div_ui(prod.get(), prod.get(), static_cast<unsigned long>(b[i]), MPFR_RNDN);
    }
    mpfr_set_ui(tol.get(), 4 * b.size() + 4, MPFR_RNDU);
    mpfr_mul_2si(tol.get(), tol.get(), -256, MPFR_RNDU);
    mpfr_set_d(lo.get(), 0.5, MPFR_RNDN);
    mpfr_sub(lo.get(), lo.get(), tol.get(), MPFR_RNDD);
    mpfr_set_d(hi.get(), 0.5, MPFR_RNDN);
    mpfr_add(hi.get(), hi.get(), tol.get(), MPFR_RNDU);
    bool full_below = mpfr_less_p(prod.get(), lo.get());
    bool prefix_above = mpfr_greater_p(prev.get(), hi.get());
    if (!full_below || !prefix_above) {
      // Within rounding distance of 1/2 (or genuinely wrong): decide exactly.
      const mpz_class P = product_tree(b);
      const mpz_class Q = product_tree(minus_one(b));
      const unsigned long pl = static_cast<unsigned long>(b.back());
      full_below = 2 * Q < P;
      prefix_above = 2 * (Q / (pl - 1)) > P / pl;
      note("block " + std::to_string(j) + " needed the exact fallback");
    }
    if (!full_below || !prefix_above) {
      v.blocks_ok = false;
      note("block " + std::to_string(j) + " violates the product bounds");
    }
  }

  v.coprime_ok = true;
  for (u64 i = 0; i < blocks; ++i) {
    for (u64 j = i + 1; j < blocks; ++j) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), w.q[i].get_mpz_t(), w.q[j].get_mpz_t());
      if (g != 1) v.coprime_ok = false;
    }
  }
  if (!v.coprime_ok) note("block products share a factor");

  v.congruences_ok = true;
  for (u64 j = 0; j < blocks; ++j) {
    mpz_class rem;
    mpz_fdiv_r(rem.get_mpz_t(), w.y.get_mpz_t(), w.q[j].get_mpz_t());
    if (rem != static_cast<unsigned long>(j)) v.congruences_ok = false;
  }
  if (!v.congruences_ok) note("y fails a congruence");

  v.y_bound_ok = w.y >= w.q[0] && w.y > static_cast<unsigned long>(w.X);
  if (!v.y_bound_ok) note("y is not above q_0 > X");

  v.r_bound_ok = true;
  for (u64 j = 0; j < w.r.size(); ++j) {
    const double e = std::pow(3.0, static_cast<double>(j));
    if (e * std::log2(static_cast<double>(w.X)) >= 70.0) continue;  // X^(3^j) > 2^64 > r_j
    mpz_class bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), static_cast<unsigned long>(w.X), static_cast<unsigned long>(e));
    if (mpz_class(static_cast<unsigned long>(w.r[j])) > bound) v.r_bound_ok = false;
  }
  if (!v.r_bound_ok) note("some r_j exceeds X^(3^j)");
  return v;
}

std::string_view to_string(DropStatus s) {
  switch (s) {
    case DropStatus::verified: return "verified";
    case DropStatus::violated: return "violated";
    case DropStatus::unverified: return "unverified";
  }
  return "?";
}

DropStatus parse_drop_status(std::string_view s) {
  for (auto d : {DropStatus::verified, DropStatus::violated, DropStatus::unverified}) {
    if (to_string(d) == s) return d;
  }
  throw InvalidArgument("unknown drop status '" + std::string(s) + "'");
}

PhiDropOutcome verify_phi_drop(const CrtWitness& w, u64 trial_cap, u64 prime_test_bits) {
  PhiDropOutcome out;
  if (w.q.size() != w.k + 1) throw InvalidArgument("verify_phi_drop: malformed witness");
  const mpz_class y_minus_k = w.y - static_cast<unsigned long>(w.k);

  const auto small = primes_up_to(static_cast<std::uint32_t>(std::min<u64>(trial_cap, u64{1} << 31)));
  mpz_class small_primorial;
  mpz_primorial_ui(small_primorial.get_mpz_t(), static_cast<unsigned long>(small.empty() ? 1 : small.back()));

  for (u64 j = 1; j <= w.k; ++j) {
    PhiDropDetail det;
    det.j = j;
    const mpz_class m = 2 * (w.y - static_cast<unsigned long>(j));
    mpz_class c = w.y - static_cast<unsigned long>(j);
    const mpz_class& qj = w.q[j];
    if (!mpz_divisible_p(c.get_mpz_t(), qj.get_mpz_t())) {
      throw InvalidArgument("verify_phi_drop: y - j is not divisible by q_j");
    }
    // Known odd prime divisors from the construction.
    c /= qj;
    for (mpz_class g = qj; g != 1;) {
      mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), qj.get_mpz_t());
      if (g != 1) c /= g;
    }
    mpz_class num = product_tree(minus_one(w.block(j)));  // prod (p - 1)
    mpz_class den = qj;                                  // prod p
    // 2 divides m (factor 1/2); strip it from the cofactor as well.
    den *= 2;
    while (mpz_even_p(c.get_mpz_t())) c /= 2;
    // Trial division by small primes, through one gcd with their primorial.
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), small_primorial.get_mpz_t());
    if (g != 1) {
      for (auto p : small) {
        if (p == 2 || !mpz_divisible_ui_p(g.get_mpz_t(), p)) continue;
        num *= static_cast<unsigned long>(p - 1);
        den *= static_cast<unsigned long>(p);
        while (mpz_divisible_ui_p(c.get_mpz_t(), p)) c /= static_cast<unsigned long>(p);
      }
    }
    if (c == 1) {
      det.exact = true;
    } else if (mpz_sizeinbase(c.get_mpz_t(), 2) <= prime_test_bits && mpz_probab_prime_p(c.get_mpz_t(), 40) > 0) {
      num *= c - 1;
      den *= c;
      det.exact = true;
    }
    // phi(m) <= m * num / den; exact when every prime divisor is accounted for.
    const bool below = m * num < y_minus_k * den;
    if (below) {
      det.status = DropStatus::verified;
    } else {
      det.status = det.exact ? DropStatus::violated : DropStatus::unverified;
    }
    out.details.push_back(det);
  }

  // Even m < 2y - 2k: phi(m) <= m/2 < y - k.
  const mpz_class limit = 2 * y_minus_k;
  std::vector<u64> sample;
  for (u64 m = 2; m <= 128; m += 2) sample.push_back(m);
  if (limit > 4) {
    mpz_class top = limit - 2;
    if (mpz_odd_p(top.get_mpz_t())) top -= 1;
    const mpz_class cap = mpz_class(1) << 62;
    if (top > cap) top = cap;
    const u64 t = mpz_get_ui(top.get_mpz_t());
    for (u64 i = 0; i < 64 && t > 2 * i + 128; ++i) sample.push_back(t - 2 * i);
  }
  for (u64 m : sample) {
    if (mpz_class(static_cast<unsigned long>(m)) >= limit) continue;
    ++out.sampled_even;
    const u64 f = phi(m);
    if (f > m / 2 || mpz_class(static_cast<unsigned long>(m / 2)) >= y_minus_k) {
      out.status = DropStatus::violated;
    }
  }

  for (const auto& d : out.details) {
    if (d.status == DropStatus::violated) {
      out.status = DropStatus::violated;
      if (out.violating_j == 0) out.violating_j = d.j;
    } else if (d.status == DropStatus::unverified && out.status == DropStatus::verified) {
      out.status = DropStatus::unverified;
    }
  }
  return out;
}

}  // namespace phiorbit
