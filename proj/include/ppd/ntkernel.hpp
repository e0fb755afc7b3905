#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ppd/errors.hpp"
#include "ppd/natural.hpp"

namespace ppd::nt {

// n = p^k with p certified prime, k >= 1.
struct PrimePower {
    Nat p;
    unsigned k = 1;
    Nat value() const { return powi(p, k); }
    bool operator==(const PrimePower& o) const { return p == o.p && k == o.k; }
};

// Complete factorization, primes strictly increasing.
struct Factorization {
    Nat n;
    std::vector<std::pair<Nat, unsigned>> factors;
    Nat reconstruct() const;
    bool operator==(const Factorization& o) const { return n == o.n && factors == o.factors; }
};

struct SieveOptions {
    u64 capacity = 100'000'000'000ULL;  // largest admissible hi
    u32 segment_odds = 1u << 22;        // odd residues per segment
};

struct FactorOptions {
    u64 trial_limit = 1'000'000;  // trial division bound
    u64 rho_budget = 10'000'000;  // total Brent iterations before giving up
};

// Deterministic for anything below 2^64 (fixed witness set); above that a
// base-2 strong probable prime test plus a strong Lucas test.
bool is_prime(const Nat& n);
bool is_prime_u64(u64 n);
bool is_prime_u128(u128 n);

Factorization factorize(const Nat& n, const FactorOptions& opt = {});

// (p,k) iff n = p^k with p prime, n >= 2.
std::optional<PrimePower> prime_power_decompose(const Nat& n);

// Ascending primes in [lo, hi], segmented, bounded memory.  Each stream is
// independent; disjoint ranges may run in parallel.
class PrimeStream {
  public:
    PrimeStream(u64 lo, u64 hi, SieveOptions opt = {});
    bool next(u64& p);

  private:
    void load_segment(u64 seg_lo);

    u64 hi_;
    SieveOptions opt_;
    std::vector<u32> base_;        // odd base primes <= sqrt(hi)
    std::vector<u64> words_;       // current segment bitmap, bit set = composite
    u64 seg_lo_ = 0;               // first odd covered by current segment
    u64 seg_count_ = 0;            // odds in current segment
    u64 pos_ = 0;                  // scan position within segment
    u64 next_seg_lo_ = 0;
    bool two_pending_ = false;
    bool done_ = false;
};

std::vector<u64> primes_in_range(u64 lo, u64 hi, const SieveOptions& opt = {});

template <class F>
void for_primes(u64 lo, u64 hi, F&& f, const SieveOptions& opt = {}) {
    PrimeStream ps(lo, hi, opt);
    u64 p;
    while (ps.next(p)) f(p);
}

// Least t >= 1 with a^t = 1 mod m.  Requires gcd(a,m) = 1, m >= 2.
Nat multiplicative_order(const Nat& a, const Nat& m);

struct ZsigmondyResult {
    enum class Kind { divisor, exception_2_6, exception_mersenne_d2 };
    Kind kind;
    Nat divisor;  // set iff kind == divisor
    bool is_exception() const { return kind != Kind::divisor; }
};

// A prime dividing q^d - 1 but no q^e - 1 for e < d, or the exceptional
// case: (q,d) = (2,6), or d = 2 with q a Mersenne prime.
ZsigmondyResult zsigmondy_primitive_divisor(const Nat& q, unsigned d);

// Shared cache of the primes below one million (trial-division table).
const std::vector<u32>& small_primes();

int jacobi(Nat a, Nat n);  // n odd positive

}  // namespace ppd::nt
