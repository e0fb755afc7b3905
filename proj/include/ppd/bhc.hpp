#pragma once

#include <functional>
#include <vector>

#include "ppd/ntkernel.hpp"

namespace ppd::bhc {

// The polynomial pair f1(t) = t, f2(t) = t^{(d-1)e} + ... + t^e + 1 together
// with the numerical knobs of the estimate.
struct BhcProblem {
    unsigned d = 3;                    // prime >= 3
    unsigned e = 1;                    // q = t^e
    u64 prime_bound = 100'000'000;     // Euler product truncation
    double quad_tol = 1e-9;            // relative integration tolerance
    double a = 2.0;                    // lower integration limit
    nt::SieveOptions sieve{};

    void validate() const;
};

// One report row: exact count, estimate, constant and their ratio.
struct BhcReport {
    u64 x = 0;
    u64 q_count = 0;   // Q(x)
    double estimate = 0.0;  // E(x)
    double constant = 0.0;  // C
    double ratio = 0.0;     // E(x)/Q(x)
};

// Number of distinct roots of t * f2(t) mod p.  Closed form
// 1 + gcd(de, p-1) - gcd(e, p-1) away from p | de, direct enumeration there.
unsigned omega_f(u64 p, unsigned d, unsigned e);

// Hardy-Littlewood constant: partial Euler product over p <= prime_bound
// with k = 2, accumulated in extended-precision log space.
double hl_constant(const BhcProblem& pb);

// Same product with an injected root-count (partial-product probes, tests).
double hl_constant_with_omega(u64 prime_bound, const std::function<unsigned(u64)>& omega,
                              const nt::SieveOptions& sieve = {});

// ln f2(t) evaluated stably for large t.
double log_f2(double t, unsigned d, unsigned e);

// E(x) = C * integral_a^x dt / (ln t * ln f2(t)).
double estimate_E(const BhcProblem& pb, u64 x, double hl_c);
double estimate_E(const BhcProblem& pb, u64 x);  // computes C itself

using ProgressFn = std::function<void(u64 done, u64 total)>;

// Exact count of primes t <= x with f2(t) prime.  Partitioned into chunks
// processed by `threads` workers (0 = hardware default, PPD_THREADS wins).
u64 count_Q(const BhcProblem& pb, u64 x, unsigned threads = 0, const ProgressFn& progress = {});

// Single-range building block; pure, safe to run concurrently.
u64 count_Q_range(const BhcProblem& pb, u64 lo, u64 hi);

// One row per x (ascending), one sieve pass, one constant.
std::vector<BhcReport> table_report(const BhcProblem& pb, const std::vector<u64>& xs,
                                    unsigned threads = 0, const ProgressFn& progress = {});

unsigned resolve_threads(unsigned requested);

}  // namespace ppd::bhc
