#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ppd/ntkernel.hpp"

namespace ppd::degrees {

// One admissible parameter triple: q = r^e a prime power, n = (q^d-1)/(q-1).
struct ProjectiveDegree {
    Nat q;
    Nat r;
    unsigned e = 1;
    unsigned d = 2;
    Nat n;
    std::optional<nt::PrimePower> pp;  // set when n is a prime power
};

// A solution of (x^d - 1)/(x - 1) = y^k.
struct NlSolution {
    Nat x;  // may be negative in general mode
    Nat y;
    unsigned d;
    unsigned k;
    bool operator==(const NlSolution& o) const {
        return x == o.x && y == o.y && d == o.d && k == o.k;
    }
};

struct SearchLimits {
    unsigned repunit_bits = 512;  // width cap for iterated repunits
};

// q^{d-1} + ... + q + 1, exact.  Requires q >= 2, d >= 2.
Nat repunit(const Nat& q, unsigned d);

// q = r^e with r prime, if q is a prime power.
std::optional<std::pair<Nat, unsigned>> prime_power_base(const Nat& q);

// Prime-power status of repunit(q, d); requires q a prime power.  On a hit
// with d > 2 the implementation self-checks that d is prime and d | p - 1
// and raises consistency_error otherwise.
std::optional<nt::PrimePower> degree_prime_power(const Nat& q, unsigned d);

// All q = r^e <= q_max with r prime and repunit(q, d) prime, ascending.
// Requires d prime and d*e >= 3.
std::vector<ProjectiveDegree> search_projective_primes(unsigned d, unsigned e, const Nat& q_max);

// (q^d-1)/(q-1) = p^k with q a prime power, d prime > 2, 2 <= k <= k_max.
std::vector<NlSolution> nl_restricted_search(const Nat& q_max, unsigned d_max, unsigned k_max,
                                             const SearchLimits& lim = {});

// d = 2 companion: q + 1 = p^k with k >= 2 over non-Mersenne prime powers q.
std::vector<NlSolution> nl_restricted_search_d2(const Nat& q_max, unsigned k_max);

// All integer solutions of (x^d-1)/(x-1) = y^k with |x|, y, k > 1 and
// 2 < d <= d_max, |x| <= x_abs_max, k <= k_max.
std::vector<NlSolution> nl_general_search(const Nat& x_abs_max, unsigned d_max, unsigned k_max);

// Pairs (p^k, r^l) <= bound, exponents > 1, with p^k = r^l + 1.
std::vector<std::pair<nt::PrimePower, nt::PrimePower>> catalan_prime_search(const Nat& bound);

// The prime-power shape of q + 1 for a prime power q >= 4.
struct Psl2DegreeClass {
    enum class Kind { mersenne, fermat_prime, nine, not_prime_power };
    Kind kind;
    Nat p;         // base of q + 1 when it is a prime power
    unsigned k;    // exponent
};

Psl2DegreeClass classify_psl2_degree(const Nat& q);

}  // namespace ppd::degrees
