#include "ppd/degrees.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ppd::degrees {

namespace {

void check_cor56(const Nat& p, unsigned d) {
    // a prime-power repunit with d > 2 forces d prime and d | p - 1
    if (!nt::is_prime_u64(d))
        throw consistency_error("degree_prime_power: prime-power repunit with composite d");
    if ((p - 1) % d != 0)
        throw consistency_error("degree_prime_power: d does not divide p - 1");
}

void verify_solution(const NlSolution& s) {
    Nat v = (powi(s.x, s.d) - 1) / (s.x - 1);
    if (powi(s.y, s.k) != v)
        throw consistency_error("nl search: solution fails its defining equation");
}

// ascending prime powers r^e <= limit (all e >= 1)
std::vector<u64> prime_powers_upto(u64 limit) {
    std::vector<u64> out;
    nt::for_primes(2, limit, [&](u64 r) {
        u128 v = r;
        while (v <= limit) {
            out.push_back(static_cast<u64>(v));
            if (v > limit / r) break;
            v *= r;
        }
    });
    std::sort(out.begin(), out.end());
    return out;
}

bool is_mersenne_prime_u64(u64 q) {
    return ((q + 1) & q) == 0 && nt::is_prime_u64(q);
}

}  // namespace

Nat repunit(const Nat& q, unsigned d) {
    if (q < 2 || d < 2) throw std::invalid_argument("repunit: need q >= 2, d >= 2");
    Nat r = 1;
    for (unsigned i = 1; i < d; ++i) r = r * q + 1;
    return r;
}

std::optional<std::pair<Nat, unsigned>> prime_power_base(const Nat& q) {
    if (q < 2) return std::nullopt;
    auto pp = nt::prime_power_decompose(q);
    if (!pp) return std::nullopt;
    return std::make_pair(pp->p, pp->k);
}

std::optional<nt::PrimePower> degree_prime_power(const Nat& q, unsigned d) {
    if (!prime_power_base(q)) throw std::invalid_argument("degree_prime_power: q must be a prime power");
    Nat n = repunit(q, d);
    auto pp = nt::prime_power_decompose(n);
    if (pp && d > 2) check_cor56(pp->p, d);
    return pp;
}

std::vector<ProjectiveDegree> search_projective_primes(unsigned d, unsigned e, const Nat& q_max) {
    if (!nt::is_prime_u64(d)) throw std::invalid_argument("search_projective_primes: d must be prime");
    if (e < 1 || static_cast<u64>(d) * e < 3)
        throw std::invalid_argument("search_projective_primes: need d*e >= 3");
    std::vector<ProjectiveDegree> out;
    if (q_max < 2) return out;
    if (!fits_u64(iroot(q_max, e))) throw capacity_error("search_projective_primes: q_max too large");
    u64 r_max = to_u64(iroot(q_max, e));
    nt::for_primes(2, r_max, [&](u64 r) {
        Nat q = powi(Nat(r), e);
        if (q > q_max) return;
        Nat n = repunit(q, d);
        if (!nt::is_prime(n)) return;
        if (d > 2) check_cor56(n, d);
        out.push_back({q, Nat(r), e, d, n, nt::PrimePower{n, 1}});
    });
    return out;
}

std::vector<NlSolution> nl_restricted_search(const Nat& q_max, unsigned d_max, unsigned k_max,
                                             const SearchLimits& lim) {
    if (q_max < 2 || d_max < 3 || k_max < 2)
        throw std::invalid_argument("nl_restricted_search: bounds too small");
    if (!fits_u64(q_max)) throw capacity_error("nl_restricted_search: q_max too large");
    std::vector<NlSolution> out;
    for (u64 q : prime_powers_upto(to_u64(q_max))) {
        for (u64 d = 3; d <= d_max; ++d) {
            if (!nt::is_prime_u64(d)) continue;
            Nat n = repunit(Nat(q), static_cast<unsigned>(d));
            if (bit_length(n) > lim.repunit_bits) break;
            auto pp = nt::prime_power_decompose(n);
            if (!pp || pp->k < 2 || pp->k > k_max) continue;
            check_cor56(pp->p, static_cast<unsigned>(d));
            NlSolution s{Nat(q), pp->p, static_cast<unsigned>(d), pp->k};
            verify_solution(s);
            out.push_back(s);
        }
    }
    return out;
}

std::vector<NlSolution> nl_restricted_search_d2(const Nat& q_max, unsigned k_max) {
    if (q_max < 2 || k_max < 2) throw std::invalid_argument("nl_restricted_search_d2: bounds too small");
    if (!fits_u64(q_max)) throw capacity_error("nl_restricted_search_d2: q_max too large");
    std::vector<NlSolution> out;
    for (u64 q : prime_powers_upto(to_u64(q_max))) {
        if (is_mersenne_prime_u64(q)) continue;  // the 2^k family, handled as its own case
        auto pp = nt::prime_power_decompose(Nat(q) + 1);
        if (!pp || pp->k < 2 || pp->k > k_max) continue;
        NlSolution s{Nat(q), pp->p, 2, pp->k};
        verify_solution(s);
        out.push_back(s);
    }
    return out;
}

std::vector<NlSolution> nl_general_search(const Nat& x_abs_max, unsigned d_max, unsigned k_max) {
    if (x_abs_max < 2 || d_max < 3 || k_max < 2)
        throw std::invalid_argument("nl_general_search: bounds too small");
    if (!fits_u64(x_abs_max)) throw capacity_error("nl_general_search: x_abs_max too large");
    u64 ax_max = to_u64(x_abs_max);
    std::vector<NlSolution> out;
    for (u64 ax = 2; ax <= ax_max; ++ax) {
        for (int sign : {+1, -1}) {
            Nat x = sign > 0 ? Nat(ax) : -Nat(ax);
            for (unsigned d = 3; d <= d_max; ++d) {
                if (sign < 0 && d % 2 == 0) continue;  // value would be <= 0
                Nat v = (powi(x, d) - 1) / (x - 1);
                if (v < 4) continue;
                for (unsigned k = 2; k <= k_max; ++k) {
                    Nat y = iroot(v, k);
                    if (y < 2) break;
                    if (powi(y, k) == v) {
                        NlSolution s{x, y, d, k};
                        verify_solution(s);
                        out.push_back(s);
                    }
                }
            }
        }
    }
    return out;
}

std::vector<std::pair<nt::PrimePower, nt::PrimePower>> catalan_prime_search(const Nat& bound) {
    std::vector<std::pair<nt::PrimePower, nt::PrimePower>> out;
    if (bound < 9) return out;
    if (!fits_u64(bound)) throw capacity_error("catalan_prime_search: bound too large");
    u64 b = to_u64(bound);
    // proper prime powers p^k <= b, k >= 2
    std::map<u64, nt::PrimePower> powers;
    nt::for_primes(2, isqrt_u64(b), [&](u64 p) {
        u128 v = static_cast<u128>(p) * p;
        unsigned k = 2;
        while (v <= b) {
            powers.emplace(static_cast<u64>(v), nt::PrimePower{Nat(p), k});
            v *= p;
            ++k;
        }
    });
    for (const auto& [v, pp] : powers) {
        auto it = powers.find(v + 1);
        if (it != powers.end()) out.emplace_back(it->second, pp);  // (p^k, r^l) with p^k = r^l + 1
    }
    return out;
}

Psl2DegreeClass classify_psl2_degree(const Nat& q) {
    if (q < 4 || !prime_power_base(q))
        throw std::invalid_argument("classify_psl2_degree: q must be a prime power >= 4");
    Nat n = q + 1;
    if ((q & 1) != 0) {
        // odd q: q + 1 is even, so a prime power only as a power of two
        if ((n & q) == 0) {
            if (!nt::is_prime(q))
                throw consistency_error("classify_psl2_degree: 2^k - 1 composite prime power");
            return {Psl2DegreeClass::Kind::mersenne, 2, static_cast<unsigned>(bit_length(n)) - 1};
        }
        return {Psl2DegreeClass::Kind::not_prime_power, 0, 0};
    }
    if (q == 8) return {Psl2DegreeClass::Kind::nine, 3, 2};
    if (nt::is_prime(n)) {
        // 2^e + 1 prime forces e a power of two
        unsigned e = bit_length(q) - 1;
        if ((e & (e - 1)) != 0)
            throw consistency_error("classify_psl2_degree: Fermat exponent not a power of two");
        return {Psl2DegreeClass::Kind::fermat_prime, n, 1};
    }
    return {Psl2DegreeClass::Kind::not_prime_power, 0, 0};
}

}  // namespace ppd::degrees
