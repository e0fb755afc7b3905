#include "ppd/ntkernel.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace ppd::nt {

namespace {

std::vector<u32> sieve_simple(u32 limit) {
    std::vector<u32> out;
    if (limit < 2) return out;
    out.push_back(2);
    std::vector<char> comp((limit + 1) / 2, 0);  // comp[i] <-> 2i+1
    for (u64 p = 3; p * p <= limit; p += 2) {
        if (comp[p >> 1]) continue;
        for (u64 v = p * p; v <= limit; v += 2 * p) comp[v >> 1] = 1;
    }
    for (u64 v = 3; v <= limit; v += 2)
        if (!comp[v >> 1]) out.push_back(static_cast<u32>(v));
    return out;
}

// ---- generic modular helpers over u128 / Nat --------------------------

template <class T>
T mod_mul(const T& a, const T& b, const T& m);

template <>
u128 mod_mul<u128>(const u128& a, const u128& b, const u128& m) {
    return mulmod128(a, b, m);
}

template <>
Nat mod_mul<Nat>(const Nat& a, const Nat& b, const Nat& m) {
    return (a * b) % m;
}

template <class T>
T mod_sub(const T& a, const T& b, const T& m) {
    return a >= b ? a - b : T(a + m - b);
}

template <class T>
T mod_pow_t(T a, T e, const T& m) {
    T r{1};
    a %= m;
    while (e != 0) {
        if ((e & 1) != 0) r = mod_mul(r, a, m);
        a = mod_mul(a, a, m);
        e >>= 1;
    }
    return r;
}

template <class T>
int jacobi_t(T a, T n) {
    a %= n;
    int result = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            T r = n & 7;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

unsigned bitlen_u128(u128 v) {
    u64 hi = static_cast<u64>(v >> 64);
    if (hi) return 128 - __builtin_clzll(hi);
    u64 lo = static_cast<u64>(v);
    return lo ? 64 - __builtin_clzll(lo) : 0;
}

u128 isqrt_u128(u128 n) {
    if (n == 0) return 0;
    u128 x = u128(1) << ((bitlen_u128(n) + 2) / 2);
    while (true) {
        u128 y = (x + n / x) >> 1;
        if (y >= x) break;
        x = y;
    }
    return x;
}

template <class T>
T sqrt_floor(const T& n);

template <>
u128 sqrt_floor<u128>(const u128& n) {
    return isqrt_u128(n);
}

template <>
Nat sqrt_floor<Nat>(const Nat& n) {
    return boost::multiprecision::sqrt(n);
}

// Strong probable prime test to base a; n odd >= 3.
template <class T>
bool strong_probable_prime(const T& n, T a) {
    const T nm1 = n - 1;
    T d = nm1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    a %= n;
    if (a == 0) return true;
    T x = mod_pow_t(a, d, n);
    if (x == 1 || x == nm1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mod_mul(x, x, n);
        if (x == nm1) return true;
    }
    return false;
}

// Strong Lucas probable prime test with Selfridge parameters; n odd >= 3,
// not a perfect square, no small prime factors.
template <class T>
bool strong_lucas_probable_prime(const T& n) {
    long long d_abs = 5;
    int sign = 1;
    long long D = 0;
    while (true) {
        T dm = T(static_cast<u64>(d_abs)) % n;
        T res = (sign > 0) ? dm : (dm == 0 ? T(0) : T(n - dm));
        if (res == 0) return false;  // n <= |D| cannot occur on this path
        int j = jacobi_t(res, n);
        if (j == -1) {
            D = sign * d_abs;
            break;
        }
        if (j == 0) return false;  // proper gcd with n
        sign = -sign;
        d_abs += 2;
    }
    const long long Q = (1 - D) / 4;  // Selfridge parameters, P = 1

    T dm = T(static_cast<u64>(D >= 0 ? D : -D)) % n;
    const T Dm = (D >= 0) ? dm : T(n - dm);
    T qm = T(static_cast<u64>(Q >= 0 ? Q : -Q)) % n;
    const T Qm = (Q >= 0) ? qm : (qm == 0 ? T(0) : T(n - qm));

    T d = n + 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }

    std::vector<bool> bits;
    for (T t = d; t != 0; t >>= 1) bits.push_back((t & 1) != 0);

    auto halve = [&](const T& x) -> T {
        if ((x & 1) == 0) return x >> 1;
        return (x + n) >> 1;
    };

    // ladder from the top bit: U_1 = 1, V_1 = P = 1, Q^1
    T U{1}, V{1}, qk = Qm;
    for (int i = static_cast<int>(bits.size()) - 2; i >= 0; --i) {
        // k -> 2k
        U = mod_mul(U, V, n);
        T qk2 = mod_mul(T(2) % n, qk, n);
        V = mod_sub(mod_mul(V, V, n), qk2, n);
        qk = mod_mul(qk, qk, n);
        if (bits[static_cast<size_t>(i)]) {
            // 2k -> 2k+1 (P = 1)
            T u_next = halve(T((U + V) % n));
            T v_next = halve(T((mod_mul(Dm, U, n) + V) % n));
            U = u_next;
            V = v_next;
            qk = mod_mul(qk, Qm, n);
        }
    }

    if (U == 0 || V == 0) return true;
    for (unsigned r = 1; r < s; ++r) {
        T qk2 = mod_mul(T(2) % n, qk, n);
        V = mod_sub(mod_mul(V, V, n), qk2, n);
        qk = mod_mul(qk, qk, n);
        if (V == 0) return true;
    }
    return false;
}

template <class T>
bool bpsw(const T& n) {
    if (!strong_probable_prime(n, T(2))) return false;
    T r = sqrt_floor<T>(n);
    if (r * r == n) return false;
    return strong_lucas_probable_prime(n);
}

constexpr std::array<u32, 12> kMr64Bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// published deterministic witness tiers (Jaeschke; Sinclair)
std::size_t mr64_base_count(u64 n) {
    if (n < 3'215'031'751ULL) return 4;
    if (n < 3'474'749'660'383ULL) return 6;
    if (n < 341'550'071'728'321ULL) return 7;
    if (n < 3'825'123'056'546'413'051ULL) return 9;
    return 12;
}

// ---- Montgomery BPSW for 64..126-bit moduli ----------------------------

bool sprp_base2_mont(const Mont128& M) {
    const u128 n = M.modulus();
    u128 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    const u128 one = M.one();
    const u128 minus_one = n - one;
    u128 x = M.pow(M.to(2), d);
    if (x == one || x == minus_one) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = M.mul(x, x);
        if (x == minus_one) return true;
    }
    return false;
}

bool strong_lucas_mont(const Mont128& M) {
    const u128 n = M.modulus();
    long long d_abs = 5;
    int sign = 1;
    long long D = 0;
    while (true) {
        u128 dm = static_cast<u128>(static_cast<u64>(d_abs)) % n;
        u128 res = sign > 0 ? dm : n - dm;  // d_abs < n on this path
        int j = jacobi_t<u128>(res, n);
        if (j == -1) {
            D = sign * d_abs;
            break;
        }
        if (j == 0) return false;
        sign = -sign;
        d_abs += 2;
    }
    const long long Q = (1 - D) / 4;

    u128 dm_plain = static_cast<u128>(static_cast<u64>(D >= 0 ? D : -D)) % n;
    const u128 Dm = M.to(D >= 0 ? dm_plain : n - dm_plain);
    u128 qm_plain = static_cast<u128>(static_cast<u64>(Q >= 0 ? Q : -Q)) % n;
    const u128 Qm = M.to(Q >= 0 ? qm_plain : (qm_plain == 0 ? 0 : n - qm_plain));

    u128 d = n + 1;  // n < 2^126, no overflow
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }

    auto halve = [&](u128 x) { return (x & 1) ? (x + n) >> 1 : x >> 1; };

    unsigned top = bitlen_u128(d);
    u128 U = M.one(), V = M.one(), qk = Qm;  // U_1 = V_1 = 1 (P = 1)
    for (unsigned i = top - 1; i-- > 0;) {
        U = M.mul(U, V);
        V = M.sub(M.mul(V, V), M.add(qk, qk));
        qk = M.mul(qk, qk);
        if ((d >> i) & 1) {
            u128 u_next = halve(M.add(U, V));
            u128 v_next = halve(M.add(M.mul(Dm, U), V));
            U = u_next;
            V = v_next;
            qk = M.mul(qk, Qm);
        }
    }
    if (U == 0 || V == 0) return true;
    for (unsigned r = 1; r < s; ++r) {
        V = M.sub(M.mul(V, V), M.add(qk, qk));
        qk = M.mul(qk, qk);
        if (V == 0) return true;
    }
    return false;
}

// ---- Brent's rho ------------------------------------------------------

template <class T>
T gcd_t(T a, T b) {
    while (b != 0) {
        T t = a % b;
        a = b;
        b = t;
    }
    return a;
}

template <class T>
T abs_diff(const T& a, const T& b) {
    return a >= b ? T(a - b) : T(b - a);
}

// A nontrivial factor of odd composite n, or 0 once the shared iteration
// budget is spent.  Deterministic parameter sequence.
template <class T>
T brent_rho(const T& n, u64& budget) {
    for (u64 c = 1; budget > 0; ++c) {
        const T cc = T(c) % n;
        T y{2}, r{1}, q{1}, g{1}, x{0}, ys{0};
        const u64 m = 128;
        auto step = [&](const T& v) { return T((mod_mul(v, v, n) + cc) % n); };
        while (g == 1) {
            x = y;
            for (T i{0}; i < r; ++i) {
                y = step(y);
                if (budget == 0) return T(0);
                --budget;
            }
            T k{0};
            while (k < r && g == 1) {
                ys = y;
                u64 inner = m;
                for (u64 i = 0; i < inner && T(k + i) < r; ++i) {
                    y = step(y);
                    q = mod_mul(q, abs_diff(x, y), n);
                    if (budget == 0) return T(0);
                    --budget;
                }
                g = gcd_t(q, n);
                k += m;
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = step(ys);
                g = gcd_t(abs_diff(x, ys), n);
                if (budget == 0) return T(0);
                --budget;
            }
        }
        if (g != n) return g;
        // cycle collapsed; retry with the next polynomial
    }
    return T(0);
}

Nat find_factor(const Nat& n, u64& budget) {
    if (fits_u64(n)) {
        u128 f = brent_rho<u128>(to_u64(n), budget);
        return from_u128(f);
    }
    if (bit_length(n) <= 126) {
        u128 f = brent_rho<u128>(to_u128(n), budget);
        return from_u128(f);
    }
    return brent_rho<Nat>(n, budget);
}

int mobius_of(u64 n) {
    int mu = 1;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

}  // namespace

const std::vector<u32>& small_primes() {
    static const std::vector<u32> primes = sieve_simple(1'000'000);
    return primes;
}

int jacobi(Nat a, Nat n) {
    if (n <= 0 || (n & 1) == 0) throw std::invalid_argument("jacobi: modulus must be odd positive");
    a %= n;
    if (a < 0) a += n;
    return jacobi_t<Nat>(a, n);
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u32 p : kMr64Bases) {
        if (n % p == 0) return n == p;
    }
    if (n < 41ULL * 41ULL) return true;
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::size_t bases = mr64_base_count(n);
    for (std::size_t b = 0; b < bases; ++b) {
        u64 x = powmod64(kMr64Bases[b], d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

bool is_prime_u128(u128 n) {
    if (n <= ~u64(0)) return is_prime_u64(static_cast<u64>(n));
    for (u32 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u, 53u, 59u, 61u, 67u, 71u, 73u, 79u, 83u, 89u, 97u}) {
        if (n % p == 0) return false;  // n > 2^64 > p
    }
    if ((n >> 126) == 0) {
        Mont128 M(n);
        if (!sprp_base2_mont(M)) return false;
        u128 r = isqrt_u128(n);
        if (r * r == n) return false;
        return strong_lucas_mont(M);
    }
    if (n >> 127) return bpsw<Nat>(from_u128(n));  // keep modular adds overflow-free
    return bpsw<u128>(n);
}

bool is_prime(const Nat& n) {
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    if (bit_length(n) <= 127) return is_prime_u128(to_u128(n));
    for (u32 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u, 53u, 59u, 61u, 67u, 71u, 73u, 79u, 83u, 89u, 97u}) {
        if (n % p == 0) return false;
    }
    return bpsw<Nat>(n);
}

Nat Factorization::reconstruct() const {
    Nat r = 1;
    for (const auto& [p, k] : factors) r *= powi(p, k);
    return r;
}

Factorization factorize(const Nat& n, const FactorOptions& opt) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    std::map<Nat, unsigned> acc;
    Nat m = n;

    const auto& primes = small_primes();
    u64 trial_limit = std::min<u64>(opt.trial_limit, primes.empty() ? 0 : primes.back());
    if (fits_u64(m)) {
        u64 v = to_u64(m);
        for (u32 p : primes) {
            if (p > trial_limit || static_cast<u64>(p) * p > v) break;
            while (v % p == 0) {
                v /= p;
                ++acc[Nat(p)];
            }
        }
        m = v;
    } else {
        for (u32 p : primes) {
            if (p > trial_limit) break;
            while (m % p == 0) {
                m /= p;
                ++acc[Nat(p)];
            }
            if (fits_u64(m)) break;
        }
        if (fits_u64(m) && m > 1) {
            u64 v = to_u64(m);
            for (u32 p : primes) {
                if (p > trial_limit || static_cast<u64>(p) * p > v) break;
                while (v % p == 0) {
                    v /= p;
                    ++acc[Nat(p)];
                }
            }
            m = v;
        }
    }

    // remaining cofactor: split with rho until everything is certified prime
    u64 budget = opt.rho_budget;
    std::vector<Nat> pending;
    if (m > 1) pending.push_back(m);
    while (!pending.empty()) {
        Nat v = pending.back();
        pending.pop_back();
        if (v <= trial_limit * trial_limit || is_prime(v)) {
            // below trial_limit^2 any survivor of trial division is prime
            ++acc[v];
            continue;
        }
        Nat f = find_factor(v, budget);
        if (f == 0 || f == 1 || f == v)
            throw capacity_error("factorize: effort budget exhausted");
        pending.push_back(f);
        pending.push_back(v / f);
    }

    Factorization out;
    out.n = n;
    out.factors.assign(acc.begin(), acc.end());
    return out;
}

std::optional<PrimePower> prime_power_decompose(const Nat& n) {
    if (n < 2) throw std::invalid_argument("prime_power_decompose: n must be >= 2");
    // a factor below 10^4 pins the base
    for (u32 p : small_primes()) {
        if (p > 10'000) break;
        if (n % p == 0) {
            Nat m = n;
            unsigned k = 0;
            while (m % p == 0) {
                m /= p;
                ++k;
            }
            if (m == 1) return PrimePower{Nat(p), k};
            return std::nullopt;
        }
    }
    if (is_prime(n)) return PrimePower{n, 1};
    // all prime factors exceed 10^4, so any exponent is at most bits/13
    unsigned max_k = bit_length(n) / 13;
    for (u32 j : small_primes()) {
        if (j > max_k) break;
        Nat r = iroot(n, j);
        if (powi(r, j) == n) {
            auto sub = prime_power_decompose(r);
            if (sub) return PrimePower{sub->p, sub->k * j};
            return std::nullopt;
        }
    }
    return std::nullopt;
}

PrimeStream::PrimeStream(u64 lo, u64 hi, SieveOptions opt) : hi_(hi), opt_(opt) {
    if (lo > hi) throw std::invalid_argument("PrimeStream: lo > hi");
    if (hi > opt.capacity) throw capacity_error("PrimeStream: hi exceeds configured sieve capacity");
    if (opt.segment_odds == 0) throw std::invalid_argument("PrimeStream: segment size must be positive");
    u64 root = isqrt_u64(hi);
    auto base_all = sieve_simple(static_cast<u32>(std::min<u64>(root, 0xffffffffULL)));
    base_.assign(base_all.begin() + (base_all.empty() || base_all[0] != 2 ? 0 : 1), base_all.end());
    two_pending_ = (lo <= 2 && hi >= 2);
    u64 start = std::max<u64>(lo, 3);
    if (start % 2 == 0) ++start;
    next_seg_lo_ = start;
    done_ = (start > hi);
}

void PrimeStream::load_segment(u64 seg_lo) {
    seg_lo_ = seg_lo;
    u64 max_count = (hi_ - seg_lo) / 2 + 1;
    seg_count_ = std::min<u64>(opt_.segment_odds, max_count);
    u64 seg_hi = seg_lo + 2 * (seg_count_ - 1);
    words_.assign((seg_count_ + 63) / 64, 0);
    for (u32 p : base_) {
        u64 p2 = static_cast<u64>(p) * p;
        if (p2 > seg_hi) break;
        u64 first = p2;
        if (first < seg_lo) {
            u64 rem = seg_lo % p;
            first = rem ? seg_lo + (p - rem) : seg_lo;
            if (first % 2 == 0) first += p;
        }
        for (u64 v = first; v <= seg_hi; v += 2ULL * p) {
            u64 i = (v - seg_lo) >> 1;
            words_[i >> 6] |= 1ULL << (i & 63);
        }
    }
    next_seg_lo_ = seg_hi + 2;
    pos_ = 0;
}

bool PrimeStream::next(u64& p) {
    if (two_pending_) {
        two_pending_ = false;
        p = 2;
        return true;
    }
    while (true) {
        while (pos_ < seg_count_) {
            u64 i = pos_++;
            if (!(words_[i >> 6] & (1ULL << (i & 63)))) {
                p = seg_lo_ + 2 * i;
                return true;
            }
        }
        if (done_ || next_seg_lo_ > hi_) {
            done_ = true;
            return false;
        }
        load_segment(next_seg_lo_);
    }
}

std::vector<u64> primes_in_range(u64 lo, u64 hi, const SieveOptions& opt) {
    std::vector<u64> out;
    for_primes(lo, hi, [&](u64 p) { out.push_back(p); }, opt);
    return out;
}

Nat multiplicative_order(const Nat& a, const Nat& m) {
    if (m < 2) throw std::invalid_argument("multiplicative_order: modulus must be >= 2");
    if (boost::multiprecision::gcd(Nat(a % m), m) != 1)
        throw std::invalid_argument("multiplicative_order: arguments are not coprime");
    Factorization fm = factorize(m);
    Nat phi = 1;
    for (const auto& [p, k] : fm.factors) phi *= powi(p, k - 1) * (p - 1);
    Factorization fphi = factorize(phi);
    Nat t = phi;
    Nat base = a % m;
    for (const auto& [p, k] : fphi.factors) {
        (void)k;
        while (t % p == 0 && mod_pow_t<Nat>(base, t / p, m) == 1) t /= p;
    }
    return t;
}

ZsigmondyResult zsigmondy_primitive_divisor(const Nat& q, unsigned d) {
    if (q < 2 || d < 2) throw std::invalid_argument("zsigmondy: need q >= 2, d >= 2");
    if (q == 2 && d == 6) return {ZsigmondyResult::Kind::exception_2_6, 0};
    if (d == 2) {
        // q + 1 a power of two; for prime-power q this is exactly "q is a
        // Mersenne prime" (no odd prime power has the form 2^k - 1 except
        // primes), but the exception applies to every such integer q
        Nat m = q + 1;
        if ((m & q) == 0) return {ZsigmondyResult::Kind::exception_mersenne_d2, 0};
    }

    // cyclotomic value Phi_d(q) via Moebius over the divisors of d
    Nat num = 1, den = 1;
    for (u64 e = 1; e <= d; ++e) {
        if (d % e) continue;
        int mu = mobius_of(d / e);
        if (mu == 1)
            num *= powi(q, static_cast<unsigned>(e)) - 1;
        else if (mu == -1)
            den *= powi(q, static_cast<unsigned>(e)) - 1;
    }
    if (num % den != 0) throw consistency_error("zsigmondy: cyclotomic division not exact");
    Nat phi = num / den;

    // strip intrinsic primes (divisors of d); what is left is primitive
    for (u64 s = 2; s <= d; ++s) {
        if (d % s) continue;
        bool sp = true;
        for (u64 t = 2; t * t <= s; ++t)
            if (s % t == 0) {
                sp = false;
                break;
            }
        if (!sp) continue;
        while (phi % s == 0) phi /= s;
    }
    if (phi == 1) throw consistency_error("zsigmondy: no primitive part outside the exceptional cases");

    Nat s = 0;
    if (is_prime(phi)) {
        s = phi;
    } else {
        Factorization f = factorize(phi);
        s = f.factors.front().first;
    }

    // the divisor property is cheap to certify, so always do it
    if (powi(q, d) % s != 1) throw consistency_error("zsigmondy: candidate does not divide q^d - 1");
    Nat qe = 1;
    for (unsigned e = 1; e < d; ++e) {
        qe *= q;
        if ((qe - 1) % s == 0) throw consistency_error("zsigmondy: candidate is not primitive");
    }
    return {ZsigmondyResult::Kind::divisor, s};
}

}  // namespace ppd::nt
