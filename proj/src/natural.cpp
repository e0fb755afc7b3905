#include "ppd/natural.hpp"

#include <cmath>
#include <stdexcept>

namespace ppd {

u64 powmod64(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

u128 mulmod128(u128 a, u128 b, u128 m) {
    a %= m;
    u128 r = 0;
    while (b) {
        if (b & 1) r = addmod128(r, a, m);
        b >>= 1;
        if (b) a = addmod128(a, a, m);
    }
    return r;
}

u128 powmod128(u128 a, u128 e, u128 m) {
    u128 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod128(r, a, m);
        a = mulmod128(a, a, m);
        e >>= 1;
    }
    return r;
}

namespace {

struct U256 {
    u128 hi, lo;
};

U256 mul_wide(u128 a, u128 b) {
    const u64 mask = ~u64(0);
    u64 a0 = static_cast<u64>(a & mask), a1 = static_cast<u64>(a >> 64);
    u64 b0 = static_cast<u64>(b & mask), b1 = static_cast<u64>(b >> 64);
    u128 p00 = static_cast<u128>(a0) * b0;
    u128 p01 = static_cast<u128>(a0) * b1;
    u128 p10 = static_cast<u128>(a1) * b0;
    u128 p11 = static_cast<u128>(a1) * b1;
    u128 mid = (p00 >> 64) + (p01 & mask) + (p10 & mask);
    U256 r;
    r.lo = (mid << 64) | (p00 & mask);
    r.hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    return r;
}

}  // namespace

Mont128::Mont128(u128 n) : n_(n) {
    if ((n & 1) == 0 || n < 3 || (n >> 126) != 0)
        throw std::invalid_argument("Mont128: modulus must be odd, 3 <= n < 2^126");
    // Hensel-lift the inverse of n mod 2^128, then negate
    u128 x = n;  // inverse mod 2^3 at least (n odd)
    for (int i = 0; i < 6; ++i) x *= 2 - n * x;
    np_ = static_cast<u128>(0) - x;
    r1_ = (static_cast<u128>(0) - n) % n;  // 2^128 mod n
    u128 r = r1_;
    for (int i = 0; i < 128; ++i) r = addmod128(r, r, n);  // 2^256 mod n
    r2_ = r;
}

u128 Mont128::mul(u128 a, u128 b) const {
    U256 t = mul_wide(a, b);
    u128 u = t.lo * np_;
    U256 um = mul_wide(u, n_);
    u128 lo = t.lo + um.lo;
    u128 carry = lo < t.lo ? 1 : 0;
    u128 res = t.hi + um.hi + carry;
    if (res >= n_) res -= n_;
    return res;
}

u128 Mont128::to(u128 x) const { return mul(x % n_, r2_); }

u128 Mont128::from(u128 x) const { return mul(x, 1); }

u128 Mont128::pow(u128 base_mont, u128 e) const {
    u128 r = r1_, b = base_mont;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

unsigned bit_length(const Nat& n) {
    if (n == 0) return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
}

bool fits_u64(const Nat& n) {
    return n >= 0 && bit_length(n) <= 64;
}

u64 to_u64(const Nat& n) {
    return n.convert_to<u64>();
}

u128 to_u128(const Nat& n) {
    u64 lo = static_cast<u64>(n & 0xffffffffffffffffULL);
    u64 hi = static_cast<u64>((n >> 64) & 0xffffffffffffffffULL);
    return (static_cast<u128>(hi) << 64) | lo;
}

Nat from_u128(u128 v) {
    Nat hi = static_cast<u64>(v >> 64);
    return (hi << 64) | static_cast<u64>(v);
}

u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

Nat iroot(const Nat& n, unsigned k) {
    if (n < 0) throw std::invalid_argument("iroot: negative radicand");
    if (k == 0) throw std::invalid_argument("iroot: zeroth root");
    if (k == 1 || n < 2) return n;
    unsigned bits = bit_length(n);
    if (bits <= k) return 1;  // 2^k > n >= 2
    Nat x = Nat(1) << ((bits + k - 1) / k);  // >= true root
    while (true) {
        Nat xk1 = powi(x, k - 1);
        Nat y = ((k - 1) * x + n / xk1) / k;
        if (y >= x) break;
        x = y;
    }
    while (powi(x, k) > n) --x;
    while (powi(x + 1, k) <= n) ++x;
    return x;
}

Nat powi(const Nat& base, unsigned exp) {
    Nat r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        exp >>= 1;
        if (exp) b *= b;
    }
    return r;
}

}  // namespace ppd
