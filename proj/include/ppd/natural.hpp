#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace ppd {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Exact integer of arbitrary width.  Values that fit in two limbs
// (< 2^128) stay in cpp_int's internal buffer, so no allocation happens on
// the fast path; the modular helpers below cover the 64/128-bit hot loops.
// Where an API models the non-negative `Natural` of the toolkit it is a
// precondition that the value is >= 0.
using Nat = boost::multiprecision::cpp_int;

inline u64 mulmod64(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 powmod64(u64 a, u64 e, u64 m);

// 128-bit modular arithmetic, valid for moduli m < 2^127 (so that a + b
// cannot wrap).  Shift-and-add multiply; plenty for the probable-prime
// battery, which is the only consumer.
inline u128 addmod128(u128 a, u128 b, u128 m) {
    u128 s = a + b;
    if (s >= m) s -= m;
    return s;
}

u128 mulmod128(u128 a, u128 b, u128 m);
u128 powmod128(u128 a, u128 e, u128 m);

// Montgomery arithmetic for odd moduli below 2^126; the workhorse of the
// wide primality path.
class Mont128 {
  public:
    explicit Mont128(u128 n);  // n odd, 3 <= n < 2^126
    u128 modulus() const { return n_; }
    u128 to(u128 x) const;    // x mod n -> Montgomery form
    u128 from(u128 x) const;  // Montgomery form -> plain residue
    u128 one() const { return r1_; }
    u128 mul(u128 a, u128 b) const;
    u128 add(u128 a, u128 b) const { return addmod128(a, b, n_); }
    u128 sub(u128 a, u128 b) const { return a >= b ? a - b : a + n_ - b; }
    u128 pow(u128 base_mont, u128 e) const;

  private:
    u128 n_, np_, r1_, r2_;
};

unsigned bit_length(const Nat& n);  // 0 for n == 0
bool fits_u64(const Nat& n);
u64 to_u64(const Nat& n);
u128 to_u128(const Nat& n);  // pre: 0 <= n < 2^128
Nat from_u128(u128 v);

u64 isqrt_u64(u64 n);

// Floor of the k-th root, exact integer Newton iteration.
Nat iroot(const Nat& n, unsigned k);

// base^exp as an exact integer (exp small).
Nat powi(const Nat& base, unsigned exp);

}  // namespace ppd
