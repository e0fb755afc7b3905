#include "ppd/bhc.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "ppd/quadrature.hpp"

namespace ppd::bhc {

void BhcProblem::validate() const {
    if (!nt::is_prime_u64(d) || d < 3)
        throw std::invalid_argument("BhcProblem: d must be a prime >= 3");
    if (e < 1) throw std::invalid_argument("BhcProblem: e must be positive");
    if (prime_bound < 10'000)
        throw std::invalid_argument("BhcProblem: prime_bound must be at least 10^4");
    if (!(quad_tol > 0.0) || quad_tol > 1e-3)
        throw std::invalid_argument("BhcProblem: quad_tol must lie in (0, 1e-3]");
    if (!(a >= 2.0)) throw std::invalid_argument("BhcProblem: lower limit must be >= 2");
}

unsigned omega_f(u64 p, unsigned d, unsigned e) {
    const u64 de = static_cast<u64>(d) * e;
    if (p == 0 || de % p == 0) {
        // p | de: enumerate every residue; p <= de here, so this is tiny
        unsigned count = 0;
        for (u64 t = 0; t < p; ++t) {
            u64 te = powmod64(t, e, p);
            u64 v = 0, pw = 1;
            for (unsigned i = 0; i < d; ++i) {
                v = (v + pw) % p;
                pw = mulmod64(pw, te, p);
            }
            if (t == 0 || v == 0) ++count;
        }
        return count;
    }
    return static_cast<unsigned>(1 + std::gcd(de, p - 1) - std::gcd<u64>(e, p - 1));
}

double hl_constant_with_omega(u64 prime_bound, const std::function<unsigned(u64)>& omega,
                              const nt::SieveOptions& sieve) {
    // sum of -2*log(1 - 1/p) + log(1 - w/p), Kahan-compensated long double
    long double sum = 0.0L, comp = 0.0L;
    bool vanished = false;
    nt::for_primes(2, prime_bound, [&](u64 p) {
        if (vanished) return;
        unsigned w = omega(p);
        if (w >= p) {
            vanished = true;  // a vanishing local factor kills the product
            return;
        }
        long double lp = static_cast<long double>(p);
        long double term = -2.0L * log1pl(-1.0L / lp) + log1pl(-static_cast<long double>(w) / lp);
        long double y = term - comp;
        long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }, sieve);
    if (vanished) return 0.0;
    return static_cast<double>(expl(sum));
}

double hl_constant(const BhcProblem& pb) {
    pb.validate();
    return hl_constant_with_omega(
        pb.prime_bound, [&](u64 p) { return omega_f(p, pb.d, pb.e); }, pb.sieve);
}

double log_f2(double t, unsigned d, unsigned e) {
    // f2(t) = t^{(d-1)e} * (1 + r + r^2 + ... + r^{d-1} tail), r = t^{-e}
    const double m = static_cast<double>(d - 1) * e;
    const double r = std::pow(t, -static_cast<double>(e));
    // geometric tail sum r + r^2 + ... + r^{d-1}, exact finite sum
    double s = 0.0, rp = 1.0;
    for (unsigned j = 1; j < d; ++j) {
        rp *= r;
        s += rp;
    }
    return m * std::log(t) + std::log1p(s);
}

double estimate_E(const BhcProblem& pb, u64 x, double hl_c) {
    pb.validate();
    const double xd = static_cast<double>(x);
    if (!(xd > pb.a)) throw std::invalid_argument("estimate_E: x must exceed the lower limit");
    auto integrand = [&](double t) { return 1.0 / (std::log(t) * log_f2(t, pb.d, pb.e)); };
    auto q = quad::integrate_adaptive(integrand, pb.a, xd, pb.quad_tol);
    return hl_c * q.value;
}

double estimate_E(const BhcProblem& pb, u64 x) { return estimate_E(pb, x, hl_constant(pb)); }

namespace {

// f2 at prime argument t, primality dispatched on magnitude.
bool f2_is_prime(u64 t, unsigned d, unsigned e) {
    const double bits_est = (static_cast<double>(d - 1) * e + 1) * std::log2(static_cast<double>(t)) + 1;
    if (bits_est < 63) {
        u64 q = 1;
        for (unsigned i = 0; i < e; ++i) q *= t;
        u64 v = 1;
        for (unsigned i = 1; i < d; ++i) v = v * q + 1;
        return nt::is_prime_u64(v);
    }
    if (bits_est < 126) {
        u128 q = 1;
        for (unsigned i = 0; i < e; ++i) q *= t;
        u128 v = 1;
        for (unsigned i = 1; i < d; ++i) v = v * q + 1;
        return nt::is_prime_u128(v);
    }
    Nat q = powi(Nat(t), e);
    Nat v = 1;
    for (unsigned i = 1; i < d; ++i) v = v * q + 1;
    return nt::is_prime(v);
}

}  // namespace

u64 count_Q_range(const BhcProblem& pb, u64 lo, u64 hi) {
    u64 count = 0;
    nt::PrimeStream ps(lo, hi, pb.sieve);
    u64 t;
    while (ps.next(t)) {
        if (f2_is_prime(t, pb.d, pb.e)) ++count;
    }
    return count;
}

unsigned resolve_threads(unsigned requested) {
    if (const char* env = std::getenv("PPD_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

u64 count_Q(const BhcProblem& pb, u64 x, unsigned threads, const ProgressFn& progress) {
    pb.validate();
    if (x > pb.sieve.capacity) throw capacity_error("count_Q: x exceeds sieve capacity");
    if (x < 2) return 0;
    unsigned workers = resolve_threads(threads);
    // more chunks than workers so uneven primality costs even out
    u64 chunks = std::max<u64>(1, std::min<u64>(workers * 8ULL, (x - 1) / 1024 + 1));
    u64 span = (x - 1) / chunks + 1;
    std::atomic<u64> next_chunk{0}, total{0}, done{0};
    std::mutex progress_mu;
    auto work = [&] {
        while (true) {
            u64 i = next_chunk.fetch_add(1);
            if (i >= chunks) return;
            u64 lo = 2 + i * span;
            u64 hi = std::min(x, lo + span - 1);
            if (lo > x) return;
            total.fetch_add(count_Q_range(pb, lo, hi));
            u64 d = done.fetch_add(1) + 1;
            if (progress) {
                std::lock_guard<std::mutex> lk(progress_mu);
                progress(d, chunks);
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return total.load();
}

std::vector<BhcReport> table_report(const BhcProblem& pb, const std::vector<u64>& xs,
                                    unsigned threads, const ProgressFn& progress) {
    pb.validate();
    for (size_t i = 1; i < xs.size(); ++i)
        if (xs[i] <= xs[i - 1]) throw std::invalid_argument("table_report: xs must be ascending");
    std::vector<BhcReport> rows;
    if (xs.empty()) return rows;
    const double c = hl_constant(pb);
    u64 lo = 2, cumulative = 0;
    for (u64 x : xs) {
        if (x >= lo) {
            // one pass over (previous x, x]; chunked internally
            unsigned workers = resolve_threads(threads);
            u64 range_lo = lo, range_hi = x;
            u64 chunks = std::max<u64>(1, std::min<u64>(workers * 4ULL, (range_hi - range_lo) / 4096 + 1));
            u64 span = (range_hi - range_lo) / chunks + 1;
            std::atomic<u64> next_chunk{0}, subtotal{0};
            auto work = [&] {
                while (true) {
                    u64 i = next_chunk.fetch_add(1);
                    if (i >= chunks) return;
                    u64 a = range_lo + i * span;
                    if (a > range_hi) return;
                    u64 b = std::min(range_hi, a + span - 1);
                    subtotal.fetch_add(count_Q_range(pb, a, b));
                }
            };
            if (workers <= 1) {
                work();
            } else {
                std::vector<std::thread> pool;
                for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
                for (auto& th : pool) th.join();
            }
            cumulative += subtotal.load();
            lo = x + 1;
        }
        BhcReport row;
        row.x = x;
        row.q_count = cumulative;
        row.constant = c;
        row.estimate = estimate_E(pb, x, c);
        row.ratio = cumulative ? row.estimate / static_cast<double>(cumulative)
                               : std::numeric_limits<double>::quiet_NaN();
        rows.push_back(row);
        if (progress) progress(rows.size(), xs.size());
    }
    return rows;
}

}  // namespace ppd::bhc
