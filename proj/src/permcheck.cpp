#include "ppd/permcheck.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "ppd/degrees.hpp"

namespace ppd::perm {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<Point>& v) const {
        std::size_t h = 1469598103934665603ULL;
        for (Point x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b9;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

using IndexMap = std::unordered_map<std::vector<Point>, u32, VecHash>;

}  // namespace

Permutation::Permutation(std::vector<Point> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (Point x : img_) {
        if (x >= img_.size() || seen[x])
            throw std::invalid_argument("Permutation: image array is not a bijection");
        seen[x] = true;
    }
}

Permutation Permutation::identity(unsigned degree) {
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), 0);
    return Permutation(img);
}

Permutation Permutation::then(const Permutation& g) const {
    std::vector<Point> img(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) img[i] = g.img_[img_[i]];
    Permutation out;
    out.img_ = std::move(img);  // composition of bijections, skip revalidation
    return out;
}

Permutation Permutation::inverse() const {
    std::vector<Point> img(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) img[img_[i]] = static_cast<Point>(i);
    Permutation out;
    out.img_ = std::move(img);
    return out;
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
        if (img_[i] != i) return false;
    return true;
}

unsigned Permutation::fixed_points() const {
    unsigned k = 0;
    for (std::size_t i = 0; i < img_.size(); ++i)
        if (img_[i] == i) ++k;
    return k;
}

u64 Permutation::order() const {
    std::vector<bool> seen(img_.size(), false);
    u64 ord = 1;
    for (std::size_t i = 0; i < img_.size(); ++i) {
        if (seen[i]) continue;
        u64 len = 0;
        Point x = static_cast<Point>(i);
        do {
            seen[x] = true;
            x = img_[x];
            ++len;
        } while (x != i);
        ord = std::lcm(ord, len);
    }
    return ord;
}

PermGroup::PermGroup(unsigned degree, std::vector<Permutation> generators, GroupOptions opts)
    : degree_(degree), gens_(std::move(generators)), opts_(opts) {
    for (const auto& g : gens_)
        if (g.degree() != degree_)
            throw std::invalid_argument("PermGroup: generator degree mismatch");
}

const std::vector<Permutation>& PermGroup::elements() const {
    if (materialized_) return elems_;
    IndexMap index;
    elems_.clear();
    elems_.push_back(Permutation::identity(degree_));
    index.emplace(elems_[0].images(), 0);
    for (std::size_t pos = 0; pos < elems_.size(); ++pos) {
        for (const auto& g : gens_) {
            Permutation h = elems_[pos].then(g);
            if (index.count(h.images())) continue;
            if (elems_.size() >= opts_.element_cap)
                throw capacity_error("PermGroup: element cap exceeded");
            index.emplace(h.images(), static_cast<u32>(elems_.size()));
            elems_.push_back(std::move(h));
        }
    }
    materialized_ = true;
    return elems_;
}

bool PermGroup::contains(const Permutation& g) const {
    const auto& els = elements();
    return std::find(els.begin(), els.end(), g) != els.end();
}

std::vector<Point> PermGroup::orbit(Point start) const {
    if (start >= degree_) throw std::invalid_argument("orbit: point out of range");
    std::vector<bool> seen(degree_, false);
    std::vector<Point> out{start};
    seen[start] = true;
    for (std::size_t pos = 0; pos < out.size(); ++pos) {
        for (const auto& g : gens_) {
            Point y = g(out[pos]);
            if (!seen[y]) {
                seen[y] = true;
                out.push_back(y);
            }
        }
    }
    return out;
}

bool PermGroup::is_transitive() const { return orbit(0).size() == degree_; }

// ---- finite field ------------------------------------------------------

GF GF::make(u32 r, unsigned e) {
    if (!nt::is_prime_u64(r)) throw std::invalid_argument("GF: characteristic must be prime");
    if (e < 1) throw std::invalid_argument("GF: extension degree must be positive");
    u64 q = 1;
    for (unsigned i = 0; i < e; ++i) {
        q *= r;
        if (q > (1u << 16)) throw capacity_error("GF: field too large");
    }
    GF f;
    f.r_ = r;
    f.e_ = e;
    f.q_ = static_cast<u32>(q);

    if (e > 1) {
        auto digits = [&](u32 c, unsigned len) {
            std::vector<u32> d(len);
            for (unsigned i = 0; i < len; ++i) {
                d[i] = c % r;
                c /= r;
            }
            return d;
        };
        // remainder of num by a monic divisor, coefficients ascending
        auto rem_by = [&](std::vector<u32> num, const std::vector<u32>& den) {
            unsigned dd = den.size() - 1;
            for (unsigned i = num.size(); i-- > dd;) {
                u32 c = num[i];
                if (!c) continue;
                num[i] = 0;
                for (unsigned j = 0; j < dd; ++j)
                    num[i - dd + j] = (num[i - dd + j] + (r - 1) % r * c % r * den[j]) % r;
            }
            num.resize(dd);
            return num;
        };
        auto is_zero = [](const std::vector<u32>& v) {
            for (u32 c : v)
                if (c) return false;
            return true;
        };
        // least monic irreducible x^e + (digits of c)
        u32 chosen = f.q_;
        for (u32 c = 0; c < q; ++c) {
            std::vector<u32> poly = digits(c, e);
            poly.push_back(1);  // monic of degree e
            bool irreducible = true;
            for (unsigned k = 1; irreducible && 2 * k <= e; ++k) {
                u64 cnt = 1;
                for (unsigned i = 0; i < k; ++i) cnt *= r;
                for (u32 dc = 0; dc < cnt; ++dc) {
                    std::vector<u32> den = digits(dc, k);
                    den.push_back(1);
                    if (is_zero(rem_by(poly, den))) {
                        irreducible = false;
                        break;
                    }
                }
            }
            if (irreducible) {
                chosen = c;
                break;
            }
        }
        if (chosen == f.q_) throw consistency_error("GF: no irreducible polynomial found");
        // x^e = -(c_0 + c_1 x + ...)
        f.red_ = digits(chosen, e);
        for (auto& d : f.red_) d = (r - d) % r;
    }

    // inverses by Fermat power; doubles as the field check
    f.inv_.assign(f.q_, 0);
    for (u32 a = 1; a < f.q_; ++a) {
        u32 x = 1;
        u64 k = f.q_ - 2;
        u32 b = a;
        while (k) {
            if (k & 1) x = f.mul(x, b);
            b = f.mul(b, b);
            k >>= 1;
        }
        if (f.mul(a, x) != 1)
            throw consistency_error("GF: element without inverse; polynomial not irreducible");
        f.inv_[a] = x;
    }
    return f;
}

u32 GF::add(u32 a, u32 b) const {
    if (e_ == 1) return (a + b) % r_;
    u32 out = 0, mul = 1;
    for (unsigned i = 0; i < e_; ++i) {
        out += (a % r_ + b % r_) % r_ * mul;
        a /= r_;
        b /= r_;
        mul *= r_;
    }
    return out;
}

u32 GF::neg(u32 a) const {
    if (e_ == 1) return (r_ - a) % r_;
    u32 out = 0, mul = 1;
    for (unsigned i = 0; i < e_; ++i) {
        out += (r_ - a % r_) % r_ * mul;
        a /= r_;
        mul *= r_;
    }
    return out;
}

u32 GF::mul(u32 a, u32 b) const {
    if (e_ == 1) return static_cast<u32>(static_cast<u64>(a) * b % r_);
    std::vector<u32> conv(2 * e_ - 1, 0);
    u32 av = a;
    for (unsigned i = 0; i < e_; ++i) {
        u32 ai = av % r_;
        av /= r_;
        if (!ai) continue;
        u32 bv = b;
        for (unsigned j = 0; j < e_; ++j) {
            u32 bj = bv % r_;
            bv /= r_;
            conv[i + j] = (conv[i + j] + ai * bj) % r_;
        }
    }
    for (unsigned i = 2 * e_ - 1; i-- > e_;) {
        u32 c = conv[i];
        if (!c) continue;
        conv[i] = 0;
        for (unsigned j = 0; j < e_; ++j)
            conv[i - e_ + j] = (conv[i - e_ + j] + c * red_[j]) % r_;
    }
    u32 out = 0, mul = 1;
    for (unsigned i = 0; i < e_; ++i) {
        out += conv[i] * mul;
        mul *= r_;
    }
    return out;
}

u32 GF::inv(u32 a) const {
    if (a == 0) throw std::invalid_argument("GF: zero has no inverse");
    return inv_[a];
}

u32 GF::generator() const {
    auto fac = nt::factorize(Nat(q_ - 1));
    for (u32 a = 1; a < q_; ++a) {
        bool ok = true;
        for (const auto& [p, k] : fac.factors) {
            (void)k;
            u64 cof = (q_ - 1) / to_u64(p);
            u32 x = 1, b = a;
            u64 t = cof;
            while (t) {
                if (t & 1) x = mul(x, b);
                b = mul(b, b);
                t >>= 1;
            }
            if (x == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return a;
    }
    throw consistency_error("GF: multiplicative group has no generator");
}

// ---- projective actions ------------------------------------------------

namespace {

using Vec = std::vector<u32>;
using Mat = std::vector<u32>;  // d x d row-major

struct ProjectiveSpace {
    GF F;
    unsigned d;
    std::vector<Vec> points;  // canonical representatives in lex order
    std::unordered_map<u64, u32> index;

    u64 key(const Vec& v) const {
        u64 k = 0;
        for (unsigned i = 0; i < d; ++i) k = k * F.q() + v[i];
        return k;
    }

    Vec canonical(Vec v) const {
        unsigned lead = d;
        for (unsigned i = 0; i < d; ++i)
            if (v[i]) {
                lead = i;
                break;
            }
        if (lead == d) throw consistency_error("projective point: zero vector");
        u32 s = F.inv(v[lead]);
        for (unsigned i = 0; i < d; ++i) v[i] = F.mul(v[i], s);
        return v;
    }

    u32 idx(const Vec& v) const { return index.at(key(v)); }
};

ProjectiveSpace make_space(GF field, unsigned d) {
    ProjectiveSpace ps{std::move(field), d, {}, {}};
    const u32 q = ps.F.q();
    // lex-ascending canonical vectors: leading zeros first
    for (unsigned lead = d; lead-- > 0;) {
        unsigned free_coords = d - lead - 1;
        u64 total = 1;
        for (unsigned i = 0; i < free_coords; ++i) total *= q;
        for (u64 suffix = 0; suffix < total; ++suffix) {
            Vec v(d, 0);
            v[lead] = 1;
            u64 s = suffix;
            for (unsigned i = d; i-- > lead + 1;) {
                v[i] = static_cast<u32>(s % q);
                s /= q;
            }
            ps.index.emplace(ps.key(v), static_cast<u32>(ps.points.size()));
            ps.points.push_back(std::move(v));
        }
    }
    return ps;
}

Vec mat_apply(const GF& F, const Mat& m, const Vec& v, unsigned d) {
    Vec out(d, 0);
    for (unsigned i = 0; i < d; ++i) {
        u32 acc = 0;
        for (unsigned j = 0; j < d; ++j) acc = F.add(acc, F.mul(m[i * d + j], v[j]));
        out[i] = acc;
    }
    return out;
}

Mat mat_identity(unsigned d) {
    Mat m(d * d, 0);
    for (unsigned i = 0; i < d; ++i) m[i * d + i] = 1;
    return m;
}

Mat mat_inverse(const GF& F, Mat m, unsigned d) {
    Mat inv = mat_identity(d);
    for (unsigned col = 0; col < d; ++col) {
        unsigned pivot = col;
        while (pivot < d && m[pivot * d + col] == 0) ++pivot;
        if (pivot == d) throw std::invalid_argument("mat_inverse: singular matrix");
        if (pivot != col)
            for (unsigned j = 0; j < d; ++j) {
                std::swap(m[pivot * d + j], m[col * d + j]);
                std::swap(inv[pivot * d + j], inv[col * d + j]);
            }
        u32 s = F.inv(m[col * d + col]);
        for (unsigned j = 0; j < d; ++j) {
            m[col * d + j] = F.mul(m[col * d + j], s);
            inv[col * d + j] = F.mul(inv[col * d + j], s);
        }
        for (unsigned row = 0; row < d; ++row) {
            if (row == col) continue;
            u32 c = m[row * d + col];
            if (!c) continue;
            for (unsigned j = 0; j < d; ++j) {
                m[row * d + j] = F.sub(m[row * d + j], F.mul(c, m[col * d + j]));
                inv[row * d + j] = F.sub(inv[row * d + j], F.mul(c, inv[col * d + j]));
            }
        }
    }
    return inv;
}

Mat mat_transpose(const Mat& m, unsigned d) {
    Mat t(d * d);
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j) t[j * d + i] = m[i * d + j];
    return t;
}

Permutation action_of(const ProjectiveSpace& ps, const Mat& m) {
    std::vector<Point> img(ps.points.size());
    for (u32 i = 0; i < ps.points.size(); ++i) {
        Vec w = ps.canonical(mat_apply(ps.F, m, ps.points[i], ps.d));
        img[i] = static_cast<Point>(ps.idx(w));
    }
    return Permutation(std::move(img));
}

// SL_d(q) generating matrices: transvections I + a*E_{ij} with a running
// over an F_r-basis of the field; PGL adds one determinant-carrying diagonal.
std::vector<Mat> generating_matrices(const GF& F, unsigned d, Variant v) {
    std::vector<Mat> out;
    std::vector<u32> basis;
    u32 b = 1;
    for (unsigned i = 0; i < F.ext_degree(); ++i) {
        basis.push_back(b);
        b *= F.characteristic();  // digit shift: 1, x, x^2, ...
    }
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j) {
            if (i == j) continue;
            for (u32 a : basis) {
                Mat m = mat_identity(d);
                m[i * d + j] = a;
                out.push_back(std::move(m));
            }
        }
    if (v == Variant::pgl && F.q() > 2) {
        Mat m = mat_identity(d);
        m[0] = F.generator();
        out.push_back(std::move(m));
    }
    return out;
}

struct BuiltSpace {
    ProjectiveSpace ps;
    std::vector<Mat> mats;
};

BuiltSpace build_space(unsigned d, const Nat& q, Variant v) {
    if (d < 2) throw std::invalid_argument("projective action: d must be at least 2");
    auto base = degrees::prime_power_base(q);
    if (!base) throw std::invalid_argument("projective action: q must be a prime power");
    Nat n = degrees::repunit(q, d);
    if (n > 10'000) throw capacity_error("projective action: too many projective points");
    GF F = GF::make(static_cast<u32>(to_u64(base->first)), base->second);
    ProjectiveSpace ps = make_space(std::move(F), d);
    std::vector<Mat> mats = generating_matrices(ps.F, d, v);
    return {std::move(ps), std::move(mats)};
}

}  // namespace

u64 projective_point_count(unsigned d, u32 q) {
    u64 n = 1;
    for (unsigned i = 1; i < d; ++i) n = n * q + 1;
    return n;
}

PermGroup build_projective_action(unsigned d, const Nat& q, Variant v, GroupOptions opts) {
    BuiltSpace bs = build_space(d, q, v);
    std::vector<Permutation> gens;
    gens.reserve(bs.mats.size());
    for (const auto& m : bs.mats) gens.push_back(action_of(bs.ps, m));
    return PermGroup(static_cast<unsigned>(bs.ps.points.size()), std::move(gens), opts);
}

PermGroup build_point_hyperplane_action(unsigned d, const Nat& q, Variant v, GroupOptions opts) {
    BuiltSpace bs = build_space(d, q, v);
    const unsigned n = static_cast<unsigned>(bs.ps.points.size());
    std::vector<Permutation> gens;
    for (const auto& m : bs.mats) {
        Permutation pts = action_of(bs.ps, m);
        Mat it = mat_transpose(mat_inverse(bs.ps.F, m, d), d);
        Permutation hyp = action_of(bs.ps, it);
        std::vector<Point> img(2 * n);
        for (unsigned i = 0; i < n; ++i) {
            img[i] = pts(static_cast<Point>(i));
            img[n + i] = static_cast<Point>(n + hyp(static_cast<Point>(i)));
        }
        gens.emplace_back(std::move(img));
    }
    return PermGroup(2 * n, std::move(gens), opts);
}

u64 stabilizer_order(const PermGroup& g, Point pt) {
    return g.order() / g.orbit(pt).size();
}

std::vector<Permutation> stabilizer_elements(const PermGroup& g, Point pt) {
    std::vector<Permutation> out;
    for (const auto& e : g.elements())
        if (e(pt) == pt) out.push_back(e);
    return out;
}

namespace {

bool is_prime_power_of(u64 n, u64 p) {
    if (n < 2) return false;
    while (n % p == 0) n /= p;
    return n == 1;
}

u64 p_part(u64 n, u64 p) {
    u64 pp = 1;
    while (n % (pp * p) == 0) pp *= p;
    return pp;
}

Permutation conj(const Permutation& s, const Permutation& g) {
    return g.inverse().then(s).then(g);
}

}  // namespace

PComplementReport verify_p_complement(const PermGroup& g, u64 p) {
    if (!nt::is_prime_u64(p)) throw std::invalid_argument("verify_p_complement: p must be prime");
    PComplementReport rep;
    rep.is_transitive = g.is_transitive();
    rep.degree_is_power_of_p = is_prime_power_of(g.degree(), p);
    u64 stab = g.order() / g.orbit(0).size();
    rep.stabilizer_coprime_to_p = (stab % p != 0);
    PermGroup syl = sylow_subgroup(g, p);
    rep.sylow_regular = (syl.order() == g.degree()) && syl.is_transitive();
    return rep;
}

PermGroup sylow_subgroup(const PermGroup& g, u64 p) {
    if (!nt::is_prime_u64(p)) throw std::invalid_argument("sylow_subgroup: p must be prime");
    const auto& els = g.elements();
    const u64 target = p_part(els.size(), p);
    if (target == 1) return PermGroup(g.degree(), {}, g.options());

    std::mt19937_64 rng(0x5eedf00dULL);  // fixed seed, reproducible runs
    Permutation seedelt;
    while (true) {
        const Permutation& cand = els[rng() % els.size()];
        u64 o = cand.order();
        if (o % p) continue;
        // power down to an element of order p
        u64 e = o / p;
        Permutation x = Permutation::identity(g.degree());
        Permutation b = cand;
        while (e) {
            if (e & 1) x = x.then(b);
            b = b.then(b);
            e >>= 1;
        }
        seedelt = x;
        break;
    }

    std::vector<Permutation> gens{seedelt};
    while (true) {
        PermGroup sub(g.degree(), gens, g.options());
        const auto& sub_els = sub.elements();
        if (sub_els.size() == target) return sub;
        if (sub_els.size() > target)
            throw consistency_error("sylow_subgroup: overgrew the p-part");
        std::set<std::vector<Point>> in_sub;
        for (const auto& e : sub_els) in_sub.insert(e.images());
        // normalizer elements, then a p-element outside the current group
        bool grew = false;
        for (const auto& cand : els) {
            bool normalizes = true;
            for (const auto& s : gens)
                if (!in_sub.count(conj(s, cand).images())) {
                    normalizes = false;
                    break;
                }
            if (!normalizes || in_sub.count(cand.images())) continue;
            u64 o = cand.order();
            bool ppow = true;
            while (o > 1) {
                if (o % p) {
                    ppow = false;
                    break;
                }
                o /= p;
            }
            if (!ppow) continue;
            gens.push_back(cand);
            grew = true;
            break;
        }
        if (!grew) throw consistency_error("sylow_subgroup: extension step found no p-element");
    }
}

namespace {

// closure of the given generator indices inside G, aborting as soon as the
// subgroup cannot consist solely of fixed-point-free elements of order <= n
std::optional<std::vector<u32>> fpf_closure(const PermGroup& g, const std::vector<Permutation>& els,
                                            const IndexMap& index, const std::vector<bool>& fpf_ok,
                                            std::vector<u32> gen_idx, u64 n) {
    // indices refer to positions in els, G's element order
    const u32 id_idx = index.at(Permutation::identity(g.degree()).images());
    std::vector<u32> members{id_idx};
    std::set<u32> seen{id_idx};
    for (u32 gi : gen_idx) {
        if (!seen.count(gi)) {
            if (!fpf_ok[gi]) return std::nullopt;
            members.push_back(gi);
            seen.insert(gi);
        }
    }
    for (std::size_t pos = 0; pos < members.size(); ++pos) {
        for (u32 gi : gen_idx) {
            Permutation prod = els[members[pos]].then(els[gi]);
            u32 pi = index.at(prod.images());
            if (seen.count(pi)) continue;
            if (pi != id_idx && !fpf_ok[pi]) return std::nullopt;
            if (members.size() + 1 > n) return std::nullopt;
            members.push_back(pi);
            seen.insert(pi);
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

}  // namespace

RegularSearchResult find_regular_subgroup(const PermGroup& g) {
    if (!g.is_transitive())
        throw std::invalid_argument("find_regular_subgroup: group must be transitive");
    const u64 n = g.degree();
    const auto& els = g.elements();

    // Sylow shortcut: for prime-power degree the Sylow subgroup is the
    // canonical candidate
    auto pp = nt::prime_power_decompose(Nat(n));
    if (pp && fits_u64(pp->p)) {
        u64 p = to_u64(pp->p);
        if (els.size() % p == 0) {
            PermGroup syl = sylow_subgroup(g, p);
            if (syl.order() == n && syl.is_transitive()) return {syl, false};
        }
    }

    IndexMap index;
    for (u32 i = 0; i < els.size(); ++i) index.emplace(els[i].images(), i);
    // candidates: fixed-point free, and order dividing n (Lagrange in a
    // regular subgroup)
    std::vector<bool> fpf_ok(els.size(), false);
    std::vector<u32> fpf;
    for (u32 i = 0; i < els.size(); ++i) {
        if (!els[i].is_identity() && els[i].fixed_points() == 0 && n % els[i].order() == 0) {
            fpf_ok[i] = true;
            fpf.push_back(i);
        }
    }

    auto result_from = [&](const std::vector<u32>& members) {
        // regular: order n, trivial stabilisers by fixed-point-freeness
        std::vector<Permutation> gens;
        for (u32 i : members)
            if (!els[i].is_identity()) gens.push_back(els[i]);
        PermGroup sub(g.degree(), gens, g.options());
        if (sub.order() != n || !sub.is_transitive())
            throw consistency_error("find_regular_subgroup: candidate failed verification");
        return sub;
    };

    // A regular subgroup holds exactly one element sending 0 to each point,
    // so extending by a candidate for the smallest uncovered point and
    // closing enumerates every regular subgroup; a miss is therefore
    // certified regardless of how many generators a witness would need.
    std::vector<std::vector<u32>> bucket(n);
    for (u32 i : fpf) bucket[els[i](0)].push_back(i);

    std::set<std::vector<u32>> visited;
    std::vector<u32> found, gen_stack;
    auto rec = [&](auto&& self, const std::vector<u32>& members) -> bool {
        if (members.size() == n) {
            found = members;
            return true;
        }
        std::vector<bool> covered(n, false);
        for (u32 mi : members) covered[els[mi](0)] = true;
        u32 x = 0;
        while (x < n && covered[x]) ++x;
        if (x == n) return false;
        for (u32 gi : bucket[x]) {
            gen_stack.push_back(gi);
            auto c = fpf_closure(g, els, index, fpf_ok, gen_stack, n);
            if (c && visited.insert(*c).second) {
                if (self(self, *c)) return true;
            }
            gen_stack.pop_back();
        }
        return false;
    };
    std::vector<u32> start{index.at(Permutation::identity(g.degree()).images())};
    if (rec(rec, start)) return {result_from(found), false};
    return {std::nullopt, true};
}

Permutation a2_embed(const std::vector<Point>& sigma, unsigned m) {
    if (sigma.size() != m) throw std::invalid_argument("a2_embed: permutation degree mismatch");
    // parity via cycle count
    std::vector<bool> seen(m, false);
    unsigned cycles = 0;
    for (unsigned i = 0; i < m; ++i) {
        if (seen[i]) continue;
        ++cycles;
        unsigned x = i;
        while (!seen[x]) {
            seen[x] = true;
            x = sigma[x];
        }
    }
    unsigned parity = (m - cycles) % 2;  // 1 for odd permutations
    std::vector<Point> img(2 * m);
    for (unsigned s = 0; s < 2; ++s)
        for (unsigned i = 0; i < m; ++i)
            img[i + m * s] = static_cast<Point>(sigma[i] + m * (s ^ parity));
    return Permutation(std::move(img));
}

PermGroup build_a2_action(unsigned m, unsigned m_cap, GroupOptions opts) {
    if (m < 8 || (m & (m - 1)) != 0)
        throw std::invalid_argument("build_a2_action: m must be a power of two, m >= 8");
    if (m > m_cap) throw capacity_error("build_a2_action: m exceeds the configured cap");
    std::vector<Point> transposition(m), cycle(m);
    for (unsigned i = 0; i < m; ++i) {
        transposition[i] = static_cast<Point>(i);
        cycle[i] = static_cast<Point>((i + 1) % m);
    }
    std::swap(transposition[0], transposition[1]);
    return PermGroup(2 * m, {a2_embed(transposition, m), a2_embed(cycle, m)}, opts);
}

bool is_block_system(const PermGroup& g, const std::vector<std::vector<Point>>& blocks) {
    std::vector<int> block_of(g.degree(), -1);
    std::size_t covered = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (Point x : blocks[b]) {
            if (x >= g.degree() || block_of[x] != -1) return false;
            block_of[x] = static_cast<int>(b);
            ++covered;
        }
    }
    if (covered != g.degree()) return false;
    for (const auto& gen : g.generators()) {
        for (const auto& blk : blocks) {
            int target = block_of[gen(blk[0])];
            for (Point x : blk)
                if (block_of[gen(x)] != target) return false;
        }
    }
    return true;
}

bool subgroups_conjugate(const PermGroup& g, const std::vector<Permutation>& h1,
                         const std::vector<Permutation>& h2) {
    if (h1.size() != h2.size()) return false;
    std::set<std::vector<Point>> target;
    for (const auto& e : h2) target.insert(e.images());
    for (const auto& c : g.elements()) {
        bool match = true;
        for (const auto& e : h1) {
            if (!target.count(conj(e, c).images())) {
                match = false;
                break;
            }
        }
        if (match) return true;
    }
    return false;
}

unsigned conjugacy_class_count(const PermGroup& g,
                               const std::vector<std::vector<Permutation>>& subgroups) {
    std::vector<std::vector<Permutation>> reps;
    for (const auto& h : subgroups) {
        bool fresh = true;
        for (const auto& r : reps) {
            if (subgroups_conjugate(g, h, r)) {
                fresh = false;
                break;
            }
        }
        if (fresh) reps.push_back(h);
    }
    return static_cast<unsigned>(reps.size());
}

}  // namespace ppd::perm
