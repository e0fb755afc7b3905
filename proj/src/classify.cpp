#include "ppd/classify.hpp"

#include <stdexcept>

namespace ppd::classify {

namespace {

using degrees::repunit;

std::string nat_str(const Nat& n) { return n.str(); }

void merge_factors(std::map<Nat, unsigned>& acc, const nt::Factorization& f, unsigned times = 1) {
    for (const auto& [p, k] : f.factors) acc[p] += k * times;
}

nt::Factorization finish(std::map<Nat, unsigned>& acc) {
    nt::Factorization out;
    out.n = 1;
    for (auto it = acc.begin(); it != acc.end();) {
        if (it->second == 0) {
            it = acc.erase(it);
            continue;
        }
        out.n *= powi(it->first, it->second);
        out.factors.emplace_back(it->first, it->second);
        ++it;
    }
    return out;
}

std::map<Nat, unsigned> psl_order_pieces(unsigned d, const Nat& q, bool include_top) {
    auto base = degrees::prime_power_base(q);
    if (!base) throw std::invalid_argument("psl_order: q must be a prime power");
    if (d < 2) throw std::invalid_argument("psl_order: d must be at least 2");
    std::map<Nat, unsigned> acc;
    acc[base->first] += base->second * (d * (d - 1) / 2);
    merge_factors(acc, nt::factorize(q - 1), d - 1);
    unsigned top = include_top ? d : d - 1;
    for (unsigned j = 2; j <= top; ++j) merge_factors(acc, nt::factorize(repunit(q, j)));
    Nat g = boost::multiprecision::gcd(Nat(d), Nat(q - 1));
    if (g > 1) {
        for (const auto& [p, k] : nt::factorize(g).factors) {
            if (acc[p] < k) throw consistency_error("psl_order: group order not divisible by (d, q-1)");
            acc[p] -= k;
        }
    }
    return acc;
}

bool is_power_of_two(const Nat& n) { return n > 0 && (n & (n - 1)) == 0; }

GroupRecord make_record(Family fam, std::string name, const nt::PrimePower& pp, const Nat& n) {
    GroupRecord r;
    r.family = fam;
    r.name = std::move(name);
    r.degree_pp = pp;
    r.degree = n;
    r.primitive = fam != Family::A2;
    if (fam == Family::D) r.rank = 3;
    if (fam == Family::B4 || fam == Family::B5) {
        r.num_representations = 2;
        r.within_bounds_only = true;
    }
    return r;
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::A1: return "A1";
        case Family::A2: return "A2";
        case Family::B1: return "B1";
        case Family::B2: return "B2";
        case Family::B3: return "B3";
        case Family::B4: return "B4";
        case Family::B5: return "B5";
        case Family::C: return "C";
        case Family::D: return "D";
    }
    return "?";
}

nt::Factorization psl_order(unsigned d, const Nat& q) {
    auto acc = psl_order_pieces(d, q, true);
    return finish(acc);
}

nt::Factorization psl_stabilizer_order(unsigned d, const Nat& q) {
    auto acc = psl_order_pieces(d, q, false);
    return finish(acc);
}

bool psl_p_complement_check(unsigned d, const Nat& q) {
    if (d < 2) throw std::invalid_argument("psl_p_complement_check: d must be at least 2");
    if (!degrees::prime_power_base(q))
        throw std::invalid_argument("psl_p_complement_check: q must be a prime power");
    Nat n = repunit(q, d);
    auto pp = nt::prime_power_decompose(n);
    if (!pp) throw std::invalid_argument("psl_p_complement_check: degree is not a prime power");
    Nat t = powi(q, d * (d - 1) / 2) * powi(q - 1, d - 1);
    for (unsigned j = 2; j + 1 <= d; ++j) t *= repunit(q, j);
    Nat g = boost::multiprecision::gcd(Nat(d), Nat(q - 1));
    if (t % g != 0) throw consistency_error("psl_p_complement_check: stabiliser order not integral");
    Nat stab = t / g;
    return stab % pp->p != 0;
}

ClassifyResult classify_degree(const Nat& n, const SearchBound& bounds) {
    ClassifyResult result;
    result.bounds_used = bounds;
    if (n < 4) {
        result.diagnostic = "degree below 4: no almost simple groups";
        return result;
    }
    auto pp_opt = nt::prime_power_decompose(n);
    if (!pp_opt) {
        result.diagnostic = nat_str(n) + " is not a prime power";
        return result;
    }
    const nt::PrimePower pp = *pp_opt;
    auto& recs = result.records;

    // A1: natural alternating and symmetric groups
    if (n >= 5) {
        recs.push_back(make_record(Family::A1, "A_" + nat_str(n), pp, n));
        GroupRecord s = make_record(Family::A1, "S_" + nat_str(n), pp, n);
        if (pp.p == 2 && n >= 8)
            s.duplicates = "also the imprimitive A2 entry of degree " + nat_str(2 * n);
        recs.push_back(s);
    }

    // A2: S_{n/2} acting on the natural points paired with a sign
    if (pp.p == 2 && n >= 16) {
        GroupRecord r = make_record(Family::A2, "S_" + nat_str(n / 2), pp, n);
        r.duplicates = "natural action of S_" + nat_str(n / 2) + " is the A1 entry of degree " + nat_str(n / 2);
        recs.push_back(r);
    }

    // B1: Mersenne q = n - 1, degree 2^k
    if (pp.p == 2 && n >= 8 && nt::is_prime(n - 1)) {
        Nat q = n - 1;
        GroupRecord psl = make_record(Family::B1, "PSL_2(" + nat_str(q) + ")", pp, n);
        psl.param_d = 2;
        psl.param_q = q;
        if (n == 8) psl.duplicates = "isomorphic to PSL_3(2), the B4 entry of degree 7";
        GroupRecord pgl = make_record(Family::B1, "PGL_2(" + nat_str(q) + ")", pp, n);
        pgl.param_d = 2;
        pgl.param_q = q;
        recs.push_back(psl);
        recs.push_back(pgl);
    }

    // B2: Fermat prime degree n = 2^e + 1, q = 2^e, Galois subgroups C_{2^i}
    if (pp.k == 1 && n >= 5 && is_power_of_two(n - 1)) {
        unsigned e = bit_length(n - 1) - 1;
        if ((e & (e - 1)) != 0)
            throw consistency_error("classify_degree: Fermat exponent not a power of two");
        unsigned f = 0;
        while ((1u << (f + 1)) <= e) ++f;
        if ((1u << f) != e) throw consistency_error("classify_degree: bad Galois tower");
        Nat q = n - 1;
        for (unsigned i = 0; i <= f; ++i) {
            std::string name;
            if (i == 0)
                name = "PSL_2(" + nat_str(q) + ")";
            else if (i == f)
                name = "PGammaL_2(" + nat_str(q) + ")";
            else
                name = "PSL_2(" + nat_str(q) + "):" + std::to_string(1u << i);
            GroupRecord r = make_record(Family::B2, name, pp, n);
            r.param_d = 2;
            r.param_q = q;
            r.param_i = i;
            if (n == 5 && i == 0) r.duplicates = "identified with A_5 in its natural degree-5 action";
            if (n == 5 && i == 1) r.duplicates = "PSigmaL_2(4), identified with S_5";
            recs.push_back(r);
        }
    }

    // B3: the solitary degree-9 pair over GF(8)
    if (n == 9) {
        GroupRecord psl = make_record(Family::B3, "PSL_2(8)", pp, n);
        psl.param_d = 2;
        psl.param_q = 8;
        GroupRecord pgl = make_record(Family::B3, "PGammaL_2(8)", pp, n);
        pgl.param_d = 2;
        pgl.param_q = 8;
        recs.push_back(psl);
        recs.push_back(pgl);
    }

    // B4 (k = 1) / B5 (k > 1): interval PSL_d(q) <= G <= PGammaL_d(q) with
    // repunit(q, d) = n, searched within bounds
    {
        Family fam = (pp.k == 1) ? Family::B4 : Family::B5;
        if (fits_u64(bounds.q_max)) {
            for (u64 q = 2; Nat(q) <= bounds.q_max; ++q) {
                if (Nat(q) * q + q + 1 > n) break;  // repunit(q,3) already exceeds n
                if (!degrees::prime_power_base(Nat(q))) continue;
                for (unsigned d = 3; d <= bounds.d_max; ++d) {
                    if (!nt::is_prime_u64(d)) continue;
                    Nat r = repunit(Nat(q), d);
                    if (r > n) break;
                    if (r != n) continue;
                    GroupRecord rec = make_record(fam, "PSL_" + std::to_string(d) + "(" + std::to_string(q) + ")", pp, n);
                    rec.param_d = d;
                    rec.param_q = q;
                    if (n == 7) rec.duplicates = "isomorphic to PSL_2(7), the B1 entry of degree 8";
                    recs.push_back(rec);
                }
            }
        }
    }

    // C and D: fixed exceptional entries
    if (n == 11) {
        GroupRecord l211 = make_record(Family::C, "PSL_2(11)", pp, n);
        l211.num_representations = 2;
        recs.push_back(l211);
        recs.push_back(make_record(Family::C, "M_11", pp, n));
    }
    if (n == 23) recs.push_back(make_record(Family::C, "M_23", pp, n));
    if (n == 27) {
        recs.push_back(make_record(Family::D, "W(E6)", pp, n));
        recs.push_back(make_record(Family::D, "W(E6)'", pp, n));
    }
    return result;
}

PComplementStatus p_complement_status(const GroupRecord& rec) {
    PComplementStatus st;
    switch (rec.family) {
        case Family::A1:
            if (rec.degree_pp.k == 1) {
                st.kind = PComplementStatus::Kind::exists;
                st.classes = 1;
            } else {
                st.kind = PComplementStatus::Kind::none;
            }
            break;
        case Family::A2:
            st.kind = PComplementStatus::Kind::none;
            break;
        case Family::B1:
        case Family::B2:
        case Family::B3:
            st.kind = PComplementStatus::Kind::exists;
            st.classes = 1;
            break;
        case Family::B4:
            st.kind = PComplementStatus::Kind::exists;
            st.classes = 2;
            break;
        case Family::B5:
            st.kind = PComplementStatus::Kind::conditional;
            st.classes = 2;
            st.condition = "|G : G meet PGL_d(q)| coprime to " + rec.degree_pp.p.str();
            break;
        case Family::C:
            st.kind = PComplementStatus::Kind::exists;
            st.classes = (rec.name == "PSL_2(11)") ? 2 : 1;
            break;
        case Family::D:
            st.kind = PComplementStatus::Kind::none;
            break;
    }
    return st;
}

std::optional<NcWitness> nc_membership(const Nat& p, const SearchBound& bounds) {
    if (!nt::is_prime(p)) throw std::invalid_argument("nc_membership: p must be prime");
    if (!fits_u64(bounds.q_max)) throw capacity_error("nc_membership: q_max too large");
    for (u64 q = 2; Nat(q) <= bounds.q_max; ++q) {
        if (!degrees::prime_power_base(Nat(q))) continue;
        for (unsigned d = 3; d <= bounds.d_max; ++d) {
            Nat n = repunit(Nat(q), d);
            Nat m = n;
            unsigned k = 0;
            while (m % p == 0) {
                m /= p;
                ++k;
            }
            if (m == 1 && k >= 1) return NcWitness{Nat(q), d, k};
        }
    }
    return std::nullopt;
}

Nat necklace_classes(unsigned m) {
    if (m < 1) throw std::invalid_argument("necklace_classes: m must be positive");
    Nat sum = 0;
    for (unsigned t = 1; t <= m; ++t) {
        if (m % t) continue;
        // phi(t)
        unsigned phi = t, v = t;
        for (unsigned p = 2; p * p <= v; ++p) {
            if (v % p == 0) {
                phi -= phi / p;
                while (v % p == 0) v /= p;
            }
        }
        if (v > 1) phi -= phi / v;
        sum += Nat(phi) * (Nat(1) << (m / t));
    }
    if (sum % m != 0) throw consistency_error("necklace_classes: orbit count not integral");
    return sum / m;
}

std::map<unsigned, Nat> necklace_class_size_spectrum(const Nat& p, unsigned e) {
    if (!nt::is_prime(p)) throw std::invalid_argument("necklace spectrum: p must be prime");
    if (e < 1) throw std::invalid_argument("necklace spectrum: e must be positive");
    Nat m = powi(p, e);
    if (m > 100'000) throw capacity_error("necklace spectrum: p^e too large");
    std::map<unsigned, Nat> out;
    out[0] = 2;
    Nat check = 2;
    for (unsigned f = 1; f <= e; ++f) {
        // strings of minimal period p^f, divided by the orbit size p^f
        Nat pf = powi(p, f);
        Nat strings = (Nat(1) << to_u64(pf)) - (Nat(1) << to_u64(powi(p, f - 1)));
        if (strings % pf != 0) throw consistency_error("necklace spectrum: non-integral orbit count");
        out[f] = strings / pf;
        check += out[f] * pf;
    }
    if (check != (Nat(1) << to_u64(m)))
        throw consistency_error("necklace spectrum: orbit sizes do not partition the strings");
    return out;
}

}  // namespace ppd::classify
