#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppd/degrees.hpp"
#include "ppd/ntkernel.hpp"

namespace ppd::classify {

// Family tags of the prime-power-degree classification of almost simple
// transitive groups.  A: alternating/symmetric (A2 the doubled action of
// S_{n/2}), B: projective-geometry actions split by the shape of the degree,
// C/D: the finitely many exceptional entries.
enum class Family { A1, A2, B1, B2, B3, B4, B5, C, D };

const char* family_name(Family f);

struct PComplementStatus {
    enum class Kind { exists, none, conditional };
    Kind kind = Kind::none;
    unsigned classes = 0;   // conjugacy classes of complements when they exist
    std::string condition;  // for the conditional case
};

struct GroupRecord {
    Family family;
    std::string name;                    // display name, e.g. "PSL_2(7)"
    std::optional<unsigned> param_d;     // linear dimension for B families
    std::optional<Nat> param_q;          // field size for B families
    std::optional<unsigned> param_i;     // Galois-subgroup index for B2
    nt::PrimePower degree_pp;            // n = p^k
    Nat degree;
    unsigned num_representations = 1;    // 2 for B4/B5 and PSL_2(11)
    bool primitive = true;               // false exactly for A2
    std::optional<unsigned> rank;        // 3 for D, unset elsewhere
    std::string duplicates;              // identification with another entry
    bool within_bounds_only = false;     // B4/B5 membership is search-bounded
};

struct SearchBound {
    Nat q_max = 100;
    unsigned d_max = 13;  // prime
};

struct ClassifyResult {
    std::vector<GroupRecord> records;
    SearchBound bounds_used;
    std::string diagnostic;  // set when n is not a prime power
};

// Order of PSL_d(q) in factored form:
// q^{d(d-1)/2} (q-1)^{d-1} prod_{j=2..d} (q^j-1)/(q-1), divided by (d, q-1).
nt::Factorization psl_order(unsigned d, const Nat& q);

// Point stabiliser order |PSL_d(q)| / n with n the number of projective points.
nt::Factorization psl_stabilizer_order(unsigned d, const Nat& q);

// With n = repunit(q, d) = p^k, check p does not divide the stabiliser
// order.  Predicted always true; the sweep treats false as a failure.
bool psl_p_complement_check(unsigned d, const Nat& q);

// All classification records of degree n; B4/B5 membership searched within
// the given bounds.
ClassifyResult classify_degree(const Nat& n, const SearchBound& bounds = {});

PComplementStatus p_complement_status(const GroupRecord& rec);

struct NcWitness {
    Nat q;
    unsigned d;
    unsigned k;
};

// A prime power q and d >= 3 with (q^d-1)/(q-1) = p^k, searched within
// bounds; nullopt means none found below the bounds.
std::optional<NcWitness> nc_membership(const Nat& p, const SearchBound& bounds = {});

// Orbits of the cyclic shift on binary strings of length m:
// (1/m) sum_{t | m} phi(t) 2^{m/t}.
Nat necklace_classes(unsigned m);

// For m = p^e: how many shift-orbits have size p^f, for each f = 0..e.
std::map<unsigned, Nat> necklace_class_size_spectrum(const Nat& p, unsigned e);

}  // namespace ppd::classify
