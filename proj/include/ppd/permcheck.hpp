#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppd/ntkernel.hpp"

namespace ppd::perm {

using Point = std::uint16_t;

// Bijection on {0..degree-1} stored as an image array.
class Permutation {
  public:
    Permutation() = default;
    explicit Permutation(std::vector<Point> images);
    static Permutation identity(unsigned degree);

    unsigned degree() const { return static_cast<unsigned>(img_.size()); }
    Point operator()(Point x) const { return img_[x]; }
    const std::vector<Point>& images() const { return img_; }

    Permutation then(const Permutation& g) const;  // x -> g(this(x))
    Permutation inverse() const;
    bool is_identity() const;
    unsigned fixed_points() const;
    u64 order() const;

    bool operator==(const Permutation& o) const { return img_ == o.img_; }
    bool operator<(const Permutation& o) const { return img_ < o.img_; }

  private:
    std::vector<Point> img_;
};

struct GroupOptions {
    std::size_t element_cap = 1'000'000;
};

// Generators plus a lazily materialised element set.
class PermGroup {
  public:
    PermGroup(unsigned degree, std::vector<Permutation> generators, GroupOptions opts = {});

    unsigned degree() const { return degree_; }
    const std::vector<Permutation>& generators() const { return gens_; }
    const GroupOptions& options() const { return opts_; }

    // breadth-first closure; capacity_error beyond the element cap
    const std::vector<Permutation>& elements() const;
    u64 order() const { return elements().size(); }
    bool contains(const Permutation& g) const;

    std::vector<Point> orbit(Point start) const;
    bool is_transitive() const;

  private:
    unsigned degree_;
    std::vector<Permutation> gens_;
    GroupOptions opts_;
    mutable std::vector<Permutation> elems_;
    mutable bool materialized_ = false;
};

enum class Variant { psl, pgl };

// Arithmetic in GF(r^e) via the least irreducible monic polynomial; element
// encoding is the base-r digit value of the residue polynomial.
class GF {
  public:
    static GF make(u32 r, unsigned e);

    u32 q() const { return q_; }
    u32 characteristic() const { return r_; }
    unsigned ext_degree() const { return e_; }
    u32 add(u32 a, u32 b) const;
    u32 neg(u32 a) const;
    u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }
    u32 mul(u32 a, u32 b) const;
    u32 inv(u32 a) const;
    u32 generator() const;  // a generator of the multiplicative group

  private:
    GF() = default;
    u32 r_ = 0, q_ = 0;
    unsigned e_ = 1;
    std::vector<u32> red_;  // reduction digits of x^e mod the chosen polynomial
    std::vector<u32> inv_;
};

// Number of points of the projective geometry, (q^d - 1)/(q - 1), as u64.
u64 projective_point_count(unsigned d, u32 q);

// Natural action of PSL_d(q) or PGL_d(q) on projective points.
PermGroup build_projective_action(unsigned d, const Nat& q, Variant v, GroupOptions opts = {});

// Same group acting on points [0, n) and hyperplanes [n, 2n) at once; the
// hyperplane half is the inverse-transpose action.
PermGroup build_point_hyperplane_action(unsigned d, const Nat& q, Variant v, GroupOptions opts = {});

u64 stabilizer_order(const PermGroup& g, Point pt);
std::vector<Permutation> stabilizer_elements(const PermGroup& g, Point pt);

struct PComplementReport {
    bool is_transitive = false;
    bool degree_is_power_of_p = false;
    bool stabilizer_coprime_to_p = false;
    bool sylow_regular = false;
    bool all() const {
        return is_transitive && degree_is_power_of_p && stabilizer_coprime_to_p && sylow_regular;
    }
};

PComplementReport verify_p_complement(const PermGroup& g, u64 p);

// A subgroup of order the full p-part of |G|, grown through normalizers.
PermGroup sylow_subgroup(const PermGroup& g, u64 p);

struct RegularSearchResult {
    std::optional<PermGroup> subgroup;
    bool exhaustive = false;  // a miss always carries exhaustive = true
};

// A subgroup acting regularly (transitive of order = degree), if one exists.
RegularSearchResult find_regular_subgroup(const PermGroup& g);

// S_m acting on 2m points: the natural action paired with the signature.
Permutation a2_embed(const std::vector<Point>& sigma, unsigned m);
PermGroup build_a2_action(unsigned m, unsigned m_cap = 12, GroupOptions opts = {});

// Does the partition (given as blocks of point indices) form a block system?
bool is_block_system(const PermGroup& g, const std::vector<std::vector<Point>>& blocks);

// Are the two element sets conjugate subgroups of g?
bool subgroups_conjugate(const PermGroup& g, const std::vector<Permutation>& h1,
                         const std::vector<Permutation>& h2);

// Partition the given subgroups (as element sets) into conjugacy classes.
unsigned conjugacy_class_count(const PermGroup& g,
                               const std::vector<std::vector<Permutation>>& subgroups);

}  // namespace ppd::perm
