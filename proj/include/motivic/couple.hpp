#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "motivic/abelian.hpp"

namespace motivic {

/// The two-column portion of an exact couple: the A_{0,q} tower with iota,
/// the E1 groups of columns 0 and 1, the projections p and the boundaries
/// bdry.  bdry[0] targets the trivial group (the tower is extended by zero
/// below filtration 0).
struct TwoColumnCouple {
    std::vector<FGAbelianGroup> a_tower;  // q = 0..D
    std::vector<GroupHom> iota;           // iota[q] : a_tower[q] -> a_tower[q+1], size D
    std::vector<FGAbelianGroup> e1_col0;  // q = 0..D
    std::vector<FGAbelianGroup> e1_col1;  // q = 0..D
    std::vector<GroupHom> p_maps;         // p_maps[q] : a_tower[q] -> e1_col0[q]
    std::vector<GroupHom> bdry;           // bdry[q] : e1_col1[q] -> a_tower[q-1]

    int max_q() const { return static_cast<int>(a_tower.size()) - 1; }
};

struct PagePosition {
    int p = 0;
    int q = 0;
    bool operator==(const PagePosition&) const = default;
};

struct PageElement {
    int page = 1;
    PagePosition pos;
    Vec rep;  // coordinates over the E1 generators at pos
};

struct PageGroup {
    PagePosition pos;
    int page = 1;
    FGAbelianGroup group;        // isomorphic to cycle/boundary
    IntMatrix cycle_lattice;     // rows in Z^{gens E1_{p,q}}
    IntMatrix boundary_lattice;  // rows quotiented out (relations included)
};

/// Stair-step exactness: im(bdry) = ker(iota), im(iota) = ker(p), p onto.
std::vector<Violation> check_exactness(const TwoColumnCouple& c);

/// Page and differential computations for one couple, with memoized cycle
/// and boundary lattices.  Not safe for concurrent use of a single instance;
/// distinct instances over the same couple are independent.
class PageEngine {
public:
    explicit PageEngine(const TwoColumnCouple& c);

    /// d_r x by zig-zag lifting; nullopt when the target falls below the
    /// filtration bottom (q - r < 0).  Throws NotACycle if some d_s x != 0
    /// for s < r, LiftFailure on couples violating exactness.
    std::optional<PageElement> differential(const PageElement& x, int r) const;

    PageGroup page(int r, int p, int q) const;

    /// Stable page at every position of the bounded tower.
    std::map<std::pair<int, int>, PageGroup> e_infinity() const;

    bool is_zero(const PageElement& x) const;

    /// Cycle lattice of E^r_{1,q} (rows in Z^{gens E1_{1,q}}).
    IntMatrix cycle_lattice(int r, int q) const;
    /// Accumulated boundary lattice at (0,q) for page r, relations included.
    IntMatrix boundary_lattice(int r, int q) const;

private:
    const TwoColumnCouple& c_;
    mutable std::map<std::pair<int, int>, IntMatrix> cycles_;
    mutable std::map<std::pair<int, int>, IntMatrix> boundaries_;
    mutable std::map<std::pair<int, int>, IntMatrix> composites_;

    IntMatrix composite_matrix(int from, int to) const;  // iota^(to-from)
    IntMatrix kernel_of_composite(int from, int to) const;
};

std::optional<PageElement> differential(const TwoColumnCouple& c, const PageElement& x, int r);
PageGroup page(const TwoColumnCouple& c, int r, int p, int q);
std::map<std::pair<int, int>, PageGroup> e_infinity(const TwoColumnCouple& c);

}  // namespace motivic
