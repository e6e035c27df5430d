#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "motivic/couple.hpp"
#include "motivic/universe.hpp"

namespace motivic {

/// The pi_0 tower of the dimension filtration: A_{0,q} is generated by the
/// class ids of dimension <= q (sorted by dimension, then id) with one
/// relation per Aut generator's boundary; iota includes old generators, p
/// projects onto the new ones.  The canonical lift of a class id into any
/// A_{0,q} containing it is its own generator coordinate.
struct K0Tower {
    std::vector<FGAbelianGroup> a;        // q = 0..D
    std::vector<GroupHom> iota;           // a[q] -> a[q+1]
    std::vector<FGAbelianGroup> e1_col0;  // free on B_q
    std::vector<GroupHom> p_maps;         // a[q] -> e1_col0[q]

    std::size_t gen_index(int q, const std::string& id) const;
};

enum class SequenceKind { kv, kvl };

struct SummandTag {
    enum Kind { aut_ab, z2, pi1_ctilde, z_tilde } kind;
    std::string owner;  // the birational class the summand belongs to
    std::size_t first = 0;
    std::size_t count = 0;
};

struct TaggedGroup {
    FGAbelianGroup group;
    std::vector<SummandTag> tags;
};

struct E1Pages {
    SequenceKind kind = SequenceKind::kv;
    std::vector<FGAbelianGroup> col0;  // q = 0..D
    std::vector<TaggedGroup> col1;     // q = 0..D
};

K0Tower k0_filtration(const ToyUniverse& u);  // InconsistentBoundary
E1Pages kv_e1(const ToyUniverse& u);
TwoColumnCouple kv_couple(const ToyUniverse& u);

/// [beta] -> [l beta] + correction(beta) : A_{0,D-1} -> A_{0,D}.
GroupHom l_multiplication(const ToyUniverse& u);  // TruncationOverflow when D = 0

E1Pages kvl_e1(const ToyUniverse& u);  // MissingInducedMap

/// A formal element of the KVL E1 column 1 at the owner's dimension.
struct KvlElement {
    enum Kind { preimage_difference, pi1_class, z2_class } kind = pi1_class;
    std::string beta;
    std::string alpha, alpha_prime;  // for preimage_difference: distinct members of l^{-1}(beta)
};

struct PageVector {
    FGAbelianGroup group;
    Vec coords;
    bool is_zero() const { return group.is_zero_element(coords); }
};

/// Closed-form d_r value in the page-r quotient at (0, dim(beta) - r).
/// Convenient mode only; preimages are chosen lexicographically least.
PageVector kvl_differential_closed_form(const ToyUniverse& u, const KvlElement& x, int r);

/// Free group on the sim_{r-1} classes of B_n avoiding l(B_{n-1}).
FGAbelianGroup kvl_page_closed_form(const ToyUniverse& u, int r, int n);

/// Column-1 page of the KVL sequence: the pi1-C~ and Z/2 summands persist,
/// the Z~ summands shrink to the preimages of line degree >= r-1.
/// r = 1 works in any mode and equals the kvl_e1 entry.
FGAbelianGroup kvl_col1_page_closed_form(const ToyUniverse& u, int r, int n);

/// Stable page at column 0, dimension n (sim_infinity within the truncation).
FGAbelianGroup kvl_page_infinity_closed_form(const ToyUniverse& u, int n);

/// Literal homology iteration (ker/im lattice algebra page by page), using
/// the closed-form differentials as input; the brute-force cross-check of
/// kvl_page_closed_form.  Keys are (r, n) with 1 <= r <= D - n + 1.
std::map<std::pair<int, int>, FGAbelianGroup> kvl_pages_iterated(const ToyUniverse& u);

struct ComparisonMap {
    std::vector<GroupHom> col0;  // E1_{0,q}(KV) -> E1_{0,q}(KVL)
    std::vector<GroupHom> col1;  // E1_{1,q}(KV) -> E1_{1,q}(KVL)
};

ComparisonMap ss_comparison_map(const ToyUniverse& u);

namespace detail {
/// Tower builder; with a collector, relation-respect failures become
/// violations instead of InconsistentBoundary.
K0Tower build_k0_tower(const ToyUniverse& u, std::vector<Violation>* collect);
/// Convenient-mode boundary membership checks (validate's mode-dependent part).
void check_convenience(const ToyUniverse& u, const K0Tower& t, std::vector<Violation>& out);
}  // namespace detail

}  // namespace motivic
