#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "motivic/int_matrix.hpp"

namespace motivic {

/// Finitely generated abelian group given by labeled generators and a
/// relation matrix (one row per relation, one column per generator).
/// Invariants (free rank, torsion coefficients) are computed eagerly from
/// the Smith normal form of the relations and cached.
class FGAbelianGroup {
public:
    FGAbelianGroup() : relations_(0, 0) {}
    FGAbelianGroup(std::vector<std::string> labels, IntMatrix relations);

    static FGAbelianGroup free_group(std::vector<std::string> labels);
    static FGAbelianGroup trivial() { return FGAbelianGroup(); }

    std::size_t n_generators() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const IntMatrix& relations() const { return relations_; }

    std::size_t free_rank() const { return free_rank_; }
    const std::vector<Int>& torsion() const { return torsion_; }
    std::pair<std::size_t, std::vector<Int>> isomorphism_invariants() const {
        return {free_rank_, torsion_};
    }

    bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
    bool is_zero_element(const Vec& v) const;
    std::optional<std::size_t> label_index(const std::string& name) const;

    bool operator==(const FGAbelianGroup&) const = default;

private:
    std::vector<std::string> labels_;
    IntMatrix relations_;
    std::size_t free_rank_ = 0;
    std::vector<Int> torsion_;  // coefficients > 1 in divisibility order
};

bool isomorphic(const FGAbelianGroup& g, const FGAbelianGroup& h);

std::pair<std::size_t, std::vector<Int>> isomorphism_invariants(const FGAbelianGroup& g);

/// "2a - b" style rendering of a coordinate vector over generator labels.
std::string format_combination(const Vec& v, const std::vector<std::string>& labels);

/// Homomorphism between presented groups; matrix columns are indexed by
/// source generators, rows by target generators.
class GroupHom {
public:
    GroupHom() : matrix_(0, 0) {}  // zero hom between trivial groups
    GroupHom(FGAbelianGroup source, FGAbelianGroup target, IntMatrix matrix);

    static GroupHom zero(FGAbelianGroup source, FGAbelianGroup target);
    static GroupHom identity(const FGAbelianGroup& g);

    const FGAbelianGroup& source() const { return source_; }
    const FGAbelianGroup& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

    Vec apply(const Vec& x) const { return matrix_.apply(x); }

    /// Every source relation must land in the target relation lattice.
    bool well_defined() const;

    /// Image of the whole source as a sublattice of Z^{target gens} (relations included).
    IntMatrix image_lattice() const;

private:
    FGAbelianGroup source_, target_;
    IntMatrix matrix_;
};

GroupHom compose(const GroupHom& g, const GroupHom& h);  // g after h

struct SubgroupResult {
    FGAbelianGroup group;
    GroupHom hom;  // embedding (kernel) or projection (cokernel)
};

/// Kernel of h with its embedding into the source.  Throws IllFormedHom.
SubgroupResult kernel_of_hom(const GroupHom& h);

/// Cokernel of h with the projection from the target.  Throws IllFormedHom.
SubgroupResult cokernel_of_hom(const GroupHom& h);

}  // namespace motivic
