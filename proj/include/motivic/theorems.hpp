#pragma once

#include <optional>
#include <string>
#include <vector>

#include "motivic/spectral.hpp"

namespace motivic {

struct ObstructionReport {
    std::string class_id;
    std::string generator;
    bool extends = false;
    // set when obstructed
    int first_page = 0;
    PageElement value;
    PageGroup value_group;
    std::string value_text;
};

/// Runs d_r on [generator] for r = 1..dim through the KV couple; the
/// automorphism extends to a piecewise automorphism iff every value is zero.
ObstructionReport piecewise_obstruction(const ToyUniverse& u, const std::string& class_id,
                                        const std::string& generator);

/// Kernel of the composite iota: A_{0,n} -> A_{0,D} with its embedding.
SubgroupResult psi_kernel(const ToyUniverse& u, int n);

struct DiffKernelReport {
    bool has_nonzero_diff = false;
    bool has_psi_kernel = false;
    bool agree() const { return has_nonzero_diff == has_psi_kernel; }
};

DiffKernelReport diff_iff_kernel_report(const ToyUniverse& u);

struct StableBlockEntry {
    std::vector<std::string> block;
    std::string representative;  // least dimension, ties by id
    int dimension = 0;
};

/// One entry per stable block; these freely generate the direct sum of the
/// stable KVL column-0 pages.  Convenient mode only.
std::vector<StableBlockEntry> larsen_lunts_basis(const ToyUniverse& u);

struct KernelWitness {
    std::string generator_label;
    Vec vector;               // coordinates in A_{0,D-1}
    std::string positive;     // the [X] part
    std::string negative;     // the [Y] part
    int filtration_degree = 0;
    Int torsion_order;        // 0 for free generators
};

struct KernelLReport {
    FGAbelianGroup kernel;
    GroupHom embedding;  // kernel -> A_{0,D-1}
    std::vector<KernelWitness> witnesses;
};

KernelLReport kernel_of_L(const ToyUniverse& u);

/// Minimal dimension met by the class's stable block.
int stable_complexity(const ToyUniverse& u, const std::string& class_id);

struct SurjectivityReport {
    bool surjective = true;
    std::vector<std::string> counterexamples;  // generator labels not hit
};

/// Checks that every permanent cycle of the KVL column 1 lying in the
/// pi_1-C~ and Z/2 components is hit by a KV permanent cycle under the
/// comparison map.  Convenient mode only.
SurjectivityReport permanent_cycle_surjectivity(const ToyUniverse& u);

struct RealizabilityReport {
    bool consistent = false;
    std::pair<std::size_t, std::vector<Int>> coker_invariants;
    std::pair<std::size_t, std::vector<Int>> stable_page_invariants;
    std::string details;
};

/// Necessary condition for a universe to come from actual varieties: the
/// cokernel of Lefschetz multiplication must agree with the direct sum of
/// the stable KVL column-0 pages.  A "consistent" verdict is not a
/// realizability proof.
RealizabilityReport realizability_check(const ToyUniverse& u);

}  // namespace motivic
