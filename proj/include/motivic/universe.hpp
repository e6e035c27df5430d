#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "motivic/abelian.hpp"

namespace motivic {

/// Finite presentation of an assembler: named objects plus covering
/// relations (parent covered by a finite multiset of children).  The initial
/// object is implicit and never named.
struct AssemblerPresentation {
    struct Covering {
        std::string parent;
        std::vector<std::string> children;
    };
    std::vector<std::string> objects;
    std::vector<Covering> coverings;
};

/// Free abelian group on the objects modulo [A] = sum of the children of
/// each covering family.
FGAbelianGroup k0_of_assembler_presentation(const AssemblerPresentation& a);

struct BirationalClass {
    std::string id;
    int dimension = 0;
    bool operator==(const BirationalClass&) const = default;
};

struct AutPresentation {
    std::string owner;
    std::vector<std::string> generators;
    IntMatrix relations;  // rows x generators, abelianized
    bool operator==(const AutPresentation&) const = default;
};

/// Formal integer combination over class ids.
using FormalSum = std::map<std::string, Int>;

struct ToyUniverse {
    std::string name;
    int max_dimension = 0;
    bool convenient = false;
    std::vector<BirationalClass> classes;
    std::map<std::string, std::string> l_map;                              // id -> id, dim + 1
    std::map<std::string, AutPresentation> aut;                            // absent => trivial
    std::map<std::string, IntMatrix> aut_l_induced;                        // Aut(c)^ab -> Aut(l c)^ab
    std::map<std::pair<std::string, std::string>, FormalSum> boundary;     // (class, generator)
    std::map<std::string, FormalSum> l_corrections;

    bool operator==(const ToyUniverse&) const = default;

    std::optional<int> dimension_of(const std::string& id) const;
    /// Sorted ids of B_n.
    std::vector<std::string> classes_of_dim(int n) const;
    /// Ids of dimension <= n, sorted by (dimension, id) — the A-tower generator order.
    std::vector<std::string> classes_up_to_dim(int n) const;
    AutPresentation aut_of(const std::string& id) const;  // trivial when absent
    std::optional<std::string> l_image(const std::string& id) const;
    std::vector<std::string> l_preimages(const std::string& id) const;  // sorted
    const FormalSum* correction_of(const std::string& id) const;
};

ToyUniverse parse_universe(const std::string& text);  // ParseError / SchemaError
std::string serialize_universe(const ToyUniverse& u);

/// Semantic validation; empty result means the universe honors every
/// invariant, including the mode-dependent convenient constraint and the
/// relation-respect of boundary data.
std::vector<Violation> validate(const ToyUniverse& u);

/// Maximum s with the class in the s-fold forward image of l.
int line_degree(const ToyUniverse& u, const std::string& id);  // UnknownClass

using Partition = std::vector<std::vector<std::string>>;

/// Classes of B_n keyed on their r-fold l-image.  TruncationOverflow when n + r > D.
Partition sim_r_partition(const ToyUniverse& u, int n, int r);

/// Connected components of the l-graph across all dimensions.
Partition stable_partition(const ToyUniverse& u);

}  // namespace motivic
