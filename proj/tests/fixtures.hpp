#pragma once

#include <string>

#include "motivic/universe.hpp"

namespace motivic::testing {

inline std::string fixture_path(const std::string& name) {
    return std::string(FIXTURE_DIR) + "/" + name;
}

// one point, two lines, three surfaces; l is injective and every Aut trivial
inline ToyUniverse u_free() {
    ToyUniverse u;
    u.name = "u_free";
    u.max_dimension = 2;
    u.convenient = true;
    u.classes = {{"p", 0}, {"q0", 1}, {"q1", 1}, {"r0", 2}, {"r1", 2}, {"s", 2}};
    u.l_map = {{"p", "q0"}, {"q0", "r0"}, {"q1", "r1"}};
    return u;
}

// two lines merging under l: the kernel-of-L example
inline ToyUniverse u_merge() {
    ToyUniverse u;
    u.name = "u_merge";
    u.max_dimension = 2;
    u.convenient = true;
    u.classes = {{"pt", 0}, {"a", 1}, {"b", 1}, {"c", 2}};
    u.l_map = {{"pt", "a"}, {"a", "c"}, {"b", "c"}};
    return u;
}

// a single automorphism with boundary -[p]: first-page obstruction
inline ToyUniverse u_aut() {
    ToyUniverse u;
    u.name = "u_aut";
    u.max_dimension = 1;
    u.convenient = false;
    u.classes = {{"p", 0}, {"x", 1}};
    u.l_map = {{"p", "x"}};
    u.aut["x"] = {"x", {"phi"}, IntMatrix(0, 1)};
    u.boundary[{"x", "phi"}] = {{"p", Int(-1)}};
    return u;
}

// boundary of phi lands in the image of iota: obstruction appears on page 2
inline ToyUniverse u_lift() {
    ToyUniverse u;
    u.name = "u_lift";
    u.max_dimension = 2;
    u.convenient = false;
    u.classes = {{"z", 0}, {"y", 1}, {"w", 2}};
    u.l_map = {{"z", "y"}, {"y", "w"}};
    u.aut["w"] = {"w", {"phi"}, IntMatrix(0, 1)};
    u.aut["y"] = {"y", {"sigma"}, IntMatrix(0, 1)};
    u.aut_l_induced["y"] = IntMatrix(1, 1);  // sigma dies in Aut(w)
    u.boundary[{"w", "phi"}] = {{"z", 1}};
    return u;
}

// two l-chains of different line degree merging in dimension 3
inline ToyUniverse u_chain() {
    ToyUniverse u;
    u.name = "u_chain";
    u.max_dimension = 3;
    u.convenient = true;
    u.classes = {{"p", 0}, {"a", 1}, {"a2", 1}, {"q", 1}, {"b", 2}, {"r", 2}, {"c", 3}};
    u.l_map = {{"p", "a"}, {"a", "b"}, {"a2", "b"}, {"q", "r"}, {"b", "c"}, {"r", "c"}};
    return u;
}

// convenient automorphism whose boundary is a Lefschetz multiple but whose
// pi1-C~ class has no permanent-cycle preimage upstairs
inline ToyUniverse u_shear() {
    ToyUniverse u;
    u.name = "u_shear";
    u.max_dimension = 2;
    u.convenient = true;
    u.classes = {{"z", 0}, {"y", 1}, {"w", 2}};
    u.l_map = {{"z", "y"}, {"y", "w"}};
    u.aut["w"] = {"w", {"phi"}, IntMatrix(0, 1)};
    u.boundary[{"w", "phi"}] = {{"y", 1}};
    return u;
}

// max_dimension 1 with no classes at all: the degenerate but valid universe
inline ToyUniverse u_empty() {
    ToyUniverse u;
    u.name = "u_empty";
    u.max_dimension = 1;
    u.convenient = true;
    return u;
}

}  // namespace motivic::testing
