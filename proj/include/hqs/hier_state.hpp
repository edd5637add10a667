#pragma once

#include <string>
#include <vector>

#include "hqs/common.hpp"

namespace hqs {

// One entity of the hierarchy: a named finite-dimensional amplitude vector.
// An empty vector (d = 0) means "no entity-level wave function" and is a
// legal, structurally distinct node.
struct ComponentState {
    std::string label;
    std::vector<Complex> amps;

    friend bool operator==(const ComponentState&, const ComponentState&) = default;
};

// A tree of components. Two states are structure-compatible iff their
// (arity, dimension) trees coincide node by node; labels are free.
struct HierState {
    ComponentState root;
    std::vector<HierState> children;

    std::size_t node_count() const;

    friend bool operator==(const HierState&, const HierState&) = default;
};

bool structure_compatible(const HierState& a, const HierState& b);

// Validates finiteness of every amplitude; throws ValidationError.
void validate(const HierState& s);

// a*s1 + b*s2, componentwise. Labels: kept when equal, otherwise the
// composite form "⟨L1|L2⟩". Throws StructureMismatch on shape difference.
HierState linear_combine(const Complex& a, const HierState& s1,
                         const Complex& b, const HierState& s2);

// Componentwise scalar product, sum over all corresponding nodes.
Complex inner_product(const HierState& s1, const HierState& s2);

// Sum of the squared Euclidean norms of all components.
double norm_sq(const HierState& s);

}  // namespace hqs
