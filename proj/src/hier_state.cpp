#include "hqs/hier_state.hpp"

#include "hqs/errors.hpp"

namespace hqs {

std::size_t HierState::node_count() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.node_count();
    return n;
}

bool structure_compatible(const HierState& a, const HierState& b) {
    if (a.root.amps.size() != b.root.amps.size()) return false;
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!structure_compatible(a.children[i], b.children[i])) return false;
    return true;
}

void validate(const HierState& s) {
    if (!all_finite(s.root.amps))
        throw ValidationError("non-finite amplitude in component '" + s.root.label + "'");
    for (const auto& c : s.children) validate(c);
}

namespace {

std::string combined_label(const std::string& l1, const std::string& l2) {
    if (l1 == l2) return l1;
    return "⟨" + l1 + "|" + l2 + "⟩";
}

HierState combine_rec(const Complex& a, const HierState& s1,
                      const Complex& b, const HierState& s2) {
    HierState out;
    out.root.label = combined_label(s1.root.label, s2.root.label);
    out.root.amps.resize(s1.root.amps.size());
    for (std::size_t i = 0; i < out.root.amps.size(); ++i)
        out.root.amps[i] = a * s1.root.amps[i] + b * s2.root.amps[i];
    out.children.reserve(s1.children.size());
    for (std::size_t i = 0; i < s1.children.size(); ++i)
        out.children.push_back(combine_rec(a, s1.children[i], b, s2.children[i]));
    return out;
}

}  // namespace

HierState linear_combine(const Complex& a, const HierState& s1,
                         const Complex& b, const HierState& s2) {
    if (!structure_compatible(s1, s2))
        throw StructureMismatch("hierarchic states have different structure");
    return combine_rec(a, s1, b, s2);
}

Complex inner_product(const HierState& s1, const HierState& s2) {
    if (!structure_compatible(s1, s2))
        throw StructureMismatch("hierarchic states have different structure");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < s1.root.amps.size(); ++i)
        acc += std::conj(s1.root.amps[i]) * s2.root.amps[i];
    for (std::size_t i = 0; i < s1.children.size(); ++i)
        acc += inner_product(s1.children[i], s2.children[i]);
    return acc;
}

double norm_sq(const HierState& s) {
    double acc = hqs::norm_sq(s.root.amps);
    for (const auto& c : s.children) acc += norm_sq(c);
    return acc;
}

}  // namespace hqs
