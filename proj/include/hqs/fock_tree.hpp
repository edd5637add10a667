#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "hqs/common.hpp"

namespace hqs {

// Exact rational quantum number (e.g. spin projection 1/2). Compared
// exactly, never by floating tolerance.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t num, std::int64_t den = 1);
    friend bool operator==(const Rational&, const Rational&) = default;
};

enum class ParticleKind { fermion, boson, composite };

struct OccupationNode {
    std::string label;
    ParticleKind kind = ParticleKind::composite;
    std::vector<Rational> qnumbers;
    std::vector<OccupationNode> children;  // kept sorted by label

    friend bool operator==(const OccupationNode&, const OccupationNode&) = default;
};

// A basis ket of the hierarchic Fock space: the vacuum |0>, the absorbing
// zero vector 0|0> (distinct from the vacuum), or an occupation tree.
class OccupationTree {
public:
    static OccupationTree vacuum() { return OccupationTree(Tag::vacuum); }
    static OccupationTree zero() { return OccupationTree(Tag::zero); }
    static OccupationTree tree(OccupationNode root);

    bool is_vacuum() const { return tag_ == Tag::vacuum; }
    bool is_zero() const { return tag_ == Tag::zero; }
    bool is_tree() const { return tag_ == Tag::tree; }
    const OccupationNode& root() const;

    friend bool operator==(const OccupationTree&, const OccupationTree&) = default;

private:
    enum class Tag { vacuum, zero, tree };
    explicit OccupationTree(Tag t) : tag_(t) {}
    Tag tag_;
    OccupationNode root_;
};

// Node paths are label sequences starting at the root; the empty path is the
// ROOT sentinel used only when creating on the vacuum.
using NodePath = std::vector<std::string>;

// a+(label) at parent_path. On the vacuum with an empty path this creates
// the root; otherwise a new child is attached in label order. ZERO absorbs.
OccupationTree apply_creation(const OccupationTree& t, const NodePath& parent_path,
                              const std::string& label,
                              ParticleKind kind = ParticleKind::composite,
                              std::vector<Rational> qnumbers = {});

// a(path). Removing a leaf; the sole root gives the vacuum; a root with one
// child promotes that child's subtree. Every action the ladder rules leave
// undefined (absent label, internal node, root with several children)
// yields ZERO, mirroring a(B)|0> = 0|0>.
OccupationTree apply_annihilation(const OccupationTree& t, const NodePath& path);

struct PauliViolation {
    NodePath parent_path;
    std::string label1;
    std::string label2;

    friend bool operator==(const PauliViolation&, const PauliViolation&) = default;
};

// Flags every pair of sibling fermions with identical quantum numbers.
// Cousins and bosons are never flagged.
std::vector<PauliViolation> pauli_check(const OccupationTree& t);

}  // namespace hqs
