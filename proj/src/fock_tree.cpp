#include "hqs/fock_tree.hpp"

#include <algorithm>
#include <numeric>

#include "hqs/errors.hpp"

namespace hqs {

Rational Rational::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw ValidationError("rational quantum number with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    return Rational{num, den};
}

OccupationTree OccupationTree::tree(OccupationNode root) {
    OccupationTree t(Tag::tree);
    t.root_ = std::move(root);
    return t;
}

const OccupationNode& OccupationTree::root() const {
    if (tag_ != Tag::tree)
        throw PathInvalid("vacuum/zero states carry no occupation tree");
    return root_;
}

namespace {

OccupationNode* find_child(OccupationNode& n, const std::string& label) {
    for (auto& c : n.children)
        if (c.label == label) return &c;
    return nullptr;
}

OccupationNode* walk(OccupationNode& root, const NodePath& path) {
    if (path.empty() || path[0] != root.label) return nullptr;
    OccupationNode* cur = &root;
    for (std::size_t i = 1; i < path.size(); ++i) {
        cur = find_child(*cur, path[i]);
        if (!cur) return nullptr;
    }
    return cur;
}

void insert_sorted(OccupationNode& parent, OccupationNode child) {
    auto pos = std::lower_bound(
        parent.children.begin(), parent.children.end(), child.label,
        [](const OccupationNode& c, const std::string& l) { return c.label < l; });
    parent.children.insert(pos, std::move(child));
}

}  // namespace

OccupationTree apply_creation(const OccupationTree& t, const NodePath& parent_path,
                              const std::string& label, ParticleKind kind,
                              std::vector<Rational> qnumbers) {
    if (t.is_zero()) return OccupationTree::zero();
    OccupationNode fresh{label, kind, std::move(qnumbers), {}};
    if (t.is_vacuum()) {
        if (!parent_path.empty())
            throw PathInvalid("creation on the vacuum takes the ROOT (empty) path");
        return OccupationTree::tree(std::move(fresh));
    }
    if (parent_path.empty())
        throw PathInvalid("ROOT path is only valid on the vacuum");
    OccupationNode root = t.root();
    OccupationNode* parent = walk(root, parent_path);
    if (!parent) throw PathInvalid("parent_path does not address an existing node");
    if (find_child(*parent, label))
        throw DuplicateSibling("a sibling labeled '" + label + "' already exists");
    insert_sorted(*parent, std::move(fresh));
    return OccupationTree::tree(std::move(root));
}

OccupationTree apply_annihilation(const OccupationTree& t, const NodePath& path) {
    if (t.is_zero() || t.is_vacuum()) return OccupationTree::zero();
    if (path.empty() || path[0] != t.root().label) return OccupationTree::zero();

    if (path.size() == 1) {
        const OccupationNode& root = t.root();
        if (root.children.empty()) return OccupationTree::vacuum();
        if (root.children.size() == 1)
            return OccupationTree::tree(root.children[0]);  // |BA_i> -> |A_i>
        return OccupationTree::zero();  // not defined by the ladder rules
    }

    OccupationNode root = t.root();
    NodePath parent_path(path.begin(), path.end() - 1);
    OccupationNode* parent = walk(root, parent_path);
    if (!parent) return OccupationTree::zero();
    auto it = std::find_if(parent->children.begin(), parent->children.end(),
                           [&](const OccupationNode& c) { return c.label == path.back(); });
    if (it == parent->children.end()) return OccupationTree::zero();
    if (!it->children.empty()) return OccupationTree::zero();  // only leaves annihilate
    parent->children.erase(it);
    return OccupationTree::tree(std::move(root));
}

namespace {

void check_node(const OccupationNode& n, NodePath& path,
                std::vector<PauliViolation>& out) {
    for (std::size_t i = 0; i < n.children.size(); ++i)
        for (std::size_t j = i + 1; j < n.children.size(); ++j) {
            const auto& a = n.children[i];
            const auto& b = n.children[j];
            if (a.kind == ParticleKind::fermion && b.kind == ParticleKind::fermion &&
                a.qnumbers == b.qnumbers)
                out.push_back(PauliViolation{path, a.label, b.label});
        }
    for (const auto& c : n.children) {
        path.push_back(c.label);
        check_node(c, path, out);
        path.pop_back();
    }
}

}  // namespace

std::vector<PauliViolation> pauli_check(const OccupationTree& t) {
    std::vector<PauliViolation> out;
    if (!t.is_tree()) return out;
    NodePath path{t.root().label};
    check_node(t.root(), path, out);
    return out;
}

}  // namespace hqs
