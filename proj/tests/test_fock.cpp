#include <doctest.h>

#include <random>

#include "hqs/errors.hpp"
#include "hqs/fock_tree.hpp"

using namespace hqs;

namespace {

OccupationTree ket_B() {
    return apply_creation(OccupationTree::vacuum(), {}, "B");
}

OccupationTree ket_BA1(ParticleKind kind = ParticleKind::composite,
                       std::vector<Rational> q = {}) {
    return apply_creation(ket_B(), {"B"}, "A1", kind, std::move(q));
}

// random tree built by a recorded sequence of valid creations
struct RandomTree {
    OccupationTree t = OccupationTree::vacuum();
    std::vector<NodePath> node_paths;  // every existing node, root first
};

RandomTree make_random_tree(std::mt19937_64& rng, std::size_t nodes) {
    RandomTree r;
    r.t = apply_creation(r.t, {}, "n0");
    r.node_paths.push_back({"n0"});
    for (std::size_t i = 1; i < nodes; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, r.node_paths.size() - 1);
        NodePath parent = r.node_paths[pick(rng)];
        if (parent.size() >= 4) parent = r.node_paths[0];
        const std::string label = "n" + std::to_string(i);
        r.t = apply_creation(r.t, parent, label);
        parent.push_back(label);
        r.node_paths.push_back(parent);
    }
    return r;
}

}  // namespace

TEST_CASE("ladder rule: a+(B)|0> = |B>") {
    const OccupationTree t = ket_B();
    CHECK(t.is_tree());
    CHECK(t.root().label == "B");
    CHECK(t.root().children.empty());
}

TEST_CASE("ladder rule: a(B)|B> = |0>") {
    CHECK(apply_annihilation(ket_B(), {"B"}) == OccupationTree::vacuum());
}

TEST_CASE("ladder rule: a(B)|0> = ZERO, distinct from the vacuum") {
    const OccupationTree z = apply_annihilation(OccupationTree::vacuum(), {"B"});
    CHECK(z.is_zero());
    CHECK(z != OccupationTree::vacuum());
}

TEST_CASE("ladder rule: a+(A_i)|B> = {|B>, |BA_i>}") {
    const OccupationTree t = ket_BA1();
    CHECK(t.root().label == "B");
    REQUIRE(t.root().children.size() == 1);
    CHECK(t.root().children[0].label == "A1");
}

TEST_CASE("ladder rule: a(A_i){|B>, |BA_i>} = |B>") {
    CHECK(apply_annihilation(ket_BA1(), {"B", "A1"}) == ket_B());
}

TEST_CASE("ladder rule: a(B)|BA_i> = |A_i> (child promoted)") {
    const OccupationTree t = apply_annihilation(ket_BA1(), {"B"});
    CHECK(t.is_tree());
    CHECK(t.root().label == "A1");
    CHECK(t.root().children.empty());
}

TEST_CASE("ZERO absorbs both ladder operations") {
    const OccupationTree z = OccupationTree::zero();
    CHECK(apply_creation(z, {}, "B").is_zero());
    CHECK(apply_creation(z, {"B"}, "A1").is_zero());
    CHECK(apply_annihilation(z, {"B"}).is_zero());
}

TEST_CASE("undefined actions collapse to ZERO") {
    // absent label
    CHECK(apply_annihilation(ket_B(), {"C"}).is_zero());
    CHECK(apply_annihilation(ket_BA1(), {"B", "A2"}).is_zero());
    // root with two children: a(B) is undefined by the ladder rules
    const OccupationTree two = apply_creation(ket_BA1(), {"B"}, "A2");
    CHECK(apply_annihilation(two, {"B"}).is_zero());
    // internal non-root node
    OccupationTree deep = apply_creation(ket_BA1(), {"B", "A1"}, "X");
    deep = apply_creation(deep, {"B"}, "A2");
    CHECK(apply_annihilation(deep, {"B", "A1"}).is_zero());
}

TEST_CASE("creation path errors") {
    CHECK_THROWS_AS(apply_creation(OccupationTree::vacuum(), {"B"}, "A1"), PathInvalid);
    CHECK_THROWS_AS(apply_creation(ket_B(), {}, "C"), PathInvalid);
    CHECK_THROWS_AS(apply_creation(ket_B(), {"C"}, "A1"), PathInvalid);
    CHECK_THROWS_AS(apply_creation(ket_BA1(), {"B"}, "A1"), DuplicateSibling);
}

TEST_CASE("create/annihilate round trip on random trees") {
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<std::size_t> n(1, 12);
        const RandomTree r = make_random_tree(rng, n(rng));
        std::uniform_int_distribution<std::size_t> pick(0, r.node_paths.size() - 1);
        NodePath parent = r.node_paths[pick(rng)];
        const OccupationTree grown = apply_creation(r.t, parent, "fresh");
        NodePath leaf = parent;
        leaf.push_back("fresh");
        CHECK(apply_annihilation(grown, leaf) == r.t);
    }
}

TEST_CASE("deterministic sibling order regardless of creation order") {
    OccupationTree a = ket_B();
    a = apply_creation(a, {"B"}, "A2");
    a = apply_creation(a, {"B"}, "A1");
    OccupationTree b = ket_B();
    b = apply_creation(b, {"B"}, "A1");
    b = apply_creation(b, {"B"}, "A2");
    CHECK(a == b);
    CHECK(a.root().children[0].label == "A1");
}

TEST_CASE("pauli: sibling fermions with equal quantum numbers are flagged") {
    const std::vector<Rational> up = {Rational::make(1, 2)};
    OccupationTree t = ket_B();
    t = apply_creation(t, {"B"}, "A11", ParticleKind::fermion, up);
    t = apply_creation(t, {"B"}, "A12", ParticleKind::fermion, up);
    const auto v = pauli_check(t);
    REQUIRE(v.size() == 1);
    CHECK(v[0].parent_path == NodePath{"B"});
    CHECK(v[0].label1 == "A11");
    CHECK(v[0].label2 == "A12");
}

TEST_CASE("pauli: equal-qnumber fermion cousins under different parents pass") {
    const std::vector<Rational> up = {Rational::make(1, 2)};
    OccupationTree t = apply_creation(OccupationTree::vacuum(), {}, "C1");
    t = apply_creation(t, {"C1"}, "B1");
    t = apply_creation(t, {"C1"}, "B2");
    t = apply_creation(t, {"C1", "B1"}, "A11", ParticleKind::fermion, up);
    t = apply_creation(t, {"C1", "B2"}, "A21", ParticleKind::fermion, up);
    CHECK(pauli_check(t).empty());
}

TEST_CASE("pauli: bosons and distinct qnumbers pass, vacuum/zero are clean") {
    const std::vector<Rational> up = {Rational::make(1, 2)};
    const std::vector<Rational> down = {Rational::make(-1, 2)};
    OccupationTree t = ket_B();
    t = apply_creation(t, {"B"}, "g1", ParticleKind::boson, up);
    t = apply_creation(t, {"B"}, "g2", ParticleKind::boson, up);
    t = apply_creation(t, {"B"}, "f1", ParticleKind::fermion, up);
    t = apply_creation(t, {"B"}, "f2", ParticleKind::fermion, down);
    CHECK(pauli_check(t).empty());
    CHECK(pauli_check(OccupationTree::vacuum()).empty());
    CHECK(pauli_check(OccupationTree::zero()).empty());
}

TEST_CASE("rational quantum numbers compare exactly after normalization") {
    CHECK(Rational::make(1, 2) == Rational::make(2, 4));
    CHECK(Rational::make(-1, 2) == Rational::make(1, -2));
    CHECK(Rational::make(1, 2) != Rational::make(1, 3));
    CHECK_THROWS_AS(Rational::make(1, 0), ValidationError);

    // 2/4 and 1/2 fermion siblings still collide
    OccupationTree t = ket_B();
    t = apply_creation(t, {"B"}, "f1", ParticleKind::fermion, {Rational::make(1, 2)});
    t = apply_creation(t, {"B"}, "f2", ParticleKind::fermion, {Rational::make(2, 4)});
    CHECK(pauli_check(t).size() == 1);
}
