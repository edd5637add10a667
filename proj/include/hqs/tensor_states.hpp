#pragma once

#include <array>
#include <string>
#include <vector>

#include "hqs/common.hpp"
#include "hqs/density_matrix.hpp"

namespace hqs {

// Coefficient tensor C^j_{i1..ik} of a two-level hierarchic state: one macro
// index j (dimension J) and k micro indices. Stored row-major over
// (j, i1, ..., ik), i.e. as J contiguous blocks of size prod(d_i).
struct TwoLevelState {
    std::size_t macro_dim = 0;
    std::vector<std::size_t> micro_dims;
    std::vector<Complex> coeffs;

    std::size_t micro_total() const { return product(micro_dims); }
    double norm_sq() const { return hqs::norm_sq(coeffs); }

    const Complex& at(std::size_t j, std::size_t micro_flat) const {
        return coeffs[j * product(micro_dims) + micro_flat];
    }

    friend bool operator==(const TwoLevelState&, const TwoLevelState&) = default;
};

// Structural validation (dimension counts, finiteness); throws ValidationError.
void validate(const TwoLevelState& s);

// Throws NotNormalized when sum |C|^2 deviates from 1 beyond tol.
void require_normalized(const TwoLevelState& s, double tol = 1e-8);

// Multi-level generalization: each node carries a tensor whose first index
// faces the parent (the root's first index is the global macro index). The
// remaining indices face the children, in order, or are micro basis indices
// when the node is a leaf.
struct TreeTensorNode {
    std::string label;
    std::vector<std::size_t> dims;  // dims[0] is parent-facing
    std::vector<Complex> data;      // row-major
    std::vector<TreeTensorNode> children;

    bool is_leaf() const { return children.empty(); }

    friend bool operator==(const TreeTensorNode&, const TreeTensorNode&) = default;
};

struct TreeTensorState {
    TreeTensorNode root;

    friend bool operator==(const TreeTensorState&, const TreeTensorState&) = default;
};

void validate(const TreeTensorState& t);

// Norm of the flattened global amplitude, computed by subtree contraction.
double tree_norm_sq(const TreeTensorState& t);

// rho[i][i'] = sum_j C^j_i conj(C^j_{i'}) on the full micro space,
// renormalized by the squared norm so the output trace is 1.
DensityMatrix full_micro_density(const TwoLevelState& s);

// Averaging over the macro index and every micro subsystem except the
// 1-based position m.
DensityMatrix reduced_density(const TwoLevelState& s, std::size_t m);

// Tr(full_micro_density(s) * A); A is a row-major square matrix on the full
// micro space.
Complex expectation_micro(const TwoLevelState& s, const std::vector<Complex>& A);

// Macro-controlled operator: one micro-space matrix B^j per macro index.
struct ControlledOperator {
    std::size_t macro_dim = 0;
    std::vector<std::vector<Complex>> matrices;  // each prod(d_i) square, row-major
};

// sum_j <C^j| B^j |C^j>
Complex controlled_expectation(const TwoLevelState& s, const ControlledOperator& B);

// The spin-1 meson state: J = 3 macro basis (S_z = +1, 0, -1), one spin-1/2
// micro constituent. Requires 2(c1^2 + c0^2) = 1. Default phases are all +1.
TwoLevelState meson_state(double c1, double c0,
                          const std::array<Complex, 4>& phases = {
                              Complex(1.0), Complex(1.0), Complex(1.0), Complex(1.0)});

// Partial trace of the flattened global pure state onto the micro index of
// the leaf addressed by child indices from the root; computed by tree
// contraction without materializing the full state.
DensityMatrix branch_reduced_density(const TreeTensorState& t,
                                     const std::vector<std::size_t>& leaf_path);

// Serial reference kernels, kept for testing against the parallel versions.
namespace serial {
DensityMatrix full_micro_density(const TwoLevelState& s);
DensityMatrix reduced_density(const TwoLevelState& s, std::size_t m);
}  // namespace serial

}  // namespace hqs
