#pragma once

#include <vector>

#include "hqs/common.hpp"
#include "hqs/density_matrix.hpp"
#include "hqs/tensor_states.hpp"

namespace hqs {

// Apparatus pointer states are represented only through their overlaps
// G[k][l] = <Phi_k|Phi_l>; no basis is ever chosen for them.
struct ApparatusModel {
    std::size_t n = 0;
    std::vector<Complex> gram;  // row-major n x n
};

// Hermiticity (1e-12), unit diagonal (1e-12), positive semidefiniteness
// (1e-10); throws ValidationError.
void validate(const ApparatusModel& app);

// Psi' = sum_i c_i |phi_i>|Phi_i> after the apparatus has responded.
struct JointState {
    std::vector<Complex> c;
    ApparatusModel apparatus;
};

JointState entangle(const std::vector<Complex>& c, const ApparatusModel& app);

// rho_S[i][i'] = c_i conj(c_{i'}) G[i'][i]; orthogonal pointer states give a
// classical mixture, identical ones leave the superposition pure.
DensityMatrix trace_out_apparatus(const JointState& j);

struct ProjectionResult {
    double probability = 0.0;
    TwoLevelState post;
};

// Projects the macro index onto a subset of {1..J}; the post state has the
// remaining coefficients renormalized. Throws ZeroProbability below 1e-14.
ProjectionResult macro_project(const TwoLevelState& s,
                               const std::vector<std::size_t>& macro_subset);

}  // namespace hqs
