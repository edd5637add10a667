#pragma once

#include <vector>

#include "hqs/common.hpp"
#include "hqs/density_matrix.hpp"
#include "hqs/tensor_states.hpp"

namespace hqs::oracle {

// Brute-force ground truth on the flat tensor-product space. Dense only,
// capped at total dimension 4096: this is a test oracle, not a production
// path.
inline constexpr std::size_t kMaxFlatDim = 4096;

enum class FactorRole { micro, macro };

struct Factor {
    FactorRole role;
    std::size_t dim;
};

// Dense amplitude vector over an ordered factor list, row-major with the
// first factor slowest. The frozen convention is (micro_1, ..., micro_k,
// macro).
struct FlatState {
    std::vector<Complex> amps;
    std::vector<Factor> factors;

    std::size_t dim() const { return amps.size(); }
    double norm_sq() const { return hqs::norm_sq(amps); }
};

FlatState flatten(const TwoLevelState& s);

// Contracts every internal edge; the leaves' micro indices appear in
// depth-first order, the global macro index last.
FlatState flatten(const TreeTensorState& t);

// Partial trace of |v><v| onto the kept factors (0-based positions into the
// factor list, ascending). Not renormalized.
DensityMatrix dense_partial_trace(const FlatState& v, const std::vector<std::size_t>& keep);

// <v| I x ... x A x ... x I |v> with A at the 0-based factor position slot.
Complex dense_expectation(const FlatState& v, const std::vector<Complex>& A,
                          std::size_t slot);

}  // namespace hqs::oracle
