#pragma once

#include <string>
#include <vector>

#include "hqs/common.hpp"

namespace hqs {

// Hermitian, positive-semidefinite, trace-one complex matrix. The invariants
// are checked on demand, not enforced silently: callers (and the CLI's
// exit-2 contract) decide what to do with a violation.
class DensityMatrix {
public:
    DensityMatrix() = default;
    DensityMatrix(std::size_t dim, std::vector<Complex> entries);

    std::size_t dim() const { return dim_; }
    const Complex& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * dim_ + j];
    }
    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    const std::vector<Complex>& entries() const { return entries_; }

    Complex trace() const;
    double purity() const;  // Tr(rho^2)

    // max entrywise |rho - rho^dagger|
    double hermiticity_error() const;

    // eigenvalue spectrum omega_i, ascending
    std::vector<double> eigenvalues() const;

    // Empty when Hermiticity (<= herm_tol), eigenvalue range
    // [-eig_tol, 1 + eig_tol] and |trace - 1| <= trace_tol all hold;
    // otherwise one message per violated invariant.
    std::vector<std::string> invariant_violations(double herm_tol = 1e-10,
                                                  double eig_tol = 1e-10,
                                                  double trace_tol = 1e-10) const;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

}  // namespace hqs
