#include "hqs/density_matrix.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <sstream>
#include <string>

#include "hqs/errors.hpp"

namespace hqs {

namespace {
std::string fmt(double x) {
    std::ostringstream ss;
    ss.precision(6);
    ss << std::scientific << x;
    return ss.str();
}
}  // namespace

DensityMatrix::DensityMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_)
        throw DimensionMismatch("density matrix entry count does not match dim^2");
    if (!all_finite(entries_))
        throw ValidationError("non-finite entry in density matrix");
}

Complex DensityMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double DensityMatrix::purity() const {
    // Tr(rho^2) = sum_ij rho_ij rho_ji
    Complex p = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) p += (*this)(i, j) * (*this)(j, i);
    return p.real();
}

double DensityMatrix::hermiticity_error() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

std::vector<double> DensityMatrix::eigenvalues() const {
    Eigen::MatrixXcd m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    std::vector<double> ev(dim_);
    for (std::size_t i = 0; i < dim_; ++i) ev[i] = solver.eigenvalues()(static_cast<long>(i));
    return ev;
}

std::vector<std::string> DensityMatrix::invariant_violations(double herm_tol,
                                                             double eig_tol,
                                                             double trace_tol) const {
    std::vector<std::string> out;
    const double herr = hermiticity_error();
    if (herr > herm_tol)
        out.push_back("not Hermitian: max |rho - rho^dagger| = " + fmt(herr));
    const auto ev = eigenvalues();
    for (double w : ev) {
        if (w < -eig_tol || w > 1.0 + eig_tol) {
            out.push_back("eigenvalue out of [0,1]: " + fmt(w));
            break;
        }
    }
    const double terr = std::abs(trace() - Complex(1.0));
    if (terr > trace_tol) out.push_back("|trace - 1| = " + fmt(terr));
    return out;
}

}  // namespace hqs
