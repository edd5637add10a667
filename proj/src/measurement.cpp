#include "hqs/measurement.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "hqs/errors.hpp"

namespace hqs {

void validate(const ApparatusModel& app) {
    if (app.n < 1) throw ValidationError("apparatus needs n >= 1 system states");
    if (app.gram.size() != app.n * app.n)
        throw ValidationError("gram matrix size does not match n^2");
    if (!all_finite(app.gram)) throw ValidationError("non-finite gram entry");
    for (std::size_t i = 0; i < app.n; ++i) {
        if (std::abs(app.gram[i * app.n + i] - Complex(1.0)) > 1e-12)
            throw ValidationError("gram diagonal entry deviates from 1");
        for (std::size_t j = 0; j < app.n; ++j)
            if (std::abs(app.gram[i * app.n + j] - std::conj(app.gram[j * app.n + i])) > 1e-12)
                throw ValidationError("gram matrix is not Hermitian");
    }
    Eigen::MatrixXcd g(app.n, app.n);
    for (std::size_t i = 0; i < app.n; ++i)
        for (std::size_t j = 0; j < app.n; ++j) g(i, j) = app.gram[i * app.n + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10)
        throw ValidationError("gram matrix is not positive semidefinite");
}

JointState entangle(const std::vector<Complex>& c, const ApparatusModel& app) {
    validate(app);
    if (c.size() != app.n)
        throw DimensionMismatch("coefficient count does not match apparatus size");
    const double n2 = hqs::norm_sq(c);
    if (std::abs(n2 - 1.0) > 1e-8)
        throw NotNormalized("sum |c_i|^2 = " + std::to_string(n2) + " deviates from 1");
    return JointState{c, app};
}

DensityMatrix trace_out_apparatus(const JointState& j) {
    const std::size_t n = j.apparatus.n;
    const double n2 = hqs::norm_sq(j.c);
    std::vector<Complex> rho(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t ip = 0; ip < n; ++ip)
            rho[i * n + ip] =
                j.c[i] * std::conj(j.c[ip]) * j.apparatus.gram[ip * n + i] / n2;
    return DensityMatrix(n, std::move(rho));
}

ProjectionResult macro_project(const TwoLevelState& s,
                               const std::vector<std::size_t>& macro_subset) {
    validate(s);
    require_normalized(s);
    if (macro_subset.empty()) throw IndexOutOfRange("macro subset must be nonempty");
    const std::size_t J = s.macro_dim;
    const std::size_t D = s.micro_total();
    std::vector<bool> keep(J, false);
    for (std::size_t j : macro_subset) {
        if (j < 1 || j > J) throw IndexOutOfRange("macro index must be in 1..J");
        keep[j - 1] = true;
    }
    const double n2 = s.norm_sq();
    double p = 0.0;
    for (std::size_t j = 0; j < J; ++j)
        if (keep[j])
            for (std::size_t m = 0; m < D; ++m) p += std::norm(s.coeffs[j * D + m]);
    p /= n2;
    if (p < 1e-14) throw ZeroProbability("projection probability below 1e-14");

    TwoLevelState post = s;
    const double scale = 1.0 / std::sqrt(p * n2);
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t m = 0; m < D; ++m)
            post.coeffs[j * D + m] = keep[j] ? s.coeffs[j * D + m] * scale : Complex(0.0);
    return ProjectionResult{p, std::move(post)};
}

}  // namespace hqs
