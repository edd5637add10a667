#pragma once

#include <string>
#include <vector>

#include "hqs/common.hpp"

namespace hqs {

// Uniformly sampled scalar field on x0 + n*dx, n = 0..count-1.
struct SampledSignal {
    double x0 = 0.0;
    double dx = 0.0;
    std::vector<Complex> samples;

    double x(std::size_t n) const { return x0 + static_cast<double>(n) * dx; }
    double range() const { return dx * static_cast<double>(samples.size() - 1); }

    friend bool operator==(const SampledSignal&, const SampledSignal&) = default;
};

void validate(const SampledSignal& s);

enum class WaveletKind { mexican_hat, gaussian, tabulated };

// Analyzing function of the affine decomposition. The mexican hat is the
// admissible workhorse; the plain gaussian exists as the standard
// inadmissible negative test. Tabulated wavelets are interpolated linearly
// and evaluate to zero outside their grid.
class Wavelet {
public:
    static Wavelet mexican_hat() { return Wavelet(WaveletKind::mexican_hat); }
    static Wavelet gaussian() { return Wavelet(WaveletKind::gaussian); }
    static Wavelet tabulated(double x0, double dx, std::vector<double> values);

    WaveletKind kind() const { return kind_; }
    std::string name() const;
    double operator()(double x) const;

    // effective support radius: |psi| is negligible beyond it
    double support_radius() const;

private:
    explicit Wavelet(WaveletKind k) : kind_(k) {}
    WaveletKind kind_;
    double tab_x0_ = 0.0, tab_dx_ = 0.0;
    std::vector<double> tab_values_;
};

struct FreqGrid {
    double omega_max = 20.0;
    std::size_t count = 4001;  // samples on [0, omega_max]
};

// psi_hat(omega) = integral psi(x) exp(-i omega x) dx, by direct quadrature
// on the wavelet's support.
Complex fourier_transform(const Wavelet& w, double omega);

// C_psi = integral over omega > 0 of |psi_hat|^2 / omega. The integrand is
// set to its analytic limit 0 at omega = 0; a nonzero-mean wavelet (psi_hat(0)
// away from 0) is rejected as NotAdmissible. This one-sided constant is the
// exact factor in both the scale-space norm identity and the reconstruction
// formula for the a > 0 scale convention used here.
double admissibility_constant(const Wavelet& w, const FreqGrid& grid = {});

// phi_a(b) on a scale grid x translation grid, row-major with the scale
// index slowest.
struct ScaleField {
    std::vector<double> scales;        // strictly increasing, positive
    std::vector<double> translations;  // uniform grid
    std::vector<Complex> values;

    const Complex& at(std::size_t ai, std::size_t bj) const {
        return values[ai * translations.size() + bj];
    }

    friend bool operator==(const ScaleField&, const ScaleField&) = default;
};

void validate(const ScaleField& f);

std::vector<double> log_spaced_scales(double a_min, double a_max, std::size_t count);

// phi_a(b) = integral a^{-1/2} conj(psi((x-b)/a)) phi(x) dx by trapezoid
// quadrature on the signal grid.
ScaleField forward_cwt(const SampledSignal& f, const Wavelet& w,
                       const std::vector<double>& scales,
                       const std::vector<double>& translations);

// phi(x) = (1/c_psi) integral a^{-1/2} psi((x-b)/a) phi_a(b) da db / a^2,
// reconstructed on the translation grid.
SampledSignal inverse_cwt(const ScaleField& field, const Wavelet& w, double c_psi);

// [integral |phi_a(b)|^2 da db/a^2] / ||phi||^2; converges to C_psi on
// adequate grids.
double parseval_ratio(const SampledSignal& f, const ScaleField& field);

// Serial reference kernels, kept for testing against the parallel versions.
namespace serial {
ScaleField forward_cwt(const SampledSignal& f, const Wavelet& w,
                       const std::vector<double>& scales,
                       const std::vector<double>& translations);
SampledSignal inverse_cwt(const ScaleField& field, const Wavelet& w, double c_psi);
}  // namespace serial

}  // namespace hqs
