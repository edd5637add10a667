#include "hqs/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hqs/errors.hpp"

namespace hqs {

void validate(const SampledSignal& s) {
    if (s.samples.size() < 2) throw ValidationError("signal needs at least 2 samples");
    if (!(s.dx > 0.0) || !std::isfinite(s.dx) || !std::isfinite(s.x0))
        throw ValidationError("signal grid is invalid");
    if (!all_finite(s.samples)) throw ValidationError("non-finite signal sample");
}

Wavelet Wavelet::tabulated(double x0, double dx, std::vector<double> values) {
    if (values.size() < 2 || !(dx > 0.0))
        throw ValidationError("tabulated wavelet grid is invalid");
    Wavelet w(WaveletKind::tabulated);
    w.tab_x0_ = x0;
    w.tab_dx_ = dx;
    w.tab_values_ = std::move(values);
    return w;
}

std::string Wavelet::name() const {
    switch (kind_) {
        case WaveletKind::mexican_hat: return "mexican_hat";
        case WaveletKind::gaussian: return "gaussian";
        case WaveletKind::tabulated: return "tabulated";
    }
    return "?";
}

double Wavelet::operator()(double x) const {
    switch (kind_) {
        case WaveletKind::mexican_hat:
            return (1.0 - x * x) * std::exp(-0.5 * x * x);
        case WaveletKind::gaussian:
            return std::exp(-0.5 * x * x);
        case WaveletKind::tabulated: {
            const double t = (x - tab_x0_) / tab_dx_;
            if (t < 0.0 || t > static_cast<double>(tab_values_.size() - 1)) return 0.0;
            const std::size_t i =
                std::min(static_cast<std::size_t>(t), tab_values_.size() - 2);
            const double f = t - static_cast<double>(i);
            return (1.0 - f) * tab_values_[i] + f * tab_values_[i + 1];
        }
    }
    return 0.0;
}

double Wavelet::support_radius() const {
    switch (kind_) {
        case WaveletKind::mexican_hat:
        case WaveletKind::gaussian:
            return 10.0;  // exp(-50) is far below double round-off
        case WaveletKind::tabulated:
            return std::max(std::abs(tab_x0_),
                            std::abs(tab_x0_ + tab_dx_ * static_cast<double>(
                                                             tab_values_.size() - 1)));
    }
    return 0.0;
}

Complex fourier_transform(const Wavelet& w, double omega) {
    const double r = w.support_radius();
    const std::size_t n = 4096;  // intervals
    const double h = 2.0 * r / static_cast<double>(n);
    Complex acc = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double x = -r + h * static_cast<double>(i);
        const double weight = (i == 0 || i == n) ? 0.5 : 1.0;
        acc += weight * w(x) * std::exp(Complex(0.0, -omega * x));
    }
    return acc * h;
}

double admissibility_constant(const Wavelet& w, const FreqGrid& grid) {
    if (grid.count < 2 || !(grid.omega_max > 0.0))
        throw GridMismatch("frequency grid is invalid");
    const double dw = grid.omega_max / static_cast<double>(grid.count - 1);

    std::vector<double> integrand(grid.count);
    double peak = 0.0;
#pragma omp parallel for schedule(static) reduction(max : peak)
    for (std::ptrdiff_t i = 1; i < static_cast<std::ptrdiff_t>(grid.count); ++i) {
        const double omega = dw * static_cast<double>(i);
        const double mag2 = std::norm(fourier_transform(w, omega));
        integrand[static_cast<std::size_t>(i)] = mag2 / omega;
        peak = std::max(peak, std::sqrt(mag2));
    }
    const double at_zero = std::abs(fourier_transform(w, 0.0));
    if (at_zero > 1e-6 * std::max(peak, 1e-300))
        throw NotAdmissible("wavelet has nonzero mean: |psi_hat(0)| = " +
                            std::to_string(at_zero));
    integrand[0] = 0.0;  // analytic limit for zero-mean wavelets

    double c = 0.0;
    for (std::size_t i = 0; i + 1 < grid.count; ++i)
        c += 0.5 * (integrand[i] + integrand[i + 1]) * dw;
    if (!(c > 0.0) || !std::isfinite(c))
        throw NotAdmissible("admissibility integral did not converge");
    return c;
}

void validate(const ScaleField& f) {
    if (f.scales.empty() || f.translations.size() < 2)
        throw GridMismatch("scale field grids are empty");
    for (std::size_t i = 0; i < f.scales.size(); ++i) {
        if (!(f.scales[i] > 0.0)) throw GridMismatch("scales must be positive");
        if (i > 0 && !(f.scales[i] > f.scales[i - 1]))
            throw GridMismatch("scales must be strictly increasing");
    }
    const double db = f.translations[1] - f.translations[0];
    if (!(db > 0.0)) throw GridMismatch("translations must be increasing");
    for (std::size_t i = 1; i + 1 < f.translations.size(); ++i)
        if (std::abs(f.translations[i + 1] - f.translations[i] - db) > 1e-9 * db)
            throw GridMismatch("translation grid must be uniform");
    if (f.values.size() != f.scales.size() * f.translations.size())
        throw GridMismatch("scale field value count does not match grids");
    if (!all_finite(f.values)) throw GridMismatch("non-finite scale field value");
}

std::vector<double> log_spaced_scales(double a_min, double a_max, std::size_t count) {
    if (!(a_min > 0.0) || !(a_max > a_min) || count < 2)
        throw GridMismatch("log scale grid needs 0 < a_min < a_max and count >= 2");
    std::vector<double> s(count);
    const double step = std::log(a_max / a_min) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        s[i] = a_min * std::exp(step * static_cast<double>(i));
    s.back() = a_max;
    return s;
}

namespace {

// trapezoid weights for a (possibly non-uniform) grid
std::vector<double> trapezoid_weights(const std::vector<double>& g) {
    std::vector<double> w(g.size(), 0.0);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const double h = g[i + 1] - g[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}

void check_forward_grids(const SampledSignal& f, const std::vector<double>& scales,
                         const std::vector<double>& translations) {
    validate(f);
    if (scales.empty() || translations.empty())
        throw GridMismatch("forward transform needs nonempty grids");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0)) throw GridMismatch("scales must be positive");
        if (i > 0 && !(scales[i] > scales[i - 1]))
            throw GridMismatch("scales must be strictly increasing");
    }
}

Complex forward_entry(const SampledSignal& f, const Wavelet& w, double a, double b) {
    const std::size_t n = f.samples.size();
    const double inv_sqrt_a = 1.0 / std::sqrt(a);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double weight = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        acc += weight * w((f.x(i) - b) / a) * f.samples[i];
    }
    return acc * f.dx * inv_sqrt_a;
}

}  // namespace

ScaleField forward_cwt(const SampledSignal& f, const Wavelet& w,
                       const std::vector<double>& scales,
                       const std::vector<double>& translations) {
    check_forward_grids(f, scales, translations);
    ScaleField out;
    out.scales = scales;
    out.translations = translations;
    out.values.resize(scales.size() * translations.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ai = 0; ai < static_cast<std::ptrdiff_t>(scales.size()); ++ai)
        for (std::size_t bj = 0; bj < translations.size(); ++bj)
            out.values[static_cast<std::size_t>(ai) * translations.size() + bj] =
                forward_entry(f, w, scales[static_cast<std::size_t>(ai)],
                              translations[bj]);
    return out;
}

SampledSignal inverse_cwt(const ScaleField& field, const Wavelet& w, double c_psi) {
    validate(field);
    if (!(c_psi > 0.0)) throw NonpositiveCpsi("c_psi must be positive");
    const std::size_t na = field.scales.size();
    const std::size_t nb = field.translations.size();
    const double db = field.translations[1] - field.translations[0];
    const std::vector<double> wa = trapezoid_weights(field.scales);

    SampledSignal out;
    out.x0 = field.translations.front();
    out.dx = db;
    out.samples.assign(nb, Complex(0.0));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t xi = 0; xi < static_cast<std::ptrdiff_t>(nb); ++xi) {
        const double x = field.translations[static_cast<std::size_t>(xi)];
        Complex acc = 0.0;
        for (std::size_t ai = 0; ai < na; ++ai) {
            const double a = field.scales[ai];
            const double factor = wa[ai] / (a * a * std::sqrt(a));
            Complex row = 0.0;
            for (std::size_t bj = 0; bj < nb; ++bj) {
                const double wb = (bj == 0 || bj + 1 == nb) ? 0.5 : 1.0;
                row += wb * w((x - field.translations[bj]) / a) * field.at(ai, bj);
            }
            acc += factor * row * db;
        }
        out.samples[static_cast<std::size_t>(xi)] = acc / c_psi;
    }
    return out;
}

double parseval_ratio(const SampledSignal& f, const ScaleField& field) {
    validate(f);
    validate(field);
    double f2 = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        const double weight = (i == 0 || i + 1 == f.samples.size()) ? 0.5 : 1.0;
        f2 += weight * std::norm(f.samples[i]);
    }
    f2 *= f.dx;
    if (!(f2 > 1e-28)) throw ZeroSignal("signal norm is zero");

    const std::size_t na = field.scales.size();
    const std::size_t nb = field.translations.size();
    const double db = field.translations[1] - field.translations[0];
    const std::vector<double> wa = trapezoid_weights(field.scales);
    std::vector<double> per_scale(na, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ai = 0; ai < static_cast<std::ptrdiff_t>(na); ++ai) {
        const double a = field.scales[static_cast<std::size_t>(ai)];
        double acc = 0.0;
        for (std::size_t bj = 0; bj < nb; ++bj) {
            const double wb = (bj == 0 || bj + 1 == nb) ? 0.5 : 1.0;
            acc += wb * std::norm(field.at(static_cast<std::size_t>(ai), bj));
        }
        per_scale[static_cast<std::size_t>(ai)] =
            acc * db * wa[static_cast<std::size_t>(ai)] / (a * a);
    }
    double num = 0.0;
    for (double v : per_scale) num += v;  // fixed-order reduction
    return num / f2;
}

namespace serial {

ScaleField forward_cwt(const SampledSignal& f, const Wavelet& w,
                       const std::vector<double>& scales,
                       const std::vector<double>& translations) {
    check_forward_grids(f, scales, translations);
    ScaleField out;
    out.scales = scales;
    out.translations = translations;
    out.values.resize(scales.size() * translations.size());
    for (std::size_t ai = 0; ai < scales.size(); ++ai)
        for (std::size_t bj = 0; bj < translations.size(); ++bj)
            out.values[ai * translations.size() + bj] =
                forward_entry(f, w, scales[ai], translations[bj]);
    return out;
}

SampledSignal inverse_cwt(const ScaleField& field, const Wavelet& w, double c_psi) {
    validate(field);
    if (!(c_psi > 0.0)) throw NonpositiveCpsi("c_psi must be positive");
    const std::size_t na = field.scales.size();
    const std::size_t nb = field.translations.size();
    const double db = field.translations[1] - field.translations[0];
    const std::vector<double> wa = trapezoid_weights(field.scales);

    SampledSignal out;
    out.x0 = field.translations.front();
    out.dx = db;
    out.samples.assign(nb, Complex(0.0));
    for (std::size_t xi = 0; xi < nb; ++xi) {
        const double x = field.translations[xi];
        Complex acc = 0.0;
        for (std::size_t ai = 0; ai < na; ++ai) {
            const double a = field.scales[ai];
            const double factor = wa[ai] / (a * a * std::sqrt(a));
            Complex row = 0.0;
            for (std::size_t bj = 0; bj < nb; ++bj) {
                const double wb = (bj == 0 || bj + 1 == nb) ? 0.5 : 1.0;
                row += wb * w((x - field.translations[bj]) / a) * field.at(ai, bj);
            }
            acc += factor * row * db;
        }
        out.samples[xi] = acc / c_psi;
    }
    return out;
}

}  // namespace serial

}  // namespace hqs
