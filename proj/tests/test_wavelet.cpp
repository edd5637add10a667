#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "hqs/errors.hpp"
#include "hqs/wavelet.hpp"
#include "test_util.hpp"

using namespace hqs;

namespace {

SampledSignal gabor_signal(std::size_t n = 1024, double half = 12.0, double carrier = 4.0) {
    SampledSignal f;
    f.x0 = -half;
    f.dx = 2.0 * half / static_cast<double>(n - 1);
    f.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = f.x(i);
        f.samples[i] = Complex(std::cos(carrier * x) * std::exp(-0.5 * x * x), 0.0);
    }
    return f;
}

std::vector<double> signal_grid(const SampledSignal& f) {
    std::vector<double> b(f.samples.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = f.x(i);
    return b;
}

double rel_l2_error(const SampledSignal& a, const SampledSignal& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        num += std::norm(a.samples[i] - b.samples[i]);
        den += std::norm(b.samples[i]);
    }
    return std::sqrt(num / den);
}

// adaptive Simpson on [lo, hi], independent of the library's trapezoid path
double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double eps, int depth = 24) {
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo), fmid = f(mid), fhi = f(hi);
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double a, double b, double fa, double fm, double fb, double whole,
            int d) -> double {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * eps)
            return left + right + (left + right - whole) / 15.0;
        return rec(a, m, fa, flm, fm, left, d - 1) + rec(m, b, fm, frm, fb, right, d - 1);
    };
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    return rec(lo, hi, flo, fmid, fhi, whole, depth);
}

}  // namespace

TEST_CASE("admissibility constant of the mexican hat") {
    const Wavelet w = Wavelet::mexican_hat();
    const double c = admissibility_constant(w);

    // golden value from the analytic transform: psi_hat = sqrt(2 pi) w^2
    // e^{-w^2/2}, so the one-sided integral is 2 pi int w^3 e^{-w^2} dw = pi
    CHECK(std::abs(c - std::numbers::pi) / std::numbers::pi <= 1e-6);

    // stability under 2x frequency-grid refinement
    const double c2 = admissibility_constant(w, FreqGrid{20.0, 8001});
    CHECK(std::abs(c2 - c) / c <= 1e-6);
}

TEST_CASE("plain gaussian is rejected as not admissible") {
    CHECK_THROWS_AS(admissibility_constant(Wavelet::gaussian()), NotAdmissible);
}

TEST_CASE("amplitude scaling is quadratic in the admissibility constant") {
    const double x0 = -10.0, dx = 20.0 / 4095.0;
    std::vector<double> v1(4096), v2(4096);
    for (std::size_t i = 0; i < v1.size(); ++i) {
        const double x = x0 + static_cast<double>(i) * dx;
        v1[i] = (1.0 - x * x) * std::exp(-0.5 * x * x);
        v2[i] = 2.0 * v1[i];
    }
    const double c1 = admissibility_constant(Wavelet::tabulated(x0, dx, v1));
    const double c2 = admissibility_constant(Wavelet::tabulated(x0, dx, v2));
    CHECK(std::abs(c2 - 4.0 * c1) / c1 <= 1e-10);
}

TEST_CASE("forward_cwt: zero signal and linearity") {
    SampledSignal zero = gabor_signal(128);
    for (auto& z : zero.samples) z = Complex(0.0);
    const Wavelet w = Wavelet::mexican_hat();
    const auto scales = log_spaced_scales(0.2, 2.0, 6);
    const auto b = signal_grid(zero);

    const ScaleField zf = forward_cwt(zero, w, scales, b);
    for (const auto& z : zf.values) CHECK(std::abs(z) == 0.0);

    std::mt19937_64 rng(127);
    SampledSignal f = zero, g = zero;
    f.samples = testutil::rand_vector(rng, 128);
    g.samples = testutil::rand_vector(rng, 128);
    const Complex alpha = testutil::rand_complex(rng), beta = testutil::rand_complex(rng);
    SampledSignal fg = zero;
    for (std::size_t i = 0; i < 128; ++i)
        fg.samples[i] = alpha * f.samples[i] + beta * g.samples[i];

    const ScaleField Ff = forward_cwt(f, w, scales, b);
    const ScaleField Fg = forward_cwt(g, w, scales, b);
    const ScaleField Ffg = forward_cwt(fg, w, scales, b);
    for (std::size_t i = 0; i < Ffg.values.size(); ++i)
        CHECK(std::abs(Ffg.values[i] - (alpha * Ff.values[i] + beta * Fg.values[i])) <=
              1e-12);
}

TEST_CASE("forward_cwt spot values match an adaptive-quadrature oracle") {
    SampledSignal f;
    f.x0 = -12.0;
    f.dx = 24.0 / 1023.0;
    f.samples.resize(1024);
    for (std::size_t i = 0; i < 1024; ++i)
        f.samples[i] = Complex(std::exp(-0.5 * f.x(i) * f.x(i)), 0.0);
    const Wavelet w = Wavelet::mexican_hat();

    const double spots[][2] = {{0.5, 0.0}, {0.5, 1.0}, {1.0, -0.5}, {2.0, 0.0}, {1.5, 2.0}};
    for (const auto& s : spots) {
        const double a = s[0], b = s[1];
        const ScaleField F = forward_cwt(f, w, {a}, {b});
        const auto integrand = [&](double x) {
            return w((x - b) / a) * std::exp(-0.5 * x * x) / std::sqrt(a);
        };
        const double want = adaptive_simpson(integrand, -12.0, 12.0, 1e-12);
        CHECK(std::abs(F.values[0].real() - want) <= 1e-6 * std::abs(want));
        CHECK(std::abs(F.values[0].imag()) <= 1e-12);
    }
}

TEST_CASE("inverse_cwt: zero field, bad constant") {
    const Wavelet w = Wavelet::mexican_hat();
    ScaleField f;
    f.scales = log_spaced_scales(0.2, 2.0, 4);
    f.translations = {0.0, 0.1, 0.2, 0.3};
    f.values.assign(16, Complex(0.0));
    const SampledSignal rec = inverse_cwt(f, w, 3.14);
    for (const auto& z : rec.samples) CHECK(std::abs(z) == 0.0);
    CHECK_THROWS_AS(inverse_cwt(f, w, 0.0), NonpositiveCpsi);
    CHECK_THROWS_AS(inverse_cwt(f, w, -1.0), NonpositiveCpsi);
}

TEST_CASE("parseval ratio and reconstruction on an oscillatory packet") {
    // cos(4x) e^{-x^2/2}: zero-mean enough that a scale band [dx, 3]
    // captures essentially all of its affine energy
    const SampledSignal f = gabor_signal();
    const Wavelet w = Wavelet::mexican_hat();
    const double cpsi = admissibility_constant(w);
    const auto b = signal_grid(f);

    double prev_ratio_err = 1e9, prev_rt = 1e9;
    for (std::size_t ns : {16, 32, 64}) {
        const auto scales = log_spaced_scales(f.dx, 3.0, ns);
        const ScaleField F = forward_cwt(f, w, scales, b);
        const double ratio = parseval_ratio(f, F);
        const double ratio_err = std::abs(ratio / cpsi - 1.0);
        const double rt = rel_l2_error(inverse_cwt(F, w, cpsi), f);
        CHECK(ratio_err < prev_ratio_err);
        CHECK(rt < prev_rt);
        prev_ratio_err = ratio_err;
        prev_rt = rt;
        if (ns == 64) {
            CHECK(ratio_err <= 2e-3);
            CHECK(rt <= 2e-3);
        }
    }
}

TEST_CASE("parseval_ratio rejects the zero signal") {
    SampledSignal f = gabor_signal(64);
    const auto scales = log_spaced_scales(0.2, 2.0, 4);
    const ScaleField F = forward_cwt(f, Wavelet::mexican_hat(), scales, signal_grid(f));
    for (auto& z : f.samples) z = Complex(0.0);
    CHECK_THROWS_AS(parseval_ratio(f, F), ZeroSignal);
}

TEST_CASE("serial CWT kernels agree with the parallel ones") {
    const SampledSignal f = gabor_signal(256);
    const Wavelet w = Wavelet::mexican_hat();
    const auto scales = log_spaced_scales(f.dx, 3.0, 12);
    const auto b = signal_grid(f);

    const ScaleField Fp = forward_cwt(f, w, scales, b);
    const ScaleField Fs = serial::forward_cwt(f, w, scales, b);
    REQUIRE(Fp.values.size() == Fs.values.size());
    for (std::size_t i = 0; i < Fp.values.size(); ++i)
        CHECK(std::abs(Fp.values[i] - Fs.values[i]) <= 1e-13);

    const SampledSignal rp = inverse_cwt(Fp, w, std::numbers::pi);
    const SampledSignal rs = serial::inverse_cwt(Fp, w, std::numbers::pi);
    for (std::size_t i = 0; i < rp.samples.size(); ++i)
        CHECK(std::abs(rp.samples[i] - rs.samples[i]) <= 1e-13);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(log_spaced_scales(-1.0, 2.0, 4), GridMismatch);
    CHECK_THROWS_AS(log_spaced_scales(2.0, 1.0, 4), GridMismatch);

    ScaleField f;
    f.scales = {0.5, 0.4};
    f.translations = {0.0, 0.1};
    f.values.assign(4, Complex(0.0));
    CHECK_THROWS_AS(validate(f), GridMismatch);
}
