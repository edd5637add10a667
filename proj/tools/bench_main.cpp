#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "hqs/tensor_states.hpp"
#include "hqs/wavelet.hpp"

namespace {

using namespace hqs;

template <class F>
double time_best_of(F&& f, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

double max_dev(const DensityMatrix& a, const DensityMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

double max_dev(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

void report(const char* name, double ts, double tp, double dev) {
    std::printf("%-22s serial %8.4f s   parallel %8.4f s   speedup %5.2fx   max dev %.3e\n",
                name, ts, tp, ts / tp, dev);
}

}  // namespace

int main() {
    std::mt19937_64 rng(20250815);
    std::normal_distribution<double> g(0.0, 1.0);

    {
        TwoLevelState s;
        s.macro_dim = 6;
        s.micro_dims = {4, 4, 4, 4};
        s.coeffs.resize(s.macro_dim * s.micro_total());
        for (auto& z : s.coeffs) z = Complex(g(rng), g(rng));
        const double n = std::sqrt(s.norm_sq());
        for (auto& z : s.coeffs) z /= n;

        DensityMatrix rs, rp;
        const double ts = time_best_of([&] { rs = serial::full_micro_density(s); });
        const double tp = time_best_of([&] { rp = full_micro_density(s); });
        report("full_micro_density", ts, tp, max_dev(rs, rp));

        const double ts2 = time_best_of([&] {
            for (std::size_t m = 1; m <= 4; ++m) rs = serial::reduced_density(s, m);
        });
        const double tp2 = time_best_of([&] {
            for (std::size_t m = 1; m <= 4; ++m) rp = reduced_density(s, m);
        });
        report("reduced_density x4", ts2, tp2,
               max_dev(serial::reduced_density(s, 2), reduced_density(s, 2)));
    }

    {
        SampledSignal f;
        f.x0 = -12.0;
        f.dx = 24.0 / 1023.0;
        f.samples.resize(1024);
        for (std::size_t i = 0; i < f.samples.size(); ++i) {
            const double x = f.x(i);
            f.samples[i] = Complex(std::cos(4.0 * x) * std::exp(-0.5 * x * x), 0.0);
        }
        const Wavelet w = Wavelet::mexican_hat();
        const auto scales = log_spaced_scales(f.dx, 3.0, 48);
        std::vector<double> translations(f.samples.size());
        for (std::size_t i = 0; i < translations.size(); ++i) translations[i] = f.x(i);

        ScaleField fs, fp;
        const double ts = time_best_of([&] { fs = serial::forward_cwt(f, w, scales, translations); });
        const double tp = time_best_of([&] { fp = forward_cwt(f, w, scales, translations); });
        report("forward_cwt", ts, tp, max_dev(fs.values, fp.values));

        const double cpsi = admissibility_constant(w);
        SampledSignal rs, rp;
        const double ts2 = time_best_of([&] { rs = serial::inverse_cwt(fp, w, cpsi); });
        const double tp2 = time_best_of([&] { rp = inverse_cwt(fp, w, cpsi); });
        report("inverse_cwt", ts2, tp2, max_dev(rs.samples, rp.samples));
    }
    return 0;
}
