#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

namespace hqs {

using Complex = std::complex<double>;

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline bool all_finite(const std::vector<Complex>& v) {
    for (const auto& z : v)
        if (!is_finite(z)) return false;
    return true;
}

inline std::size_t product(const std::vector<std::size_t>& dims) {
    std::size_t p = 1;
    for (std::size_t d : dims) p *= d;
    return p;
}

inline double norm_sq(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s;
}

}  // namespace hqs
