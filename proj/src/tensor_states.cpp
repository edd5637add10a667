#include "hqs/tensor_states.hpp"

#include <cmath>

#include "hqs/errors.hpp"

namespace hqs {

void validate(const TwoLevelState& s) {
    if (s.macro_dim < 1) throw ValidationError("macro_dim must be >= 1");
    if (s.micro_dims.empty()) throw ValidationError("micro_dims must be nonempty");
    for (std::size_t d : s.micro_dims)
        if (d < 1) throw ValidationError("micro dimension must be >= 1");
    if (s.coeffs.size() != s.macro_dim * s.micro_total())
        throw ValidationError("coefficient count does not match macro_dim * prod(micro_dims)");
    if (!all_finite(s.coeffs)) throw ValidationError("non-finite coefficient");
}

void require_normalized(const TwoLevelState& s, double tol) {
    const double n2 = s.norm_sq();
    if (std::abs(n2 - 1.0) > tol)
        throw NotNormalized("sum |C|^2 = " + std::to_string(n2) + " deviates from 1");
}

DensityMatrix full_micro_density(const TwoLevelState& s) {
    validate(s);
    require_normalized(s);
    const std::size_t J = s.macro_dim;
    const std::size_t D = s.micro_total();
    const double n2 = s.norm_sq();
    std::vector<Complex> rho(D * D);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t m = 0; m < static_cast<std::ptrdiff_t>(D); ++m) {
        for (std::size_t mp = 0; mp < D; ++mp) {
            Complex acc = 0.0;
            for (std::size_t j = 0; j < J; ++j)
                acc += s.coeffs[j * D + m] * std::conj(s.coeffs[j * D + mp]);
            rho[static_cast<std::size_t>(m) * D + mp] = acc / n2;
        }
    }
    return DensityMatrix(D, std::move(rho));
}

DensityMatrix reduced_density(const TwoLevelState& s, std::size_t m) {
    validate(s);
    require_normalized(s);
    const std::size_t k = s.micro_dims.size();
    if (m < 1 || m > k) throw IndexOutOfRange("subsystem index must be in 1..k");
    const std::size_t J = s.macro_dim;
    const std::size_t D = s.micro_total();
    const std::size_t dm = s.micro_dims[m - 1];
    std::size_t stride = 1;  // stride of index i_m in the micro-flat layout
    for (std::size_t t = m; t < k; ++t) stride *= s.micro_dims[t];
    const std::size_t block = dm * stride;
    const double n2 = s.norm_sq();

    std::vector<Complex> rho(dm * dm);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(dm); ++i) {
        for (std::size_t ip = 0; ip < dm; ++ip) {
            Complex acc = 0.0;
            for (std::size_t j = 0; j < J; ++j)
                for (std::size_t outer = 0; outer < D / block; ++outer)
                    for (std::size_t rest = 0; rest < stride; ++rest) {
                        const std::size_t base = j * D + outer * block + rest;
                        acc += s.coeffs[base + static_cast<std::size_t>(i) * stride] *
                               std::conj(s.coeffs[base + ip * stride]);
                    }
            rho[static_cast<std::size_t>(i) * dm + ip] = acc / n2;
        }
    }
    return DensityMatrix(dm, std::move(rho));
}

Complex expectation_micro(const TwoLevelState& s, const std::vector<Complex>& A) {
    const std::size_t D = s.micro_total();
    if (A.size() != D * D)
        throw DimensionMismatch("operator must be square of dim prod(micro_dims)");
    const DensityMatrix rho = full_micro_density(s);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) acc += rho(i, j) * A[j * D + i];
    return acc;
}

Complex controlled_expectation(const TwoLevelState& s, const ControlledOperator& B) {
    validate(s);
    require_normalized(s);
    if (B.macro_dim != s.macro_dim || B.matrices.size() != s.macro_dim)
        throw DimensionMismatch("controlled operator macro_dim does not match state");
    const std::size_t J = s.macro_dim;
    const std::size_t D = s.micro_total();
    for (const auto& mat : B.matrices)
        if (mat.size() != D * D)
            throw DimensionMismatch("controlled operator block must be square of dim prod(micro_dims)");
    Complex acc = 0.0;
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t ip = 0; ip < D; ++ip)
                acc += std::conj(s.coeffs[j * D + i]) * B.matrices[j][i * D + ip] *
                       s.coeffs[j * D + ip];
    return acc / s.norm_sq();
}

TwoLevelState meson_state(double c1, double c0, const std::array<Complex, 4>& phases) {
    if (c1 < 0.0 || c0 < 0.0) throw ValidationError("meson amplitudes must be nonnegative");
    const double n = 2.0 * (c1 * c1 + c0 * c0);
    if (std::abs(n - 1.0) > 1e-10)
        throw NotNormalized("2(c1^2 + c0^2) = " + std::to_string(n) + " deviates from 1");
    for (const auto& p : phases)
        if (std::abs(std::abs(p) - 1.0) > 1e-10)
            throw NotNormalized("phase factor is not unit-modulus");
    TwoLevelState s;
    s.macro_dim = 3;  // S_z = +1, 0, -1
    s.micro_dims = {2};
    s.coeffs.assign(6, Complex(0.0));
    s.coeffs[0 * 2 + 0] = c1 * phases[0];  // c_{++}: quark up,   S_z = +1
    s.coeffs[1 * 2 + 0] = c0 * phases[1];  // c_{+0}: quark up,   S_z =  0
    s.coeffs[2 * 2 + 1] = c1 * phases[2];  // c_{--}: quark down, S_z = -1
    s.coeffs[1 * 2 + 1] = c0 * phases[3];  // c_{-0}: quark down, S_z =  0
    return s;
}

// ---- tree tensor states ----

namespace {

void validate_node(const TreeTensorNode& n) {
    if (n.dims.empty()) throw ValidationError("tree tensor node has no dimensions");
    for (std::size_t d : n.dims)
        if (d < 1) throw ValidationError("tree tensor dimension must be >= 1");
    if (n.data.size() != product(n.dims))
        throw ValidationError("tree tensor data size does not match dims");
    if (!all_finite(n.data)) throw ValidationError("non-finite tree tensor entry");
    if (n.is_leaf()) {
        if (n.dims.size() < 2)
            throw ValidationError("leaf node needs at least one micro index");
    } else {
        if (n.dims.size() != n.children.size() + 1)
            throw ValidationError("internal node needs one index per child");
        for (std::size_t c = 0; c < n.children.size(); ++c) {
            if (n.children[c].dims.empty() || n.dims[c + 1] != n.children[c].dims[0])
                throw ValidationError("edge dimension mismatch at child '" +
                                      n.children[c].label + "'");
            validate_node(n.children[c]);
        }
    }
}

// Gram matrix of a fully contracted subtree: E[p][p'] (row-major d0 x d0).
std::vector<Complex> subtree_env(const TreeTensorNode& n) {
    const std::size_t d0 = n.dims[0];
    const std::size_t rest = product(n.dims) / d0;
    std::vector<Complex> env(d0 * d0, Complex(0.0));
    if (n.is_leaf()) {
        for (std::size_t p = 0; p < d0; ++p)
            for (std::size_t pp = 0; pp < d0; ++pp) {
                Complex acc = 0.0;
                for (std::size_t m = 0; m < rest; ++m)
                    acc += n.data[p * rest + m] * std::conj(n.data[pp * rest + m]);
                env[p * d0 + pp] = acc;
            }
        return env;
    }
    std::vector<std::vector<Complex>> child_env;
    child_env.reserve(n.children.size());
    for (const auto& c : n.children) child_env.push_back(subtree_env(c));

    // child multi-index decomposition of a flat index in 0..rest-1
    const std::size_t nc = n.children.size();
    std::vector<std::size_t> cd(nc);
    for (std::size_t c = 0; c < nc; ++c) cd[c] = n.dims[c + 1];
    std::vector<std::size_t> digits(nc), digits_p(nc);
    for (std::size_t p = 0; p < d0; ++p)
        for (std::size_t pp = 0; pp < d0; ++pp) {
            Complex acc = 0.0;
            for (std::size_t u = 0; u < rest; ++u) {
                std::size_t tmp = u;
                for (std::size_t c = nc; c-- > 0;) { digits[c] = tmp % cd[c]; tmp /= cd[c]; }
                for (std::size_t up = 0; up < rest; ++up) {
                    std::size_t tp = up;
                    for (std::size_t c = nc; c-- > 0;) { digits_p[c] = tp % cd[c]; tp /= cd[c]; }
                    Complex w = n.data[p * rest + u] * std::conj(n.data[pp * rest + up]);
                    for (std::size_t c = 0; c < nc; ++c)
                        w *= child_env[c][digits[c] * cd[c] + digits_p[c]];
                    acc += w;
                }
            }
            env[p * d0 + pp] = acc;
        }
    return env;
}

// Subtree contraction with the target leaf's micro pair (i, i') left open:
// F[p][p'][i][i'], row-major with extents (d0, d0, L, L).
std::vector<Complex> subtree_open(const TreeTensorNode& n,
                                  const std::vector<std::size_t>& path,
                                  std::size_t depth, std::size_t& leaf_dim) {
    const std::size_t d0 = n.dims[0];
    const std::size_t rest = product(n.dims) / d0;
    if (depth == path.size()) {
        if (!n.is_leaf()) throw PathInvalid("leaf_path does not address a leaf");
        leaf_dim = rest;
        std::vector<Complex> f(d0 * d0 * rest * rest);
        for (std::size_t p = 0; p < d0; ++p)
            for (std::size_t pp = 0; pp < d0; ++pp)
                for (std::size_t i = 0; i < rest; ++i)
                    for (std::size_t ip = 0; ip < rest; ++ip)
                        f[((p * d0 + pp) * rest + i) * rest + ip] =
                            n.data[p * rest + i] * std::conj(n.data[pp * rest + ip]);
        return f;
    }
    if (n.is_leaf()) throw PathInvalid("leaf_path descends below a leaf");
    const std::size_t t = path[depth];
    if (t >= n.children.size()) throw PathInvalid("child index out of range in leaf_path");

    const std::size_t nc = n.children.size();
    std::vector<std::size_t> cd(nc);
    for (std::size_t c = 0; c < nc; ++c) cd[c] = n.dims[c + 1];

    const std::vector<Complex> sub = subtree_open(n.children[t], path, depth + 1, leaf_dim);
    std::vector<std::vector<Complex>> env(nc);
    for (std::size_t c = 0; c < nc; ++c)
        if (c != t) env[c] = subtree_env(n.children[c]);

    const std::size_t L = leaf_dim;
    const std::size_t dt = cd[t];
    std::vector<Complex> f(d0 * d0 * L * L, Complex(0.0));
    std::vector<std::size_t> digits(nc), digits_p(nc);
    for (std::size_t p = 0; p < d0; ++p)
        for (std::size_t pp = 0; pp < d0; ++pp)
            for (std::size_t u = 0; u < rest; ++u) {
                std::size_t tmp = u;
                for (std::size_t c = nc; c-- > 0;) { digits[c] = tmp % cd[c]; tmp /= cd[c]; }
                for (std::size_t up = 0; up < rest; ++up) {
                    std::size_t tp = up;
                    for (std::size_t c = nc; c-- > 0;) { digits_p[c] = tp % cd[c]; tp /= cd[c]; }
                    Complex w = n.data[p * rest + u] * std::conj(n.data[pp * rest + up]);
                    for (std::size_t c = 0; c < nc; ++c)
                        if (c != t) w *= env[c][digits[c] * cd[c] + digits_p[c]];
                    if (w == Complex(0.0)) continue;
                    const std::size_t ct = digits[t], ctp = digits_p[t];
                    for (std::size_t i = 0; i < L; ++i)
                        for (std::size_t ip = 0; ip < L; ++ip)
                            f[((p * d0 + pp) * L + i) * L + ip] +=
                                w * sub[((ct * dt + ctp) * L + i) * L + ip];
                }
            }
    return f;
}

}  // namespace

void validate(const TreeTensorState& t) { validate_node(t.root); }

double tree_norm_sq(const TreeTensorState& t) {
    const auto env = subtree_env(t.root);
    const std::size_t J = t.root.dims[0];
    double n2 = 0.0;
    for (std::size_t j = 0; j < J; ++j) n2 += env[j * J + j].real();
    return n2;
}

DensityMatrix branch_reduced_density(const TreeTensorState& t,
                                     const std::vector<std::size_t>& leaf_path) {
    validate(t);
    const double n2 = tree_norm_sq(t);
    if (std::abs(n2 - 1.0) > 1e-8)
        throw NotNormalized("flattened tree norm^2 = " + std::to_string(n2) +
                            " deviates from 1");
    std::size_t L = 0;
    const std::size_t J = t.root.dims[0];
    const auto f = subtree_open(t.root, leaf_path, 0, L);
    std::vector<Complex> rho(L * L, Complex(0.0));
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t ip = 0; ip < L; ++ip) {
            Complex acc = 0.0;
            for (std::size_t j = 0; j < J; ++j)
                acc += f[((j * J + j) * L + i) * L + ip];
            rho[i * L + ip] = acc / n2;
        }
    return DensityMatrix(L, std::move(rho));
}

// ---- serial reference kernels ----

namespace serial {

DensityMatrix full_micro_density(const TwoLevelState& s) {
    validate(s);
    require_normalized(s);
    const std::size_t J = s.macro_dim;
    const std::size_t D = s.micro_total();
    const double n2 = s.norm_sq();
    std::vector<Complex> rho(D * D, Complex(0.0));
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t m = 0; m < D; ++m)
            for (std::size_t mp = 0; mp < D; ++mp)
                rho[m * D + mp] += s.coeffs[j * D + m] * std::conj(s.coeffs[j * D + mp]) / n2;
    return DensityMatrix(D, std::move(rho));
}

DensityMatrix reduced_density(const TwoLevelState& s, std::size_t m) {
    validate(s);
    require_normalized(s);
    const std::size_t k = s.micro_dims.size();
    if (m < 1 || m > k) throw IndexOutOfRange("subsystem index must be in 1..k");
    const std::size_t J = s.macro_dim;
    const std::size_t D = s.micro_total();
    const std::size_t dm = s.micro_dims[m - 1];
    const double n2 = s.norm_sq();
    std::vector<Complex> rho(dm * dm, Complex(0.0));
    std::vector<std::size_t> du(k), dup(k);
    for (std::size_t u = 0; u < D; ++u) {
        std::size_t tmp = u;
        for (std::size_t c = k; c-- > 0;) { du[c] = tmp % s.micro_dims[c]; tmp /= s.micro_dims[c]; }
        for (std::size_t up = 0; up < D; ++up) {
            std::size_t tp = up;
            for (std::size_t c = k; c-- > 0;) { dup[c] = tp % s.micro_dims[c]; tp /= s.micro_dims[c]; }
            bool match = true;
            for (std::size_t c = 0; c < k; ++c)
                if (c != m - 1 && du[c] != dup[c]) { match = false; break; }
            if (!match) continue;
            Complex acc = 0.0;
            for (std::size_t j = 0; j < J; ++j)
                acc += s.coeffs[j * D + u] * std::conj(s.coeffs[j * D + up]);
            rho[du[m - 1] * dm + dup[m - 1]] += acc / n2;
        }
    }
    return DensityMatrix(dm, std::move(rho));
}

}  // namespace serial

}  // namespace hqs
