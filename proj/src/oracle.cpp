#include "hqs/oracle.hpp"

#include <algorithm>
#include <string>

#include "hqs/errors.hpp"

namespace hqs::oracle {

namespace {

void check_cap(std::size_t dim) {
    if (dim > kMaxFlatDim)
        throw DimensionMismatch("flat dimension " + std::to_string(dim) +
                                " exceeds the oracle cap of " +
                                std::to_string(kMaxFlatDim));
}

// per-factor strides in the row-major flat layout
std::vector<std::size_t> strides(const std::vector<Factor>& factors) {
    std::vector<std::size_t> s(factors.size(), 1);
    for (std::size_t i = factors.size(); i-- > 1;)
        s[i - 1] = s[i] * factors[i].dim;
    return s;
}

// amplitudes of a subtree as a matrix (parent dim) x (joint micro dim of its
// leaves, depth-first); also appends the leaf micro factors.
std::vector<Complex> subtree_matrix(const TreeTensorNode& n, std::size_t& micro_total,
                                    std::vector<Factor>& factors) {
    const std::size_t d0 = n.dims[0];
    const std::size_t rest = product(n.dims) / d0;
    if (n.is_leaf()) {
        for (std::size_t i = 1; i < n.dims.size(); ++i)
            factors.push_back(Factor{FactorRole::micro, n.dims[i]});
        micro_total = rest;
        return n.data;  // already (d0, rest) row-major
    }
    const std::size_t nc = n.children.size();
    std::vector<std::vector<Complex>> child_mats(nc);
    std::vector<std::size_t> child_micro(nc);
    std::size_t total = 1;
    for (std::size_t c = 0; c < nc; ++c) {
        child_mats[c] = subtree_matrix(n.children[c], child_micro[c], factors);
        total *= child_micro[c];
    }
    check_cap(total * d0);
    std::vector<std::size_t> cd(nc);
    for (std::size_t c = 0; c < nc; ++c) cd[c] = n.dims[c + 1];

    std::vector<Complex> out(d0 * total, Complex(0.0));
    std::vector<std::size_t> mdig(nc), udig(nc);
    for (std::size_t mm = 0; mm < total; ++mm) {
        std::size_t tmp = mm;
        for (std::size_t c = nc; c-- > 0;) { mdig[c] = tmp % child_micro[c]; tmp /= child_micro[c]; }
        for (std::size_t p = 0; p < d0; ++p) {
            Complex acc = 0.0;
            for (std::size_t u = 0; u < rest; ++u) {
                std::size_t tu = u;
                for (std::size_t c = nc; c-- > 0;) { udig[c] = tu % cd[c]; tu /= cd[c]; }
                Complex w = n.data[p * rest + u];
                for (std::size_t c = 0; c < nc && w != Complex(0.0); ++c)
                    w *= child_mats[c][udig[c] * child_micro[c] + mdig[c]];
                acc += w;
            }
            out[p * total + mm] = acc;
        }
    }
    micro_total = total;
    return out;
}

}  // namespace

FlatState flatten(const TwoLevelState& s) {
    validate(s);
    const std::size_t J = s.macro_dim;
    const std::size_t D = s.micro_total();
    check_cap(J * D);
    FlatState out;
    out.factors.reserve(s.micro_dims.size() + 1);
    for (std::size_t d : s.micro_dims) out.factors.push_back(Factor{FactorRole::micro, d});
    out.factors.push_back(Factor{FactorRole::macro, J});
    out.amps.resize(J * D);
    for (std::size_t m = 0; m < D; ++m)
        for (std::size_t j = 0; j < J; ++j) out.amps[m * J + j] = s.coeffs[j * D + m];
    return out;
}

FlatState flatten(const TreeTensorState& t) {
    validate(t);
    FlatState out;
    std::size_t micro_total = 0;
    const std::vector<Complex> mat = subtree_matrix(t.root, micro_total, out.factors);
    const std::size_t J = t.root.dims[0];
    check_cap(micro_total * J);
    out.factors.push_back(Factor{FactorRole::macro, J});
    out.amps.resize(micro_total * J);
    for (std::size_t m = 0; m < micro_total; ++m)
        for (std::size_t j = 0; j < J; ++j) out.amps[m * J + j] = mat[j * micro_total + m];
    return out;
}

DensityMatrix dense_partial_trace(const FlatState& v, const std::vector<std::size_t>& keep) {
    if (keep.empty()) throw DimensionMismatch("keep set must be nonempty");
    if (!std::is_sorted(keep.begin(), keep.end()) ||
        std::adjacent_find(keep.begin(), keep.end()) != keep.end())
        throw DimensionMismatch("keep set must be strictly ascending");
    if (keep.back() >= v.factors.size())
        throw DimensionMismatch("keep index out of range");
    if (v.amps.size() != product([&] {
            std::vector<std::size_t> d;
            for (const auto& f : v.factors) d.push_back(f.dim);
            return d;
        }()))
        throw DimensionMismatch("amplitude count does not match factors");

    const std::vector<std::size_t> st = strides(v.factors);
    std::vector<std::size_t> kept, traced;
    for (std::size_t f = 0; f < v.factors.size(); ++f)
        (std::binary_search(keep.begin(), keep.end(), f) ? kept : traced).push_back(f);

    auto offsets = [&](const std::vector<std::size_t>& fs) {
        std::size_t total = 1;
        for (std::size_t f : fs) total *= v.factors[f].dim;
        std::vector<std::size_t> off(total, 0);
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t tmp = idx, o = 0;
            for (std::size_t c = fs.size(); c-- > 0;) {
                o += (tmp % v.factors[fs[c]].dim) * st[fs[c]];
                tmp /= v.factors[fs[c]].dim;
            }
            off[idx] = o;
        }
        return off;
    };
    const std::vector<std::size_t> ko = offsets(kept);
    const std::vector<std::size_t> to = offsets(traced);

    const std::size_t K = ko.size();
    std::vector<Complex> rho(K * K, Complex(0.0));
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t kp = 0; kp < K; ++kp) {
            Complex acc = 0.0;
            for (std::size_t t : to)
                acc += v.amps[ko[k] + t] * std::conj(v.amps[ko[kp] + t]);
            rho[k * K + kp] = acc;
        }
    return DensityMatrix(K, std::move(rho));
}

Complex dense_expectation(const FlatState& v, const std::vector<Complex>& A,
                          std::size_t slot) {
    if (slot >= v.factors.size()) throw DimensionMismatch("slot out of range");
    const std::size_t d = v.factors[slot].dim;
    if (A.size() != d * d)
        throw DimensionMismatch("operator dimension does not match the slot factor");

    const std::vector<std::size_t> st = strides(v.factors);
    std::vector<std::size_t> rest_factors;
    for (std::size_t f = 0; f < v.factors.size(); ++f)
        if (f != slot) rest_factors.push_back(f);
    std::size_t rest_total = 1;
    for (std::size_t f : rest_factors) rest_total *= v.factors[f].dim;

    Complex acc = 0.0;
    for (std::size_t r = 0; r < rest_total; ++r) {
        std::size_t tmp = r, o = 0;
        for (std::size_t c = rest_factors.size(); c-- > 0;) {
            o += (tmp % v.factors[rest_factors[c]].dim) * st[rest_factors[c]];
            tmp /= v.factors[rest_factors[c]].dim;
        }
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t ip = 0; ip < d; ++ip)
                acc += std::conj(v.amps[o + i * st[slot]]) * A[i * d + ip] *
                       v.amps[o + ip * st[slot]];
    }
    return acc;
}

}  // namespace hqs::oracle
