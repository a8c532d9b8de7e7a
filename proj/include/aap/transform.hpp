#pragma once

#include <stdexcept>
#include <vector>

#include <aap/bitstate.hpp>
#include <aap/matrix.hpp>
#include <aap/operators.hpp>
#include <aap/rational.hpp>

namespace aap {

/*
 * All Hadamard arithmetic uses the integer-scaled transform (entries +-1)
 * with explicit power-of-two bookkeeping, so every value stays rational;
 * 2^{L/2} never appears. The conjugation below pairs two transforms, whose
 * scales cancel into a single exact division by 2^L.
 */

/// In-place unnormalized Walsh-Hadamard butterfly; length must be a power
/// of two. Applying twice multiplies by the length.
template <class T>
void fwht_inplace(std::vector<T>& v) {
    const std::size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fwht: length must be a power of two");
    for (std::size_t len = 1; len < n; len <<= 1)
        for (std::size_t i = 0; i < n; i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                T x = v[j];
                T y = v[j + len];
                v[j] = x + y;
                v[j + len] = x - y;
            }
}

template <class T>
std::vector<T> fwht(std::vector<T> v) {
    fwht_inplace(v);
    return v;
}

/// The rearranged transform: out[b] = (Hv)[b^Delta]. This is the
/// integer-scaled version of the triangularizing basis change, implemented
/// as the butterfly followed by the prefix-parity index permutation.
template <class T>
std::vector<T> rearranged_fwht(std::vector<T> v, int L) {
    if (v.size() != (std::size_t(1) << L))
        throw std::invalid_argument("rearranged_fwht: length must be 2^L");
    fwht_inplace(v);
    std::vector<T> out(v.size());
    for (std::uint32_t b = 0; b < v.size(); ++b)
        out[b] = std::move(v[prefix_parity_value(L, b)]);
    return out;
}

/// Exact conjugation 2^{-L} * Hd * m * Hd with Hd the rearranged
/// integer-scaled Hadamard matrix; the two 2^{-L/2} normalizations cancel
/// into the single division.
template <class T>
Matrix<T> rearranged_conjugate(const Matrix<T>& m, int L) {
    const int n = 1 << L;
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("rearranged_conjugate: dimension must be 2^L");
    Matrix<T> out(n, n);
    std::vector<T> buf(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {  // left factor, column by column
        for (int r = 0; r < n; ++r) buf[std::size_t(r)] = m.at(r, c);
        auto t = rearranged_fwht(std::move(buf), L);
        for (int r = 0; r < n; ++r) out.at(r, c) = std::move(t[std::size_t(r)]);
        buf = std::move(t);
    }
    const T inv_dim = T(Rat(Int(1), pow2(L)));
    for (int r = 0; r < n; ++r) {  // right factor, row by row, then rescale
        for (int c = 0; c < n; ++c) buf[std::size_t(c)] = out.at(r, c);
        auto t = rearranged_fwht(std::move(buf), L);
        for (int c = 0; c < n; ++c) out.at(r, c) = t[std::size_t(c)] * inv_dim;
        buf = std::move(t);
    }
    return out;
}

/// Checks the transform identity for the site-jump operator: conjugation by
/// the rearranged Hadamard equals the transpose at reversed rates.
template <class T>
bool b_transform_identity_holds(int L, const std::vector<T>& beta) {
    if (int(beta.size()) != L) throw std::invalid_argument("need one rate per site");
    Params<T> p(L, {}, beta);
    const Matrix<T> lhs = rearranged_conjugate(jump_operator(p), L);
    std::vector<T> rev(beta.rbegin(), beta.rend());
    Params<T> pr(L, {}, rev);
    return lhs == jump_operator(pr).transposed();
}

}  // namespace aap
