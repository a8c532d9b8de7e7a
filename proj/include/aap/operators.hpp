#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include <aap/bitstate.hpp>
#include <aap/matrix.hpp>
#include <aap/rational.hpp>

namespace aap {

/// Default dense-construction cap: 2^12 x 2^12 exact entries. Beyond this,
/// use the matrix-free path.
inline constexpr int kDenseCapL = 12;

inline void check_dense_feasible(int L) {
    if (L < 1) throw std::invalid_argument("lattice size must be >= 1");
    if (L > kDenseCapL)
        throw std::invalid_argument("dense construction capped at L <= " +
                                    std::to_string(kDenseCapL) + "; use the matrix-free path");
}

/// Model parameters: a sparse XOR-shift coefficient per configuration plus
/// one rate per site. Scalar type T is Rat, Poly or FactoredRational.
template <class T>
struct Params {
    int L = 0;
    std::map<std::uint32_t, T> alpha;  // by configuration value; absent = 0
    std::vector<T> beta;               // beta_1..beta_L

    Params(int L_, std::map<std::uint32_t, T> alpha_, std::vector<T> beta_)
        : L(L_), alpha(std::move(alpha_)), beta(std::move(beta_)) {
        if (L < 1 || L > 31) throw std::invalid_argument("Params: lattice size out of range");
        if (int(beta.size()) != L) throw std::invalid_argument("Params: need one rate per site");
        for (const auto& [v, coeff] : alpha)
            if (v >= (std::uint32_t(1) << L))
                throw std::invalid_argument("Params: alpha key exceeds state space");
    }

    /// The two-parameter annihilation model: alpha at 00..0 is -a, at 10..0
    /// is +a; bulk rates 1, last rate b.
    static Params specialized(int L, const T& a, const T& b) {
        std::map<std::uint32_t, T> al;
        al[0] = -a;
        al[std::uint32_t(1) << (L - 1)] = a;
        std::vector<T> be(std::size_t(L), T(Rat(1)));
        be[std::size_t(L - 1)] = b;
        return Params(L, std::move(al), std::move(be));
    }

    /// Column-sum eigenvalue: the sum of all alpha coefficients.
    T alpha_sum() const {
        T s{};
        for (const auto& [v, coeff] : alpha) s = s + coeff;
        return s;
    }

    int dim() const { return 1 << L; }
};

/// XOR-shift operator: entry (b, c) = alpha[b xor c]. Symmetric, constant
/// row and column sums.
template <class T>
Matrix<T> xor_operator(const Params<T>& p) {
    check_dense_feasible(p.L);
    const int n = p.dim();
    Matrix<T> m(n, n);
    for (const auto& [d, coeff] : p.alpha)
        for (int c = 0; c < n; ++c) m.at(int(std::uint32_t(c) ^ d), c) = coeff;
    return m;
}

/// Site-jump operator: column b carries the enabled moves psi_j(b) for each
/// occupied site j, weighted by beta_j, with the diagonal balancing the
/// column to zero. Upper triangular in value order since psi_j(b) < b
/// whenever b_j = 1.
template <class T>
Matrix<T> jump_operator(const Params<T>& p) {
    check_dense_feasible(p.L);
    const int n = p.dim();
    Matrix<T> m(n, n);
    for (const BitState& b : all_states(p.L)) {
        const int c = int(b.value);
        for (int j = 1; j <= p.L; ++j) {
            if (!b.bit(j)) continue;
            const T& rate = p.beta[std::size_t(j - 1)];
            m.at(c, c) = m.at(c, c) + rate;
            const int r = int(flip_pair(j, b).value);
            m.at(r, c) = m.at(r, c) - rate;
        }
    }
    return m;
}

/// The generalized generator: xor_operator - jump_operator. Every column
/// sums to the alpha total.
template <class T>
Matrix<T> generator(const Params<T>& p) {
    return xor_operator(p) - jump_operator(p);
}

/// The annihilation-process Markov matrix (zero column sums; off-diagonal
/// rates nonnegative for a, b >= 0).
template <class T>
Matrix<T> annihilation_generator(int L, const T& a, const T& b) {
    return generator(Params<T>::specialized(L, a, b));
}

/// Matrix-free product generator(p) * v in O((|alpha| + L) * 2^L) scalar
/// operations.
template <class T>
std::vector<T> apply_generator(const Params<T>& p, const std::vector<T>& v) {
    const std::size_t n = std::size_t(1) << p.L;
    if (v.size() != n) throw std::invalid_argument("apply_generator: vector length mismatch");
    std::vector<T> out(n, T{});
    for (const auto& [d, coeff] : p.alpha) {
        if (d == 0) {
            for (std::size_t i = 0; i < n; ++i) out[i] = out[i] + coeff * v[i];
        } else {
            for (std::size_t i = 0; i < n; ++i) out[i] = out[i] + coeff * v[i ^ d];
        }
    }
    for (const BitState& b : all_states(p.L)) {
        const std::size_t c = b.value;
        for (int j = 1; j <= p.L; ++j) {
            if (!b.bit(j)) continue;
            const T& rate = p.beta[std::size_t(j - 1)];
            const std::size_t r = flip_pair(j, b).value;
            out[c] = out[c] - rate * v[c];
            out[r] = out[r] + rate * v[c];
        }
    }
    return out;
}

/// Walsh eigenvalue of the xor operator at index d: sum of alpha_c times
/// the character sign (-1)^{d.c}, evaluated lazily over the nonzero entries.
template <class T>
T walsh_eigenvalue(const Params<T>& p, std::uint32_t d) {
    T out{};
    for (const auto& [c, coeff] : p.alpha) {
        if (parity32(d & c))
            out = out - coeff;
        else
            out = out + coeff;
    }
    return out;
}

/// Complementary eigenvalue alpha_sum - walsh_eigenvalue(d).
template <class T>
T walsh_eigenvalue_complement(const Params<T>& p, std::uint32_t d) {
    return p.alpha_sum() - walsh_eigenvalue(p, d);
}

/// The same value by its second formula, 2 * sum of alpha over c with
/// d.c = 1; the two routes must agree identically.
template <class T>
T walsh_eigenvalue_complement_direct(const Params<T>& p, std::uint32_t d) {
    T out{};
    for (const auto& [c, coeff] : p.alpha)
        if (parity32(d & c)) out = out + coeff + coeff;
    return out;
}

/// Reversed-rate weight of b: sum_j beta_{L-j+1} b_j.
template <class T>
T reversed_rate_weight(const Params<T>& p, const BitState& b) {
    T out{};
    for (int j = 1; j <= p.L; ++j)
        if (b.bit(j)) out = out + p.beta[std::size_t(p.L - j)];
    return out;
}

/// First-order block recursion of the specialized Markov matrix: M_L equals
/// [[M' - a S, a I + S], [a I, M' - I - a S]] where M' = M_{L-1} and S swaps
/// the leading bit of the (L-1)-site index.
template <class T>
bool block_recursion_holds(int L, const T& a, const T& b) {
    if (L < 2) throw std::invalid_argument("block_recursion_holds: needs L >= 2");
    const Matrix<T> full = annihilation_generator(L, a, b);
    const Matrix<T> prev = annihilation_generator(L - 1, a, b);
    const int h = 1 << (L - 1);
    const std::uint32_t top = std::uint32_t(1) << (L - 2);  // leading bit of the halved index

    auto swap_row = [&](int r) { return int(std::uint32_t(r) ^ top); };
    const T zero{};
    const T one = T(Rat(1));
    for (int c = 0; c < h; ++c)
        for (int r = 0; r < h; ++r) {
            const T& diag = r == c ? one : zero;
            const T& swapped = swap_row(r) == c ? one : zero;
            T tl = prev.at(r, c) - a * swapped;
            T tr = a * diag + swapped;
            T bl = a * diag;
            T br = prev.at(r, c) - diag - a * swapped;
            if (!(full.at(r, c) == tl)) return false;
            if (!(full.at(r, c + h) == tr)) return false;
            if (!(full.at(r + h, c) == bl)) return false;
            if (!(full.at(r + h, c + h) == br)) return false;
        }
    return true;
}

}  // namespace aap
