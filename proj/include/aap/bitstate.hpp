#pragma once

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include <aap/rational.hpp>

namespace aap {

/*
 * Configurations of the annihilation lattice are bit vectors b_1..b_L with
 * b_1 stored as the most significant position, so that the numeric value
 * (b)_2 = b_L + b_{L-1}*2 + ... + b_1*2^{L-1} orders states exactly the way
 * the transition matrices are printed. All matrix and vector indexing in
 * this library uses that value order.
 */
struct BitState {
    int length = 0;
    std::uint32_t value = 0;

    BitState() = default;
    BitState(int L, std::uint32_t v) : length(L), value(v) {
        if (L < 0 || L > 31) throw std::invalid_argument("BitState: length out of range");
        if (L < 31 && v >= (std::uint32_t(1) << L))
            throw std::invalid_argument("BitState: value out of range for length");
    }

    /// Parses "101" with b_1 first.
    static BitState from_string(const std::string& bits) {
        std::uint32_t v = 0;
        for (char ch : bits) {
            if (ch != '0' && ch != '1') throw std::invalid_argument("BitState: bad bit string");
            v = (v << 1) | std::uint32_t(ch - '0');
        }
        return BitState(int(bits.size()), v);
    }

    /// b_j for 1 <= j <= L.
    int bit(int j) const {
        if (j < 1 || j > length) throw std::invalid_argument("BitState: site index out of range");
        return int((value >> (length - j)) & 1u);
    }

    int weight() const {
        std::uint32_t v = value;
        int w = 0;
        for (; v; v &= v - 1) ++w;
        return w;
    }

    std::string to_string() const {
        std::string s(std::size_t(length), '0');
        for (int j = 1; j <= length; ++j)
            if (bit(j)) s[std::size_t(j - 1)] = '1';
        return s;
    }

    friend bool operator==(const BitState&, const BitState&) = default;
    friend bool operator<(const BitState& a, const BitState& b) {
        return a.length != b.length ? a.length < b.length : a.value < b.value;
    }
};

inline std::vector<BitState> all_states(int L) {
    std::vector<BitState> out;
    out.reserve(std::size_t(1) << L);
    for (std::uint32_t v = 0; v < (std::uint32_t(1) << L); ++v) out.emplace_back(L, v);
    return out;
}

/// Mod-2 scalar product b.c.
inline int dot(const BitState& b, const BitState& c) {
    if (b.length != c.length) throw std::invalid_argument("dot: length mismatch");
    std::uint32_t v = b.value & c.value;
    int p = 0;
    for (; v; v &= v - 1) p ^= 1;
    return p;
}

inline int parity32(std::uint32_t v) {
    int p = 0;
    for (; v; v &= v - 1) p ^= 1;
    return p;
}

/// phi_j: complements component j.
inline BitState flip_bit(int j, const BitState& b) {
    if (j < 1 || j > b.length) throw std::invalid_argument("flip_bit: site index out of range");
    return BitState(b.length, b.value ^ (std::uint32_t(1) << (b.length - j)));
}

/// psi_j: complements components j and j+1; psi_L complements component L only.
/// psi_j(b) < b exactly when b_j = 1 (the 10->01 and 11->00 moves).
inline BitState flip_pair(int j, const BitState& b) {
    if (j < 1 || j > b.length) throw std::invalid_argument("flip_pair: site index out of range");
    std::uint32_t mask = std::uint32_t(1) << (b.length - j);
    if (j < b.length) mask |= std::uint32_t(1) << (b.length - j - 1);
    return BitState(b.length, b.value ^ mask);
}

namespace detail {

// The prefix-parity map and its inverse as cached L x L binary matrices
// (row j is a bitmask over the value layout). The inverse is obtained once
// per L by Gauss-Jordan elimination over GF(2).
struct ParityMatrices {
    std::vector<std::uint32_t> fwd, inv;
};

inline const ParityMatrices& parity_matrices(int L) {
    static std::mutex mtx;
    static std::vector<ParityMatrices> cache(33);
    std::lock_guard<std::mutex> lock(mtx);
    ParityMatrices& pm = cache[std::size_t(L)];
    if (!pm.fwd.empty()) return pm;

    pm.fwd.resize(std::size_t(L) + 1);
    for (int j = 1; j <= L; ++j)
        pm.fwd[std::size_t(j)] = ((std::uint32_t(1) << (L - j + 1)) - 1) << (j - 1);

    // [fwd | I] -> [I | inv]
    std::vector<std::uint32_t> a(pm.fwd.begin() + 1, pm.fwd.end());
    std::vector<std::uint32_t> e(static_cast<std::size_t>(L));
    for (int r = 0; r < L; ++r) e[std::size_t(r)] = std::uint32_t(1) << (L - 1 - r);
    for (int col = 0; col < L; ++col) {
        std::uint32_t mask = std::uint32_t(1) << (L - 1 - col);
        int piv = -1;
        for (int r = col; r < L; ++r)
            if (a[std::size_t(r)] & mask) { piv = r; break; }
        if (piv < 0) throw std::logic_error("parity matrix is singular");
        std::swap(a[std::size_t(piv)], a[std::size_t(col)]);
        std::swap(e[std::size_t(piv)], e[std::size_t(col)]);
        for (int r = 0; r < L; ++r)
            if (r != col && (a[std::size_t(r)] & mask)) {
                a[std::size_t(r)] ^= a[std::size_t(col)];
                e[std::size_t(r)] ^= e[std::size_t(col)];
            }
    }
    pm.inv.resize(std::size_t(L) + 1);
    for (int j = 1; j <= L; ++j) pm.inv[std::size_t(j)] = e[std::size_t(j - 1)];
    return pm;
}

inline std::uint32_t apply_rows(const std::vector<std::uint32_t>& rows, int L, std::uint32_t v) {
    std::uint32_t out = 0;
    for (int j = 1; j <= L; ++j)
        out |= std::uint32_t(parity32(rows[std::size_t(j)] & v)) << (L - j);
    return out;
}

}  // namespace detail

/// The triangularizing index map: output component j is the mod-2 sum of
/// input components 1..L-j+1. A linear bijection whose matrix is symmetric.
inline BitState prefix_parity(const BitState& b) {
    const auto& pm = detail::parity_matrices(b.length);
    return BitState(b.length, detail::apply_rows(pm.fwd, b.length, b.value));
}

inline BitState prefix_parity_inv(const BitState& b) {
    const auto& pm = detail::parity_matrices(b.length);
    return BitState(b.length, detail::apply_rows(pm.inv, b.length, b.value));
}

/// prefix_parity on raw values, for hot loops.
inline std::uint32_t prefix_parity_value(int L, std::uint32_t v) {
    return detail::apply_rows(detail::parity_matrices(L).fwd, L, v);
}

}  // namespace aap
