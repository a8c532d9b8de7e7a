#pragma once

#include <stdexcept>
#include <vector>

#include <aap/matrix.hpp>
#include <aap/rational.hpp>
#include <aap/unipoly.hpp>

namespace aap {

/*
 * Fraction-free (Bareiss) elimination over the integers, reached from
 * rational input by row scaling. No rounding anywhere; singular input is
 * detected exactly as a zero pivot column.
 */
inline Rat bareiss_det(const Matrix<Rat>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("bareiss_det: matrix not square");
    const int n = m.rows();
    if (n == 0) return Rat(1);

    // Scale each row to integers; det(m) = det(scaled) / prod(scales).
    std::vector<std::vector<Int>> a(static_cast<std::size_t>(n),
                                    std::vector<Int>(static_cast<std::size_t>(n)));
    Rat scale = 1;
    for (int r = 0; r < n; ++r) {
        Int l = 1;
        for (int c = 0; c < n; ++c) l = int_lcm(l, denom(m.at(r, c)));
        for (int c = 0; c < n; ++c) {
            const Rat& v = m.at(r, c);
            a[std::size_t(r)][std::size_t(c)] = numer(v) * (l / denom(v));
        }
        scale *= Rat(l);
    }

    Int prev = 1;
    int sgn = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[std::size_t(k)][std::size_t(k)] == 0) {
            int piv = -1;
            for (int r = k + 1; r < n; ++r)
                if (a[std::size_t(r)][std::size_t(k)] != 0) { piv = r; break; }
            if (piv < 0) return Rat(0);
            std::swap(a[std::size_t(k)], a[std::size_t(piv)]);
            sgn = -sgn;
        }
        const Int& pivot = a[std::size_t(k)][std::size_t(k)];
        for (int r = k + 1; r < n; ++r) {
            for (int c = k + 1; c < n; ++c) {
                Int t = a[std::size_t(r)][std::size_t(c)] * pivot -
                        a[std::size_t(r)][std::size_t(k)] * a[std::size_t(k)][std::size_t(c)];
                a[std::size_t(r)][std::size_t(c)] = t / prev;  // exact by Sylvester identity
            }
            a[std::size_t(r)][std::size_t(k)] = 0;
        }
        prev = pivot;
    }
    return Rat(sgn * a[std::size_t(n - 1)][std::size_t(n - 1)]) / scale;
}

/// Exact rank by rational Gaussian elimination.
inline int rank_exact(Matrix<Rat> m) {
    const int rows = m.rows(), cols = m.cols();
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m.at(r, c) != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = c; j < cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        const Rat p = m.at(rank, c);
        for (int r = rank + 1; r < rows; ++r) {
            if (m.at(r, c) == 0) continue;
            const Rat f = m.at(r, c) / p;
            for (int j = c; j < cols; ++j) m.at(r, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

/// Characteristic polynomial det(xI - m) by exact interpolation: Bareiss
/// determinants at the integer nodes x = 0..n determine the unique monic
/// degree-n polynomial. Independent of any closed-form spectral route.
inline UniPoly interpolate_charpoly(const Matrix<Rat>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("interpolate_charpoly: not square");
    const int n = m.rows();
    std::vector<Rat> nodes, values;
    nodes.reserve(std::size_t(n) + 1);
    values.reserve(std::size_t(n) + 1);
    for (int x = 0; x <= n; ++x) {
        Matrix<Rat> shifted = m;
        for (int i = 0; i < n; ++i) shifted.at(i, i) -= Rat(x);
        // det(xI - m) = (-1)^n det(m - xI)
        Rat d = bareiss_det(shifted);
        if (n % 2) d = -d;
        nodes.emplace_back(x);
        values.push_back(d);
    }
    return UniPoly::interpolate(nodes, values);
}

}  // namespace aap
