#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <aap/factored_rational.hpp>
#include <aap/matrix.hpp>
#include <aap/operators.hpp>
#include <aap/steady_state.hpp>

namespace aap {

/*
 * Transfer matrices intertwine generators of adjacent sizes:
 * M_{L+1} T_{L,L+1} = T_{L,L+1} M_L with M_{L+1} T != 0. Two first-order
 * block recursions are implemented. The `printed` variant, in the form the
 * recursion is classically quoted, fails the intertwining identity for
 * every L >= 2 (the initial 4x2 matrix is fine); solving the identity with
 * the bottom-half recursion imposed determines the top half uniquely and
 * pinpoints two garbled blocks, which the `corrected` variant replaces.
 * Both are kept so the discrepancy stays reproducible:
 *
 *   printed:    T1' = [[T1 + a^-1 T2, 2 T2 + a^-1 T2], [S T2, a^-1 T2]]
 *   corrected:  T1' = [[T1 + a^-1 T2, T1 S + T2     ], [T2,   a^-1 T2]]
 *   both:       T2' = [[2 T2,         T2 S           ], [0,    T2     ]]
 *
 * with S the leading-bit swap on the half-size index.
 */
enum class TransferRecursion { printed, corrected };

inline const char* to_string(TransferRecursion r) {
    return r == TransferRecursion::printed ? "printed" : "corrected";
}

namespace detail {

inline Rat invert_scalar(const Rat& a) {
    if (a == 0) throw std::invalid_argument("transfer recursion needs alpha != 0");
    return Rat(1) / a;
}

inline FactoredRational invert_scalar(const FactoredRational& a) {
    auto form = LinearForm::from_poly(a.numerator());
    if (!form || !a.denominator().empty() || a.is_zero())
        throw std::invalid_argument("transfer recursion: cannot invert this scalar");
    FactoredRational out(Rat(1) / a.content());
    out.divide_by_form(*form);
    return out;
}

/// Rows (or columns) permuted by swapping the leading bit of the index.
template <class T>
Matrix<T> swap_top_rows(const Matrix<T>& m) {
    const std::uint32_t top = std::uint32_t(m.rows()) >> 1;
    Matrix<T> out(m.rows(), m.cols());
    for (int c = 0; c < m.cols(); ++c)
        for (int r = 0; r < m.rows(); ++r) out.at(int(std::uint32_t(r) ^ top), c) = m.at(r, c);
    return out;
}

template <class T>
Matrix<T> swap_top_cols(const Matrix<T>& m) {
    const std::uint32_t top = std::uint32_t(m.cols()) >> 1;
    Matrix<T> out(m.rows(), m.cols());
    for (int c = 0; c < m.cols(); ++c)
        for (int r = 0; r < m.rows(); ++r) out.at(r, int(std::uint32_t(c) ^ top)) = m.at(r, c);
    return out;
}

template <class T>
Matrix<T> stack(const Matrix<T>& top, const Matrix<T>& bottom) {
    Matrix<T> out(top.rows() + bottom.rows(), top.cols());
    for (int c = 0; c < top.cols(); ++c) {
        for (int r = 0; r < top.rows(); ++r) out.at(r, c) = top.at(r, c);
        for (int r = 0; r < bottom.rows(); ++r) out.at(top.rows() + r, c) = bottom.at(r, c);
    }
    return out;
}

template <class T>
Matrix<T> beside(const Matrix<T>& left, const Matrix<T>& right) {
    Matrix<T> out(left.rows(), left.cols() + right.cols());
    for (int c = 0; c < left.cols(); ++c)
        for (int r = 0; r < left.rows(); ++r) out.at(r, c) = left.at(r, c);
    for (int c = 0; c < right.cols(); ++c)
        for (int r = 0; r < right.rows(); ++r) out.at(r, left.cols() + c) = right.at(r, c);
    return out;
}

}  // namespace detail

/// The initial 4x2 transfer matrix from size 1 to size 2.
template <class T>
Matrix<T> transfer_initial(const T& a, const T& b) {
    const T one = T(Rat(1));
    Matrix<T> t(4, 2);
    t.at(0, 0) = one + b + a * b;
    t.at(0, 1) = a + b + a * b;
    t.at(1, 0) = a;
    t.at(1, 1) = one;
    t.at(2, 0) = a + a * b;
    t.at(2, 1) = a * b;
    t.at(3, 0) = T{};
    t.at(3, 1) = a;
    return t;
}

/// One recursion step: consumes T_{L-1,L} (2^L x 2^{L-1}) and produces
/// T_{L,L+1} (2^{L+1} x 2^L).
template <class T>
Matrix<T> transfer_step(const Matrix<T>& t, const T& a, TransferRecursion rec) {
    using namespace detail;
    const int h = t.cols();
    if (t.rows() != 2 * h) throw std::invalid_argument("transfer_step: bad shape");
    Matrix<T> t1(h, h), t2(h, h);
    for (int c = 0; c < h; ++c)
        for (int r = 0; r < h; ++r) {
            t1.at(r, c) = t.at(r, c);
            t2.at(r, c) = t.at(r + h, c);
        }
    const T inv = invert_scalar(a);
    const T two = T(Rat(2));

    Matrix<T> t2_inv = t2;
    t2_inv.scale(inv);
    Matrix<T> t2_two = t2;
    t2_two.scale(two);

    Matrix<T> top_left = t1 + t2_inv;
    Matrix<T> top_right = rec == TransferRecursion::printed ? t2_two + t2_inv
                                                            : swap_top_cols(t1) + t2;
    Matrix<T> bottom_left = rec == TransferRecursion::printed ? swap_top_rows(t2) : t2;
    Matrix<T> t1_next = stack(beside(top_left, top_right), beside(bottom_left, t2_inv));
    Matrix<T> t2_next =
        stack(beside(t2_two, swap_top_cols(t2)), beside(Matrix<T>(h, h), t2));
    return stack(t1_next, t2_next);
}

/// T_{L,L+1} by recursion from the initial matrix.
template <class T>
Matrix<T> transfer_matrix(int L, const T& a, const T& b, TransferRecursion rec) {
    if (L < 1) throw std::invalid_argument("transfer_matrix: L >= 1");
    Matrix<T> t = transfer_initial(a, b);
    for (int l = 2; l <= L; ++l) t = transfer_step(t, a, rec);
    return t;
}

/// Symbolic scalars for the transfer recursion: rational functions of the
/// symbol "a" (and "b"), held factored.
inline FactoredRational transfer_symbol_a() { return FactoredRational(Poly::symbol("a")); }
inline FactoredRational transfer_symbol_b() { return FactoredRational(Poly::symbol("b")); }

struct TmaCheck {
    int L = 0;
    TransferRecursion recursion = TransferRecursion::printed;
    bool holds = false;    // M_{L+1} T == T M_L
    bool nonzero = false;  // M_{L+1} T != 0
    int bad_row = -1, bad_col = -1;
    std::string lhs_entry, rhs_entry;

    bool ok() const { return holds && nonzero; }
};

template <class T, class Render>
TmaCheck verify_tma_impl(int L, const T& a, const T& b, TransferRecursion rec, Render render) {
    const Matrix<T> t = transfer_matrix(L, a, b, rec);
    const Matrix<T> lhs = annihilation_generator(L + 1, a, b) * t;
    const Matrix<T> rhs = t * annihilation_generator(L, a, b);
    TmaCheck rep;
    rep.L = L;
    rep.recursion = rec;
    rep.holds = true;
    rep.nonzero = !lhs.is_zero();
    for (int c = 0; c < lhs.cols() && rep.holds; ++c)
        for (int r = 0; r < lhs.rows(); ++r)
            if (!(lhs.at(r, c) == rhs.at(r, c))) {
                rep.holds = false;
                rep.bad_row = r;
                rep.bad_col = c;
                rep.lhs_entry = render(lhs.at(r, c));
                rep.rhs_entry = render(rhs.at(r, c));
                break;
            }
    return rep;
}

inline TmaCheck verify_tma_numeric(int L, const Rat& a, const Rat& b, TransferRecursion rec) {
    return verify_tma_impl(L, a, b, rec, [](const Rat& v) { return to_string(v); });
}

inline TmaCheck verify_tma_symbolic(int L, TransferRecursion rec) {
    return verify_tma_impl(L, transfer_symbol_a(), transfer_symbol_b(), rec,
                           [](const FactoredRational& v) { return v.to_string(); });
}

struct PropagationCheck {
    int L = 0;
    bool proportional = false;
    bool nonzero = false;
    std::string scalar;  // the recorded proportionality factor (sum of T v_L)

    bool ok() const { return proportional && nonzero; }
};

/// Checks T_{L,L+1} v_L proportional to v_{L+1} and records the scalar.
/// Both steady states are sum-normalized, so the scalar is the entry sum of
/// T v_L.
inline PropagationCheck propagate_steady_numeric(int L, const Rat& a, const Rat& b,
                                                 TransferRecursion rec) {
    const auto t = transfer_matrix(L, a, b, rec);
    const auto vL = steady_state_specialized(L, a, b).x;
    const auto vN = steady_state_specialized(L + 1, a, b).x;
    const auto w = t.apply(vL);
    Rat s = 0;
    for (const auto& v : w) s += v;
    PropagationCheck rep;
    rep.L = L;
    rep.nonzero = s != 0;
    rep.proportional = true;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != s * vN[i]) {
            rep.proportional = false;
            break;
        }
    rep.scalar = to_string(s);
    return rep;
}

inline PropagationCheck propagate_steady_symbolic(int L, TransferRecursion rec) {
    const FactoredRational a = transfer_symbol_a();
    const FactoredRational b = transfer_symbol_b();
    const auto t = transfer_matrix(L, a, b, rec);
    Params<Poly> pL = Params<Poly>::specialized(L, Poly::symbol("a"), Poly::symbol("b"));
    Params<Poly> pN = Params<Poly>::specialized(L + 1, Poly::symbol("a"), Poly::symbol("b"));
    const auto vL = steady_state(pL).x;
    const auto vN = steady_state(pN).x;
    const auto w = t.apply(vL);
    FactoredRational s;
    for (const auto& v : w) s += v;
    PropagationCheck rep;
    rep.L = L;
    rep.nonzero = !s.is_zero();
    rep.proportional = true;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!(w[i] == s * vN[i])) {
            rep.proportional = false;
            break;
        }
    rep.scalar = s.to_string();
    return rep;
}

}  // namespace aap
