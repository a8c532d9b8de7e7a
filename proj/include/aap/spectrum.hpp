#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <aap/bitstate.hpp>
#include <aap/elimination.hpp>
#include <aap/factored_rational.hpp>
#include <aap/operators.hpp>
#include <aap/transform.hpp>

namespace aap {

template <class T>
struct SpectrumEntry {
    T value;
    long multiplicity = 0;
    BitState witness;  // smallest generating configuration, value order
};

/// Closed-form eigenvalue of the generator attached to configuration b:
/// the Walsh eigenvalue at index b^Delta minus the reversed-rate weight
/// of b.
template <class T>
T closed_form_eigenvalue(const Params<T>& p, const BitState& b) {
    return walsh_eigenvalue(p, prefix_parity(b).value) - reversed_rate_weight(p, b);
}

/// All 2^L closed-form eigenvalues, merged by exact equality with summed
/// multiplicities; deterministic order (by value).
template <class T>
std::vector<SpectrumEntry<T>> closed_form_spectrum(const Params<T>& p) {
    std::map<T, SpectrumEntry<T>> merged;
    for (const BitState& b : all_states(p.L)) {
        T v = closed_form_eigenvalue(p, b);
        auto [it, inserted] = merged.try_emplace(v, SpectrumEntry<T>{v, 1, b});
        if (!inserted) ++it->second.multiplicity;
    }
    std::vector<SpectrumEntry<T>> out;
    out.reserve(merged.size());
    for (auto& [v, e] : merged) out.push_back(std::move(e));
    return out;
}

namespace charpoly {

inline LinearForm x_shift(const Rat& k) {
    LinearForm f = LinearForm::symbol("x");
    f.constant = k;
    return f;
}

inline LinearForm x_shift_ab(const Rat& k, const Rat& ca, const Rat& cb) {
    LinearForm f = x_shift(k);
    if (ca != 0) f.coeffs["a"] = ca;
    if (cb != 0) f.coeffs["b"] = cb;
    return f;
}

/// Even factor family: prod_k (x + shift + 2k)^C(L-1, 2k).
inline void push_even_family(FactorMultiset& out, int L, const LinearForm& shift) {
    for (int k = 0; 2 * k <= L - 1; ++k) {
        LinearForm f = shift;
        f.constant += 2 * k;
        out.push(f, int(binomial(L - 1, 2 * k)));
    }
}

/// Odd factor family: prod_k (x + shift + 2k + 1)^C(L-1, 2k+1).
inline void push_odd_family(FactorMultiset& out, int L, const LinearForm& shift) {
    for (int k = 0; 2 * k + 1 <= L - 1; ++k) {
        LinearForm f = shift;
        f.constant += 2 * k + 1;
        out.push(f, int(binomial(L - 1, 2 * k + 1)));
    }
}

}  // namespace charpoly

/// The factored characteristic polynomial of the two-parameter model in
/// symbols x, a, b: the four factor families
///   even(x) even(x+2a+b) odd(x+b) odd(x+2a),
/// of total degree 2^L with 2L distinct generic factors.
inline FactorMultiset factored_charpoly(int L) {
    if (L < 1) throw std::invalid_argument("factored_charpoly: L >= 1");
    FactorMultiset out;
    using namespace charpoly;
    push_even_family(out, L, x_shift(Rat(0)));
    push_even_family(out, L, x_shift_ab(Rat(0), Rat(2), Rat(1)));
    push_odd_family(out, L, x_shift_ab(Rat(0), Rat(0), Rat(1)));
    push_odd_family(out, L, x_shift_ab(Rat(0), Rat(2), Rat(0)));
    return out;
}

/// The same polynomial derived the other way: one linear factor
/// (x - eigenvalue(b)) per configuration, classified only by weight parity
/// and the leading bit. The two routes must agree.
inline FactorMultiset factored_charpoly_by_classification(int L) {
    FactorMultiset out;
    Params<Poly> p = Params<Poly>::specialized(L, Poly::symbol("a"), Poly::symbol("b"));
    for (const BitState& b : all_states(L)) {
        Poly eig = closed_form_eigenvalue(p, b);
        auto form = LinearForm::from_poly(Poly::symbol("x") - eig);
        out.push(*form);
    }
    return out;
}

/// The stated ratio P_{L+1}/P_L: odd(x+1) odd(x+2a+b+1) even(x+b+1)
/// even(x+2a+1).
inline FactorMultiset charpoly_ratio(int L) {
    if (L < 1) throw std::invalid_argument("charpoly_ratio: L >= 1");
    FactorMultiset out;
    using namespace charpoly;
    push_odd_family(out, L, x_shift(Rat(1)));
    push_odd_family(out, L, x_shift_ab(Rat(1), Rat(2), Rat(1)));
    push_even_family(out, L, x_shift_ab(Rat(1), Rat(0), Rat(1)));
    push_even_family(out, L, x_shift_ab(Rat(1), Rat(2), Rat(0)));
    return out;
}

/// Expands a factored characteristic polynomial at a rational parameter
/// point to a univariate polynomial in x.
inline UniPoly expand_charpoly_at(const FactorMultiset& f, const Rat& a, const Rat& b) {
    UniPoly out = UniPoly::constant(f.content);
    for (const auto& [form, exp] : f.factors) {
        Rat shift = form.constant;
        Rat xc(0);
        for (const auto& [sym, c] : form.coeffs) {
            if (sym == "x")
                xc = c;
            else if (sym == "a")
                shift += c * a;
            else if (sym == "b")
                shift += c * b;
            else
                throw std::invalid_argument("expand_charpoly_at: unexpected symbol " + sym);
        }
        if (xc == 0) {
            UniPoly cst = UniPoly::constant(shift).pow(exp);
            out = out * cst;
        } else {
            out = out * (UniPoly({shift / xc, Rat(1)}).pow(exp) * UniPoly::constant(xc).pow(exp));
        }
    }
    return out;
}

struct SpectrumCheck {
    bool triangular = false;
    bool diagonal_matches = false;
    bool charpoly_matches = true;  // only checked on the numeric path
    std::string failure;           // empty when all hold

    bool ok() const { return triangular && diagonal_matches && charpoly_matches; }
};

/// Runs the triangularization checks for one parameter set: (a) the
/// conjugated generator is lower triangular, (b) its diagonal multiset
/// equals the closed-form spectrum. Exact.
template <class T>
SpectrumCheck verify_spectrum(const Params<T>& p) {
    SpectrumCheck rep;
    const Matrix<T> m = generator(p);
    const Matrix<T> conj = rearranged_conjugate(m, p.L);
    const T zero{};
    rep.triangular = true;
    for (int c = 0; c < conj.cols() && rep.triangular; ++c)
        for (int r = 0; r < c; ++r)
            if (!(conj.at(r, c) == zero)) {
                rep.triangular = false;
                rep.failure = "nonzero above diagonal at (" + std::to_string(r) + "," +
                              std::to_string(c) + ")";
                break;
            }
    std::vector<T> diag = conj.diagonal();
    std::vector<T> expected;
    for (const BitState& b : all_states(p.L)) expected.push_back(closed_form_eigenvalue(p, b));
    std::sort(diag.begin(), diag.end());
    std::sort(expected.begin(), expected.end());
    rep.diagonal_matches = diag == expected;
    if (!rep.diagonal_matches && rep.failure.empty())
        rep.failure = "diagonal multiset differs from closed-form spectrum";
    return rep;
}

/// Numeric path: additionally checks the interpolated characteristic
/// polynomial of the dense specialized generator against the expanded
/// closed form.
inline SpectrumCheck verify_spectrum_numeric(int L, const Rat& a, const Rat& b,
                                             bool with_charpoly) {
    Params<Rat> p = Params<Rat>::specialized(L, a, b);
    SpectrumCheck rep = verify_spectrum(p);
    if (with_charpoly) {
        UniPoly oracle = interpolate_charpoly(generator(p));
        UniPoly closed = expand_charpoly_at(factored_charpoly(L), a, b);
        rep.charpoly_matches = oracle == closed;
        if (!rep.charpoly_matches && rep.failure.empty())
            rep.failure = "interpolated charpoly differs from closed form";
    }
    return rep;
}

struct MultiplicityEntry {
    Rat eigenvalue;
    long algebraic = 0;
    long geometric = 0;
    BitState witness;
};

/// Degeneracy probe: geometric multiplicity 2^L - rank(M - mu I) by exact
/// elimination, per distinct closed-form eigenvalue. A report, not an
/// assertion; the maximal-degeneracy statement is open.
inline std::vector<MultiplicityEntry> eigenvalue_multiplicities(int L, const Rat& a,
                                                                const Rat& b) {
    Params<Rat> p = Params<Rat>::specialized(L, a, b);
    Matrix<Rat> m = generator(p);
    std::vector<MultiplicityEntry> out;
    for (const auto& entry : closed_form_spectrum(p)) {
        Matrix<Rat> shifted = m;
        for (int i = 0; i < m.rows(); ++i) shifted.at(i, i) -= entry.value;
        const int geo = m.rows() - rank_exact(shifted);
        out.push_back({entry.value, entry.multiplicity, geo, entry.witness});
    }
    return out;
}

}  // namespace aap
