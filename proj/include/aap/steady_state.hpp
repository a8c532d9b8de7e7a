#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <aap/factored_rational.hpp>
#include <aap/operators.hpp>
#include <aap/transform.hpp>

namespace aap {

/// A pivot of the triangular system vanished: the parameter point sits on a
/// resonance locus. Symbolic-to-numeric evaluation aborts here rather than
/// attempting limits.
struct ResonanceError : std::domain_error {
    BitState witness;
    explicit ResonanceError(const BitState& b)
        : std::domain_error("triangular pivot vanishes at configuration " + b.to_string()),
          witness(b) {}
};

template <class Y>
struct TriangularSolution {
    int L = 0;
    std::vector<Y> y;  // indexed by configuration value; y[0] = 1
};

template <class Y>
struct SteadyStateVector {
    int L = 0;
    std::vector<Y> y;  // transformed-basis solution
    std::vector<Y> x;  // probability vector, sums to exactly 1
};

/*
 * The triangular system in the transformed basis:
 *   (lambda*_{b^Delta} + beta_rev . b) y_b = sum_{j: b_j=1} beta_{L-j+1} y_{psi_j b},
 * solved in increasing value order with y_{0...0} = 1. Each step divides by
 * one linear pivot, so symbolic denominators stay factored.
 */
inline TriangularSolution<Rat> solve_triangular(const Params<Rat>& p) {
    const std::size_t n = std::size_t(1) << p.L;
    std::vector<Rat> y(n);
    y[0] = 1;
    for (const BitState& b : all_states(p.L)) {
        if (b.value == 0) continue;
        const Rat pivot = walsh_eigenvalue_complement(p, prefix_parity(b).value) +
                          reversed_rate_weight(p, b);
        if (pivot == 0) throw ResonanceError(b);
        Rat rhs = 0;
        for (int j = 1; j <= p.L; ++j)
            if (b.bit(j)) rhs += p.beta[std::size_t(p.L - j)] * y[flip_pair(j, b).value];
        y[b.value] = rhs / pivot;
    }
    return {p.L, std::move(y)};
}

inline TriangularSolution<FactoredRational> solve_triangular(const Params<Poly>& p) {
    const std::size_t n = std::size_t(1) << p.L;
    std::vector<FactoredRational> y(n);
    y[0] = FactoredRational(Rat(1));
    for (const BitState& b : all_states(p.L)) {
        if (b.value == 0) continue;
        const Poly pivot_poly = walsh_eigenvalue_complement(p, prefix_parity(b).value) +
                                reversed_rate_weight(p, b);
        auto pivot = LinearForm::from_poly(pivot_poly);
        if (!pivot)
            throw std::invalid_argument("solve_triangular: pivot is not a linear form");
        if (pivot->is_zero()) throw ResonanceError(b);
        FactoredRational rhs;
        for (int j = 1; j <= p.L; ++j)
            if (b.bit(j))
                rhs += FactoredRational(p.beta[std::size_t(p.L - j)]) * y[flip_pair(j, b).value];
        rhs.divide_by_form(*pivot);
        y[b.value] = std::move(rhs);
    }
    return {p.L, std::move(y)};
}

namespace detail {

/// x = (integer-scaled rearranged transform of y) / 2^L; the sum of x is
/// then exactly y_0 = 1, so x is already normalized.
template <class Y>
std::vector<Y> transform_to_state_basis(std::vector<Y> y, int L) {
    std::vector<Y> x = rearranged_fwht(std::move(y), L);
    const Y inv_dim = Y(Rat(Int(1), pow2(L)));
    for (Y& v : x) v = v * inv_dim;
    return x;
}

}  // namespace detail

inline SteadyStateVector<Rat> steady_state(const Params<Rat>& p) {
    auto tri = solve_triangular(p);
    auto x = detail::transform_to_state_basis(tri.y, p.L);
    Rat sum = std::accumulate(x.begin(), x.end(), Rat(0));
    if (sum != 1) throw std::logic_error("steady_state: normalization lost");
    return {p.L, std::move(tri.y), std::move(x)};
}

inline SteadyStateVector<FactoredRational> steady_state(const Params<Poly>& p) {
    auto tri = solve_triangular(p);
    auto x = detail::transform_to_state_basis(tri.y, p.L);
    FactoredRational sum;
    for (const auto& v : x) sum += v;
    if (!(sum == FactoredRational(Rat(1))))
        throw std::logic_error("steady_state: normalization lost");
    return {p.L, std::move(tri.y), std::move(x)};
}

/// Convenience: the two-parameter model at an exact rational point.
inline SteadyStateVector<Rat> steady_state_specialized(int L, const Rat& a, const Rat& b) {
    return steady_state(Params<Rat>::specialized(L, a, b));
}

/// Symbolic two-parameter model over symbols "a", "b".
inline SteadyStateVector<FactoredRational> steady_state_symbolic(int L) {
    return steady_state(Params<Poly>::specialized(L, Poly::symbol("a"), Poly::symbol("b")));
}

/// The partition product over all nonzero configurations:
/// prod_{b != 0} (lambda*_{b^Delta} + beta_rev . b), kept factored.
inline FactorMultiset partition_product(const Params<Poly>& p) {
    FactorMultiset out;
    for (const BitState& b : all_states(p.L)) {
        if (b.value == 0) continue;
        Poly f = walsh_eigenvalue_complement(p, prefix_parity(b).value) +
                 reversed_rate_weight(p, b);
        auto form = LinearForm::from_poly(f);
        if (!form) throw std::invalid_argument("partition_product: factor is not linear");
        out.push(*form);
    }
    return out;
}

/// Same product restricted to Hamming weights 1 and 2; upon specialization
/// only these factors survive in the least common multiple.
inline FactorMultiset partition_product_low_weight(const Params<Poly>& p) {
    FactorMultiset out;
    for (const BitState& b : all_states(p.L)) {
        const int w = b.weight();
        if (w != 1 && w != 2) continue;
        Poly f = walsh_eigenvalue_complement(p, prefix_parity(b).value) +
                 reversed_rate_weight(p, b);
        out.push(*LinearForm::from_poly(f));
    }
    return out;
}

/// Closed form of the specialized partition function:
/// 2^C(L-1,2) (1+2a)^{L-1} (1+b)^{L-1} (2a+b).
inline FactorMultiset partition_closed_form(int L) {
    if (L < 1) throw std::invalid_argument("partition_closed_form: L >= 1");
    FactorMultiset out;
    out.content = Rat(Int(1) << int(binomial(L - 1, 2)));
    LinearForm one_2a(Rat(1));
    one_2a.coeffs["a"] = 2;
    LinearForm one_b(Rat(1));
    one_b.coeffs["b"] = 1;
    LinearForm twoa_b;
    twoa_b.coeffs["a"] = 2;
    twoa_b.coeffs["b"] = 1;
    out.push(one_2a, L - 1);
    out.push(one_b, L - 1);
    out.push(twoa_b, 1);
    return out;
}

struct PartitionCheck {
    int L = 0;
    FactorMultiset lcm_x;         // lcm of denominators of the steady state
    FactorMultiset lcm_y;         // over the transformed-basis solution (informational)
    FactorMultiset closed_form;   // the specialized closed form
    FactorMultiset low_weight;    // weight-1/2 sub-product of the general formula
    bool ok = false;
    std::string failure;
};

/// Two-symbol symbolic partition verification: the lcm of steady-state
/// denominators must equal both the closed form and the weight-1/2
/// sub-product of the general factored partition function. The lcm over the
/// transformed-basis y is reported but not asserted: from L = 3 on it keeps
/// factors (e.g. 2+2a+b) that cancel out of every state-basis entry.
inline PartitionCheck verify_partition(int L) {
    PartitionCheck rep;
    rep.L = L;
    Params<Poly> p = Params<Poly>::specialized(L, Poly::symbol("a"), Poly::symbol("b"));
    auto ss = steady_state(p);
    rep.lcm_x = lcm_denominators(ss.x);
    rep.lcm_y = lcm_denominators(ss.y);
    rep.closed_form = partition_closed_form(L);
    rep.low_weight = partition_product_low_weight(p);
    rep.ok = rep.lcm_x == rep.closed_form && rep.lcm_x == rep.low_weight;
    if (!rep.ok)
        rep.failure = "lcm " + rep.lcm_x.to_string() + " vs closed form " +
                      rep.closed_form.to_string() + " vs low-weight product " +
                      rep.low_weight.to_string();
    return rep;
}

/// Fully general symbolic model at small L: one symbol per alpha entry
/// ("a" + bits) and per rate ("b" + site).
inline Params<Poly> general_symbolic_params(int L) {
    std::map<std::uint32_t, Poly> alpha;
    for (const BitState& b : all_states(L))
        alpha[b.value] = Poly::symbol("a" + b.to_string());
    std::vector<Poly> beta;
    for (int j = 1; j <= L; ++j) beta.push_back(Poly::symbol("b" + std::to_string(j)));
    return Params<Poly>(L, std::move(alpha), std::move(beta));
}

}  // namespace aap
