#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <aap/rational.hpp>

namespace aap {

/*
 * Sparse multivariate polynomials over the rationals. Symbols are plain
 * strings; a monomial is its exponent support sorted by symbol name, so the
 * term order (pure lex, earlier symbol name dominates) and every rendering
 * are canonical without any global registry.
 */
using Monomial = std::vector<std::pair<std::string, int>>;

inline int monomial_cmp(const Monomial& a, const Monomial& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (i == a.size()) return -1;  // b has a variable where a is constant
        if (j == b.size()) return 1;
        if (a[i].first != b[j].first)
            return a[i].first < b[j].first ? 1 : -1;  // earlier symbol dominates
        if (a[i].second != b[j].second) return a[i].second > b[j].second ? 1 : -1;
        ++i, ++j;
    }
    return 0;
}

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return monomial_cmp(a, b) < 0; }
};

inline bool monomial_divides(const Monomial& d, const Monomial& m) {
    std::size_t j = 0;
    for (const auto& [sym, exp] : d) {
        while (j < m.size() && m[j].first < sym) ++j;
        if (j == m.size() || m[j].first != sym || m[j].second < exp) return false;
    }
    return true;
}

inline Monomial monomial_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
            out.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first)
            out.push_back(b[j++]);
        else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        }
    }
    return out;
}

/// Quotient m / d; requires monomial_divides(d, m).
inline Monomial monomial_div(const Monomial& m, const Monomial& d) {
    Monomial out;
    std::size_t j = 0;
    for (const auto& [sym, exp] : m) {
        int e = exp;
        if (j < d.size() && d[j].first == sym) e -= d[j++].second;
        if (e) out.emplace_back(sym, e);
    }
    return out;
}

class Poly {
  public:
    using Terms = std::map<Monomial, Rat, MonomialLess>;

    Poly() = default;
    explicit Poly(const Rat& c) {
        if (c != 0) terms_[Monomial{}] = c;
    }
    explicit Poly(long long c) : Poly(Rat(c)) {}

    static Poly symbol(const std::string& name, int exp = 1) {
        Poly p;
        if (exp < 0) throw std::invalid_argument("Poly: negative exponent");
        if (exp == 0) return Poly(Rat(1));
        p.terms_[Monomial{{name, exp}}] = 1;
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_constant()) throw std::logic_error("Poly: not a constant");
        return terms_.begin()->second;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) {
            int t = 0;
            for (const auto& [sym, e] : m) t += e;
            d = std::max(d, t);
        }
        return d;
    }

    /// Largest term in the lex order.
    const std::pair<const Monomial, Rat>& leading_term() const {
        if (terms_.empty()) throw std::logic_error("Poly: leading term of zero");
        return *terms_.rbegin();
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) {
        Poly out;
        for (const auto& [m, c] : a.terms_) out.terms_[m] = -c;
        return out;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(monomial_mul(ma, mb), ca * cb);
        return out;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly& scale(const Rat& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, coef] : terms_) coef *= c;
        return *this;
    }
    friend Poly operator*(Poly a, const Rat& c) { return a.scale(c); }
    friend Poly operator*(const Rat& c, Poly a) { return a.scale(c); }

    Poly pow(int e) const {
        if (e < 0) throw std::invalid_argument("Poly: negative power");
        Poly r(Rat(1));
        Poly base = *this;
        for (; e; e >>= 1) {
            if (e & 1) r *= base;
            if (e > 1) base *= base;
        }
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    /// Total order, usable as a map key; lexicographic over the canonical
    /// term sequence.
    friend bool operator<(const Poly& a, const Poly& b) {
        auto i = a.terms_.begin();
        auto j = b.terms_.begin();
        for (; i != a.terms_.end() && j != b.terms_.end(); ++i, ++j) {
            int c = monomial_cmp(i->first, j->first);
            if (c != 0) return c < 0;
            if (i->second != j->second) return i->second < j->second;
        }
        return i == a.terms_.end() && j != b.terms_.end();
    }

    /// Substitutes rationals for every symbol; throws on an unbound symbol.
    Rat eval(const std::map<std::string, Rat>& bindings) const {
        Rat out = 0;
        for (const auto& [m, c] : terms_) {
            Rat t = c;
            for (const auto& [sym, e] : m) {
                auto it = bindings.find(sym);
                if (it == bindings.end()) throw std::invalid_argument("Poly: unbound symbol " + sym);
                for (int k = 0; k < e; ++k) t *= it->second;
            }
            out += t;
        }
        return out;
    }

    /// Rational content with the sign of the leading coefficient, so that
    /// *this == content() * primitive() with an integer, content-1,
    /// positive-leading primitive part.
    Rat content() const {
        if (terms_.empty()) return Rat(0);
        Int g = 0, l = 1;
        for (const auto& [m, c] : terms_) {
            g = int_gcd(g, boost::multiprecision::abs(numer(c)));
            l = int_lcm(l, denom(c));
        }
        Rat cont(g, l);
        if (leading_term().second < 0) cont = -cont;
        return cont;
    }

    Poly primitive() const {
        Rat c = content();
        if (c == 0) return Poly();
        Poly out = *this;
        out.scale(Rat(1) / c);
        return out;
    }

    /// Exact division; returns false (quotient unspecified) when the divisor
    /// does not divide exactly.
    bool divide_exact(const Poly& divisor, Poly& quotient) const {
        if (divisor.is_zero()) throw std::invalid_argument("Poly: division by zero");
        Poly rem = *this;
        Poly q;
        const auto& dlt = divisor.leading_term();
        while (!rem.is_zero()) {
            const auto& rlt = rem.leading_term();
            if (!monomial_divides(dlt.first, rlt.first)) return false;
            Monomial qm = monomial_div(rlt.first, dlt.first);
            Rat qc = rlt.second / dlt.second;
            Poly t;
            t.terms_[qm] = qc;
            q += t;
            rem -= t * divisor;
        }
        quotient = std::move(q);
        return true;
    }

    /// Canonical rendering, highest term first: "2*a^2*b-3*a+1/2".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            std::string mag = aap::to_string(c < 0 ? Rat(-c) : c);
            std::string term;
            if (m.empty()) {
                term = mag;
            } else {
                if (mag != "1") term = mag + "*";
                bool first = true;
                for (const auto& [sym, e] : m) {
                    if (!first) term += "*";
                    first = false;
                    term += sym;
                    if (e != 1) term += "^" + std::to_string(e);
                }
            }
            if (out.empty())
                out = (c < 0 ? "-" : "") + term;
            else
                out += (c < 0 ? "-" : "+") + term;
        }
        return out;
    }

  private:
    void add_term(const Monomial& m, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Terms terms_;
};

}  // namespace aap
