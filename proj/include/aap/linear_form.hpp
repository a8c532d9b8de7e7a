#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <aap/polynomial.hpp>
#include <aap/rational.hpp>

namespace aap {

/*
 * Degree-<=1 polynomials get their own type: eigenvalues, denominator
 * factors and partition-function factors are all linear forms, and keeping
 * them as (constant, coefficient map) makes multiset bookkeeping exact.
 */
struct LinearForm {
    Rat constant{0};
    std::map<std::string, Rat> coeffs;  // no stored zeros

    LinearForm() = default;
    explicit LinearForm(const Rat& c) : constant(c) {}

    static LinearForm symbol(const std::string& name, const Rat& coeff = Rat(1)) {
        LinearForm f;
        if (coeff != 0) f.coeffs[name] = coeff;
        return f;
    }

    bool is_zero() const { return constant == 0 && coeffs.empty(); }
    bool is_constant() const { return coeffs.empty(); }

    LinearForm& operator+=(const LinearForm& o) {
        constant += o.constant;
        for (const auto& [s, c] : o.coeffs) {
            auto [it, ins] = coeffs.try_emplace(s, c);
            if (!ins) {
                it->second += c;
                if (it->second == 0) coeffs.erase(it);
            }
        }
        return *this;
    }
    friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a += -b; }
    friend LinearForm operator-(const LinearForm& a) {
        LinearForm out;
        out.constant = -a.constant;
        for (const auto& [s, c] : a.coeffs) out.coeffs[s] = -c;
        return out;
    }
    LinearForm& scale(const Rat& r) {
        if (r == 0) return *this = LinearForm();
        constant *= r;
        for (auto& [s, c] : coeffs) c *= r;
        return *this;
    }
    friend LinearForm operator*(LinearForm a, const Rat& r) { return a.scale(r); }

    friend bool operator==(const LinearForm&, const LinearForm&) = default;
    friend bool operator<(const LinearForm& a, const LinearForm& b) {
        if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
        return a.constant < b.constant;
    }

    Poly to_poly() const {
        Poly p(constant);
        for (const auto& [s, c] : coeffs) p += Poly::symbol(s) * c;
        return p;
    }

    static std::optional<LinearForm> from_poly(const Poly& p) {
        LinearForm f;
        for (const auto& [m, c] : p.terms()) {
            if (m.empty())
                f.constant = c;
            else if (m.size() == 1 && m[0].second == 1)
                f.coeffs[m[0].first] = c;
            else
                return std::nullopt;
        }
        return f;
    }

    Rat eval(const std::map<std::string, Rat>& bindings) const {
        Rat out = constant;
        for (const auto& [s, c] : coeffs) {
            auto it = bindings.find(s);
            if (it == bindings.end()) throw std::invalid_argument("LinearForm: unbound symbol " + s);
            out += c * it->second;
        }
        return out;
    }

    /// Leading coefficient: the first symbol coefficient (by name), else the
    /// constant.
    const Rat& leading() const { return coeffs.empty() ? constant : coeffs.begin()->second; }

    /// Splits into content * primitive where the primitive part has coprime
    /// integer coefficients and positive leading coefficient.
    std::pair<Rat, LinearForm> primitive() const {
        if (is_zero()) throw std::logic_error("LinearForm: primitive of zero");
        Int g = boost::multiprecision::abs(numer(constant));
        Int l = denom(constant);
        for (const auto& [s, c] : coeffs) {
            g = int_gcd(g, boost::multiprecision::abs(numer(c)));
            l = int_lcm(l, denom(c));
        }
        Rat content(g, l);
        if (leading() < 0) content = -content;
        LinearForm prim = *this;
        prim.scale(Rat(1) / content);
        return {content, prim};
    }

    /// Two nonzero forms are proportional iff they generate the same ideal;
    /// decided by comparing primitive parts.
    bool proportional_to(const LinearForm& o) const {
        if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
        return primitive().second == o.primitive().second;
    }

    /// Constant-first rendering: "1+2a", "2a+b", "-2a-b", "2+x".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        auto append = [&](const Rat& c, const std::string& sym) {
            if (c == 0) return;
            std::string mag = aap::to_string(c < 0 ? Rat(-c) : c);
            std::string term = sym.empty() ? mag : (mag == "1" ? sym : mag + sym);
            if (out.empty())
                out = (c < 0 ? "-" : "") + term;
            else
                out += (c < 0 ? "-" : "+") + term;
        };
        append(constant, "");
        for (const auto& [s, c] : coeffs) append(c, s);
        return out;
    }
};

}  // namespace aap
