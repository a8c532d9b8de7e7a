#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <aap/rational.hpp>

namespace aap {

/// Dense univariate polynomial over the rationals, coefficient of x^i at
/// index i. Used for interpolated characteristic polynomials.
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim_(); }
    static UniPoly constant(const Rat& v) { return UniPoly({v}); }
    static UniPoly x_plus(const Rat& shift) { return UniPoly({shift, Rat(1)}); }

    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? -1 : int(c_.size()) - 1; }
    Rat coeff(int i) const { return i >= 0 && i < int(c_.size()) ? c_[std::size_t(i)] : Rat(0); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rat> out(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
        return UniPoly(std::move(out));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<Rat> out(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(out));
    }
    UniPoly pow(int e) const {
        UniPoly r = constant(Rat(1));
        UniPoly base = *this;
        for (; e; e >>= 1) {
            if (e & 1) r = r * base;
            if (e > 1) base = base * base;
        }
        return r;
    }

    Rat eval(const Rat& x) const {
        Rat out = 0;
        for (std::size_t i = c_.size(); i-- > 0;) out = out * x + c_[i];
        return out;
    }

    friend bool operator==(const UniPoly&, const UniPoly&) = default;

    /// Unique interpolant through (nodes[i], values[i]); Newton divided
    /// differences, exact.
    static UniPoly interpolate(const std::vector<Rat>& nodes, const std::vector<Rat>& values) {
        if (nodes.size() != values.size() || nodes.empty())
            throw std::invalid_argument("UniPoly: bad interpolation data");
        const std::size_t n = nodes.size();
        std::vector<Rat> dd = values;  // dd[i] becomes the i-th divided difference
        for (std::size_t k = 1; k < n; ++k)
            for (std::size_t i = n - 1; i >= k; --i)
                dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - k]);
        UniPoly result = constant(dd[n - 1]);
        for (std::size_t i = n - 1; i-- > 0;)
            result = result * x_plus(-nodes[i]) + constant(dd[i]);
        return result;
    }

    std::string to_string(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            const Rat& coef = c_[i];
            if (coef == 0) continue;
            std::string mag = aap::to_string(coef < 0 ? Rat(-coef) : coef);
            std::string term;
            if (i == 0)
                term = mag;
            else {
                term = (mag == "1" ? "" : mag + "*") + var;
                if (i > 1) term += "^" + std::to_string(i);
            }
            if (out.empty())
                out = (coef < 0 ? "-" : "") + term;
            else
                out += (coef < 0 ? "-" : "+") + term;
        }
        return out.empty() ? "0" : out;
    }

  private:
    void trim_() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

}  // namespace aap
