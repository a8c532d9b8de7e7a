#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <aap/linear_form.hpp>
#include <aap/polynomial.hpp>
#include <aap/rational.hpp>

namespace aap {

/// Multiset of primitive linear forms with a rational content factor.
/// Products of linear forms (factored characteristic polynomials, partition
/// functions, denominators) live here; lcm/gcd are per-form max/min on
/// multiplicities, valid because distinct primitive forms are coprime.
struct FactorMultiset {
    Rat content{1};
    std::map<LinearForm, int> factors;  // primitive form -> multiplicity > 0

    static FactorMultiset one() { return {}; }

    /// Multiplies in form^exp, splitting off content; constant forms fold
    /// entirely into the content.
    void push(const LinearForm& form, int exp = 1) {
        if (exp == 0) return;
        if (exp < 0) throw std::invalid_argument("FactorMultiset: negative exponent");
        if (form.is_zero()) throw std::invalid_argument("FactorMultiset: zero factor");
        auto [c, prim] = form.primitive();
        for (int i = 0; i < exp; ++i) content *= c;
        if (!prim.is_constant()) factors[prim] += exp;
    }

    void push(const FactorMultiset& o) {
        content *= o.content;
        for (const auto& [f, e] : o.factors) factors[f] += e;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [f, e] : factors) d += e;
        return d;
    }

    /// Per-form max of multiplicities; contents combine by integer lcm
    /// (both sides must have integer content).
    static FactorMultiset lcm(const FactorMultiset& a, const FactorMultiset& b) {
        if (denom(a.content) != 1 || denom(b.content) != 1)
            throw std::invalid_argument("FactorMultiset: lcm needs integer contents");
        FactorMultiset out = a;
        out.content = Rat(int_lcm(numer(a.content), numer(b.content)));
        for (const auto& [f, e] : b.factors) {
            int& cur = out.factors[f];
            cur = std::max(cur, e);
        }
        return out;
    }

    /// Multiset difference; throws unless b divides a exactly (contents too).
    static FactorMultiset divide(const FactorMultiset& a, const FactorMultiset& b) {
        FactorMultiset out = a;
        out.content = a.content / b.content;
        for (const auto& [f, e] : b.factors) {
            auto it = out.factors.find(f);
            if (it == out.factors.end() || it->second < e)
                throw std::invalid_argument("FactorMultiset: not a sub-multiset: (" +
                                            f.to_string() + ")^" + std::to_string(e));
            it->second -= e;
            if (it->second == 0) out.factors.erase(it);
        }
        return out;
    }

    Poly expand() const {
        Poly p(content);
        for (const auto& [f, e] : factors) p *= f.to_poly().pow(e);
        return p;
    }

    Rat eval(const std::map<std::string, Rat>& bindings) const {
        Rat out = content;
        for (const auto& [f, e] : factors) {
            Rat v = f.eval(bindings);
            for (int i = 0; i < e; ++i) out *= v;
        }
        return out;
    }

    friend bool operator==(const FactorMultiset&, const FactorMultiset&) = default;

    /// "2^3*(1+2a)^3*(1+b)^3*(2a+b)"; factors sorted by rendered string.
    std::string to_string() const {
        std::vector<std::string> parts;
        if (content != 1 || factors.empty()) {
            // content rendered as p or p/q; powers of two shown as 2^k
            Rat c = content;
            std::string cs;
            if (denom(c) == 1 && numer(c) > 1) {
                Int n = numer(c);
                int e = 0;
                while (n % 2 == 0) { n /= 2; ++e; }
                if (n == 1 && e > 1)
                    cs = "2^" + std::to_string(e);
                else
                    cs = aap::to_string(c);
            } else {
                cs = aap::to_string(c);
            }
            parts.push_back(cs);
        }
        std::vector<std::string> rendered;
        for (const auto& [f, e] : factors) {
            std::string s = "(" + f.to_string() + ")";
            if (e != 1) s += "^" + std::to_string(e);
            rendered.push_back(s);
        }
        std::sort(rendered.begin(), rendered.end());
        parts.insert(parts.end(), rendered.begin(), rendered.end());
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
        return out.empty() ? "1" : out;
    }
};

/// A rational function kept in factored normal form: content * num / prod(den),
/// where num is a primitive integer polynomial with positive leading
/// coefficient, den is a multiset of primitive non-constant linear forms, and
/// no den form divides num. This representation is unique, so equality is
/// structural.
class FactoredRational {
  public:
    FactoredRational() : content_(0), num_(Rat(1)) {}
    explicit FactoredRational(const Rat& r) : content_(r), num_(Rat(1)) {}
    explicit FactoredRational(const Poly& p) : content_(p.content()), num_(p.primitive()) {
        if (p.is_zero()) num_ = Poly(Rat(1));
    }
    FactoredRational(const Poly& num, const std::map<LinearForm, int>& den)
        : FactoredRational(num) {
        for (const auto& [f, e] : den) divide_by_form(f, e);
    }

    const Rat& content() const { return content_; }
    const Poly& numerator() const { return num_; }
    const std::map<LinearForm, int>& denominator() const { return den_; }

    bool is_zero() const { return content_ == 0; }

    /// Denominator with integer content (from the content's denominator)
    /// split out, for lcm computations.
    FactorMultiset denominator_multiset() const {
        FactorMultiset out;
        out.content = Rat(denom(content_));
        for (const auto& [f, e] : den_) out.factors.emplace(f, e);
        return out;
    }

    FactoredRational& operator*=(const FactoredRational& o) {
        if (is_zero() || o.is_zero()) return *this = FactoredRational();
        content_ *= o.content_;
        num_ = num_ * o.num_;  // product of primitives stays primitive
        for (const auto& [f, e] : o.den_) den_[f] += e;
        reduce_();
        return *this;
    }
    friend FactoredRational operator*(FactoredRational a, const FactoredRational& b) {
        return a *= b;
    }

    FactoredRational& operator+=(const FactoredRational& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) return *this = o;
        // common denominator = per-form max multiplicity
        std::map<LinearForm, int> common = den_;
        for (const auto& [f, e] : o.den_) {
            int& cur = common[f];
            cur = std::max(cur, e);
        }
        Poly left = num_ * content_;
        Poly right = o.num_ * o.content_;
        for (const auto& [f, e] : common) {
            auto complement = [&](const std::map<LinearForm, int>& d) {
                auto it = d.find(f);
                return e - (it == d.end() ? 0 : it->second);
            };
            Poly fp = f.to_poly();
            left *= fp.pow(complement(den_));
            right *= fp.pow(complement(o.den_));
        }
        Poly sum = left + right;
        *this = FactoredRational(sum);
        den_ = std::move(common);
        reduce_();
        return *this;
    }
    friend FactoredRational operator+(FactoredRational a, const FactoredRational& b) {
        return a += b;
    }
    friend FactoredRational operator-(const FactoredRational& a) {
        FactoredRational out = a;
        out.content_ = -out.content_;
        return out;
    }
    FactoredRational& operator-=(const FactoredRational& o) { return *this += -o; }
    friend FactoredRational operator-(FactoredRational a, const FactoredRational& b) {
        return a -= b;
    }

    FactoredRational& scale(const Rat& r) {
        if (r == 0) return *this = FactoredRational();
        content_ *= r;
        return *this;
    }

    FactoredRational& divide_by_form(const LinearForm& form, int exp = 1) {
        if (form.is_zero()) throw std::invalid_argument("FactoredRational: division by zero form");
        auto [c, prim] = form.primitive();
        for (int i = 0; i < exp; ++i) content_ /= c;
        if (!prim.is_constant() && !is_zero()) den_[prim] += exp;
        reduce_();
        return *this;
    }

    friend bool operator==(const FactoredRational& a, const FactoredRational& b) {
        return a.content_ == b.content_ && a.num_ == b.num_ && a.den_ == b.den_;
    }

    Rat eval(const std::map<std::string, Rat>& bindings) const {
        Rat out = content_ * num_.eval(bindings);
        for (const auto& [f, e] : den_) {
            Rat v = f.eval(bindings);
            if (v == 0) throw std::domain_error("FactoredRational: evaluation at pole");
            for (int i = 0; i < e; ++i) out /= v;
        }
        return out;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        bool scaled = content_ != 1;
        if (scaled) out += aap::to_string(content_);
        if (!num_.is_constant() || num_.constant_value() != 1 || (!scaled && den_.empty())) {
            if (scaled) out += "*";
            bool paren = num_.terms().size() > 1 && (scaled || !den_.empty());
            out += paren ? "(" + num_.to_string() + ")" : num_.to_string();
        }
        if (!den_.empty()) {
            std::vector<std::string> rendered;
            for (const auto& [f, e] : den_) {
                std::string s = "(" + f.to_string() + ")";
                if (e != 1) s += "^" + std::to_string(e);
                rendered.push_back(s);
            }
            std::sort(rendered.begin(), rendered.end());
            std::string den;
            for (std::size_t i = 0; i < rendered.size(); ++i) den += (i ? "*" : "") + rendered[i];
            if (out.empty()) out = "1";
            out += "/" + (rendered.size() > 1 ? "(" + den + ")" : den);
        }
        return out.empty() ? "1" : out;
    }

  private:
    /// Trial-divides every denominator form into the numerator and restores
    /// the canonical content/primitive split. Idempotent.
    void reduce_() {
        if (num_.is_zero() || content_ == 0) {
            *this = FactoredRational();
            return;
        }
        for (auto it = den_.begin(); it != den_.end();) {
            bool erased = false;
            Poly q;
            while (it->second > 0 && num_.divide_exact(it->first.to_poly(), q)) {
                num_ = q;
                if (--it->second == 0) {
                    it = den_.erase(it);
                    erased = true;
                    break;
                }
            }
            if (!erased) ++it;
        }
        Rat c = num_.content();
        content_ *= c;
        num_ = num_.primitive();
    }

    Rat content_;
    Poly num_;
    std::map<LinearForm, int> den_;
};

/// Reduction to factored normal form (trial division of every denominator
/// form, content normalization). The constructor enforces the invariant, so
/// this is the identity on well-formed values; exposed for property tests.
inline FactoredRational reduce(const FactoredRational& f) {
    return FactoredRational(f.numerator() * f.content(), f.denominator());
}

/// Least common multiple of the denominators of reduced values: per distinct
/// primitive form the max multiplicity, plus the integer lcm of the integer
/// content parts.
inline FactorMultiset lcm_denominators(const std::vector<FactoredRational>& fs) {
    FactorMultiset out;
    for (const auto& f : fs) out = FactorMultiset::lcm(out, f.denominator_multiset());
    return out;
}

}  // namespace aap
