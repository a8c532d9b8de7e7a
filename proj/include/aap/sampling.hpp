#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <aap/operators.hpp>
#include <aap/rational.hpp>
#include <aap/spectrum.hpp>

namespace aap {

/// Seeded source of exact rational parameters for the randomized exact
/// checks. A single generic point witnesses a polynomial identity only
/// probabilistically, so draws are logged by callers for replay.
class RatSampler {
  public:
    explicit RatSampler(std::uint64_t seed) : rng_(seed) {}

    /// Uniform p/q with 1 <= p, q <= bound (default the spec'd 10^3).
    Rat positive(int bound = 1000) {
        std::uniform_int_distribution<int> d(1, bound);
        return Rat(d(rng_), d(rng_));
    }

    Rat nonzero_signed(int bound = 1000) {
        Rat r = positive(bound);
        std::uniform_int_distribution<int> coin(0, 1);
        return coin(rng_) ? r : Rat(-r);
    }

    /// Generic (a, b) for the two-parameter model: redraws until the 2L
    /// closed-form eigenvalues are pairwise distinct.
    std::pair<Rat, Rat> generic_specialized_point(int L) {
        for (int tries = 0; tries < 1000; ++tries) {
            Rat a = positive();
            Rat b = positive();
            auto spectrum = closed_form_spectrum(Params<Rat>::specialized(L, a, b));
            if (int(spectrum.size()) == 2 * L) return {a, b};
        }
        throw std::logic_error("RatSampler: could not find a generic point");
    }

    /// Sparse general parameters: nnz random alpha entries (always including
    /// the empty configuration) and positive rates.
    Params<Rat> general_point(int L, int nnz) {
        std::map<std::uint32_t, Rat> alpha;
        std::uniform_int_distribution<std::uint32_t> st(0, (std::uint32_t(1) << L) - 1);
        alpha[0] = nonzero_signed();
        while (int(alpha.size()) < nnz) alpha[st(rng_)] = nonzero_signed();
        std::vector<Rat> beta;
        for (int j = 0; j < L; ++j) beta.push_back(positive());
        return Params<Rat>(L, std::move(alpha), std::move(beta));
    }

    std::vector<Rat> rate_vector(int L) {
        std::vector<Rat> beta;
        for (int j = 0; j < L; ++j) beta.push_back(positive());
        return beta;
    }

    std::vector<Rat> vector(int n, int bound = 1000) {
        std::vector<Rat> v;
        for (int i = 0; i < n; ++i) v.push_back(nonzero_signed(bound));
        return v;
    }

    std::mt19937_64& rng() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

}  // namespace aap
