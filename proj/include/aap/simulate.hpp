#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <aap/steady_state.hpp>

namespace aap {

struct SimulationResult {
    int L = 0;
    std::uint64_t events = 0;
    std::uint64_t seed = 0;
    double burn_in = 0.0;
    std::vector<double> occupation;  // time-weighted frequencies, sums to 1
    std::vector<Rat> exact;          // exact steady state for comparison
    double tv_distance = 0.0;        // half L1 distance to the exact vector
};

/*
 * Continuous-time simulation of the annihilation process, embedded jump
 * chain with exponential holding times. From state b the enabled moves are
 * psi_j(b) at rate 1 for occupied interior sites, rate beta at the last
 * site, plus a flip of site 1 at rate alpha (creation when empty,
 * annihilation when occupied). Uniform deviates are derived from the raw
 * 64-bit generator output so runs are reproducible across platforms.
 */
inline SimulationResult simulate_ctmc(int L, const Rat& alpha, const Rat& beta,
                                      std::uint64_t events, std::uint64_t seed,
                                      double burn_in = 0.1) {
    if (L < 1 || L > 20) throw std::invalid_argument("simulate_ctmc: L out of range");
    if (alpha <= 0 || beta <= 0)
        throw std::invalid_argument("simulate_ctmc: rates must be positive");
    if (events < 1) throw std::invalid_argument("simulate_ctmc: need at least one event");
    if (burn_in < 0.0 || burn_in >= 1.0)
        throw std::invalid_argument("simulate_ctmc: burn-in fraction must be in [0,1)");

    const double a = alpha.convert_to<double>();
    const double b = beta.convert_to<double>();
    const std::size_t n = std::size_t(1) << L;
    const std::uint32_t first_site = std::uint32_t(1) << (L - 1);

    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        // 53-bit mantissa draw in (0,1]; never 0, so log stays finite
        return (double(rng() >> 11) + 1.0) * 0x1.0p-53;
    };

    std::vector<double> hold(n, 0.0);
    const std::uint64_t burn_events = std::uint64_t(double(events) * burn_in);
    std::uint32_t state = 0;

    // per-state transition table: (rate, successor), site moves first
    std::vector<std::vector<std::pair<double, std::uint32_t>>> moves(n);
    for (const BitState& bs : all_states(L)) {
        auto& row = moves[bs.value];
        for (int j = 1; j <= L; ++j)
            if (bs.bit(j)) row.emplace_back(j == L ? b : 1.0, flip_pair(j, bs).value);
        row.emplace_back(a, bs.value ^ first_site);
    }
    std::vector<double> total(n, 0.0);
    for (std::size_t s = 0; s < n; ++s)
        for (const auto& [rate, next] : moves[s]) total[s] += rate;

    for (std::uint64_t e = 0; e < events; ++e) {
        const double dwell = -std::log(uniform()) / total[state];
        if (e >= burn_events) hold[state] += dwell;
        double pick = uniform() * total[state];
        std::uint32_t next = moves[state].back().second;
        for (const auto& [rate, succ] : moves[state]) {
            if (pick < rate) {
                next = succ;
                break;
            }
            pick -= rate;
        }
        state = next;
    }

    SimulationResult out;
    out.L = L;
    out.events = events;
    out.seed = seed;
    out.burn_in = burn_in;
    out.exact = steady_state_specialized(L, alpha, beta).x;
    double mass = 0.0;
    for (double h : hold) mass += h;
    out.occupation.resize(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) out.occupation[s] = hold[s] / mass;
    double tv = 0.0;
    for (std::size_t s = 0; s < n; ++s)
        tv += std::abs(out.occupation[s] - out.exact[s].convert_to<double>());
    out.tv_distance = tv / 2.0;
    return out;
}

}  // namespace aap
