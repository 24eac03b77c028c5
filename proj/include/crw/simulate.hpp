#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "crw/errors.hpp"
#include "crw/model.hpp"

namespace crw {

/// One walker: current vertex plus the internal label selecting the coin column.
struct WalkerState {
    std::size_t x;
    Side j;
};

struct SimConfig {
    std::uint64_t walkers = 1;
    std::uint64_t t = 0;
    std::uint64_t seed = 0;
    WalkerState initial{0, Side::L};
    /// When set, each walker samples its starting (x, j) from this
    /// probability state instead of using `initial`.
    std::optional<StateVector> initial_state;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent per-walker stream: serial and parallel schedules see the same
/// draws for a given (seed, walker index).
inline std::mt19937_64 walker_rng(std::uint64_t seed, std::uint64_t walker_index) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ walker_index));
}

/// One step of U = SC on a single walker: sample the new label from the
/// current coin column, then shift deterministically.
template <typename Rng>
WalkerState step(const PathCRWModel& model, WalkerState state, Rng& rng) {
    const CoinParams& coin = model.family.coins[state.x];
    const double p_left = state.j == Side::L ? coin.p_L : coin.p_R;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Side drawn = unit(rng) < p_left ? Side::L : Side::R;
    if (drawn == Side::L)
        return state.x == 0 ? WalkerState{0, Side::L} : WalkerState{state.x - 1, Side::R};
    return state.x == model.n ? WalkerState{model.n, Side::R}
                              : WalkerState{state.x + 1, Side::L};
}

template <typename Rng>
WalkerState sample_initial(const PathCRWModel& model, const SimConfig& cfg, Rng& rng) {
    if (!cfg.initial_state) return cfg.initial;
    const StateVector& phi = *cfg.initial_state;
    require_dim(model, phi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = unit(rng);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        u -= phi[i];
        if (u < 0.0) return {i / 2, static_cast<Side>(i % 2)};
    }
    return {model.n, Side::R};
}

/// Vertex histogram of cfg.walkers independent trajectories after cfg.t
/// steps, normalized to 1. Deterministic for a given seed.
inline Distribution empirical_distribution(const PathCRWModel& model, const SimConfig& cfg) {
    std::vector<std::uint64_t> counts(model.vertex_count(), 0);
    for (std::uint64_t w = 0; w < cfg.walkers; ++w) {
        std::mt19937_64 rng = walker_rng(cfg.seed, w);
        WalkerState state = sample_initial(model, cfg, rng);
        for (std::uint64_t s = 0; s < cfg.t; ++s) state = step(model, state, rng);
        ++counts[state.x];
    }
    Distribution hist(model.vertex_count());
    for (std::size_t x = 0; x < hist.size(); ++x)
        hist[x] = static_cast<double>(counts[x]) / static_cast<double>(cfg.walkers);
    return hist;
}

/// Exact evolution oracle: t repeated applications of U.
inline StateVector evolve_dense(const PathCRWModel& model, const StateVector& phi,
                                std::uint64_t t) {
    require_dim(model, phi);
    StateVector state = phi;
    for (std::uint64_t s = 0; s < t; ++s) state = apply_U(model, state);
    return state;
}

} // namespace crw
