#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "laclab/errors.hpp"
#include "laclab/rng.hpp"
#include "laclab/sequence.hpp"

namespace laclab {

// Two stochastic group processes serve as the example sequences. Estimates
// are deterministic functions of (seed, trials, workers): trials are split
// into contiguous per-worker chunks, each chunk runs its own derived-seed
// generator, and partial results merge in chunk order. workers defaults to 1.

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    std::string rng = kRngName;
};

namespace detail {

/// One run of the mutual-selection elimination: every person picks another
/// uniformly, all picked people leave, repeat on the remainder. Returns true
/// when the run ends with exactly one person left.
inline bool survivor_trial(std::int64_t n, Rng& rng, std::vector<unsigned char>& picked) {
    std::int64_t cur = n;
    while (cur >= 2) {
        picked.assign(static_cast<std::size_t>(cur), 0);
        for (std::int64_t i = 0; i < cur; ++i) {
            // Uniform over the other cur-1 people.
            auto j = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(cur - 1)));
            if (j >= i) ++j;
            picked[static_cast<std::size_t>(j)] = 1;
        }
        std::int64_t remaining = 0;
        for (unsigned char p : picked) remaining += (p == 0);
        cur = remaining;  // at least one person is always picked, so cur shrinks
    }
    return cur == 1;
}

/// One run of the three-way splitting process: every live group partitions
/// uniformly into three subgroups, groups of size <= 1 leave. Returns the
/// number of partition rounds until nothing is left; size <= 1 start never
/// enters a round.
inline std::int64_t three_split_trial(std::int64_t k, Rng& rng) {
    std::vector<std::int64_t> groups;
    if (k >= 2) groups.push_back(k);
    std::int64_t rounds = 0;
    std::vector<std::int64_t> next;
    while (!groups.empty()) {
        ++rounds;
        next.clear();
        for (std::int64_t g : groups) {
            std::int64_t c[3] = {0, 0, 0};
            for (std::int64_t i = 0; i < g; ++i) ++c[rng.below(3)];
            for (std::int64_t ci : c)
                if (ci >= 2) next.push_back(ci);
        }
        groups.swap(next);
    }
    return rounds;
}

template <typename ChunkFn>
inline void run_chunks(std::int64_t trials, int workers, std::uint64_t seed, ChunkFn&& fn) {
    if (trials < 1) throw UsageError("simulate: trials must be >= 1");
    if (workers < 1) throw UsageError("simulate: workers must be >= 1");
    const int w = static_cast<int>(std::min<std::int64_t>(workers, trials));
    if (w == 1) {
        fn(0, trials);
        return;
    }
    std::vector<std::thread> pool;
    const std::int64_t base = trials / w, extra = trials % w;
    std::int64_t done = 0;
    for (int c = 0; c < w; ++c) {
        const std::int64_t count = base + (c < extra ? 1 : 0);
        pool.emplace_back([&fn, c, count] { fn(c, count); });
        done += count;
    }
    for (auto& t : pool) t.join();
    (void)done;
}

}  // namespace detail

/// Probability that the mutual-selection process started with n people ends
/// with one person remaining. n = 1 returns exactly 1.0 (a single person
/// trivially remains; there is nobody to select). n = 2 is exactly 0.0.
inline McEstimate simulate_survivor(std::int64_t n, std::int64_t trials, std::uint64_t seed,
                                    int workers = 1) {
    if (n < 1) throw UsageError("simulate_survivor: n must be >= 1");
    McEstimate est;
    est.trials = trials;
    est.seed = seed;
    if (n == 1) {
        if (trials < 1) throw UsageError("simulate: trials must be >= 1");
        est.value = 1.0;
        return est;
    }
    std::vector<std::int64_t> successes(static_cast<std::size_t>(std::max(workers, 1)), 0);
    detail::run_chunks(trials, workers, seed, [&](int chunk, std::int64_t count) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(chunk)));
        std::vector<unsigned char> picked;
        std::int64_t hits = 0;
        for (std::int64_t t = 0; t < count; ++t)
            hits += detail::survivor_trial(n, rng, picked) ? 1 : 0;
        successes[static_cast<std::size_t>(chunk)] = hits;
    });
    std::int64_t total = 0;
    for (std::int64_t h : successes) total += h;
    const double p = static_cast<double>(total) / static_cast<double>(trials);
    est.value = p;
    est.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return est;
}

struct SplitEstimate {
    McEstimate rounds;       // mean iteration count until complete removal
    double normalized = 0.0; // rounds.value / k, the sequence the analysis uses
};

/// Expected partition-round count of the three-way splitting process started
/// with k people. k = 1 returns exactly 0 rounds: the initial singleton is
/// removed before any partitioning happens.
inline SplitEstimate simulate_three_split(std::int64_t k, std::int64_t trials,
                                          std::uint64_t seed, int workers = 1) {
    if (k < 1) throw UsageError("simulate_three_split: k must be >= 1");
    SplitEstimate est;
    est.rounds.trials = trials;
    est.rounds.seed = seed;
    if (k == 1) {
        if (trials < 1) throw UsageError("simulate: trials must be >= 1");
        return est;
    }
    const auto w = static_cast<std::size_t>(std::max(workers, 1));
    std::vector<double> sums(w, 0.0), sq_sums(w, 0.0);
    detail::run_chunks(trials, workers, seed, [&](int chunk, std::int64_t count) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(chunk)));
        double s = 0.0, s2 = 0.0;
        for (std::int64_t t = 0; t < count; ++t) {
            const auto r = static_cast<double>(detail::three_split_trial(k, rng));
            s += r;
            s2 += r * r;
        }
        sums[static_cast<std::size_t>(chunk)] = s;
        sq_sums[static_cast<std::size_t>(chunk)] = s2;
    });
    double sum = 0.0, sq = 0.0;
    for (std::size_t c = 0; c < w; ++c) {
        sum += sums[c];
        sq += sq_sums[c];
    }
    const auto nt = static_cast<double>(trials);
    const double mean = sum / nt;
    const double var = std::max(0.0, sq / nt - mean * mean);
    est.rounds.value = mean;
    est.rounds.std_error = std::sqrt(var / nt);
    est.normalized = mean / static_cast<double>(k);
    return est;
}

// ---------------------------------------------------------------------------
// Estimate sequences (index n gets its own derived seed, so a prefix is
// independent of n_max and extending it never reshuffles earlier entries)
// ---------------------------------------------------------------------------

inline SequenceSource survivor_sequence(std::int64_t n_max, std::int64_t trials,
                                        std::uint64_t seed, int workers = 1) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n_max));
    for (std::int64_t n = 1; n <= n_max; ++n)
        values.push_back(
            simulate_survivor(n, trials, derive_seed(seed, static_cast<std::uint64_t>(n)), workers)
                .value);
    return SequenceSource::from_values("survivor", std::move(values), seed);
}

/// The normalized sequence (α_1/1, α_2/2, …) built from mean round counts.
inline SequenceSource three_split_normalized_sequence(std::int64_t k_max, std::int64_t trials,
                                                      std::uint64_t seed, int workers = 1) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(k_max));
    for (std::int64_t k = 1; k <= k_max; ++k)
        values.push_back(simulate_three_split(
                             k, trials, derive_seed(seed, static_cast<std::uint64_t>(k)), workers)
                             .normalized);
    return SequenceSource::from_values("split3norm", std::move(values), seed);
}

}  // namespace laclab
