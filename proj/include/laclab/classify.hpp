#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "laclab/errors.hpp"
#include "laclab/lacunary.hpp"
#include "laclab/sequence.hpp"

namespace laclab {

// The core quantity everywhere below is the lacunary block mean
//
//     t_r = (1/h_r) * sum_{k in I_r} |Δ^m α_k - L|,
//
// and the classification question is whether t_r tends to 0. On a finite
// prefix that limit is undecidable, so verdicts are a named three-way policy:
// NullConvergent when the whole final window sits below eps_verdict and the
// tail is not growing, NotNull when the whole window sits above eps_floor,
// Inconclusive otherwise. Every report carries the policy that produced it.

enum class Outcome { NullConvergent, NotNull, Inconclusive };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::NullConvergent: return "NullConvergent";
        case Outcome::NotNull: return "NotNull";
        default: return "Inconclusive";
    }
}

struct Policy {
    std::string name = "default";
    int window = 3;               // W, number of final blocks a verdict inspects
    double eps_verdict = 0.05;    // below this the tail counts as null
    double eps_floor = 0.10;      // above this the tail counts as bounded away
    std::int64_t prefix_len = (std::int64_t{1} << 14) + 3;  // full depth-14 dyadic ladder
    int min_blocks = 4;           // complete blocks required after differencing

    void check() const {
        if (window < 1) throw UsageError("policy: window must be >= 1");
        if (!(eps_verdict > 0.0) || !(eps_floor > 0.0))
            throw UsageError("policy: thresholds must be > 0");
        if (prefix_len < 64) throw UsageError("policy: prefix_len must be >= 64");
        if (min_blocks < 1) throw UsageError("policy: min_blocks must be >= 1");
    }
};

/// Scheme matching the default policy: pow2 to depth 14; with the default
/// prefix 2^14 + 3 every block stays usable through order-3 differencing.
inline LacunaryScheme default_scheme() { return pow2_scheme(14); }

struct BlockMeanSeries {
    std::string scheme_name;
    std::string sequence_label;
    int order = 0;       // m
    double shift = 0.0;  // L
    std::vector<std::int64_t> block_index;   // r
    std::vector<std::int64_t> block_length;  // h_r
    std::vector<double> values;              // t_r
    std::int64_t dropped_blocks = 0;  // blocks past the differenced prefix

    std::size_t size() const { return values.size(); }
};

struct Verdict {
    Outcome outcome = Outcome::Inconclusive;
    double tail_mean = 0.0;    // mean of the final window
    double last_value = 0.0;   // t_R
    double decay_ratio = 0.0;  // fitted tail ratio, <= 1 means not growing
    int window_used = 0;
    std::string policy_name;
};

struct QCProfile {
    std::string sequence_label;
    std::string scheme_name;
    Policy policy;
    std::array<BlockMeanSeries, 3> series;  // orders 1, 2, 3
    std::array<Verdict, 3> orders;          // verdicts for m = 1, 2, 3

    const Verdict& at_order(int m) const { return orders[static_cast<std::size_t>(m - 1)]; }
    const BlockMeanSeries& series_at(int m) const {
        return series[static_cast<std::size_t>(m - 1)];
    }
};

/// Block means of |Δ^m α - L|. Blocks whose differenced terms would read past
/// the prefix are dropped (not truncated: partial means are biased) and
/// counted in dropped_blocks. Summation within a block is left-to-right.
inline BlockMeanSeries block_means(const SequenceSource& s, const LacunaryScheme& scheme,
                                   int order, double shift = 0.0) {
    const SequenceSource d = difference(s, order);
    BlockMeanSeries out;
    out.scheme_name = scheme.name();
    out.sequence_label = s.label();
    out.order = order;
    out.shift = shift;

    const std::vector<Block> usable = blocks(scheme, d.prefix_len());
    out.dropped_blocks = scheme.block_count() - static_cast<std::int64_t>(usable.size());
    if (usable.empty())
        throw DataError("block_means: no complete block of scheme '" + scheme.name() +
                        "' fits the differenced prefix of '" + s.label() + "' (len " +
                        std::to_string(d.prefix_len()) + ")");
    for (const Block& b : usable) {
        double acc = 0.0;
        for (std::int64_t k = b.lo; k <= b.hi; ++k) acc += std::abs(d(k) - shift);
        out.block_index.push_back(b.index);
        out.block_length.push_back(b.length);
        out.values.push_back(acc / static_cast<double>(b.length));
    }
    return out;
}

namespace detail {

/// Geometric-mean ratio of consecutive tail values. Exact zeros are treated
/// as decayed (ratio 0) unless a later value climbs back out of zero, which
/// reads as growth (+inf).
inline double fitted_decay_ratio(const std::vector<double>& t, int window) {
    const std::size_t n = t.size();
    const std::size_t take = std::min<std::size_t>(n, static_cast<std::size_t>(window) + 1);
    const std::size_t first = n - take;
    bool growth_from_zero = false, hit_zero = false;
    double log_sum = 0.0;
    int pairs = 0;
    for (std::size_t i = first; i + 1 < n; ++i) {
        const double a = t[i], b = t[i + 1];
        if (a == 0.0 && b == 0.0) continue;
        if (a == 0.0) { growth_from_zero = true; continue; }
        if (b == 0.0) { hit_zero = true; continue; }
        log_sum += std::log(b / a);
        ++pairs;
    }
    if (growth_from_zero) return std::numeric_limits<double>::infinity();
    if (hit_zero || pairs == 0) return 0.0;
    return std::exp(log_sum / pairs);
}

}  // namespace detail

/// Applies the three-way policy to a block-mean series.
inline Verdict trend_verdict(const BlockMeanSeries& series, const Policy& policy) {
    policy.check();
    if (series.values.empty()) throw UsageError("trend_verdict: empty series");

    const auto& t = series.values;
    const int w = static_cast<int>(
        std::min<std::size_t>(t.size(), static_cast<std::size_t>(policy.window)));
    const std::size_t first = t.size() - static_cast<std::size_t>(w);

    bool all_below = true, all_above = true;
    double tail_sum = 0.0;
    for (std::size_t i = first; i < t.size(); ++i) {
        all_below = all_below && t[i] < policy.eps_verdict;
        all_above = all_above && t[i] > policy.eps_floor;
        tail_sum += t[i];
    }

    Verdict v;
    v.tail_mean = tail_sum / w;
    v.last_value = t.back();
    v.decay_ratio = detail::fitted_decay_ratio(t, policy.window);
    v.window_used = w;
    v.policy_name = policy.name;
    if (all_below && v.decay_ratio <= 1.0 + 1e-9)
        v.outcome = Outcome::NullConvergent;
    else if (all_above)
        v.outcome = Outcome::NotNull;
    else
        v.outcome = Outcome::Inconclusive;
    return v;
}

/// N_θ limit estimate: L_hat is the plain mean of α over the last r_window
/// complete blocks (a tail mean tolerates transients better than a global
/// one), with the verdict taken from the |α - L_hat| block means.
inline std::pair<double, Verdict> estimate_ntheta_limit(const SequenceSource& s,
                                                        const LacunaryScheme& scheme,
                                                        const Policy& policy,
                                                        int r_window = 0) {
    policy.check();
    if (r_window <= 0) r_window = policy.window;
    const std::vector<Block> usable = blocks(scheme, s.prefix_len());
    if (usable.size() < 2)
        throw DataError("estimate_ntheta_limit: need at least 2 complete blocks, got " +
                        std::to_string(usable.size()));
    const std::size_t first =
        usable.size() - std::min<std::size_t>(usable.size(), static_cast<std::size_t>(r_window));
    double acc = 0.0;
    std::int64_t count = 0;
    for (std::size_t i = first; i < usable.size(); ++i) {
        for (std::int64_t k = usable[i].lo; k <= usable[i].hi; ++k) acc += s(k);
        count += usable[i].length;
    }
    const double l_hat = acc / static_cast<double>(count);
    return {l_hat, trend_verdict(block_means(s, scheme, 0, l_hat), policy)};
}

/// Quasi-Cauchy profile: verdicts for |Δα|, |Δ²α|, |Δ³α| block means under
/// one scheme and one policy.
inline QCProfile classify_quasi_cauchy(const SequenceSource& s, const LacunaryScheme& scheme,
                                       const Policy& policy) {
    policy.check();
    {
        const std::vector<Block> usable = blocks(scheme, s.prefix_len() - 3);
        if (static_cast<int>(usable.size()) < policy.min_blocks)
            throw DataError("classify: '" + s.label() + "' covers " +
                            std::to_string(usable.size()) + " complete blocks after order-3 " +
                            "differencing; policy requires >= " +
                            std::to_string(policy.min_blocks));
    }
    QCProfile profile;
    profile.sequence_label = s.label();
    profile.scheme_name = scheme.name();
    profile.policy = policy;
    for (int m = 1; m <= 3; ++m) {
        profile.series[static_cast<std::size_t>(m - 1)] = block_means(s, scheme, m, 0.0);
        profile.orders[static_cast<std::size_t>(m - 1)] =
            trend_verdict(profile.series[static_cast<std::size_t>(m - 1)], policy);
    }
    return profile;
}

}  // namespace laclab
