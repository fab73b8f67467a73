#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "laclab/errors.hpp"
#include "laclab/sequence.hpp"

namespace laclab {

struct BisectionResult {
    std::vector<std::int64_t> indices;                 // strictly increasing picks
    std::vector<std::pair<double, double>> intervals;  // interval each pick was drawn from
};

/// Extracts a convergent subsequence by interval bisection. Pick 1 comes from
/// [lo, hi]; before each later pick the current interval is halved, keeping
/// the half holding more of the not-yet-used values (tie: the half containing
/// the previous pick), and the next index whose value lies in that half is
/// taken. Pick j therefore lies in a nested interval of width
/// (hi-lo)/2^(j-1), so consecutive picks differ by at most twice that.
///
/// width_floor > 0 stops the halving once the interval is at least that
/// narrow; later picks reuse the final interval. The default 0 keeps the
/// exponential shrink all the way down.
inline BisectionResult bw_subsequence(const SequenceSource& s, double lo, double hi,
                                      std::int64_t target_len, double width_floor = 0.0) {
    if (target_len < 1) throw UsageError("bw_subsequence: target_len must be >= 1");
    if (!(lo < hi)) throw UsageError("bw_subsequence: need lo < hi");

    const std::vector<double> v = s.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] >= lo && v[i] <= hi))
            throw DataError("bw_subsequence: value at index " + std::to_string(i + 1) + " of '" +
                            s.label() + "' lies outside [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
    }

    BisectionResult result;
    double a = lo, b = hi;
    std::int64_t last_index = 0;  // picks must exceed this
    double last_value = 0.0;

    while (static_cast<std::int64_t>(result.indices.size()) < target_len) {
        if (!result.indices.empty() && (b - a) > width_floor) {
            const double mid = a + (b - a) / 2.0;
            std::int64_t left = 0, right = 0;
            for (std::size_t i = static_cast<std::size_t>(last_index); i < v.size(); ++i) {
                if (v[i] >= a && v[i] <= mid) ++left;
                if (v[i] >= mid && v[i] <= b) ++right;
            }
            if (left > right)
                b = mid;
            else if (right > left)
                a = mid;
            else if (last_value <= mid)
                b = mid;
            else
                a = mid;
        }
        std::int64_t pick = 0;
        for (std::int64_t k = last_index + 1; k <= s.prefix_len(); ++k) {
            const double x = v[static_cast<std::size_t>(k - 1)];
            if (x >= a && x <= b) {
                pick = k;
                break;
            }
        }
        if (pick == 0)
            throw InsufficientPrefix(
                "bw_subsequence: prefix of '" + s.label() + "' exhausted after " +
                    std::to_string(result.indices.size()) + " of " + std::to_string(target_len) +
                    " picks",
                static_cast<std::int64_t>(result.indices.size()));
        result.indices.push_back(pick);
        result.intervals.emplace_back(a, b);
        last_index = pick;
        last_value = v[static_cast<std::size_t>(pick - 1)];
    }
    return result;
}

/// The picked values as a sequence of their own (index j maps to pick j).
inline SequenceSource subsequence_values(const SequenceSource& s, const std::vector<std::int64_t>& indices) {
    std::vector<double> vals;
    vals.reserve(indices.size());
    for (std::int64_t k : indices) vals.push_back(s(k));
    return SequenceSource::from_values("sub(" + s.label() + ")", std::move(vals), s.seed());
}

}  // namespace laclab
