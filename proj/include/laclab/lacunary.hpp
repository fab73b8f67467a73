#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "laclab/errors.hpp"

namespace laclab {

// A lacunary scheme is a strictly increasing integer cut sequence
// k_0 = 0 < k_1 < k_2 < …, inducing blocks I_r = {k_{r-1}+1, …, k_r} of
// length h_r = k_r - k_{r-1}. Some presentations write k_0 != 0; the block
// formula only works with k_0 = 0, which is what this library requires.

/// Default margin: cut ratios k_r/k_{r-1} must exceed 1 + margin (r >= 2).
inline constexpr double kDefaultRatioMargin = 0.05;

struct Block {
    std::int64_t index;  // r, starting at 1
    std::int64_t lo;     // k_{r-1} + 1
    std::int64_t hi;     // k_r
    std::int64_t length; // h_r = hi - lo + 1
};

struct SchemeViolation {
    std::size_t cut_index;  // position in the cut list
    std::string message;
};

struct ValidationReport {
    bool valid = true;
    std::vector<SchemeViolation> violations;
    std::vector<std::string> warnings;  // prefix trends that cannot invalidate
    double min_ratio = 0.0;             // min over r >= 2, 0 when no ratio exists

    std::string summary() const {
        if (valid && warnings.empty()) return "valid";
        std::string s = valid ? "valid-on-prefix" : "invalid";
        for (const auto& v : violations)
            s += "\n  violation at cut " + std::to_string(v.cut_index) + ": " + v.message;
        for (const auto& w : warnings) s += "\n  warning: " + w;
        return s;
    }
};

class LacunaryScheme {
public:
    LacunaryScheme() = default;
    LacunaryScheme(std::string name, std::vector<std::int64_t> cuts)
        : name_(std::move(name)), cuts_(std::move(cuts)) {}

    const std::string& name() const { return name_; }
    const std::vector<std::int64_t>& cuts() const { return cuts_; }

    /// Number of blocks R (cuts minus the leading k_0).
    std::int64_t block_count() const {
        return static_cast<std::int64_t>(cuts_.size()) - 1;
    }

    /// Largest index covered, k_R.
    std::int64_t max_index() const { return cuts_.empty() ? 0 : cuts_.back(); }

    Block block(std::int64_t r) const {
        const std::int64_t lo = cuts_[static_cast<std::size_t>(r - 1)] + 1;
        const std::int64_t hi = cuts_[static_cast<std::size_t>(r)];
        return Block{r, lo, hi, hi - lo + 1};
    }

private:
    std::string name_;
    std::vector<std::int64_t> cuts_;
};

/// Checks the prefix-testable lacunarity conditions: k_0 = 0, strict growth,
/// and min_{r>=2} k_r/k_{r-1} > 1 + margin. Growth of h_r toward infinity is
/// not decidable on a prefix; a non-increasing tail only earns a warning.
inline ValidationReport validate_theta(const std::vector<std::int64_t>& cuts,
                                       double ratio_margin = kDefaultRatioMargin) {
    if (cuts.empty()) throw UsageError("validate_theta: empty cut list");

    ValidationReport report;
    if (cuts.front() != 0)
        report.violations.push_back({0, "k_0 must be 0, got " + std::to_string(cuts.front())});

    for (std::size_t i = 1; i < cuts.size(); ++i) {
        if (cuts[i] <= cuts[i - 1]) {
            report.violations.push_back(
                {i, "not strictly increasing: k_" + std::to_string(i) + " = " +
                        std::to_string(cuts[i]) + " <= k_" + std::to_string(i - 1) + " = " +
                        std::to_string(cuts[i - 1])});
        }
    }

    // Ratio test starts at r = 2 (k_1/k_0 divides by zero).
    double min_ratio = 0.0;
    for (std::size_t i = 2; i < cuts.size(); ++i) {
        if (cuts[i - 1] <= 0 || cuts[i] <= cuts[i - 1]) continue;
        const double ratio =
            static_cast<double>(cuts[i]) / static_cast<double>(cuts[i - 1]);
        if (min_ratio == 0.0 || ratio < min_ratio) min_ratio = ratio;
        if (ratio <= 1.0 + ratio_margin) {
            report.violations.push_back(
                {i, "ratio k_" + std::to_string(i) + "/k_" + std::to_string(i - 1) + " = " +
                        std::to_string(ratio) + " <= 1 + margin " +
                        std::to_string(ratio_margin)});
        }
    }
    report.min_ratio = min_ratio;
    report.valid = report.violations.empty();

    if (report.valid) {
        // Strictly decreasing ratio trail: lacunarity may be eroding.
        std::vector<double> ratios;
        for (std::size_t i = 2; i < cuts.size(); ++i)
            ratios.push_back(static_cast<double>(cuts[i]) / static_cast<double>(cuts[i - 1]));
        if (ratios.size() >= 2) {
            bool decreasing = true;
            for (std::size_t i = 1; i < ratios.size(); ++i)
                if (ratios[i] >= ratios[i - 1]) { decreasing = false; break; }
            if (decreasing) report.warnings.push_back("ratios decreasing toward 1");
        }
        // h_r should eventually grow; flag a non-increasing last-3 stretch.
        if (cuts.size() >= 4) {
            const std::size_t n = cuts.size();
            bool non_increasing = true;
            for (std::size_t i = n - 3; i < n; ++i) {
                const std::int64_t h_prev = cuts[i - 1] - cuts[i - 2];
                const std::int64_t h_cur = cuts[i] - cuts[i - 1];
                if (h_cur > h_prev) { non_increasing = false; break; }
            }
            if (non_increasing)
                report.warnings.push_back("block lengths non-increasing over the last 3 blocks");
        }
    }
    return report;
}

inline ValidationReport validate_theta(const LacunaryScheme& scheme,
                                       double ratio_margin = kDefaultRatioMargin) {
    return validate_theta(scheme.cuts(), ratio_margin);
}

/// All complete blocks with hi <= max_index, in order r = 1, 2, ….
inline std::vector<Block> blocks(const LacunaryScheme& scheme, std::int64_t max_index) {
    const auto report = validate_theta(scheme);
    if (!report.valid)
        throw DataError("blocks: scheme '" + scheme.name() + "' rejected: " + report.summary());
    std::vector<Block> out;
    for (std::int64_t r = 1; r <= scheme.block_count(); ++r) {
        Block b = scheme.block(r);
        if (b.hi > max_index) break;
        out.push_back(b);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Catalog schemes
// ---------------------------------------------------------------------------

/// k_r = 2^r (k_0 = 0); depth 4 gives (0, 2, 4, 8, 16).
inline LacunaryScheme pow2_scheme(int depth) {
    if (depth < 1) throw UsageError("pow2_scheme: depth must be >= 1");
    if (depth > 62) throw UsageError("pow2_scheme: depth too large for 64-bit cuts");
    std::vector<std::int64_t> cuts{0};
    for (int r = 1; r <= depth; ++r) cuts.push_back(std::int64_t{1} << r);
    return LacunaryScheme("pow2", std::move(cuts));
}

/// k_r = ceil(rho^r), deduplicated; rho > 1.
inline LacunaryScheme geometric_scheme(int depth, double rho = 1.5) {
    if (depth < 1) throw UsageError("geometric_scheme: depth must be >= 1");
    if (!(rho > 1.0)) throw UsageError("geometric_scheme: rho must be > 1");
    std::vector<std::int64_t> cuts{0};
    for (int r = 1; r <= depth; ++r) {
        const auto v = static_cast<std::int64_t>(std::ceil(std::pow(rho, r)));
        if (v > cuts.back()) cuts.push_back(v);
    }
    LacunaryScheme scheme("geo" + std::to_string(rho).substr(0, 4), std::move(cuts));
    const auto report = validate_theta(scheme);
    if (!report.valid)
        throw UsageError("geometric_scheme: rho " + std::to_string(rho) +
                         " yields a non-lacunary prefix: " + report.summary());
    return scheme;
}

/// k_r = r!; depth capped at 20 (21! overflows 64 bits).
inline LacunaryScheme factorial_scheme(int depth) {
    if (depth < 1) throw UsageError("factorial_scheme: depth must be >= 1");
    if (depth > 20) throw UsageError("factorial_scheme: depth must be <= 20");
    std::vector<std::int64_t> cuts{0};
    std::int64_t f = 1;
    for (int r = 1; r <= depth; ++r) {
        f *= r;
        cuts.push_back(f);
    }
    return LacunaryScheme("factorial", std::move(cuts));
}

/// The named catalog at a given depth; every entry passes validate_theta.
inline std::vector<LacunaryScheme> standard_schemes(int depth, double rho = 1.5) {
    if (depth < 1) throw UsageError("standard_schemes: depth must be >= 1");
    return {pow2_scheme(depth), geometric_scheme(depth, rho),
            factorial_scheme(std::min(depth, 20))};
}

/// Catalog lookup by name ("pow2", "geo", "factorial").
inline LacunaryScheme scheme_by_name(const std::string& name, int depth, double rho = 1.5) {
    if (name == "pow2") return pow2_scheme(depth);
    if (name == "geo" || name == "geometric") return geometric_scheme(depth, rho);
    if (name == "factorial") return factorial_scheme(depth);
    throw UsageError("unknown scheme '" + name + "' (catalog: pow2, geo, factorial)");
}

}  // namespace laclab
