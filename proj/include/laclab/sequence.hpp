#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "laclab/errors.hpp"

namespace laclab {

/// An indexable real sequence alpha_1, alpha_2, …, alpha_{prefix_len}.
/// Evaluation is pure: the same k always returns the same bits.
class SequenceSource {
public:
    SequenceSource() = default;
    SequenceSource(std::string label, std::int64_t prefix_len,
                   std::function<double(std::int64_t)> eval,
                   std::optional<std::uint64_t> seed = std::nullopt)
        : label_(std::move(label)),
          prefix_len_(prefix_len),
          eval_(std::move(eval)),
          seed_(seed) {}

    /// Wrap an already materialized prefix (index 1 maps to values[0]).
    static SequenceSource from_values(std::string label, std::vector<double> values,
                                      std::optional<std::uint64_t> seed = std::nullopt) {
        auto data = std::make_shared<std::vector<double>>(std::move(values));
        const auto n = static_cast<std::int64_t>(data->size());
        return SequenceSource(
            std::move(label), n,
            [data](std::int64_t k) { return (*data)[static_cast<std::size_t>(k - 1)]; },
            seed);
    }

    double operator()(std::int64_t k) const {
        if (k < 1 || k > prefix_len_)
            throw DataError("sequence '" + label_ + "': index " + std::to_string(k) +
                            " outside usable prefix [1, " + std::to_string(prefix_len_) + "]");
        return eval_(k);
    }

    const std::string& label() const { return label_; }
    std::int64_t prefix_len() const { return prefix_len_; }
    std::optional<std::uint64_t> seed() const { return seed_; }

    std::vector<double> values() const {
        std::vector<double> v;
        v.reserve(static_cast<std::size_t>(prefix_len_));
        for (std::int64_t k = 1; k <= prefix_len_; ++k) v.push_back(eval_(k));
        return v;
    }

private:
    std::string label_;
    std::int64_t prefix_len_ = 0;
    std::function<double(std::int64_t)> eval_;
    std::optional<std::uint64_t> seed_;
};

// ---------------------------------------------------------------------------
// Difference operators and combinators
// ---------------------------------------------------------------------------

inline constexpr int kMaxDifferenceOrder = 3;

/// Forward difference of order m: (Δ^m α)_k = Σ_j (-1)^j C(m,j) α_{k+m-j}.
/// Δ³α_k = α_{k+3} - 3α_{k+2} + 3α_{k+1} - α_k. Order 0 is the identity.
/// Terms are summed in fixed j order so results are bit-stable.
inline SequenceSource difference(const SequenceSource& s, int order) {
    if (order < 0 || order > kMaxDifferenceOrder)
        throw UsageError("difference: order must be in {0,…,3}, got " + std::to_string(order));
    if (order == 0) return s;
    if (s.prefix_len() <= order)
        throw DataError("difference: prefix of '" + s.label() + "' too short for order " +
                        std::to_string(order));

    static constexpr double kBinomial[4][4] = {
        {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
    const int m = order;
    return SequenceSource(
        "d" + std::to_string(m) + "(" + s.label() + ")", s.prefix_len() - m,
        [s, m](std::int64_t k) {
            double acc = 0.0;
            for (int j = 0; j <= m; ++j) {
                const double term = kBinomial[m][j] * s(k + m - j);
                acc += (j % 2 == 0) ? term : -term;
            }
            return acc;
        },
        s.seed());
}

/// Each element repeated m times: (α_1,…) → (α_1,α_1,α_1,α_2,…) for m = 3.
inline SequenceSource repeat_elements(const SequenceSource& s, std::int64_t m) {
    if (m < 1) throw UsageError("repeat_elements: m must be >= 1");
    if (m == 1) return s;
    return SequenceSource(
        "rep" + std::to_string(m) + "(" + s.label() + ")", m * s.prefix_len(),
        [s, m](std::int64_t k) { return s((k - 1) / m + 1); }, s.seed());
}

/// Pointwise a·s + b·t + c over the common prefix.
inline SequenceSource affine_combine(double a, const SequenceSource& s, double b,
                                     const SequenceSource& t, double c) {
    const std::int64_t n = std::min(s.prefix_len(), t.prefix_len());
    return SequenceSource(
        "combine(" + s.label() + "," + t.label() + ")", n,
        [a, s, b, t, c](std::int64_t k) { return a * s(k) + b * t(k) + c; });
}

// ---------------------------------------------------------------------------
// Generator catalog
// ---------------------------------------------------------------------------

namespace gen {

inline SequenceSource constant(double c, std::int64_t n) {
    return SequenceSource("const" + std::to_string(c).substr(0, 6), n,
                          [c](std::int64_t) { return c; });
}

inline SequenceSource linear(double a, double b, std::int64_t n) {
    return SequenceSource("linear", n,
                          [a, b](std::int64_t k) { return a * static_cast<double>(k) + b; });
}

inline SequenceSource power(double p, std::int64_t n) {
    return SequenceSource("power" + std::to_string(p).substr(0, 4), n,
                          [p](std::int64_t k) { return std::pow(static_cast<double>(k), p); });
}

inline SequenceSource sqrt_seq(std::int64_t n) {
    return SequenceSource("sqrt", n,
                          [](std::int64_t k) { return std::sqrt(static_cast<double>(k)); });
}

/// Partial sums H_k = Σ_{i<=k} 1/i, materialized so lookups stay O(1).
inline SequenceSource harmonic(std::int64_t n) {
    std::vector<double> sums(static_cast<std::size_t>(n));
    double acc = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
        acc += 1.0 / static_cast<double>(k);
        sums[static_cast<std::size_t>(k - 1)] = acc;
    }
    return SequenceSource::from_values("harmonic", std::move(sums));
}

inline SequenceSource alternating(std::int64_t n) {
    return SequenceSource("alternating", n,
                          [](std::int64_t k) { return (k % 2 == 0) ? 1.0 : -1.0; });
}

inline SequenceSource log_shifted(std::int64_t n) {
    return SequenceSource("log1p", n,
                          [](std::int64_t k) { return std::log(static_cast<double>(k) + 1.0); });
}

inline SequenceSource cubic(std::int64_t n) {
    return SequenceSource("cubic", n, [](std::int64_t k) {
        const double x = static_cast<double>(k);
        return x * x * x;
    });
}

}  // namespace gen

/// CLI/config generator dispatch, e.g. "power:1.5", "linear:0.5,1", "sqrt".
inline SequenceSource make_generator(const std::string& spec, std::int64_t prefix_len) {
    std::string kind = spec;
    std::vector<double> params;
    if (auto colon = spec.find(':'); colon != std::string::npos) {
        kind = spec.substr(0, colon);
        std::string rest = spec.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto comma = rest.find(',', pos);
            if (comma == std::string::npos) comma = rest.size();
            try {
                params.push_back(std::stod(rest.substr(pos, comma - pos)));
            } catch (const std::exception&) {
                throw UsageError("generator spec '" + spec + "': bad numeric parameter");
            }
            pos = comma + 1;
        }
    }
    auto want = [&](std::size_t n) {
        if (params.size() != n)
            throw UsageError("generator '" + kind + "' expects " + std::to_string(n) +
                             " parameter(s), got " + std::to_string(params.size()));
    };
    for (double p : params)
        if (!std::isfinite(p)) throw UsageError("generator spec '" + spec + "': non-finite parameter");

    if (kind == "constant") { want(1); return gen::constant(params[0], prefix_len); }
    if (kind == "linear")   { want(2); return gen::linear(params[0], params[1], prefix_len); }
    if (kind == "power")    { want(1); return gen::power(params[0], prefix_len); }
    if (kind == "sqrt")     { want(0); return gen::sqrt_seq(prefix_len); }
    if (kind == "harmonic") { want(0); return gen::harmonic(prefix_len); }
    if (kind == "alternating") { want(0); return gen::alternating(prefix_len); }
    if (kind == "log")      { want(0); return gen::log_shifted(prefix_len); }
    if (kind == "cubic")    { want(0); return gen::cubic(prefix_len); }
    throw UsageError("unknown generator '" + kind +
                     "' (catalog: constant, linear, power, sqrt, harmonic, alternating, log, cubic)");
}

}  // namespace laclab
