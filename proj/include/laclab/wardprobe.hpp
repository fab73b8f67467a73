#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "laclab/classify.hpp"
#include "laclab/errors.hpp"
#include "laclab/lacunary.hpp"
#include "laclab/rng.hpp"
#include "laclab/sequence.hpp"
#include "laclab/simulate.hpp"
#include "laclab/subsequence.hpp"

namespace laclab {

// Ward continuity at order m says: f maps every sequence whose order-m
// difference block means are null to another such sequence. That is a
// universally quantified statement, so a finite probe can only refute it.
// "Preserved" below always means "no violation found under this corpus and
// policy", never a proof.

struct RealFunction {
    std::string label;
    double domain_lo = -std::numeric_limits<double>::infinity();
    double domain_hi = std::numeric_limits<double>::infinity();
    std::function<double(double)> eval;

    double operator()(double x) const { return eval(x); }
    bool contains(double x) const { return x >= domain_lo && x <= domain_hi; }
};

namespace fn {

inline RealFunction identity() {
    return {"identity", -std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity(), [](double x) { return x; }};
}

inline RealFunction affine(double a, double b) {
    return {"affine(" + std::to_string(a).substr(0, 6) + "," + std::to_string(b).substr(0, 6) + ")",
            -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            [a, b](double x) { return a * x + b; }};
}

inline RealFunction square() {
    return {"square", -std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity(), [](double x) { return x * x; }};
}

inline RealFunction sine() {
    return {"sin", -std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity(), [](double x) { return std::sin(x); }};
}

/// c_0 + c_1 x + … evaluated by Horner's rule.
inline RealFunction polynomial(std::vector<double> coeffs) {
    std::string label = "poly(";
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        label += (i ? "," : "") + std::to_string(coeffs[i]).substr(0, 6);
    label += ")";
    return {std::move(label), -std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity(), [coeffs](double x) {
                double acc = 0.0;
                for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
                return acc;
            }};
}

inline RealFunction compose(const RealFunction& g, const RealFunction& f) {
    return {g.label + "∘" + f.label, f.domain_lo, f.domain_hi,
            [g, f](double x) { return g.eval(f.eval(x)); }};
}

}  // namespace fn

/// CLI/config function dispatch: identity | affine:a,b | square | sin | poly:c0,c1,…
inline RealFunction make_function(const std::string& spec) {
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
                throw UsageError("function spec '" + spec + "': bad numeric parameter");
            }
            pos = comma + 1;
        }
    }
    if (kind == "identity") return fn::identity();
    if (kind == "affine") {
        if (params.size() != 2) throw UsageError("affine expects two parameters: affine:a,b");
        return fn::affine(params[0], params[1]);
    }
    if (kind == "square") return fn::square();
    if (kind == "sin") return fn::sine();
    if (kind == "poly") {
        if (params.empty()) throw UsageError("poly expects coefficients: poly:c0,c1,…");
        return fn::polynomial(params);
    }
    throw UsageError("unknown function '" + kind + "' (catalog: identity, affine, square, sin, poly)");
}

// ---------------------------------------------------------------------------
// Probe corpus
// ---------------------------------------------------------------------------

struct CorpusOptions {
    std::int64_t survivor_prefix = 64;
    std::int64_t survivor_trials = 25000;
    std::int64_t split_prefix = 128;
    std::int64_t split_trials = 4000;
    bool include_stochastic = true;
};

/// The standard probe corpus: smooth generators across growth regimes plus
/// the two seeded example processes. Stochastic members get short prefixes
/// and heavy trial counts so Monte Carlo noise stays well under the verdict
/// thresholds (see CorpusOptions).
inline std::vector<SequenceSource> default_corpus(const Policy& policy, std::uint64_t seed,
                                                  const CorpusOptions& opt = {}) {
    const std::int64_t n = policy.prefix_len;
    std::vector<SequenceSource> corpus;
    corpus.push_back(gen::constant(4.0, n));
    corpus.push_back(gen::linear(0.5, 1.0, n));
    corpus.push_back(gen::sqrt_seq(n));
    corpus.push_back(gen::harmonic(n));
    corpus.push_back(gen::power(1.5, n));
    corpus.push_back(gen::log_shifted(n));
    if (opt.include_stochastic) {
        corpus.push_back(survivor_sequence(opt.survivor_prefix, opt.survivor_trials,
                                           derive_seed(seed, 1)));
        corpus.push_back(three_split_normalized_sequence(opt.split_prefix, opt.split_trials,
                                                         derive_seed(seed, 2)));
    }
    return corpus;
}

/// Sub-corpus of members whose first differences already vanish; the right
/// arena for probing functions that are only ward continuous on slowly
/// moving inputs (bounded-derivative families, uniform-limit checks).
inline std::vector<SequenceSource> smooth_corpus(const Policy& policy) {
    const std::int64_t n = policy.prefix_len;
    std::vector<SequenceSource> corpus;
    corpus.push_back(gen::constant(4.0, n));
    corpus.push_back(gen::sqrt_seq(n));
    corpus.push_back(gen::harmonic(n));
    corpus.push_back(gen::log_shifted(n));
    return corpus;
}

/// Corpus with input profiles computed once, shared across probes.
struct ProbeContext {
    std::vector<SequenceSource> corpus;
    std::vector<QCProfile> profiles;
    LacunaryScheme scheme;
    Policy policy;
};

inline ProbeContext make_probe_context(std::vector<SequenceSource> corpus,
                                       const LacunaryScheme& scheme, const Policy& policy) {
    ProbeContext ctx{std::move(corpus), {}, scheme, policy};
    ctx.profiles.reserve(ctx.corpus.size());
    for (const auto& s : ctx.corpus)
        ctx.profiles.push_back(classify_quasi_cauchy(s, scheme, policy));
    return ctx;
}

// ---------------------------------------------------------------------------
// Ward-continuity probe
// ---------------------------------------------------------------------------

enum class ProbeOutcome { Preserved, Violated, Inconclusive };

inline const char* to_string(ProbeOutcome o) {
    switch (o) {
        case ProbeOutcome::Preserved: return "Preserved";
        case ProbeOutcome::Violated: return "Violated";
        default: return "Inconclusive";
    }
}

struct Witness {
    std::string sequence_label;
    QCProfile input;
    QCProfile output;
};

struct ProbeReport {
    std::string function_label;
    std::string scheme_name;
    std::string policy_name;
    int order = 3;
    std::int64_t corpus_size = 0;
    std::int64_t probed = 0;               // members whose input passed at the order
    std::int64_t skipped_not_null = 0;     // input NotNull: premise unmet
    std::int64_t skipped_inconclusive = 0; // input Inconclusive: skipped and counted
    std::int64_t output_inconclusive = 0;
    ProbeOutcome outcome = ProbeOutcome::Inconclusive;
    std::vector<Witness> witnesses;
    std::vector<std::uint64_t> seeds;  // seeds of stochastic corpus members
};

/// Probes f against every corpus member that is quasi-Cauchy at the given
/// order: Violated when some image classifies NotNull (each such member is a
/// witness), Preserved when every probed image passes, Inconclusive when an
/// image lands between thresholds or nothing was probeable.
inline ProbeReport probe_ward_continuity(const RealFunction& f, int order,
                                         const ProbeContext& ctx) {
    if (order != 1 && order != 3)
        throw UsageError("probe_ward_continuity: order must be 1 or 3");

    ProbeReport report;
    report.function_label = f.label;
    report.scheme_name = ctx.scheme.name();
    report.policy_name = ctx.policy.name;
    report.order = order;
    report.corpus_size = static_cast<std::int64_t>(ctx.corpus.size());

    for (std::size_t i = 0; i < ctx.corpus.size(); ++i) {
        const SequenceSource& s = ctx.corpus[i];
        if (auto sd = s.seed()) report.seeds.push_back(*sd);
        for (std::int64_t k = 1; k <= s.prefix_len(); ++k) {
            if (!f.contains(s(k)))
                throw DataError("probe: value of '" + s.label() + "' at index " +
                                std::to_string(k) + " lies outside the domain of " + f.label);
        }
        const Verdict& input = ctx.profiles[i].at_order(order);
        if (input.outcome == Outcome::NotNull) {
            ++report.skipped_not_null;
            continue;
        }
        if (input.outcome == Outcome::Inconclusive) {
            ++report.skipped_inconclusive;
            continue;
        }
        ++report.probed;
        const SequenceSource image(f.label + "(" + s.label() + ")", s.prefix_len(),
                                   [f, s](std::int64_t k) { return f.eval(s(k)); }, s.seed());
        const QCProfile out = classify_quasi_cauchy(image, ctx.scheme, ctx.policy);
        switch (out.at_order(order).outcome) {
            case Outcome::NullConvergent:
                break;
            case Outcome::NotNull:
                report.witnesses.push_back({s.label(), ctx.profiles[i], out});
                break;
            case Outcome::Inconclusive:
                ++report.output_inconclusive;
                break;
        }
    }
    if (!report.witnesses.empty())
        report.outcome = ProbeOutcome::Violated;
    else if (report.probed > 0 && report.output_inconclusive == 0)
        report.outcome = ProbeOutcome::Preserved;
    else
        report.outcome = ProbeOutcome::Inconclusive;
    return report;
}

inline ProbeReport probe_ward_continuity(const RealFunction& f, int order,
                                         const std::vector<SequenceSource>& corpus,
                                         const LacunaryScheme& scheme, const Policy& policy) {
    return probe_ward_continuity(f, order, make_probe_context(corpus, scheme, policy));
}

// ---------------------------------------------------------------------------
// Theorem-shaped checks
// ---------------------------------------------------------------------------

enum class ImplicationFlag { Consistent, PremiseFailed, Inconsistent };

inline const char* to_string(ImplicationFlag f) {
    switch (f) {
        case ImplicationFlag::Consistent: return "consistent";
        case ImplicationFlag::PremiseFailed: return "premise failed";
        default: return "INCONSISTENT";
    }
}

struct CompositionReport {
    ProbeReport f_report;
    ProbeReport g_report;
    ProbeReport composite_report;  // g∘f
    ImplicationFlag flag = ImplicationFlag::Consistent;
};

/// Closure under composition: when the probes of f and g both come back
/// Preserved, the probe of g∘f must as well.
inline CompositionReport check_composition(const RealFunction& f, const RealFunction& g,
                                           const ProbeContext& ctx, int order = 3) {
    CompositionReport report;
    report.f_report = probe_ward_continuity(f, order, ctx);
    report.g_report = probe_ward_continuity(g, order, ctx);
    report.composite_report = probe_ward_continuity(fn::compose(g, f), order, ctx);
    const bool premise = report.f_report.outcome == ProbeOutcome::Preserved &&
                         report.g_report.outcome == ProbeOutcome::Preserved;
    if (!premise)
        report.flag = ImplicationFlag::PremiseFailed;
    else if (report.composite_report.outcome == ProbeOutcome::Preserved)
        report.flag = ImplicationFlag::Consistent;
    else
        report.flag = ImplicationFlag::Inconsistent;
    return report;
}

struct TriplingReport {
    QCProfile input;
    std::optional<QCProfile> tripled;
    bool premise = false;  // input passes order 1
    bool pass = false;     // premise holds and tripled passes orders 1 and 3
    ImplicationFlag flag = ImplicationFlag::PremiseFailed;
};

/// The proof step behind "ward at order 3 implies ward at order 1": if s is
/// order-1 quasi-Cauchy then its element-tripled copy must classify
/// quasi-Cauchy at orders 1 and 3.
inline TriplingReport tripling_check(const SequenceSource& s, const LacunaryScheme& scheme,
                                     const Policy& policy) {
    TriplingReport report;
    report.input = classify_quasi_cauchy(s, scheme, policy);
    report.premise = report.input.at_order(1).outcome == Outcome::NullConvergent;
    if (!report.premise) {
        report.flag = ImplicationFlag::PremiseFailed;
        return report;
    }
    report.tripled = classify_quasi_cauchy(repeat_elements(s, 3), scheme, policy);
    report.pass = report.tripled->at_order(1).outcome == Outcome::NullConvergent &&
                  report.tripled->at_order(3).outcome == Outcome::NullConvergent;
    report.flag = report.pass ? ImplicationFlag::Consistent : ImplicationFlag::Inconsistent;
    return report;
}

struct UniformLimitReport {
    std::vector<std::pair<std::string, double>> gaps;  // (member label, sup |f_n - f| on grid)
    double final_gap = 0.0;
    double threshold = 0.0;  // ε/9
    bool gaps_decreasing = false;
    std::vector<ProbeReport> member_probes;
    ProbeReport limit_probe;
    bool pass = false;
};

/// Uniform-limit harness. Mirrors the ε/9 decomposition of the closure
/// argument: the family's sampled sup-gap must shrink below ε/9 by the last
/// member, every probed member must be Preserved at order 3, and so must the
/// limit. eps <= 0 selects the default 9·eps_verdict, i.e. the gap threshold
/// equals the policy's eps_verdict.
inline UniformLimitReport uniform_limit_harness(const std::vector<RealFunction>& family,
                                                const RealFunction& f,
                                                const std::vector<double>& sample_grid,
                                                const ProbeContext& ctx, double eps = -1.0) {
    if (family.empty()) throw UsageError("uniform_limit_harness: empty family");
    if (sample_grid.empty()) throw UsageError("uniform_limit_harness: empty sample grid");
    UniformLimitReport report;
    const double eps_used = eps > 0.0 ? eps : 9.0 * ctx.policy.eps_verdict;
    report.threshold = eps_used / 9.0;

    for (const RealFunction& fn_k : family) {
        double gap = 0.0;
        for (double x : sample_grid) gap = std::max(gap, std::abs(fn_k.eval(x) - f.eval(x)));
        report.gaps.emplace_back(fn_k.label, gap);
    }
    report.final_gap = report.gaps.back().second;
    report.gaps_decreasing = report.final_gap <= report.gaps.front().second + 1e-12;

    bool members_ok = true;
    for (const RealFunction& fn_k : family) {
        report.member_probes.push_back(probe_ward_continuity(fn_k, 3, ctx));
        members_ok = members_ok &&
                     report.member_probes.back().outcome == ProbeOutcome::Preserved;
    }
    report.limit_probe = probe_ward_continuity(f, 3, ctx);

    report.pass = members_ok && report.gaps_decreasing && report.final_gap < report.threshold &&
                  report.limit_probe.outcome == ProbeOutcome::Preserved;
    return report;
}

// ---------------------------------------------------------------------------
// Counterexample search
// ---------------------------------------------------------------------------

struct SequenceFamily {
    std::string label;
    std::vector<double> params;
    std::function<SequenceSource(double)> make;
};

/// k^p for p across [lo, hi] in the given step.
inline SequenceFamily power_family(double lo, double hi, double step, std::int64_t prefix_len) {
    SequenceFamily fam;
    fam.label = "power";
    for (double p = lo; p <= hi + 1e-12; p += step) fam.params.push_back(p);
    fam.make = [prefix_len](double p) { return gen::power(p, prefix_len); };
    return fam;
}

struct SearchEvidence {
    double param = 0.0;
    Outcome input_outcome = Outcome::Inconclusive;
    std::optional<Outcome> output_outcome;  // absent when the input was skipped
};

struct SearchResult {
    std::optional<double> witness_param;
    std::optional<Witness> witness;
    std::vector<SearchEvidence> evidence;
    std::int64_t examined = 0;
};

/// Scans the family in parameter order for a member that is order-3
/// quasi-Cauchy while its image under f is not; stops at the first hit or
/// when the budget runs out.
inline SearchResult search_counterexample(const RealFunction& f, const SequenceFamily& family,
                                          const LacunaryScheme& scheme, const Policy& policy,
                                          std::int64_t budget) {
    if (budget < 1) throw UsageError("search_counterexample: budget must be >= 1");
    SearchResult result;
    for (double p : family.params) {
        if (result.examined >= budget) break;
        ++result.examined;
        const SequenceSource s = family.make(p);
        const QCProfile input = classify_quasi_cauchy(s, scheme, policy);
        SearchEvidence ev;
        ev.param = p;
        ev.input_outcome = input.at_order(3).outcome;
        if (input.at_order(3).outcome != Outcome::NullConvergent) {
            result.evidence.push_back(ev);
            continue;
        }
        SequenceSource image(f.label + "(" + s.label() + ")", s.prefix_len(),
                             [f, s](std::int64_t k) { return f.eval(s(k)); }, s.seed());
        const QCProfile out = classify_quasi_cauchy(image, scheme, policy);
        ev.output_outcome = out.at_order(3).outcome;
        result.evidence.push_back(ev);
        if (out.at_order(3).outcome == Outcome::NotNull) {
            result.witness_param = p;
            result.witness = Witness{s.label(), input, out};
            break;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Ward compactness
// ---------------------------------------------------------------------------

struct CompactnessParams {
    std::int64_t subseq_len = 96;  // picks to extract and classify
    double width_floor = 5e-3;     // halving stops here; 4·floor < eps_verdict
    double growth_factor = 2.0;    // dyadic-max ratio that flags unboundedness
};

struct CompactnessReport {
    enum class Kind { SubsequenceExtracted, UnboundedEvidence };
    Kind kind = Kind::SubsequenceExtracted;
    std::vector<std::int64_t> indices;
    std::optional<QCProfile> subsequence_profile;
    bool pass = false;                 // extracted and order-3 NullConvergent
    std::vector<double> dyadic_max;    // max |α_k| over k <= 2^j
    std::string note;
};

/// Bounded inputs: extract a bisection subsequence and classify it at order 3
/// (expected NullConvergent — the floored bisection pins the tail inside an
/// interval of width below eps_verdict/4). Unbounded-looking inputs without
/// declared bounds: report dyadic-max growth evidence instead; no claim of
/// proof either way.
inline CompactnessReport ward_compactness_check(const SequenceSource& s,
                                                std::optional<std::pair<double, double>> bounds,
                                                const LacunaryScheme& scheme,
                                                const Policy& policy,
                                                const CompactnessParams& params = {}) {
    CompactnessReport report;
    if (s.prefix_len() < 8)
        throw DataError("ward_compactness_check: prefix of '" + s.label() + "' too short");

    if (!bounds) {
        for (std::int64_t k = 1; (std::int64_t{1} << k) <= s.prefix_len(); ++k) {
            double m = 0.0;
            for (std::int64_t i = 1; i <= (std::int64_t{1} << k); ++i)
                m = std::max(m, std::abs(s(i)));
            report.dyadic_max.push_back(m);
        }
        const std::size_t j = report.dyadic_max.size();
        if (j >= 3 && report.dyadic_max[j - 1] >=
                          params.growth_factor * report.dyadic_max[j - 3]) {
            report.kind = CompactnessReport::Kind::UnboundedEvidence;
            report.note = "dyadic max grew by >= " + std::to_string(params.growth_factor) +
                          " over the last two doublings; not ward compact on this evidence";
            return report;
        }
        double lo = s(1), hi = s(1);
        for (std::int64_t k = 2; k <= s.prefix_len(); ++k) {
            lo = std::min(lo, s(k));
            hi = std::max(hi, s(k));
        }
        bounds = std::make_pair(lo, std::max(hi, lo + 1e-9));
        report.note = "bounds not supplied; using observed range";
    }

    const BisectionResult bis =
        bw_subsequence(s, bounds->first, bounds->second, params.subseq_len, params.width_floor);
    report.indices = bis.indices;
    const SequenceSource sub = subsequence_values(s, bis.indices);
    report.subsequence_profile = classify_quasi_cauchy(sub, scheme, policy);
    report.pass =
        report.subsequence_profile->at_order(3).outcome == Outcome::NullConvergent;
    return report;
}

}  // namespace laclab
