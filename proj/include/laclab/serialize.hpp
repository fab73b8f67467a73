#pragma once

// JSON report shapes. Reports never embed timestamps or addresses, so the
// same inputs always serialize to the same bytes.

#include <json.hpp>

#include "laclab/classify.hpp"
#include "laclab/lacunary.hpp"
#include "laclab/wardprobe.hpp"

namespace laclab {

using json = nlohmann::json;

inline json to_json(const Policy& p) {
    return {{"name", p.name},
            {"window", p.window},
            {"eps_verdict", p.eps_verdict},
            {"eps_floor", p.eps_floor},
            {"prefix_len", p.prefix_len},
            {"min_blocks", p.min_blocks}};
}

inline json to_json(const ValidationReport& r) {
    json violations = json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"cut_index", v.cut_index}, {"message", v.message}});
    return {{"valid", r.valid},
            {"min_ratio", r.min_ratio},
            {"violations", violations},
            {"warnings", r.warnings}};
}

inline json to_json(const Verdict& v) {
    return {{"outcome", to_string(v.outcome)},
            {"tail_mean", v.tail_mean},
            {"last_value", v.last_value},
            {"decay_ratio", v.decay_ratio},
            {"window_used", v.window_used},
            {"policy", v.policy_name}};
}

inline json to_json(const BlockMeanSeries& s) {
    return {{"scheme", s.scheme_name},
            {"sequence", s.sequence_label},
            {"order", s.order},
            {"shift", s.shift},
            {"r", s.block_index},
            {"h", s.block_length},
            {"t", s.values},
            {"dropped_blocks", s.dropped_blocks}};
}

inline json to_json(const QCProfile& p) {
    return {{"sequence", p.sequence_label},
            {"scheme", p.scheme_name},
            {"policy", to_json(p.policy)},
            {"orders",
             {{"m1", to_json(p.orders[0])},
              {"m2", to_json(p.orders[1])},
              {"m3", to_json(p.orders[2])}}},
            {"evidence",
             {{"m1", to_json(p.series[0])},
              {"m2", to_json(p.series[1])},
              {"m3", to_json(p.series[2])}}}};
}

inline json to_json(const Witness& w) {
    return {{"sequence", w.sequence_label},
            {"input", to_json(w.input)},
            {"output", to_json(w.output)}};
}

inline json to_json(const ProbeReport& r) {
    json witnesses = json::array();
    for (const auto& w : r.witnesses) witnesses.push_back(to_json(w));
    return {{"function", r.function_label},
            {"scheme", r.scheme_name},
            {"policy", r.policy_name},
            {"order", r.order},
            {"corpus_size", r.corpus_size},
            {"outcome", to_string(r.outcome)},
            {"counts",
             {{"probed", r.probed},
              {"skipped_not_null", r.skipped_not_null},
              {"skipped_inconclusive", r.skipped_inconclusive},
              {"output_inconclusive", r.output_inconclusive}}},
            {"witnesses", witnesses},
            {"seeds", r.seeds}};
}

inline json to_json(const CompositionReport& r) {
    return {{"f", to_json(r.f_report)},
            {"g", to_json(r.g_report)},
            {"composite", to_json(r.composite_report)},
            {"flag", to_string(r.flag)}};
}

inline json to_json(const TriplingReport& r) {
    json j{{"input", to_json(r.input)},
           {"premise", r.premise},
           {"pass", r.pass},
           {"flag", to_string(r.flag)}};
    if (r.tripled) j["tripled"] = to_json(*r.tripled);
    return j;
}

inline json to_json(const UniformLimitReport& r) {
    json gaps = json::array();
    for (const auto& [label, gap] : r.gaps) gaps.push_back({{"member", label}, {"gap", gap}});
    json probes = json::array();
    for (const auto& p : r.member_probes) probes.push_back(to_json(p));
    return {{"gaps", gaps},
            {"final_gap", r.final_gap},
            {"threshold", r.threshold},
            {"gaps_decreasing", r.gaps_decreasing},
            {"member_probes", probes},
            {"limit_probe", to_json(r.limit_probe)},
            {"pass", r.pass}};
}

inline json to_json(const SearchResult& r) {
    json evidence = json::array();
    for (const auto& e : r.evidence) {
        json row{{"param", e.param}, {"input", to_string(e.input_outcome)}};
        if (e.output_outcome) row["output"] = to_string(*e.output_outcome);
        evidence.push_back(row);
    }
    json j{{"examined", r.examined}, {"evidence", evidence}};
    if (r.witness_param) j["witness_param"] = *r.witness_param;
    if (r.witness) j["witness"] = to_json(*r.witness);
    return j;
}

inline json to_json(const CompactnessReport& r) {
    json j{{"kind", r.kind == CompactnessReport::Kind::SubsequenceExtracted
                        ? "subsequence"
                        : "unbounded-evidence"},
           {"pass", r.pass},
           {"note", r.note}};
    if (!r.indices.empty()) j["indices"] = r.indices;
    if (r.subsequence_profile) j["subsequence_profile"] = to_json(*r.subsequence_profile);
    if (!r.dyadic_max.empty()) j["dyadic_max"] = r.dyadic_max;
    return j;
}

}  // namespace laclab
