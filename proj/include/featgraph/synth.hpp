#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "featgraph/dataset.hpp"
#include "featgraph/rng.hpp"

namespace featgraph {

enum class SynthMode { independent, combined };

inline std::string to_string(SynthMode m) {
    return m == SynthMode::independent ? "independent" : "combined";
}

struct Interval {
    double lo = 0.0, hi = 0.0;
};

struct RelevantFeature {
    std::size_t index = 0;
    SynthMode mode = SynthMode::independent;
    std::vector<Interval> intervals;  // independent mode only
};

// Recipe for one synthetic dataset: features i.i.d. uniform on [0,1);
// the binary target is 1 when any independent-mode feature lands in one of
// its intervals, or when strictly more than half of the combined-mode
// features exceed the threshold.
struct SynthSpec {
    std::size_t n_samples = 2000;
    std::size_t n_features = 8;
    std::vector<RelevantFeature> relevant;
    double threshold = 0.5;
    std::uint64_t seed = 0;
};

inline void validate_spec(const SynthSpec& spec) {
    if (spec.n_samples == 0) throw std::runtime_error("n_samples: must be positive");
    if (spec.n_features == 0) throw std::runtime_error("n_features: must be positive");
    std::vector<bool> seen(spec.n_features, false);
    for (std::size_t i = 0; i < spec.relevant.size(); ++i) {
        const auto& rf = spec.relevant[i];
        const std::string path = "relevant[" + std::to_string(i) + "]";
        if (rf.index >= spec.n_features)
            throw std::runtime_error(path + ".index: out of range (n_features=" +
                                     std::to_string(spec.n_features) + ")");
        if (seen[rf.index]) throw std::runtime_error(path + ".index: duplicate");
        seen[rf.index] = true;
        auto sorted = rf.intervals;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        for (std::size_t k = 0; k < rf.intervals.size(); ++k) {
            const auto& iv = rf.intervals[k];
            const std::string ipath = path + ".intervals[" + std::to_string(k) + "]";
            if (!(iv.lo <= iv.hi)) throw std::runtime_error(ipath + ": hi < lo");
            if (iv.lo < 0.0 || iv.hi > 1.0)
                throw std::runtime_error(ipath + ": outside [0,1]");
        }
        for (std::size_t k = 0; k + 1 < sorted.size(); ++k)
            if (sorted[k].hi >= sorted[k + 1].lo)
                throw std::runtime_error(path + ".intervals: not pairwise disjoint");
    }
}

namespace detail {

inline bool synth_label(const SynthSpec& spec, const std::vector<double>& row) {
    bool independent_hit = false;
    std::size_t combined_total = 0, combined_over = 0;
    for (const auto& rf : spec.relevant) {
        const double v = row[rf.index];
        if (rf.mode == SynthMode::independent) {
            for (const auto& iv : rf.intervals)
                if (iv.lo <= v && v <= iv.hi) { independent_hit = true; break; }
        } else {
            ++combined_total;
            if (v > spec.threshold) ++combined_over;
        }
    }
    const bool combined_hit = combined_total > 0 && 2 * combined_over > combined_total;
    return independent_hit || combined_hit;
}

}  // namespace detail

// Generates the dataset for a spec. Feature values are drawn row-major
// from one seeded stream; labels are a pure function of the feature values,
// so regenerating labels from an emitted CSV reproduces them exactly.
inline Dataset generate(const SynthSpec& spec) {
    validate_spec(spec);
    Rng rng(spec.seed);
    std::vector<std::vector<double>> columns(spec.n_features,
                                             std::vector<double>(spec.n_samples));
    std::vector<std::string> targets(spec.n_samples);
    std::vector<double> row(spec.n_features);
    for (std::size_t s = 0; s < spec.n_samples; ++s) {
        for (std::size_t f = 0; f < spec.n_features; ++f) {
            row[f] = rng.next_double();
            columns[f][s] = row[f];
        }
        targets[s] = detail::synth_label(spec, row) ? "1" : "0";
    }

    std::vector<std::string> names(spec.n_features);
    for (std::size_t f = 0; f < spec.n_features; ++f) names[f] = "f" + std::to_string(f);
    std::vector<ColumnKind> kinds(spec.n_features, ColumnKind::numeric);
    std::vector<std::vector<std::string>> cats(spec.n_features);
    return Dataset(std::move(names), std::move(kinds), std::move(columns),
                   std::move(cats), std::move(targets), "y");
}

inline Dataset gen_independent(const SynthSpec& spec) {
    for (const auto& rf : spec.relevant)
        if (rf.mode != SynthMode::independent)
            throw std::runtime_error("gen_independent: all relevant features must be independent-mode");
    return generate(spec);
}

inline Dataset gen_combined(const SynthSpec& spec) {
    for (const auto& rf : spec.relevant)
        if (rf.mode != SynthMode::combined)
            throw std::runtime_error("gen_combined: all relevant features must be combined-mode");
    return generate(spec);
}

inline Dataset gen_mixed(const SynthSpec& spec) {
    bool has_ind = false, has_comb = false;
    for (const auto& rf : spec.relevant) {
        if (rf.mode == SynthMode::independent) has_ind = true;
        else has_comb = true;
    }
    if (!has_ind || !has_comb)
        throw std::runtime_error("gen_mixed: needs both independent- and combined-mode features");
    return generate(spec);
}

// ---- preset calibration ----------------------------------------------------
// The positive rate is targeted at 0.5: independent features share equal
// interval length L with 1-(1-L)^r = rate; the combined threshold solves
// P(majority of r exceeds) = rate; mixed splits the target evenly between
// the two criteria (each part at 1-sqrt(0.5)).

namespace detail {

inline double binomial_tail_at_least(int r, int k_min, double p) {
    double total = 0.0;
    for (int k = k_min; k <= r; ++k) {
        double comb = 1.0;
        for (int i = 0; i < k; ++i)
            comb = comb * static_cast<double>(r - i) / static_cast<double>(i + 1);
        total += comb * std::pow(p, k) * std::pow(1.0 - p, r - k);
    }
    return total;
}

// Smallest majority count: strictly more than half of r.
inline int majority_count(int r) { return r / 2 + 1; }

// Solves P(Bin(r, p) >= majority) = rate for p by bisection.
inline double solve_exceed_probability(int r, double rate) {
    const int m = majority_count(r);
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = (lo + hi) / 2.0;
        if (binomial_tail_at_least(r, m, mid) < rate) lo = mid;
        else hi = mid;
    }
    return (lo + hi) / 2.0;
}

inline std::vector<Interval> preset_interval(std::size_t pos, std::size_t count, double length) {
    const double start =
        0.05 + 0.45 * (count > 1 ? static_cast<double>(pos) / static_cast<double>(count - 1)
                                 : 0.0);
    return {Interval{start, start + length}};
}

}  // namespace detail

inline SynthSpec preset_independent(std::size_t n_relevant, std::uint64_t seed) {
    SynthSpec spec;
    spec.seed = seed;
    const double length = 1.0 - std::pow(0.5, 1.0 / static_cast<double>(n_relevant));
    for (std::size_t i = 0; i < n_relevant; ++i)
        spec.relevant.push_back(RelevantFeature{
            i, SynthMode::independent, detail::preset_interval(i, n_relevant, length)});
    return spec;
}

inline SynthSpec preset_combined(std::size_t n_relevant, std::uint64_t seed) {
    SynthSpec spec;
    spec.seed = seed;
    spec.threshold =
        1.0 - detail::solve_exceed_probability(static_cast<int>(n_relevant), 0.5);
    for (std::size_t i = 0; i < n_relevant; ++i)
        spec.relevant.push_back(RelevantFeature{i, SynthMode::combined, {}});
    return spec;
}

inline SynthSpec preset_mixed(std::size_t n_relevant, std::uint64_t seed) {
    SynthSpec spec;
    spec.seed = seed;
    const std::size_t n_ind = (n_relevant + 1) / 2;
    const std::size_t n_comb = n_relevant - n_ind;
    const double part_rate = 1.0 - std::sqrt(0.5);
    const double length =
        1.0 - std::pow(1.0 - part_rate, 1.0 / static_cast<double>(n_ind));
    for (std::size_t i = 0; i < n_ind; ++i)
        spec.relevant.push_back(RelevantFeature{
            i, SynthMode::independent, detail::preset_interval(i, n_ind, length)});
    spec.threshold =
        1.0 - detail::solve_exceed_probability(static_cast<int>(n_comb), part_rate);
    for (std::size_t i = 0; i < n_comb; ++i)
        spec.relevant.push_back(RelevantFeature{n_ind + i, SynthMode::combined, {}});
    return spec;
}

// One generated dataset of the paper-style benchmark suite.
struct SynthCase {
    std::string name;
    std::string mode;  // independent | combined | mixed
    SynthSpec spec;
    std::vector<std::size_t> relevant_indices;
};

// The full grid: relevant count 2..6 x three modes x 10 seeds.
inline std::vector<SynthCase> preset_suite_specs(std::uint64_t seed_base) {
    std::vector<SynthCase> cases;
    const char* modes[] = {"independent", "combined", "mixed"};
    for (const char* mode : modes) {
        for (std::size_t r = 2; r <= 6; ++r) {
            for (std::uint64_t i = 0; i < 10; ++i) {
                SynthCase c;
                c.mode = mode;
                const std::uint64_t seed = seed_base + i;
                if (c.mode == "independent") c.spec = preset_independent(r, seed);
                else if (c.mode == "combined") c.spec = preset_combined(r, seed);
                else c.spec = preset_mixed(r, seed);
                for (const auto& rf : c.spec.relevant)
                    c.relevant_indices.push_back(rf.index);
                char name[64];
                std::snprintf(name, sizeof(name), "synth_%s_r%zu_s%02llu", mode, r,
                              static_cast<unsigned long long>(i));
                c.name = name;
                cases.push_back(std::move(c));
            }
        }
    }
    return cases;
}

// ---- manifest & config JSON -------------------------------------------------

inline nlohmann::ordered_json spec_to_json(const SynthSpec& spec) {
    nlohmann::ordered_json j;
    j["n_samples"] = spec.n_samples;
    j["n_features"] = spec.n_features;
    j["seed"] = spec.seed;
    j["threshold"] = spec.threshold;
    auto rel = nlohmann::ordered_json::array();
    for (const auto& rf : spec.relevant) {
        nlohmann::ordered_json jr;
        jr["index"] = rf.index;
        jr["mode"] = to_string(rf.mode);
        if (rf.mode == SynthMode::independent) {
            auto ivs = nlohmann::ordered_json::array();
            for (const auto& iv : rf.intervals) ivs.push_back({iv.lo, iv.hi});
            jr["intervals"] = ivs;
        }
        rel.push_back(jr);
    }
    j["relevant"] = rel;
    return j;
}

inline SynthSpec spec_from_json(const nlohmann::json& j) {
    SynthSpec spec;
    try {
        if (j.contains("n_samples")) spec.n_samples = j.at("n_samples").get<std::size_t>();
        if (j.contains("n_features")) spec.n_features = j.at("n_features").get<std::size_t>();
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("threshold")) spec.threshold = j.at("threshold").get<double>();
        for (std::size_t i = 0; i < j.at("relevant").size(); ++i) {
            const auto& jr = j.at("relevant")[i];
            RelevantFeature rf;
            rf.index = jr.at("index").get<std::size_t>();
            const std::string mode = jr.at("mode").get<std::string>();
            if (mode == "independent") rf.mode = SynthMode::independent;
            else if (mode == "combined") rf.mode = SynthMode::combined;
            else
                throw std::runtime_error("relevant[" + std::to_string(i) +
                                         "].mode: expected independent or combined");
            if (jr.contains("intervals"))
                for (const auto& iv : jr.at("intervals"))
                    rf.intervals.push_back(Interval{iv.at(0).get<double>(),
                                                    iv.at(1).get<double>()});
            spec.relevant.push_back(std::move(rf));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("synth config: ") + e.what());
    }
    validate_spec(spec);
    return spec;
}

}  // namespace featgraph
