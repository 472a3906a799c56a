#pragma once

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "featgraph/cross_validation.hpp"
#include "featgraph/dataset.hpp"
#include "featgraph/graph_io.hpp"
#include "featgraph/importance.hpp"
#include "featgraph/parallel.hpp"
#include "featgraph/rule_io.hpp"
#include "featgraph/stability.hpp"
#include "featgraph/synth.hpp"

namespace featgraph::cli {

namespace fs = std::filesystem;

struct CommonOptions {
    std::uint64_t seed = 42;
    int jobs = 1;
    bool quiet = false;
};

inline void warn(const CommonOptions& common, const std::string& message) {
    if (!common.quiet) std::cerr << "warning: " << message << "\n";
}

namespace detail {

inline Dataset load_dataset(const std::string& path, const std::string& target,
                            const CommonOptions& common) {
    LoadReport report;
    Dataset ds = load_csv(path, target, LoadOptions{}, &report);
    if (report.dropped_rows > 0)
        warn(common, std::to_string(report.dropped_rows) +
                         " row(s) with missing cells dropped from " + path);
    return ds;
}

// Rule features must all exist in the dataset; reports every offender.
inline void check_rule_schema(const Dataset& ds, const RuleSet& rs) {
    std::vector<std::string> missing;
    for (const auto& r : rs.rules)
        for (const auto& c : r.conditions)
            if (!ds.feature_index(c.feature) &&
                std::find(missing.begin(), missing.end(), c.feature) == missing.end())
                missing.push_back(c.feature);
    if (!missing.empty()) {
        std::string list;
        for (std::size_t i = 0; i < missing.size(); ++i)
            list += (i ? ", " : "") + missing[i];
        throw std::runtime_error("rule set references features absent from the dataset: " +
                                 list);
    }
}

inline std::string graph_extension(GraphFormat f) {
    switch (f) {
        case GraphFormat::dot: return ".dot";
        case GraphFormat::graphml: return ".graphml";
        case GraphFormat::json: return ".json";
        case GraphFormat::csv: return ".csv";
    }
    return ".out";
}

}  // namespace detail

// ---- train -----------------------------------------------------------------

struct TrainOptions {
    std::string dataset_path;
    std::string target;
    std::string out_dir = "train_out";
    std::string grid;  // compact "depth=...;leaf=..." spec; empty: default
    int folds = 5;
    int inner_folds = 3;
};

inline int cmd_train(const TrainOptions& opt, const CommonOptions& common) {
    const Dataset ds = detail::load_dataset(opt.dataset_path, opt.target, common);
    const auto grid = opt.grid.empty() ? default_param_grid() : parse_param_grid(opt.grid);
    const CvResult cv = cross_validate(ds, grid, opt.folds, opt.inner_folds, common.seed);

    fs::create_directories(opt.out_dir);
    nlohmann::ordered_json summary;
    summary["dataset"] = opt.dataset_path;
    summary["target"] = opt.target;
    summary["seed"] = common.seed;
    summary["folds"] = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < cv.folds.size(); ++j) {
        const auto& fold = cv.folds[j];
        const std::string stem = "fold" + std::to_string(j + 1);
        csv::write_file((fs::path(opt.out_dir) / (stem + ".rules")).string(),
                        format_rules(fold.rules));
        csv::write_file((fs::path(opt.out_dir) / (stem + ".rules.json")).string(),
                        rules_to_json(fold.rules).dump(2) + "\n");
        csv::write_file((fs::path(opt.out_dir) / (stem + ".tree.json")).string(),
                        tree_to_json(fold.tree).dump(2) + "\n");
        nlohmann::ordered_json jf;
        jf["fold"] = j + 1;
        jf["accuracy"] = fold.test_accuracy;
        jf["n_rules"] = fold.rules.size();
        jf["max_depth"] = fold.chosen_params.max_depth
                              ? nlohmann::ordered_json(*fold.chosen_params.max_depth)
                              : nlohmann::ordered_json(nullptr);
        jf["min_samples_leaf"] = fold.chosen_params.min_samples_leaf;
        summary["folds"].push_back(jf);
    }
    summary["mean_accuracy"] = cv.mean_accuracy;
    csv::write_file((fs::path(opt.out_dir) / "summary.json").string(),
                    summary.dump(2) + "\n");

    if (!common.quiet)
        std::cout << "trained " << cv.folds.size() << " folds, mean accuracy "
                  << cv.mean_accuracy << "; outputs in " << opt.out_dir << "\n";
    return 0;
}

// ---- graph -----------------------------------------------------------------

struct GraphOptions {
    std::string dataset_path;
    std::string rules_path;
    std::string target;
    std::string format = "dot";
    std::string out_path;  // default graph.<ext>
    std::optional<std::string> class_filter;
    std::string feature_metric = "error_increase";
    std::string rule_metric = "relevance";
    bool omit_self_edges = false;
};

inline int cmd_graph(const GraphOptions& opt, const CommonOptions& common) {
    const Dataset ds = detail::load_dataset(opt.dataset_path, opt.target, common);
    const RuleSet rs = load_rules(opt.rules_path);
    detail::check_rule_schema(ds, rs);
    if (opt.class_filter && !ds.class_id(*opt.class_filter)) {
        std::string labels;
        for (std::size_t i = 0; i < ds.class_labels().size(); ++i)
            labels += (i ? ", " : "") + ds.class_labels()[i];
        throw std::runtime_error("unknown class '" + *opt.class_filter +
                                 "'; valid labels: " + labels);
    }

    const FeatureGraph g =
        build_graph(ds, rs, opt.class_filter,
                    feature_metric_from_string(opt.feature_metric),
                    rule_metric_from_string(opt.rule_metric));
    if (g.zero) warn(common, "graph has zero total weight (no rules contribute)");

    const GraphFormat format = graph_format_from_string(opt.format);
    const std::string out = opt.out_path.empty()
                                ? "graph" + detail::graph_extension(format)
                                : opt.out_path;
    csv::write_file(out, export_graph(g, format, GraphExportOptions{opt.omit_self_edges}));

    std::cout << importance_to_text(graph_importance(g));
    if (!common.quiet) std::cerr << "graph written to " << out << "\n";
    return 0;
}

// ---- compare -----------------------------------------------------------------

struct CompareOptions {
    std::string dataset_path;
    std::vector<std::string> rules_paths;
    std::string target;
    std::string format = "csv";
    std::string out_path;  // empty: stdout
    std::optional<std::string> class_filter;
};

inline int cmd_compare(const CompareOptions& opt, const CommonOptions& common) {
    const Dataset ds = detail::load_dataset(opt.dataset_path, opt.target, common);
    std::vector<FeatureGraph> graphs;
    std::vector<std::string> labels;
    for (const auto& path : opt.rules_paths) {
        const RuleSet rs = load_rules(path);
        detail::check_rule_schema(ds, rs);
        graphs.push_back(build_graph(ds, rs, opt.class_filter));
        std::string label = fs::path(path).stem().string();
        while (std::find(labels.begin(), labels.end(), label) != labels.end())
            label += "'";
        labels.push_back(label);
    }

    const std::size_t k = graphs.size();
    Matrix dist(k, k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const double d = graph_distance(graphs[i], graphs[j]);
            dist(i, j) = d;
            dist(j, i) = d;
        }

    std::string out;
    if (opt.format == "json") {
        nlohmann::ordered_json j;
        j["labels"] = labels;
        auto rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < k; ++i) {
            auto row = nlohmann::ordered_json::array();
            for (std::size_t c = 0; c < k; ++c) row.push_back(dist(i, c));
            rows.push_back(row);
        }
        j["distances"] = rows;
        out = j.dump(2) + "\n";
    } else {
        std::vector<std::string> header{""};
        for (const auto& l : labels) header.push_back(l);
        out += csv::join_row(header);
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<std::string> row{labels[i]};
            for (std::size_t c = 0; c < k; ++c)
                row.push_back(csv::format_number(dist(i, c)));
            out += csv::join_row(row);
        }
    }
    if (opt.out_path.empty()) std::cout << out;
    else csv::write_file(opt.out_path, out);
    return 0;
}

// ---- importance ---------------------------------------------------------------

struct ImportanceOptions {
    std::string dataset_path;
    std::string target;
    std::string rules_path;  // one of rules/model required
    std::string model_path;
    std::string method = "graph";
    std::string format = "text";
    std::string out_path;  // empty: stdout
    int repeats = 10;
    int topk = 0;  // 0: disabled
};

inline int cmd_importance(const ImportanceOptions& opt, const CommonOptions& common) {
    const Dataset ds = detail::load_dataset(opt.dataset_path, opt.target, common);
    if (opt.rules_path.empty() && opt.model_path.empty())
        throw std::runtime_error("importance needs --rules or --model");

    std::optional<DecisionTree> tree;
    if (!opt.model_path.empty())
        tree = tree_from_json(nlohmann::json::parse(csv::read_file(opt.model_path)));

    ImportanceReport report;
    if (opt.method == "graph") {
        RuleSet rs = opt.rules_path.empty() ? tree_to_rules(*tree)
                                            : load_rules(opt.rules_path);
        detail::check_rule_schema(ds, rs);
        report = graph_importance(build_graph(ds, rs));
    } else if (opt.method == "gini") {
        if (!tree)
            throw std::runtime_error("--method gini requires a tree via --model");
        report = gini_importance(*tree);
    } else if (opt.method == "permutation") {
        Predictor predict;
        if (tree) {
            const DecisionTree& t = *tree;
            predict = [t](const Dataset& d, std::size_t row) { return t.predict(d, row); };
        } else {
            RuleSet rs = load_rules(opt.rules_path);
            detail::check_rule_schema(ds, rs);
            const auto rd = relevance_matrix(ds, rs);
            const auto p = make_ruleset_predictor(ds, rs, rd);
            predict = [p](const Dataset& d, std::size_t row) { return p.predict(d, row); };
        }
        report = permutation_importance(predict, ds, opt.repeats, common.seed);
    } else {
        throw std::runtime_error("unknown method: " + opt.method);
    }

    // Optional top-k evaluation loop: keep the k best-ranked features,
    // retrain with nested CV on the reduced dataset, report accuracy.
    nlohmann::ordered_json topk_json;
    std::string topk_text;
    if (opt.topk > 0) {
        std::size_t k = static_cast<std::size_t>(opt.topk);
        if (k > ds.n_features()) {
            warn(common, "--topk " + std::to_string(k) + " clamped to " +
                             std::to_string(ds.n_features()) + " features");
            k = ds.n_features();
        }
        std::vector<std::string> selected;
        for (std::size_t pos = 0; pos < k; ++pos)
            selected.push_back(report.features[report.ranking[pos]]);
        const Dataset reduced = ds.select_features(selected);
        const CvResult cv = cross_validate(reduced, default_param_grid(), 5, 3, common.seed);
        topk_json["k"] = k;
        topk_json["features"] = selected;
        topk_json["mean_cv_accuracy"] = cv.mean_accuracy;
        topk_text = "top-" + std::to_string(k) + " retrain mean CV accuracy: " +
                    csv::format_number(cv.mean_accuracy) + "\n";
    }

    std::string out;
    if (opt.format == "csv") {
        out = importance_to_csv(report);
    } else if (opt.format == "json") {
        auto j = importance_to_json(report);
        if (opt.topk > 0) j["topk"] = topk_json;
        out = j.dump(2) + "\n";
    } else {
        out = importance_to_text(report) + topk_text;
    }
    if (opt.out_path.empty()) std::cout << out;
    else csv::write_file(opt.out_path, out);
    return 0;
}

// ---- synth -----------------------------------------------------------------

struct SynthOptions {
    std::string preset;       // "paper" for the full suite
    std::string config_path;  // single-spec JSON
    std::string out_dir = "synth_out";
};

inline int cmd_synth(const SynthOptions& opt, const CommonOptions& common) {
    if ((opt.preset.empty()) == (opt.config_path.empty()))
        throw std::runtime_error("synth needs exactly one of --preset or --config");
    fs::create_directories(opt.out_dir);

    auto dataset_entry = [](const std::string& file, const std::string& mode,
                            const SynthSpec& spec, const Dataset& ds) {
        nlohmann::ordered_json e;
        e["file"] = file;
        e["mode"] = mode;
        e["spec"] = spec_to_json(spec);
        std::size_t positives = 0;
        for (const auto& t : ds.targets())
            if (t == "1") ++positives;
        e["positive_rate"] =
            static_cast<double>(positives) / static_cast<double>(ds.n_rows());
        return e;
    };

    nlohmann::ordered_json manifest;
    manifest["seed"] = common.seed;
    manifest["datasets"] = nlohmann::ordered_json::array();

    if (!opt.preset.empty()) {
        if (opt.preset != "paper")
            throw std::runtime_error("unknown preset: " + opt.preset +
                                     " (only 'paper' is defined)");
        auto cases = preset_suite_specs(common.seed);
        std::vector<nlohmann::ordered_json> entries(cases.size());
        parallel_for(cases.size(), common.jobs, [&](std::size_t i) {
            const Dataset ds = generate(cases[i].spec);
            const std::string file = cases[i].name + ".csv";
            csv::write_file((fs::path(opt.out_dir) / file).string(), ds.to_csv());
            entries[i] = dataset_entry(file, cases[i].mode, cases[i].spec, ds);
        });
        for (auto& e : entries) manifest["datasets"].push_back(std::move(e));
        if (!common.quiet)
            std::cout << "wrote " << cases.size() << " datasets to " << opt.out_dir << "\n";
    } else {
        SynthSpec spec = spec_from_json(nlohmann::json::parse(csv::read_file(opt.config_path)));
        const Dataset ds = generate(spec);
        bool has_ind = false, has_comb = false;
        for (const auto& rf : spec.relevant)
            (rf.mode == SynthMode::independent ? has_ind : has_comb) = true;
        const std::string mode =
            has_ind && has_comb ? "mixed" : (has_comb ? "combined" : "independent");
        csv::write_file((fs::path(opt.out_dir) / "synth.csv").string(), ds.to_csv());
        manifest["datasets"].push_back(dataset_entry("synth.csv", mode, spec, ds));
        if (!common.quiet) std::cout << "wrote 1 dataset to " << opt.out_dir << "\n";
    }

    csv::write_file((fs::path(opt.out_dir) / "manifest.json").string(),
                    manifest.dump(2) + "\n");
    return 0;
}

// ---- stability ----------------------------------------------------------------

struct StabilityOptions {
    std::string dataset_path;
    std::string target;
    std::string depths;  // "3..8" or comma list
    int folds = 0;
    std::string methods = "graph,gini";
    std::string format = "text";
    std::string out_path;
    int repeats = 10;
};

inline std::vector<int> parse_depth_list(const std::string& text) {
    std::vector<int> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const int lo = std::stoi(text.substr(0, dots));
        const int hi = std::stoi(text.substr(dots + 2));
        for (int d = lo; d <= hi; ++d) out.push_back(d);
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string item =
            text.substr(start, comma == std::string::npos ? std::string::npos
                                                          : comma - start);
        if (!csv::trim(item).empty()) out.push_back(std::stoi(csv::trim(item)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

inline std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string item =
            text.substr(start, comma == std::string::npos ? std::string::npos
                                                          : comma - start);
        if (!csv::trim(item).empty()) out.push_back(csv::trim(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

inline int cmd_stability(const StabilityOptions& opt, const CommonOptions& common) {
    const Dataset ds = detail::load_dataset(opt.dataset_path, opt.target, common);
    if (opt.depths.empty() == (opt.folds == 0))
        throw std::runtime_error("stability needs exactly one of --depths or --folds");
    const auto methods = split_csv_list(opt.methods);
    if (methods.empty()) throw std::runtime_error("no methods given");

    std::vector<StabilityRow> rows;
    if (!opt.depths.empty()) {
        const auto depths = parse_depth_list(opt.depths);
        rows = stability_by_depth(ds, depths, methods, common.seed, opt.repeats);
    } else {
        rows = stability_by_folds(ds, opt.folds, methods, common.seed, opt.repeats);
    }

    const std::string out =
        opt.format == "csv" ? stability_to_csv(rows) : stability_to_text(rows);
    if (opt.out_path.empty()) std::cout << out;
    else csv::write_file(opt.out_path, out);
    return 0;
}

// ---- driver ---------------------------------------------------------------

inline int run(int argc, const char* const* argv) {
    CLI::App app{"feature-graph analysis of rule-based classifiers"};
    app.require_subcommand(1);

    CommonOptions common;
    app.add_option("--seed", common.seed, "random seed (all subcommands derive from it)")
        ->capture_default_str();
    app.add_option("--jobs", common.jobs, "max worker threads")->capture_default_str();
    app.add_flag("--quiet", common.quiet, "suppress warnings and progress notes");

    TrainOptions train;
    auto* cmd_train_ = app.add_subcommand("train", "train fold trees and emit rule sets");
    cmd_train_->add_option("dataset", train.dataset_path, "training CSV")->required();
    cmd_train_->add_option("--target", train.target, "target column name")->required();
    cmd_train_->add_option("--out", train.out_dir, "output directory")->capture_default_str();
    cmd_train_->add_option("--grid", train.grid,
                           "hyperparameter grid, e.g. depth=3,4,none;leaf=1,5");
    cmd_train_->add_option("--folds", train.folds, "outer folds")->capture_default_str();
    cmd_train_->add_option("--inner-folds", train.inner_folds, "inner folds for tuning")
        ->capture_default_str();

    GraphOptions graph;
    std::string graph_class;
    auto* cmd_graph_ = app.add_subcommand("graph", "project a rule set onto a feature graph");
    cmd_graph_->add_option("dataset", graph.dataset_path, "dataset CSV")->required();
    cmd_graph_->add_option("rules", graph.rules_path, "rule file (.rules DSL or .json)")
        ->required();
    cmd_graph_->add_option("--target", graph.target, "target column name")->required();
    cmd_graph_->add_option("--class", graph_class, "build the class-specific graph");
    cmd_graph_->add_option("--format", graph.format, "dot|graphml|json|csv")
        ->check(CLI::IsMember({"dot", "graphml", "json", "csv"}))
        ->capture_default_str();
    cmd_graph_->add_option("--out", graph.out_path, "output file (default graph.<ext>)");
    cmd_graph_->add_option("--feature-metric", graph.feature_metric,
                           "error_increase|impurity_gain")
        ->check(CLI::IsMember({"error_increase", "impurity_gain"}))
        ->capture_default_str();
    cmd_graph_->add_option("--rule-metric", graph.rule_metric,
                           "relevance|support|confidence")
        ->check(CLI::IsMember({"relevance", "support", "confidence"}))
        ->capture_default_str();
    cmd_graph_->add_flag("--omit-self-edges", graph.omit_self_edges,
                         "drop diagonal entries from exported edge lists");

    CompareOptions compare;
    std::string compare_class;
    auto* cmd_compare_ =
        app.add_subcommand("compare", "pairwise Frobenius distances between rule sets");
    cmd_compare_->add_option("dataset", compare.dataset_path, "dataset CSV")->required();
    cmd_compare_->add_option("rules", compare.rules_paths, "two or more rule files")
        ->required()
        ->expected(2, -1);
    cmd_compare_->add_option("--target", compare.target, "target column name")->required();
    cmd_compare_->add_option("--class", compare_class, "compare class-specific graphs");
    cmd_compare_->add_option("--format", compare.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd_compare_->add_option("--out", compare.out_path, "output file (default stdout)");

    ImportanceOptions importance;
    auto* cmd_importance_ =
        app.add_subcommand("importance", "feature importance reports and top-k evaluation");
    cmd_importance_->add_option("dataset", importance.dataset_path, "dataset CSV")->required();
    cmd_importance_->add_option("--target", importance.target, "target column name")
        ->required();
    cmd_importance_->add_option("--rules", importance.rules_path, "rule file");
    cmd_importance_->add_option("--model", importance.model_path, "tree model JSON");
    cmd_importance_->add_option("--method", importance.method, "graph|gini|permutation")
        ->check(CLI::IsMember({"graph", "gini", "permutation"}))
        ->capture_default_str();
    cmd_importance_->add_option("--format", importance.format, "text|csv|json")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    cmd_importance_->add_option("--out", importance.out_path, "output file (default stdout)");
    cmd_importance_->add_option("--repeats", importance.repeats,
                                "shuffles per feature (permutation)")
        ->capture_default_str();
    cmd_importance_->add_option("--topk", importance.topk,
                                "retrain on the top-k features and report accuracy");

    SynthOptions synth;
    auto* cmd_synth_ = app.add_subcommand("synth", "generate synthetic benchmark datasets");
    cmd_synth_->add_option("--preset", synth.preset, "named suite ('paper': full grid)");
    cmd_synth_->add_option("--config", synth.config_path, "single-spec JSON file");
    cmd_synth_->add_option("--out", synth.out_dir, "output directory")->capture_default_str();

    StabilityOptions stability;
    auto* cmd_stability_ =
        app.add_subcommand("stability", "importance rank stability across models");
    cmd_stability_->add_option("dataset", stability.dataset_path, "dataset CSV")->required();
    cmd_stability_->add_option("--target", stability.target, "target column name")->required();
    cmd_stability_->add_option("--depths", stability.depths, "depth list: 3..8 or 3,5,8");
    cmd_stability_->add_option("--folds", stability.folds, "compare across k CV folds");
    cmd_stability_->add_option("--methods", stability.methods, "comma list of methods")
        ->capture_default_str();
    cmd_stability_->add_option("--format", stability.format, "text|csv")
        ->check(CLI::IsMember({"text", "csv"}))
        ->capture_default_str();
    cmd_stability_->add_option("--out", stability.out_path, "output file (default stdout)");
    cmd_stability_->add_option("--repeats", stability.repeats,
                               "shuffles per feature (permutation)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*cmd_train_) return cmd_train(train, common);
        if (*cmd_graph_) {
            if (!graph_class.empty()) graph.class_filter = graph_class;
            return cmd_graph(graph, common);
        }
        if (*cmd_compare_) {
            if (!compare_class.empty()) compare.class_filter = compare_class;
            return cmd_compare(compare, common);
        }
        if (*cmd_importance_) return cmd_importance(importance, common);
        if (*cmd_synth_) return cmd_synth(synth, common);
        if (*cmd_stability_) return cmd_stability(stability, common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace featgraph::cli
