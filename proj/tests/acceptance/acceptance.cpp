// Acceptance suite: ten release criteria, one pass/fail line each, nonzero
// exit when any fail. Criteria 6-8 need the public Pima Indians Diabetes
// CSV at data/pima-indians-diabetes.csv (not redistributed; see
// data/README.md) and report failure when it is absent.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "featgraph/cross_validation.hpp"
#include "featgraph/feature_graph.hpp"
#include "featgraph/graph_io.hpp"
#include "featgraph/importance.hpp"
#include "featgraph/parallel.hpp"
#include "featgraph/rule_io.hpp"
#include "featgraph/stability.hpp"
#include "featgraph/synth.hpp"
#include "../support/oracle.hpp"
#include "../support/random_instances.hpp"

namespace fs = std::filesystem;
using namespace featgraph;

namespace {

struct Criterion {
    int number;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;

    Criterion(int n, std::string t) : number(n), title(std::move(t)) {}
};

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) { return csv::format_number(v); }

int hardware_jobs() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc > 8 ? 8 : hc);
}

// ---------- pima helpers ------------------------------------------------------

const char* kPimaPath = FEATGRAPH_DATA_DIR "/pima-indians-diabetes.csv";

std::optional<Dataset> load_pima(std::string* why) {
    if (!fs::exists(kPimaPath)) {
        *why = std::string("required dataset missing: ") + kPimaPath +
               " (download the public Pima Indians Diabetes CSV; see data/README.md)";
        return std::nullopt;
    }
    const std::string text = csv::read_file(kPimaPath);
    for (const char* target : {"Outcome", "outcome", "y", "class", "Class"}) {
        try {
            return load_csv_text(text, target);
        } catch (const std::exception&) {
            continue;
        }
    }
    *why = "pima csv present but no recognizable target column "
           "(expected one of Outcome/outcome/y/class)";
    return std::nullopt;
}

std::optional<std::size_t> find_feature(const Dataset& ds,
                                        std::initializer_list<const char*> aliases) {
    for (const char* name : aliases) {
        auto idx = ds.feature_index(name);
        if (idx) return idx;
    }
    return std::nullopt;
}

// ---------- subprocess helper (criteria 8 and 9) ------------------------------

const std::string kCli = FEATGRAPH_CLI_PATH;

int run_cli(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status < 0) return -1;
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("featgraph_accept_" + tag + "_" +
                                            std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

// ---------- criterion 1 -------------------------------------------------------

Criterion criterion1() {
    Criterion c{1, "oracle equivalence of covering/error/rule/feature relevance"};
    Timer timer;
    Rng rng(101);
    double max_diff = 0.0;
    std::size_t checks = 0;
    bool ok = true;
    for (int iter = 0; iter < 200 && ok; ++iter) {
        const Dataset ds = testgen::random_dataset(rng);
        const RuleSet rs = testgen::random_ruleset(rng, ds, 8);
        for (const auto& r : rs.rules) {
            const double pairs[3][2] = {
                {covering(ds, r), oracle::covering(ds, r)},
                {error(ds, r), oracle::error(ds, r)},
                {rule_relevance(ds, r), oracle::rule_relevance(ds, r)},
            };
            for (const auto& pr : pairs) {
                max_diff = std::max(max_diff, std::abs(pr[0] - pr[1]));
                ++checks;
            }
            for (const auto& name : ds.feature_names()) {
                max_diff = std::max(max_diff,
                                    std::abs(feature_relevance(ds, name, r) -
                                             oracle::feature_relevance(ds, name, r)));
                ++checks;
            }
            if (max_diff > 1e-15) { ok = false; break; }
        }
    }
    c.seconds = timer.seconds();
    c.pass = ok && max_diff <= 1e-15 && c.seconds < 10.0;
    c.detail = "200 instances, " + std::to_string(checks) + " comparisons, max |diff| " +
               fmt(max_diff);
    return c;
}

// ---------- criterion 2 -------------------------------------------------------

Criterion criterion2() {
    Criterion c{2, "projection invariants on random (P, q)"};
    Timer timer;
    Rng rng(202);
    bool ok = true;
    std::string why;
    for (int iter = 0; iter < 500 && ok; ++iter) {
        const std::size_t n = iter % 5 == 0 ? 1 : 1 + rng.next_below(10);
        const std::size_t m = 1 + rng.next_below(8);
        const Matrix p = testgen::random_p(rng, n, m);
        const auto q = testgen::random_q(rng, n);
        const Matrix a = project(p, q);

        for (std::size_t i = 0; i < m && ok; ++i)
            for (std::size_t j = 0; j < m && ok; ++j) {
                if (a(i, j) != a(j, i)) { ok = false; why = "symmetry"; }
                if (a(i, j) < 0.0 || a(i, j) > 1.0) { ok = false; why = "range"; }
            }
        if (ok && n == 1) {
            for (std::size_t i = 0; i < m && ok; ++i)
                for (std::size_t j = 0; j < m && ok; ++j)
                    if (std::abs(a(i, j) - p(0, i) * p(0, j) * q[0]) > 1e-15) {
                        ok = false;
                        why = "single-rule collapse";
                    }
        }
        if (ok) {  // monotonicity under one P bump and one q bump
            const std::size_t k = rng.next_below(n), col = rng.next_below(m);
            Matrix p2 = p;
            p2(k, col) += (1.0 - p2(k, col)) * rng.next_double();
            const Matrix a2 = project(p2, q);
            for (std::size_t j = 0; j < m && ok; ++j)
                if (a2(col, j) < a(col, j)) { ok = false; why = "monotone in P"; }
            auto q2 = q;
            q2[k] += (1.0 - q2[k]) * rng.next_double();
            const Matrix a3 = project(p, q2);
            for (std::size_t i = 0; i < m && ok; ++i)
                for (std::size_t j = 0; j < m && ok; ++j)
                    if (a3(i, j) < a(i, j)) { ok = false; why = "monotone in q"; }
        }
        if (ok) {
            auto [normalized, zero] = normalize(a);
            if (!zero) {
                if (std::abs(normalized.sum() - 100.0) > 1e-9) {
                    ok = false;
                    why = "normalized sum";
                }
                FeatureGraph g;
                g.a = normalized;
                for (std::size_t i = 0; i < m; ++i)
                    g.feature_names.push_back("f" + std::to_string(i));
                const auto fi = feature_importance(g);
                const double total =
                    std::accumulate(fi.scores.begin(), fi.scores.end(), 0.0);
                if (std::abs(total - 100.0) > 1e-9) { ok = false; why = "importance sum"; }
            }
        }
    }
    c.seconds = timer.seconds();
    c.pass = ok && c.seconds < 5.0;
    c.detail = ok ? "500 instances: symmetry, range, monotonicity, sums"
                  : ("violated: " + why);
    return c;
}

// ---------- criterion 3 -------------------------------------------------------

Criterion criterion3() {
    Criterion c{3, "Frobenius distance metric axioms"};
    Timer timer;
    Rng rng(303);
    bool ok = true;
    std::string why;
    for (int iter = 0; iter < 300 && ok; ++iter) {
        const std::size_t m = 2 + rng.next_below(5);
        FeatureGraph g1, g2, g3;
        for (std::size_t i = 0; i < m; ++i)
            g1.feature_names.push_back("f" + std::to_string(i));
        g2.feature_names = g1.feature_names;
        g3.feature_names = g1.feature_names;
        g1.a = testgen::random_symmetric(rng, m);
        g2.a = iter % 4 == 0 ? g1.a : testgen::random_symmetric(rng, m);
        g3.a = testgen::random_symmetric(rng, m);

        const double d12 = graph_distance(g1, g2);
        const double d21 = graph_distance(g2, g1);
        const double d13 = graph_distance(g1, g3);
        const double d23 = graph_distance(g2, g3);
        if (d12 < 0.0) { ok = false; why = "non-negativity"; }
        if (graph_distance(g1, g1) != 0.0) { ok = false; why = "identity d(g,g)"; }
        if (std::abs(d12 - d21) > 1e-9) { ok = false; why = "symmetry"; }
        if (d13 > d12 + d23 + 1e-9) { ok = false; why = "triangle inequality"; }
        const bool equal = g1.a == g2.a;
        if (equal && d12 != 0.0) { ok = false; why = "indiscernibles (equal, d>0)"; }
        if (!equal && d12 <= 1e-9) {
            double max_cell = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    max_cell = std::max(max_cell, std::abs(g1.a(i, j) - g2.a(i, j)));
            if (max_cell > 1e-9) { ok = false; why = "indiscernibles (d=0, unequal)"; }
        }
    }
    c.seconds = timer.seconds();
    c.pass = ok;
    c.detail = ok ? "300 graph pairs/triples" : ("violated: " + why);
    return c;
}

// ---------- criteria 4 and 5 (shared suite run) --------------------------------

struct SuiteCaseResult {
    std::string mode;
    std::size_t r = 0;
    double relevant_diag = 0.0;
    double relevant_offdiag = 0.0;
    std::size_t centrality_hits = 0;
    std::size_t gini_hits = 0;
    std::string name;
};

std::vector<std::size_t> top_k(const std::vector<double>& scores, std::size_t k) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    order.resize(k);
    return order;
}

std::vector<SuiteCaseResult> run_suite() {
    const auto cases = preset_suite_specs(42);
    std::vector<SuiteCaseResult> results(cases.size());
    parallel_for(cases.size(), hardware_jobs(), [&](std::size_t idx) {
        const auto& sc = cases[idx];
        const Dataset ds = generate(sc.spec);
        const CvResult cv =
            cross_validate(ds, default_param_grid(), 5, 3, Rng::derive(42, idx));

        const std::size_t m = ds.n_features();
        Matrix avg(m, m, 0.0);
        std::vector<double> gini_avg(m, 0.0);
        for (const auto& fold : cv.folds) {
            const Dataset train_ds = ds.subset(fold.train_indices);
            const FeatureGraph g = build_graph(train_ds, fold.rules);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    avg(i, j) += g.a(i, j) / static_cast<double>(cv.folds.size());
            const auto gi = gini_importance(fold.tree);
            for (std::size_t i = 0; i < m; ++i)
                gini_avg[i] += gi.scores[i] / static_cast<double>(cv.folds.size());
        }

        SuiteCaseResult res;
        res.mode = sc.mode;
        res.r = sc.relevant_indices.size();
        res.name = sc.name;
        std::vector<bool> is_relevant(m, false);
        for (std::size_t i : sc.relevant_indices) is_relevant[i] = true;
        for (std::size_t i : sc.relevant_indices) {
            res.relevant_diag += avg(i, i);
            for (std::size_t j : sc.relevant_indices)
                if (i != j) res.relevant_offdiag += avg(i, j);
        }
        std::vector<double> centrality(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) centrality[i] = avg.row_sum(i);
        for (std::size_t i : top_k(centrality, res.r))
            if (is_relevant[i]) res.centrality_hits++;
        for (std::size_t i : top_k(gini_avg, res.r))
            if (is_relevant[i]) res.gini_hits++;
        results[idx] = std::move(res);
    });
    return results;
}

Criterion criterion4(const std::vector<SuiteCaseResult>& suite, double suite_seconds) {
    Criterion c{4, "synthetic suite reproduces the diagonal/off-diagonal pattern"};
    std::size_t ind_total = 0, ind_good = 0, comb_total = 0, comb_good = 0;
    for (const auto& r : suite) {
        if (r.mode == "independent") {
            ++ind_total;
            if (r.relevant_diag > r.relevant_offdiag) ++ind_good;
        } else if (r.mode == "combined") {
            ++comb_total;
            if (r.relevant_offdiag > r.relevant_diag) ++comb_good;
        }
    }
    c.seconds = suite_seconds;
    const double ind_rate = static_cast<double>(ind_good) / static_cast<double>(ind_total);
    const double comb_rate =
        static_cast<double>(comb_good) / static_cast<double>(comb_total);
    c.pass = ind_rate >= 0.8 && comb_rate >= 0.8 && suite_seconds < 600.0;
    c.detail = "independent diag-heavy " + std::to_string(ind_good) + "/" +
               std::to_string(ind_total) + ", combined offdiag-heavy " +
               std::to_string(comb_good) + "/" + std::to_string(comb_total) +
               " (need >= 80%)";
    return c;
}

Criterion criterion5(const std::vector<SuiteCaseResult>& suite) {
    Criterion c{5, "relevant-feature recovery on every suite dataset"};
    std::size_t centrality_bad = 0, gini_bad = 0;
    std::string first_bad;
    for (const auto& r : suite) {
        if (r.centrality_hits + 1 < r.r) {
            ++centrality_bad;
            if (first_bad.empty())
                first_bad = r.name + " centrality " + std::to_string(r.centrality_hits) +
                            "/" + std::to_string(r.r);
        }
        if (r.gini_hits + 1 < r.r) {
            ++gini_bad;
            if (first_bad.empty())
                first_bad = r.name + " gini " + std::to_string(r.gini_hits) + "/" +
                            std::to_string(r.r);
        }
    }
    c.pass = centrality_bad == 0 && gini_bad == 0;
    c.detail = "150 datasets; centrality misses " + std::to_string(centrality_bad) +
               ", gini misses " + std::to_string(gini_bad) +
               (first_bad.empty() ? "" : " (first: " + first_bad + ")");
    return c;
}

// ---------- criterion 6 -------------------------------------------------------

Criterion criterion6() {
    Criterion c{6, "Pima case study: glucose tops the centrality ranking"};
    Timer timer;
    std::string why;
    auto pima = load_pima(&why);
    if (!pima) {
        c.detail = why;
        return c;
    }
    const auto g120 = find_feature(*pima, {"G120", "Glucose", "glucose", "glu"});
    const auto bmi = find_feature(*pima, {"BMI", "bmi", "mass"});
    const auto age = find_feature(*pima, {"Age", "age"});
    const auto dpf = find_feature(*pima, {"DPF", "DiabetesPedigreeFunction", "pedi"});
    if (!g120 || !bmi || !age || !dpf) {
        c.detail = "pima csv lacks expected feature columns (G120/Glucose, BMI, Age, DPF)";
        return c;
    }

    const CvResult cv = cross_validate(*pima, default_param_grid(), 5, 3, 42);
    std::size_t g120_first = 0, bmi_top5 = 0, age_top5 = 0, dpf_top5 = 0;
    for (const auto& fold : cv.folds) {
        const Dataset train_ds = pima->subset(fold.train_indices);
        const FeatureGraph g = build_graph(train_ds, fold.rules);
        const auto fi = feature_importance(g);
        if (!fi.ranking.empty() && fi.ranking[0] == *g120) ++g120_first;
        std::vector<bool> in_top5(pima->n_features(), false);
        for (std::size_t pos = 0; pos < 5 && pos < fi.ranking.size(); ++pos)
            in_top5[fi.ranking[pos]] = true;
        if (in_top5[*bmi]) ++bmi_top5;
        if (in_top5[*age]) ++age_top5;
        if (in_top5[*dpf]) ++dpf_top5;
    }
    c.seconds = timer.seconds();
    c.pass = g120_first >= 4 && bmi_top5 >= 3 && age_top5 >= 3 && dpf_top5 >= 3 &&
             c.seconds < 60.0;
    c.detail = "G120 #1 in " + std::to_string(g120_first) + "/5 folds; top-5 hits BMI " +
               std::to_string(bmi_top5) + ", Age " + std::to_string(age_top5) + ", DPF " +
               std::to_string(dpf_top5) + " of 5";
    return c;
}

// ---------- criterion 7 -------------------------------------------------------

Criterion criterion7() {
    Criterion c{7, "Pima stability: centrality at least as stable as Gini"};
    Timer timer;
    std::string why;
    auto pima = load_pima(&why);
    if (!pima) {
        c.detail = why;
        return c;
    }
    const auto rows = stability_by_depth(*pima, {3, 4, 5, 6, 7, 8}, {"graph", "gini"}, 42);
    double graph_rho = 0.0, gini_rho = 0.0;
    for (const auto& row : rows) {
        if (row.method == "graph") graph_rho = row.mean_rho;
        if (row.method == "gini") gini_rho = row.mean_rho;
    }
    c.seconds = timer.seconds();
    c.pass = graph_rho >= gini_rho - 0.01;
    c.detail = "mean pairwise rho: centrality " + fmt(graph_rho) + ", gini " +
               fmt(gini_rho);
    return c;
}

// ---------- criterion 8 -------------------------------------------------------

bool topk_report_well_formed(const std::string& path, std::string* why) {
    try {
        const auto j = nlohmann::json::parse(csv::read_file(path));
        for (const char* key : {"method", "features", "scores", "ranking", "topk"})
            if (!j.contains(key)) {
                *why = std::string("report missing key: ") + key;
                return false;
            }
        const double acc = j["topk"]["mean_cv_accuracy"].get<double>();
        if (!(acc >= 0.0 && acc <= 1.0)) {
            *why = "accuracy out of range";
            return false;
        }
        if (j["topk"]["features"].size() != j["topk"]["k"].get<std::size_t>()) {
            *why = "selected feature count != k";
            return false;
        }
    } catch (const std::exception& e) {
        *why = e.what();
        return false;
    }
    return true;
}

Criterion criterion8() {
    Criterion c{8, "top-k selection loop runs end-to-end (Pima + synthetic)"};
    Timer timer;
    TempDir tmp("c8");

    // synthetic half
    const Dataset synth_ds = generate(preset_mixed(4, 7));
    csv::write_file(tmp.file("synth.csv"), synth_ds.to_csv());
    std::string why;
    bool synth_ok =
        run_cli("--seed 42 train " + tmp.file("synth.csv") + " --target y --out " +
                tmp.file("run")) == 0 &&
        run_cli("--seed 42 importance " + tmp.file("synth.csv") + " --target y --rules " +
                tmp.file("run/fold1.rules") + " --method graph --topk 3 --format json" +
                " --out " + tmp.file("imp.json")) == 0 &&
        topk_report_well_formed(tmp.file("imp.json"), &why);

    // pima half
    bool pima_ok = false;
    std::string pima_why;
    if (fs::exists(kPimaPath)) {
        auto pima = load_pima(&pima_why);
        if (pima) {
            const std::string target = pima->target_name();
            pima_ok = run_cli("--seed 42 train " + std::string(kPimaPath) + " --target " +
                              target + " --out " + tmp.file("pima_run")) == 0 &&
                      run_cli("--seed 42 importance " + std::string(kPimaPath) +
                              " --target " + target + " --rules " +
                              tmp.file("pima_run/fold1.rules") +
                              " --method graph --topk 5 --format json --out " +
                              tmp.file("pima_imp.json")) == 0 &&
                      topk_report_well_formed(tmp.file("pima_imp.json"), &pima_why);
        }
    } else {
        pima_why = std::string("required dataset missing: ") + kPimaPath;
    }

    c.seconds = timer.seconds();
    c.pass = synth_ok && pima_ok;
    c.detail = std::string("synthetic: ") + (synth_ok ? "ok" : ("failed — " + why)) +
               "; pima: " + (pima_ok ? "ok" : ("failed — " + pima_why));
    return c;
}

// ---------- criterion 9 -------------------------------------------------------

Criterion criterion9() {
    Criterion c{9, "CLI determinism: reruns are byte-identical"};
    Timer timer;
    TempDir tmp("c9");
    csv::write_file(tmp.file("config.json"), R"({
      "n_samples": 240, "n_features": 4, "seed": 7,
      "relevant": [
        {"index": 0, "mode": "independent", "intervals": [[0.1, 0.4]]},
        {"index": 1, "mode": "independent", "intervals": [[0.5, 0.8]]}
      ]})");

    std::vector<std::pair<std::string, std::string>> mismatches;
    auto identical = [&](const std::string& a, const std::string& b,
                         const std::string& what) {
        if (csv::read_file(a) != csv::read_file(b)) mismatches.emplace_back(what, a);
    };

    // One shared input dataset; both reruns see byte-identical inputs and
    // --seed and differ only in output location.
    if (run_cli("--seed 11 synth --config " + tmp.file("config.json") + " --out " +
                tmp.file("input")) != 0) {
        c.detail = "synth failed while producing the shared input";
        c.seconds = timer.seconds();
        return c;
    }
    const std::string input_csv = tmp.file("input/synth.csv");
    const std::string rules = tmp.file("a/run/fold1.rules");
    for (const char* side : {"a", "b"}) {
        const std::string d = tmp.file(side);
        fs::create_directories(d);
        if (run_cli("--seed 11 synth --config " + tmp.file("config.json") + " --out " + d +
                    "/synth") != 0 ||
            run_cli("--seed 11 train " + input_csv + " --target y --folds 3" +
                    " --inner-folds 2 --out " + d + "/run") != 0 ||
            run_cli("--seed 11 graph " + input_csv + " " + rules +
                    " --target y --format dot --out " + d + "/g.dot") != 0 ||
            run_cli("--seed 11 compare " + input_csv + " " + rules + " " +
                    tmp.file("a/run/fold2.rules") + " --target y --out " + d +
                    "/dist.csv") != 0 ||
            run_cli("--seed 11 importance " + input_csv + " --target y --rules " + rules +
                    " --method graph --format json --out " + d + "/imp.json") != 0 ||
            run_cli("--seed 11 stability " + input_csv + " --target y" +
                    " --depths 2..4 --methods graph,gini --format csv --out " + d +
                    "/stab.csv") != 0) {
            c.detail = "a subcommand failed while producing outputs";
            c.seconds = timer.seconds();
            return c;
        }
    }
    for (const char* f :
         {"synth/synth.csv", "synth/manifest.json", "run/summary.json", "run/fold1.rules",
          "run/fold1.rules.json", "run/fold1.tree.json", "g.dot", "dist.csv", "imp.json",
          "stab.csv"})
        identical(tmp.file(std::string("a/") + f), tmp.file(std::string("b/") + f), f);

    c.seconds = timer.seconds();
    c.pass = mismatches.empty();
    c.detail = mismatches.empty()
                   ? "train/graph/compare/importance/synth/stability all byte-identical"
                   : ("differs: " + mismatches.front().first);
    return c;
}

// ---------- criterion 10 ------------------------------------------------------

Criterion criterion10() {
    Criterion c{10, "single-feature collapse: feature relevance equals rule relevance"};
    Timer timer;
    Rng rng(1001);
    int done = 0;
    bool ok = true;
    while (done < 100 && ok) {
        testgen::DatasetOptions opt;
        opt.min_classes = 2;
        opt.need_numeric = true;
        const Dataset ds = testgen::random_dataset(rng, opt);
        if (ds.n_classes() < 2) continue;
        const Rule r = testgen::random_single_feature_rule(rng, ds, 0);
        if (feature_relevance(ds, "f0", r) != rule_relevance(ds, r)) ok = false;
        ++done;
    }
    c.seconds = timer.seconds();
    c.pass = ok;
    c.detail = ok ? "100 rules, exact equality" : "mismatch found";
    return c;
}

}  // namespace

int main() {
    std::vector<Criterion> results;
    results.push_back(criterion1());
    results.push_back(criterion2());
    results.push_back(criterion3());

    Timer suite_timer;
    const auto suite = run_suite();
    const double suite_seconds = suite_timer.seconds();
    results.push_back(criterion4(suite, suite_seconds));
    results.push_back(criterion5(suite));

    results.push_back(criterion6());
    results.push_back(criterion7());
    results.push_back(criterion8());
    results.push_back(criterion9());
    results.push_back(criterion10());

    int failures = 0;
    for (const auto& c : results) {
        if (!c.pass) ++failures;
        std::printf("[%s] criterion %2d: %s — %s [%.1fs]\n", c.pass ? "PASS" : "FAIL",
                    c.number, c.title.c_str(), c.detail.c_str(), c.seconds);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures == 0 ? 0 : 1;
}
