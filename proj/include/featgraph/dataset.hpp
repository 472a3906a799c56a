#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "featgraph/csv.hpp"

namespace featgraph {

enum class ColumnKind { numeric, categorical };

inline std::string to_string(ColumnKind k) {
    return k == ColumnKind::numeric ? "numeric" : "categorical";
}

// Sorted, duplicate-free set of row indices. The unit in which class
// subsets and rule cover sets are materialized.
struct SampleIndexSet {
    std::vector<std::size_t> indices;

    std::size_t size() const { return indices.size(); }
    bool contains(std::size_t i) const {
        return std::binary_search(indices.begin(), indices.end(), i);
    }
};

inline std::size_t intersection_size(const SampleIndexSet& a, const SampleIndexSet& b) {
    std::size_t count = 0, i = 0, j = 0;
    while (i < a.indices.size() && j < b.indices.size()) {
        if (a.indices[i] < b.indices[j]) ++i;
        else if (b.indices[j] < a.indices[i]) ++j;
        else { ++count; ++i; ++j; }
    }
    return count;
}

// Immutable tabular dataset: named, typed feature columns plus a
// categorical target. Columns are stored column-major; numeric columns as
// doubles, categorical ones as strings. Immutable after construction, so
// concurrent readers need no synchronization.
class Dataset {
public:
    Dataset(std::vector<std::string> feature_names,
            std::vector<ColumnKind> kinds,
            std::vector<std::vector<double>> numeric_columns,
            std::vector<std::vector<std::string>> categorical_columns,
            std::vector<std::string> targets,
            std::string target_name = "y")
        : feature_names_(std::move(feature_names)),
          kinds_(std::move(kinds)),
          num_cols_(std::move(numeric_columns)),
          cat_cols_(std::move(categorical_columns)),
          targets_(std::move(targets)),
          target_name_(std::move(target_name)) {
        validate();
        index_classes();
    }

    std::size_t n_features() const { return feature_names_.size(); }
    std::size_t n_rows() const { return targets_.size(); }
    std::size_t n_classes() const { return class_labels_.size(); }

    const std::vector<std::string>& feature_names() const { return feature_names_; }
    const std::vector<ColumnKind>& column_kinds() const { return kinds_; }
    const std::vector<std::string>& targets() const { return targets_; }
    const std::vector<std::string>& class_labels() const { return class_labels_; }
    const std::string& target_name() const { return target_name_; }

    ColumnKind kind(std::size_t col) const { return kinds_.at(col); }

    std::optional<std::size_t> feature_index(const std::string& name) const {
        auto it = feature_lookup_.find(name);
        if (it == feature_lookup_.end()) return std::nullopt;
        return it->second;
    }

    double numeric_at(std::size_t row, std::size_t col) const {
        return num_cols_[col][row];
    }
    const std::string& categorical_at(std::size_t row, std::size_t col) const {
        return cat_cols_[col][row];
    }
    const std::vector<double>& numeric_column(std::size_t col) const {
        if (kinds_[col] != ColumnKind::numeric)
            throw std::runtime_error("column '" + feature_names_[col] + "' is not numeric");
        return num_cols_[col];
    }

    // Target id: index into class_labels(), cached per row for hot loops.
    int target_id(std::size_t row) const { return target_ids_[row]; }

    std::optional<int> class_id(const std::string& label) const {
        auto it = class_lookup_.find(label);
        if (it == class_lookup_.end()) return std::nullopt;
        return it->second;
    }

    // Majority class; ties broken by first-appearance order of the labels.
    const std::string& majority_class() const {
        std::vector<std::size_t> counts(class_labels_.size(), 0);
        for (int id : target_ids_) counts[static_cast<std::size_t>(id)]++;
        std::size_t best = 0;
        for (std::size_t i = 1; i < counts.size(); ++i)
            if (counts[i] > counts[best]) best = i;
        return class_labels_[best];
    }

    // D_i: indices of samples labelled t. Throws on unknown labels.
    SampleIndexSet class_subset(const std::string& t) const {
        const int id = require_class(t);
        SampleIndexSet out;
        for (std::size_t s = 0; s < targets_.size(); ++s)
            if (target_ids_[s] == id) out.indices.push_back(s);
        return out;
    }

    // D_i': indices of samples not labelled t.
    SampleIndexSet complement_subset(const std::string& t) const {
        const int id = require_class(t);
        SampleIndexSet out;
        for (std::size_t s = 0; s < targets_.size(); ++s)
            if (target_ids_[s] != id) out.indices.push_back(s);
        return out;
    }

    // Row selection; class label order is recomputed by first appearance
    // within the subset so exports of fold datasets stay deterministic.
    Dataset subset(const std::vector<std::size_t>& rows) const {
        std::vector<std::vector<double>> nums(n_features());
        std::vector<std::vector<std::string>> cats(n_features());
        std::vector<std::string> targets;
        targets.reserve(rows.size());
        for (std::size_t c = 0; c < n_features(); ++c) {
            if (kinds_[c] == ColumnKind::numeric) nums[c].reserve(rows.size());
            else cats[c].reserve(rows.size());
        }
        for (std::size_t r : rows) {
            if (r >= n_rows()) throw std::out_of_range("subset: row index out of range");
            for (std::size_t c = 0; c < n_features(); ++c) {
                if (kinds_[c] == ColumnKind::numeric) nums[c].push_back(num_cols_[c][r]);
                else cats[c].push_back(cat_cols_[c][r]);
            }
            targets.push_back(targets_[r]);
        }
        return Dataset(feature_names_, kinds_, std::move(nums), std::move(cats),
                       std::move(targets), target_name_);
    }

    // Keeps only the named feature columns (target untouched). Used by the
    // top-k retraining loop.
    Dataset select_features(const std::vector<std::string>& names) const {
        std::vector<std::string> fnames;
        std::vector<ColumnKind> kinds;
        std::vector<std::vector<double>> nums;
        std::vector<std::vector<std::string>> cats;
        for (const auto& name : names) {
            auto idx = feature_index(name);
            if (!idx) throw std::runtime_error("unknown feature: " + name);
            fnames.push_back(name);
            kinds.push_back(kinds_[*idx]);
            nums.push_back(num_cols_[*idx]);
            cats.push_back(cat_cols_[*idx]);
        }
        return Dataset(std::move(fnames), std::move(kinds), std::move(nums),
                       std::move(cats), targets_, target_name_);
    }

    std::string to_csv() const {
        std::string out;
        std::vector<std::string> header = feature_names_;
        header.push_back(target_name_);
        out += csv::join_row(header);
        std::vector<std::string> row(n_features() + 1);
        for (std::size_t r = 0; r < n_rows(); ++r) {
            for (std::size_t c = 0; c < n_features(); ++c) {
                row[c] = kinds_[c] == ColumnKind::numeric
                             ? csv::format_number(num_cols_[c][r])
                             : cat_cols_[c][r];
            }
            row[n_features()] = targets_[r];
            out += csv::join_row(row);
        }
        return out;
    }

private:
    void validate() {
        const std::size_t m = feature_names_.size();
        if (m == 0) throw std::runtime_error("dataset needs at least one feature");
        if (targets_.empty()) throw std::runtime_error("dataset needs at least one row");
        if (kinds_.size() != m || num_cols_.size() != m || cat_cols_.size() != m)
            throw std::runtime_error("dataset: column count mismatch");
        for (std::size_t c = 0; c < m; ++c) {
            const std::size_t len = kinds_[c] == ColumnKind::numeric
                                        ? num_cols_[c].size()
                                        : cat_cols_[c].size();
            if (len != targets_.size())
                throw std::runtime_error("dataset: column '" + feature_names_[c] +
                                         "' has wrong length");
        }
        for (std::size_t c = 0; c < m; ++c) {
            if (!feature_lookup_.emplace(feature_names_[c], c).second)
                throw std::runtime_error("duplicate feature name: " + feature_names_[c]);
        }
    }

    void index_classes() {
        target_ids_.reserve(targets_.size());
        for (const auto& t : targets_) {
            auto [it, inserted] =
                class_lookup_.emplace(t, static_cast<int>(class_labels_.size()));
            if (inserted) class_labels_.push_back(t);
            target_ids_.push_back(it->second);
        }
    }

    int require_class(const std::string& t) const {
        auto id = class_id(t);
        if (!id) throw std::runtime_error("unknown class label: " + t);
        return *id;
    }

    std::vector<std::string> feature_names_;
    std::vector<ColumnKind> kinds_;
    std::vector<std::vector<double>> num_cols_;
    std::vector<std::vector<std::string>> cat_cols_;
    std::vector<std::string> targets_;
    std::string target_name_;

    std::vector<std::string> class_labels_;
    std::vector<int> target_ids_;
    std::unordered_map<std::string, std::size_t> feature_lookup_;
    std::unordered_map<std::string, int> class_lookup_;
};

struct LoadOptions {
    // Per-column kind overrides; unspecified columns are inferred
    // (categorical as soon as one cell fails numeric parse).
    std::map<std::string, ColumnKind> kind_overrides;
    // When true, rows with missing cells abort the load instead of being
    // dropped with a count.
    bool strict = false;
};

struct LoadReport {
    std::size_t dropped_rows = 0;
};

inline Dataset load_csv_text(const std::string& text, const std::string& target,
                             const LoadOptions& options = {},
                             LoadReport* report = nullptr) {
    auto rows = csv::parse(text);
    if (rows.empty()) throw std::runtime_error("empty csv document");
    const auto& header = rows.front();

    std::size_t target_col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == target) target_col = i;
    if (target_col == header.size())
        throw std::runtime_error("target column not found: " + target);
    if (rows.size() < 2) throw std::runtime_error("csv has no data rows");

    std::vector<std::string> feature_names;
    std::vector<std::size_t> feature_cols;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i == target_col) continue;
        feature_names.push_back(header[i]);
        feature_cols.push_back(i);
    }
    if (feature_names.empty())
        throw std::runtime_error("csv has no feature columns");

    // First pass: drop (or reject) rows with missing cells.
    std::vector<const std::vector<std::string>*> kept;
    std::size_t dropped = 0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != header.size())
            throw std::runtime_error("row " + std::to_string(r + 1) + " has " +
                                     std::to_string(rows[r].size()) + " cells, expected " +
                                     std::to_string(header.size()));
        bool missing = false;
        for (const auto& cell : rows[r])
            if (csv::trim(cell).empty()) missing = true;
        if (missing) {
            if (options.strict)
                throw std::runtime_error("row " + std::to_string(r + 1) +
                                         " has missing cells (strict mode)");
            ++dropped;
            continue;
        }
        kept.push_back(&rows[r]);
    }
    if (report) report->dropped_rows = dropped;
    if (kept.empty()) throw std::runtime_error("no usable data rows after load");

    // Kind inference per feature column, unless overridden.
    const std::size_t m = feature_names.size();
    std::vector<ColumnKind> kinds(m, ColumnKind::numeric);
    for (std::size_t c = 0; c < m; ++c) {
        auto ov = options.kind_overrides.find(feature_names[c]);
        if (ov != options.kind_overrides.end()) {
            kinds[c] = ov->second;
            continue;
        }
        for (const auto* row : kept) {
            if (!csv::parse_number((*row)[feature_cols[c]])) {
                kinds[c] = ColumnKind::categorical;
                break;
            }
        }
    }

    std::vector<std::vector<double>> nums(m);
    std::vector<std::vector<std::string>> cats(m);
    std::vector<std::string> targets;
    targets.reserve(kept.size());
    for (const auto* row : kept) {
        for (std::size_t c = 0; c < m; ++c) {
            const std::string& cell = (*row)[feature_cols[c]];
            if (kinds[c] == ColumnKind::numeric) {
                auto v = csv::parse_number(cell);
                if (!v)
                    throw std::runtime_error("column '" + feature_names[c] +
                                             "' declared numeric but cell '" + cell +
                                             "' does not parse");
                nums[c].push_back(*v);
            } else {
                cats[c].push_back(csv::trim(cell));
            }
        }
        targets.push_back(csv::trim((*row)[target_col]));
    }

    return Dataset(std::move(feature_names), std::move(kinds), std::move(nums),
                   std::move(cats), std::move(targets), target);
}

inline Dataset load_csv(const std::string& path, const std::string& target,
                        const LoadOptions& options = {},
                        LoadReport* report = nullptr) {
    return load_csv_text(csv::read_file(path), target, options, report);
}

}  // namespace featgraph
