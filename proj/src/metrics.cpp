#include "metrics.hpp"

#include <algorithm>
#include <ostream>

#include "errors.hpp"
#include "tsv.hpp"

namespace smartmtd {

namespace {

size_t intersection_size(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    size_t count = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

void check_objects_known(const std::vector<TruthAssignment>& preds, const TruthAssignment& gold) {
    std::vector<std::string> offenders;
    for (const auto& pred : preds)
        for (const auto& entry : pred.entries)
            if (!gold.find(entry.object)) offenders.push_back(entry.object);
    if (offenders.empty()) return;
    std::sort(offenders.begin(), offenders.end());
    offenders.erase(std::unique(offenders.begin(), offenders.end()), offenders.end());
    std::string msg = "predicted objects missing from gold:";
    for (const auto& name : offenders) msg += " '" + name + "'";
    throw ConfigError(msg);
}

// Per-object (precision, recall) terms for one run; 0/0 ratios read as 0.
std::pair<double, double> object_terms(const TruthAssignment& pred,
                                       const TruthAssignment::Entry& gold_entry) {
    const TruthAssignment::Entry* p = pred.find(gold_entry.object);
    if (!p || p->values.empty()) return {0.0, 0.0};
    double hit = static_cast<double>(intersection_size(p->values, gold_entry.values));
    return {hit / p->values.size(), hit / gold_entry.values.size()};
}

} // namespace

std::pair<double, double> precision_recall(const std::vector<TruthAssignment>& preds,
                                           const TruthAssignment& gold) {
    if (preds.empty()) throw Error("no prediction runs to evaluate");
    if (gold.entries.empty()) throw Error("empty gold truth assignment");
    check_objects_known(preds, gold);
    double precision = 0.0, recall = 0.0;
    for (const auto& pred : preds) {
        for (const auto& gold_entry : gold.entries) {
            auto [p, r] = object_terms(pred, gold_entry);
            precision += p;
            recall += r;
        }
    }
    const double denom = static_cast<double>(preds.size()) * gold.entries.size();
    return {precision / denom, recall / denom};
}

std::pair<double, double> weighted_precision_recall(
    const std::vector<TruthAssignment>& preds, const TruthAssignment& gold,
    const std::map<std::string, double>& popularity) {
    if (preds.empty()) throw Error("no prediction runs to evaluate");
    if (gold.entries.empty()) throw Error("empty gold truth assignment");
    check_objects_known(preds, gold);
    double precision = 0.0, recall = 0.0;
    for (const auto& pred : preds) {
        for (const auto& gold_entry : gold.entries) {
            auto it = popularity.find(gold_entry.object);
            if (it == popularity.end())
                throw ConfigError("no popularity entry for object '" + gold_entry.object + "'");
            auto [p, r] = object_terms(pred, gold_entry);
            precision += it->second * p;
            recall += it->second * r;
        }
    }
    const double runs = static_cast<double>(preds.size());
    return {precision / runs, recall / runs};
}

double f1_score(double precision, double recall) {
    if (precision == 0.0 && recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

double mean_time(const std::vector<double>& durations) {
    if (durations.empty()) throw Error("no durations to average");
    double sum = 0.0;
    for (double d : durations) sum += d;
    return sum / static_cast<double>(durations.size());
}

MetricsReport evaluate(const std::vector<TruthAssignment>& preds, const TruthAssignment& gold,
                       const std::map<std::string, double>& popularity,
                       const std::vector<double>& durations) {
    MetricsReport report;
    std::tie(report.precision, report.recall) = precision_recall(preds, gold);
    report.f1 = f1_score(report.precision, report.recall);
    std::tie(report.weighted_precision, report.weighted_recall) =
        weighted_precision_recall(preds, gold, popularity);
    report.weighted_f1 = f1_score(report.weighted_precision, report.weighted_recall);
    report.mean_execution_time = mean_time(durations);
    report.runs = static_cast<int>(preds.size());
    return report;
}

void write_metrics(std::ostream& out, const MetricsReport& report) {
    out << "precision=" << format_double(report.precision) << '\n'
        << "recall=" << format_double(report.recall) << '\n'
        << "f1=" << format_double(report.f1) << '\n'
        << "weighted_precision=" << format_double(report.weighted_precision) << '\n'
        << "weighted_recall=" << format_double(report.weighted_recall) << '\n'
        << "weighted_f1=" << format_double(report.weighted_f1) << '\n'
        << "mean_execution_time=" << format_double(report.mean_execution_time) << '\n'
        << "runs=" << report.runs << '\n';
}

void write_metrics_table(std::ostream& out, const MetricsReport& report) {
    auto row = [&out](const char* label, const std::string& value) {
        std::string padded(label);
        padded.resize(22, ' ');
        out << padded << value << '\n';
    };
    row("precision", format_double(report.precision));
    row("recall", format_double(report.recall));
    row("f1", format_double(report.f1));
    row("weighted precision", format_double(report.weighted_precision));
    row("weighted recall", format_double(report.weighted_recall));
    row("weighted f1", format_double(report.weighted_f1));
    row("mean execution time", format_double(report.mean_execution_time) + " s");
    row("runs", std::to_string(report.runs));
}

} // namespace smartmtd
