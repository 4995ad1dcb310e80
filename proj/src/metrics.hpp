#pragma once
// Accuracy and timing metrics over K runs against a gold truth assignment.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "claims.hpp"

namespace smartmtd {

struct MetricsReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double weighted_precision = 0.0;
    double weighted_recall = 0.0;
    double weighted_f1 = 0.0;
    double mean_execution_time = 0.0; // seconds
    int runs = 0;                     // K
};

// Per-object ratios averaged over the gold's objects and over runs. An
// object absent from a prediction, or predicted empty, contributes 0 to
// both ratios. Predictions for objects outside the gold are a ConfigError
// listing the offenders.
std::pair<double, double> precision_recall(const std::vector<TruthAssignment>& preds,
                                           const TruthAssignment& gold);

// Same ratios weighted by per-object popularity and summed (no division by
// the object count). Popularity is keyed by object name; a gold object with
// no popularity entry is a ConfigError.
std::pair<double, double> weighted_precision_recall(
    const std::vector<TruthAssignment>& preds, const TruthAssignment& gold,
    const std::map<std::string, double>& popularity);

// Harmonic mean; 0 when both inputs are 0.
double f1_score(double precision, double recall);

// Arithmetic mean of per-run durations; throws Error on an empty sequence.
double mean_time(const std::vector<double>& durations);

MetricsReport evaluate(const std::vector<TruthAssignment>& preds, const TruthAssignment& gold,
                       const std::map<std::string, double>& popularity,
                       const std::vector<double>& durations);

// key=value lines, one metric per line, stable order.
void write_metrics(std::ostream& out, const MetricsReport& report);

// The same report as an aligned human-readable table, same order.
void write_metrics_table(std::ostream& out, const MetricsReport& report);

} // namespace smartmtd
