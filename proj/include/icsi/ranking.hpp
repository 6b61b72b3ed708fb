#pragma once

#include "icsi/harness.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace icsi {

/// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// CDF of Student's t distribution with `dof` (> 0, possibly fractional)
/// degrees of freedom.
double student_t_cdf(double t, double dof);

enum class TTestKind { welch, pooled };

enum class Side { first, second };

struct PairwiseOutcome {
    double t_stat = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
    bool significant = false;
    std::optional<Side> winner;  // the sample with the lower mean, when significant
};

/// Two-sided unpaired t-test. When both samples have zero variance the result
/// is decided by the means alone: different means are significant.
PairwiseOutcome t_test(std::span<const double> a, std::span<const double> b, double alpha = 0.05,
                       TTestKind kind = TTestKind::welch);

/// Round robin over one dimension: for every function and ordered pair (A, B),
/// A earns a point when it is significantly better than B. Returns one total
/// per matrix, in input order.
std::vector<int> round_robin(std::span<const ResultMatrix> results, double alpha = 0.05,
                             TTestKind kind = TTestKind::welch);

struct PointsTable {
    std::vector<std::string> algos;
    std::vector<int> dims;
    std::vector<std::vector<int>> points;  // [dimension][algorithm]

    std::vector<int> sums() const;
};

struct RankingEntry {
    int rank = 0;
    std::string algo;
    int points = 0;
};

/// Descending by summed points. Ties share the better rank and keep input order.
std::vector<RankingEntry> final_ranking(const PointsTable &table);

/// Result matrices grouped by dimension, algorithms sorted by name.
struct ResultSet {
    std::vector<std::string> algos;
    std::vector<int> dims;
    std::vector<std::vector<ResultMatrix>> by_dim;  // [dimension][algorithm]
};

/// Loads every "<algo>_<D>d.csv" in `dir`. Every algorithm must be present at
/// every dimension found.
ResultSet load_result_set(const std::filesystem::path &dir, std::optional<int> runs = kProtocolRuns);

PointsTable score(const ResultSet &results, double alpha = 0.05, TTestKind kind = TTestKind::welch);

/// Rows are dimensions then "Sum"; columns are algorithms.
std::string points_table_csv(const PointsTable &table);
std::string ranking_json(const PointsTable &table, double alpha, TTestKind kind);

}  // namespace icsi
