#pragma once

#include "icsi/optimizers.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace icsi {

inline constexpr int kProtocolRuns = 51;
inline constexpr int kProtocolDims[] = {2, 10, 30, 50};

/// Best fitness per (function, run): 30 rows in id order, one column per run.
struct ResultMatrix {
    std::string algo_name;
    int dim = 0;
    std::vector<Vector> values;

    int runs() const { return values.empty() ? 0 : static_cast<int>(values.front().size()); }
    const Vector &row(int fid) const { return values.at(fid - 1); }

    friend bool operator==(const ResultMatrix &, const ResultMatrix &) = default;
};

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "<algo>_<D>d.csv"
std::string result_filename(const std::string &algo, int dim);

/// Parses "<algo>_<D>d.csv"; nullopt for anything else.
std::optional<std::pair<std::string, int>> parse_result_filename(const std::string &filename);

/// 30 lines of comma-separated values in %.16e (17 significant digits).
std::string format_result_csv(const ResultMatrix &m);
/// Writes to a temporary sibling and renames it into place.
void write_result_csv(const ResultMatrix &m, const std::filesystem::path &path);

/// Validates 30 rows and, when `runs` is set, that many columns per row.
/// Algorithm and dimension come from the filename when it follows the
/// naming convention.
ResultMatrix read_result_csv(const std::filesystem::path &path,
                             std::optional<int> runs = kProtocolRuns);
ResultMatrix parse_result_csv(const std::string &text, std::optional<int> runs = kProtocolRuns);

struct ExperimentPlan {
    OptimizerConfig algo;
    std::vector<int> dims;
    int runs = kProtocolRuns;
    std::uint64_t master_seed = 0;
    /// Reads f<fid>_d<D>.json from here when set; otherwise instances are
    /// generated from instance_seed.
    std::optional<std::filesystem::path> instance_dir;
    std::uint64_t instance_seed = 0;
    /// Non-protocol override of the 10000*D budget.
    std::optional<long long> budget;
    /// Subset of function ids; empty means all 30.
    std::vector<int> functions;
    int jobs = 1;
    std::optional<std::filesystem::path> out_dir;
    std::function<void(const std::string &)> log;

    void validate() const;
    long long budget_for(int dim) const { return budget ? *budget : protocol_budget(dim); }
};

struct ExperimentResult {
    std::vector<ResultMatrix> matrices;  // one per dimension, plan order
    std::vector<RunRecord> records;      // by dimension, function, run
};

/// Seed of one run, derived from (master_seed, algo, fid, D, run_index).
std::uint64_t run_seed(std::uint64_t master_seed, const std::string &algo, int fid, int dim,
                       int run_index);

ProblemInstance plan_instance(const ExperimentPlan &plan, int fid, int dim);

/// One cell of the protocol, recomputable in isolation. The eps rule is
/// applied to best_fitness when the instance has a known optimum.
RunRecord run_cell(const ExperimentPlan &plan, const ProblemInstance &inst, int run_index);

/// Executes every (dimension, function, run) of the plan and, when out_dir is
/// set, writes one CSV per dimension once all runs have finished.
ExperimentResult run_experiment(const ExperimentPlan &plan);

struct TimingReport {
    std::string algo;
    double t1 = 0.0;
    double t2 = 0.0;
    double index = 0.0;
};

/// index = (T2 - T1) / T1.
TimingReport make_timing_report(const std::string &algo, double t1, double t2);

struct TimingSetup {
    int repetitions = 5;
    int dim = 30;
    int fid = 9;
    long long evaluations = 300000;
    std::uint64_t seed = 0;
};

/// T1: mean wall time of `evaluations` evaluations at uniform random points in
/// [-100, 100]^D. T2: mean wall time of the optimizer on the same function with
/// the same number of evaluations. Repetitions run back to back.
TimingReport timing_index(const OptimizerConfig &algo, const TimingSetup &setup = {});

std::string timing_to_json(const TimingReport &r);

}  // namespace icsi
