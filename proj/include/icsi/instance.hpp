#pragma once

#include "icsi/functions.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace icsi {

inline constexpr double kShiftBound = 80.0;
inline constexpr double kDomainBound = 100.0;
inline constexpr int kEvalsPerDim = 10000;

/// Protocol budget: 10000 * D evaluations.
constexpr long long protocol_budget(int dim) { return static_cast<long long>(kEvalsPerDim) * dim; }

/// A function placed in the search space by y = R * (x - s).
struct ProblemInstance {
    FunctionId fid{1};
    int dim = 0;
    std::uint64_t seed = 0;
    Vector shift;
    Eigen::MatrixXd rotation;
    std::optional<double> known_optimum;

    /// y = R * (x - s).
    Vector transform(std::span<const double> x) const;

    /// Identity rotation, zero shift.
    static ProblemInstance identity(FunctionId fid, int dim);
};

/// Deterministic instance from (fid, dim, seed). The shift is uniform on
/// [-80, 80]^D; the rotation is the Q factor of a standard-normal matrix with
/// signs chosen so that R has a positive diagonal.
ProblemInstance make_instance(FunctionId fid, int dim, std::uint64_t seed);

/// Optimum value when it does not depend on the drawn shift/rotation.
std::optional<double> invariant_optimum(FunctionId fid, int dim);

double transformed_eval(const ProblemInstance &inst, std::span<const double> x);

/// Largest entry of |R^T R - I|.
double orthogonality_error(const Eigen::MatrixXd &r);

/// Errors below 2^-52 relative to the known optimum count as zero.
double eps_clamp(double value, double f_star);

inline constexpr double kEpsilon = 0x1.0p-52;

// Instance files: {fid, D, seed, shift, rotation (row-major), known_optimum?}.
std::string instance_to_json(const ProblemInstance &inst);
ProblemInstance instance_from_json(const std::string &text);
void save_instance(const ProblemInstance &inst, const std::filesystem::path &path);
ProblemInstance load_instance(const std::filesystem::path &path);
std::string instance_filename(int fid, int dim);

class BudgetExhausted : public std::runtime_error {
public:
    explicit BudgetExhausted(long long budget)
        : std::runtime_error("evaluation budget of " + std::to_string(budget) + " exhausted") {}
};

struct TracePoint {
    long long eval_index;  // 1-based
    double best_value;

    friend bool operator==(const TracePoint &, const TracePoint &) = default;
};

/// Counts evaluations against a hard budget and tracks the best point seen.
/// Not thread-safe; one evaluator per run.
class BudgetedEvaluator {
public:
    using Objective = std::function<double(std::span<const double>)>;

    BudgetedEvaluator(const ProblemInstance &inst, long long budget);
    BudgetedEvaluator(Objective objective, int dim, long long budget);

    /// Throws BudgetExhausted without evaluating once used() == budget().
    double operator()(std::span<const double> x);

    int dim() const { return dim_; }
    long long budget() const { return budget_; }
    long long used() const { return used_; }
    long long remaining() const { return budget_ - used_; }
    bool exhausted() const { return used_ >= budget_; }

    double best_value() const { return best_value_; }
    const Vector &best_point() const { return best_point_; }

    /// Improvement events only; expand with best_so_far_trace().
    const std::vector<TracePoint> &improvements() const { return improvements_; }

private:
    Objective objective_;
    int dim_;
    long long budget_;
    long long used_ = 0;
    double best_value_;
    Vector best_point_;
    std::vector<TracePoint> improvements_;
};

/// One entry per evaluation: (index, best value so far).
std::vector<TracePoint> best_so_far_trace(const BudgetedEvaluator &ev);

}  // namespace icsi
