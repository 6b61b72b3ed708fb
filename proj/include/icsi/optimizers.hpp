#pragma once

#include "icsi/instance.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace icsi {

enum class Algorithm { random_search, differential_evolution, particle_swarm };

/// Accepts the short CLI names rs, de and pso.
Algorithm parse_algorithm(const std::string &name);
std::string algorithm_name(Algorithm algo);

struct OptimizerConfig {
    std::string name;
    Algorithm algorithm = Algorithm::random_search;
    int population = 1;
    std::map<std::string, double> params;

    double param(const std::string &key) const;

    /// Throws std::invalid_argument on a bad population or non-finite parameter.
    void validate() const;
};

/// DE: F=0.5, CR=0.9, pop 50. PSO: inertia 0.7298, c1=c2=1.4962, pop 40.
OptimizerConfig default_config(Algorithm algo);

struct RunRecord {
    std::string algo_name;
    int fid = 0;
    int dim = 0;
    std::uint64_t run_seed = 0;
    double best_fitness = 0.0;
    long long evals_used = 0;
    double wall_time = 0.0;  // seconds
};

/// Runs the optimizer until the evaluator's budget is spent. Candidate points
/// are clamped to [-100, 100]^D before evaluation. Deterministic in
/// (config, objective, run_seed); wall_time is the only nondeterministic field.
RunRecord optimize(const OptimizerConfig &config, BudgetedEvaluator &ev, std::uint64_t run_seed);

}  // namespace icsi
