#include "icsi/optimizers.hpp"

#include "icsi/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace icsi {

namespace {

using Population = std::vector<Vector>;

Vector random_point(int dim, RandomStream &rng) {
    Vector x(dim);
    for (double &v : x)
        v = rng.uniform(-kDomainBound, kDomainBound);
    return x;
}

void clamp_to_box(Vector &x) {
    for (double &v : x)
        v = std::clamp(v, -kDomainBound, kDomainBound);
}

void random_search(BudgetedEvaluator &ev, RandomStream &rng) {
    while (!ev.exhausted())
        ev(random_point(ev.dim(), rng));
}

// DE/rand/1/bin with greedy one-to-one replacement.
void differential_evolution(const OptimizerConfig &cfg, BudgetedEvaluator &ev,
                            RandomStream &rng) {
    const int np = cfg.population;
    const int dim = ev.dim();
    const double f = cfg.param("F");
    const double cr = cfg.param("CR");

    Population pop;
    std::vector<double> fit;
    for (int i = 0; i < np && !ev.exhausted(); ++i) {
        pop.push_back(random_point(dim, rng));
        fit.push_back(ev(pop.back()));
    }
    if (static_cast<int>(pop.size()) < np)
        return;

    Vector trial(dim);
    while (!ev.exhausted()) {
        for (int i = 0; i < np && !ev.exhausted(); ++i) {
            int r1, r2, r3;
            do r1 = static_cast<int>(rng.below(np)); while (r1 == i);
            do r2 = static_cast<int>(rng.below(np)); while (r2 == i || r2 == r1);
            do r3 = static_cast<int>(rng.below(np)); while (r3 == i || r3 == r1 || r3 == r2);
            const int jrand = static_cast<int>(rng.below(dim));
            for (int j = 0; j < dim; ++j) {
                if (j == jrand || rng.uniform() < cr)
                    trial[j] = pop[r1][j] + f * (pop[r2][j] - pop[r3][j]);
                else
                    trial[j] = pop[i][j];
            }
            clamp_to_box(trial);
            const double ft = ev(trial);
            if (ft <= fit[i]) {
                pop[i] = trial;
                fit[i] = ft;
            }
        }
    }
}

// Global-best PSO, particles updated in place.
void particle_swarm(const OptimizerConfig &cfg, BudgetedEvaluator &ev, RandomStream &rng) {
    const int np = cfg.population;
    const int dim = ev.dim();
    const double w = cfg.param("inertia");
    const double c1 = cfg.param("c1");
    const double c2 = cfg.param("c2");
    const double vmax = cfg.param("vmax_fraction") * 2.0 * kDomainBound;

    Population x, v, pbest;
    std::vector<double> pbest_fit;
    Vector gbest;
    double gbest_fit = 0.0;
    for (int i = 0; i < np && !ev.exhausted(); ++i) {
        x.push_back(random_point(dim, rng));
        Vector vi(dim);
        for (double &vj : vi)
            vj = rng.uniform(-vmax, vmax);
        v.push_back(std::move(vi));
        const double fi = ev(x.back());
        pbest.push_back(x.back());
        pbest_fit.push_back(fi);
        if (i == 0 || fi < gbest_fit) {
            gbest = x.back();
            gbest_fit = fi;
        }
    }
    if (static_cast<int>(x.size()) < np)
        return;

    while (!ev.exhausted()) {
        for (int i = 0; i < np && !ev.exhausted(); ++i) {
            for (int j = 0; j < dim; ++j) {
                const double vel = w * v[i][j] + c1 * rng.uniform() * (pbest[i][j] - x[i][j]) +
                                   c2 * rng.uniform() * (gbest[j] - x[i][j]);
                v[i][j] = std::clamp(vel, -vmax, vmax);
                x[i][j] += v[i][j];
            }
            clamp_to_box(x[i]);
            const double fi = ev(x[i]);
            if (fi < pbest_fit[i]) {
                pbest[i] = x[i];
                pbest_fit[i] = fi;
                if (fi < gbest_fit) {
                    gbest = x[i];
                    gbest_fit = fi;
                }
            }
        }
    }
}

}  // namespace

Algorithm parse_algorithm(const std::string &name) {
    if (name == "rs" || name == "random")
        return Algorithm::random_search;
    if (name == "de")
        return Algorithm::differential_evolution;
    if (name == "pso")
        return Algorithm::particle_swarm;
    throw std::invalid_argument("unknown algorithm '" + name + "' (expected rs, de or pso)");
}

std::string algorithm_name(Algorithm algo) {
    switch (algo) {
    case Algorithm::random_search: return "rs";
    case Algorithm::differential_evolution: return "de";
    case Algorithm::particle_swarm: return "pso";
    }
    return "?";
}

double OptimizerConfig::param(const std::string &key) const {
    const auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument("optimizer '" + name + "' has no parameter '" + key + "'");
    return it->second;
}

void OptimizerConfig::validate() const {
    if (population < 1)
        throw std::invalid_argument("population must be positive");
    if (algorithm == Algorithm::differential_evolution && population < 4)
        throw std::invalid_argument("DE/rand/1 needs a population of at least 4");
    for (const auto &[k, v] : params)
        if (!std::isfinite(v))
            throw std::invalid_argument("parameter '" + k + "' is not finite");
}

OptimizerConfig default_config(Algorithm algo) {
    OptimizerConfig cfg;
    cfg.algorithm = algo;
    cfg.name = algorithm_name(algo);
    switch (algo) {
    case Algorithm::random_search:
        cfg.population = 1;
        break;
    case Algorithm::differential_evolution:
        cfg.population = 50;
        cfg.params = {{"F", 0.5}, {"CR", 0.9}};
        break;
    case Algorithm::particle_swarm:
        cfg.population = 40;
        cfg.params = {{"inertia", 0.7298}, {"c1", 1.4962}, {"c2", 1.4962}, {"vmax_fraction", 0.2}};
        break;
    }
    return cfg;
}

RunRecord optimize(const OptimizerConfig &config, BudgetedEvaluator &ev, std::uint64_t run_seed) {
    config.validate();
    RandomStream rng(run_seed);
    const auto start = std::chrono::steady_clock::now();
    try {
        switch (config.algorithm) {
        case Algorithm::random_search:
            random_search(ev, rng);
            break;
        case Algorithm::differential_evolution:
            differential_evolution(config, ev, rng);
            break;
        case Algorithm::particle_swarm:
            particle_swarm(config, ev, rng);
            break;
        }
    } catch (const BudgetExhausted &) {
        // normal termination
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    RunRecord rec;
    rec.algo_name = config.name;
    rec.dim = ev.dim();
    rec.run_seed = run_seed;
    rec.best_fitness = ev.best_value();
    rec.evals_used = ev.used();
    rec.wall_time = elapsed.count();
    return rec;
}

}  // namespace icsi
