#include "icsi/harness.hpp"

#include "icsi/random.hpp"

#include <json.hpp>

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

namespace icsi {

namespace {

void write_atomically(const std::filesystem::path &path, const std::string &content) {
    const auto tmp = std::filesystem::path(path).concat(".tmp");
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_cell(std::string_view cell, int row, int col) {
    cell = trim(cell);
    // from_chars rejects a leading '+'.
    if (!cell.empty() && cell.front() == '+')
        cell.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty())
        throw CsvError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                       ": cannot parse '" + std::string(cell) + "' as a number");
    if (!std::isfinite(v))
        throw CsvError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                       ": value is not finite");
    return v;
}

// Runs body(i) for i in [0, n) on up to `jobs` threads; rethrows the first
// failure after all workers stop.
template <typename Body>
void parallel_for(std::size_t n, int jobs, Body body) {
    const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n && !failed; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error)
                            error = std::current_exception();
                        failed = true;
                    }
                }
            });
    }
    if (error)
        std::rethrow_exception(error);
}

}  // namespace

std::string result_filename(const std::string &algo, int dim) {
    return algo + "_" + std::to_string(dim) + "d.csv";
}

std::optional<std::pair<std::string, int>> parse_result_filename(const std::string &filename) {
    static const std::regex pattern(R"(^(.+)_([0-9]+)d\.csv$)");
    std::smatch m;
    if (!std::regex_match(filename, m, pattern))
        return std::nullopt;
    return std::pair{m[1].str(), std::stoi(m[2].str())};
}

std::string format_result_csv(const ResultMatrix &m) {
    if (m.values.size() != static_cast<std::size_t>(kNumFunctions))
        throw CsvError("result matrix has " + std::to_string(m.values.size()) +
                       " rows, expected 30");
    std::string out;
    char buf[32];
    for (const auto &row : m.values) {
        if (row.size() != m.values.front().size())
            throw CsvError("result matrix rows have different lengths");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (!std::isfinite(row[c]))
                throw CsvError("result matrix contains a non-finite value");
            if (c)
                out += ',';
            std::snprintf(buf, sizeof buf, "%.16e", row[c]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void write_result_csv(const ResultMatrix &m, const std::filesystem::path &path) {
    write_atomically(path, format_result_csv(m));
}

ResultMatrix parse_result_csv(const std::string &text, std::optional<int> runs) {
    ResultMatrix m;
    std::istringstream in(text);
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty())
            continue;
        ++row;
        Vector values;
        std::string_view rest(line);
        int col = 0;
        while (true) {
            ++col;
            const auto comma = rest.find(',');
            values.push_back(parse_cell(rest.substr(0, comma), row, col));
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        if (runs && static_cast<int>(values.size()) != *runs)
            throw CsvError("row " + std::to_string(row) + " has " + std::to_string(values.size()) +
                           " columns, expected " + std::to_string(*runs));
        if (!m.values.empty() && values.size() != m.values.front().size())
            throw CsvError("row " + std::to_string(row) + " has " + std::to_string(values.size()) +
                           " columns, row 1 has " + std::to_string(m.values.front().size()));
        m.values.push_back(std::move(values));
    }
    if (row != kNumFunctions)
        throw CsvError("found " + std::to_string(row) + " rows, expected 30");
    return m;
}

ResultMatrix read_result_csv(const std::filesystem::path &path, std::optional<int> runs) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw CsvError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    ResultMatrix m;
    try {
        m = parse_result_csv(ss.str(), runs);
    } catch (const CsvError &e) {
        throw CsvError(path.string() + ": " + e.what());
    }
    if (const auto parsed = parse_result_filename(path.filename().string())) {
        m.algo_name = parsed->first;
        m.dim = parsed->second;
    }
    return m;
}

void ExperimentPlan::validate() const {
    algo.validate();
    if (dims.empty())
        throw std::invalid_argument("no dimensions requested");
    for (int d : dims)
        if (d < 2)
            throw std::invalid_argument("dimension must be at least 2, got " + std::to_string(d));
    if (runs < 1)
        throw std::invalid_argument("runs must be at least 1");
    if (budget && *budget < 1)
        throw std::invalid_argument("budget must be positive");
    for (int f : functions)
        FunctionId{f};
    if (algo.name.empty())
        throw std::invalid_argument("algorithm name is empty");
}

std::uint64_t run_seed(std::uint64_t master_seed, const std::string &algo, int fid, int dim,
                       int run_index) {
    return combine_seed({master_seed, hash_name(algo), static_cast<std::uint64_t>(fid),
                         static_cast<std::uint64_t>(dim), static_cast<std::uint64_t>(run_index)});
}

ProblemInstance plan_instance(const ExperimentPlan &plan, int fid, int dim) {
    if (!plan.instance_dir)
        return make_instance(FunctionId(fid), dim, plan.instance_seed);
    const auto path = *plan.instance_dir / instance_filename(fid, dim);
    ProblemInstance inst = load_instance(path);
    if (inst.fid.value() != fid || inst.dim != dim)
        throw std::runtime_error(path.string() + ": holds f" + std::to_string(inst.fid.value()) +
                                 " at D=" + std::to_string(inst.dim));
    return inst;
}

RunRecord run_cell(const ExperimentPlan &plan, const ProblemInstance &inst, int run_index) {
    BudgetedEvaluator ev(inst, plan.budget_for(inst.dim));
    RunRecord rec = optimize(plan.algo, ev, run_seed(plan.master_seed, plan.algo.name,
                                                     inst.fid.value(), inst.dim, run_index));
    rec.fid = inst.fid.value();
    if (inst.known_optimum)
        rec.best_fitness = eps_clamp(rec.best_fitness, *inst.known_optimum);
    if (!std::isfinite(rec.best_fitness))
        throw std::runtime_error("run " + std::to_string(run_index) + " of f" +
                                 std::to_string(rec.fid) + " produced a non-finite best fitness");
    return rec;
}

ExperimentResult run_experiment(const ExperimentPlan &plan) {
    plan.validate();
    std::vector<int> fids = plan.functions;
    if (fids.empty())
        for (int f = 1; f <= kNumFunctions; ++f)
            fids.push_back(f);

    ExperimentResult result;
    for (int dim : plan.dims) {
        std::vector<ProblemInstance> instances;
        for (int f : fids)
            instances.push_back(plan_instance(plan, f, dim));

        const std::size_t cells = fids.size() * static_cast<std::size_t>(plan.runs);
        std::vector<RunRecord> records(cells);
        std::atomic<std::size_t> done{0};
        std::mutex log_mutex;
        parallel_for(cells, plan.jobs, [&](std::size_t i) {
            const auto &inst = instances[i / plan.runs];
            records[i] = run_cell(plan, inst, static_cast<int>(i % plan.runs));
            const std::size_t finished = ++done;
            if (plan.log && finished % plan.runs == 0) {
                std::lock_guard lock(log_mutex);
                plan.log(plan.algo.name + " D=" + std::to_string(dim) + ": " +
                         std::to_string(finished / plan.runs) + "/" +
                         std::to_string(fids.size()) + " functions done");
            }
        });

        ResultMatrix m;
        m.algo_name = plan.algo.name;
        m.dim = dim;
        m.values.assign(kNumFunctions, Vector(plan.runs, 0.0));
        for (std::size_t i = 0; i < cells; ++i)
            m.values[records[i].fid - 1][i % plan.runs] = records[i].best_fitness;
        result.matrices.push_back(std::move(m));
        result.records.insert(result.records.end(), records.begin(), records.end());
    }

    if (plan.out_dir) {
        std::filesystem::create_directories(*plan.out_dir);
        for (const auto &m : result.matrices)
            write_result_csv(m, *plan.out_dir / result_filename(m.algo_name, m.dim));
    }
    return result;
}

TimingReport make_timing_report(const std::string &algo, double t1, double t2) {
    if (!(t1 > 0.0) || !std::isfinite(t1) || !std::isfinite(t2))
        throw std::invalid_argument("timing requires T1 > 0 and finite T2");
    return {algo, t1, t2, (t2 - t1) / t1};
}

TimingReport timing_index(const OptimizerConfig &algo, const TimingSetup &setup) {
    if (setup.repetitions < 1 || setup.evaluations < 1)
        throw std::invalid_argument("timing needs at least one repetition and one evaluation");
    using clock = std::chrono::steady_clock;
    const ProblemInstance inst = make_instance(FunctionId(setup.fid), setup.dim, setup.seed);

    double t1_total = 0.0;
    volatile double sink = 0.0;
    for (int rep = 0; rep < setup.repetitions; ++rep) {
        RandomStream rng(combine_seed({setup.seed, 1, static_cast<std::uint64_t>(rep)}));
        Vector x(setup.dim);
        const auto start = clock::now();
        for (long long i = 0; i < setup.evaluations; ++i) {
            for (double &v : x)
                v = rng.uniform() * 200.0 - 100.0;
            sink = sink + transformed_eval(inst, x);
        }
        t1_total += std::chrono::duration<double>(clock::now() - start).count();
    }

    double t2_total = 0.0;
    for (int rep = 0; rep < setup.repetitions; ++rep) {
        BudgetedEvaluator ev(inst, setup.evaluations);
        const auto start = clock::now();
        optimize(algo, ev, combine_seed({setup.seed, 2, static_cast<std::uint64_t>(rep)}));
        t2_total += std::chrono::duration<double>(clock::now() - start).count();
    }
    return make_timing_report(algo.name, t1_total / setup.repetitions,
                              t2_total / setup.repetitions);
}

std::string timing_to_json(const TimingReport &r) {
    nlohmann::ordered_json j;
    j["algo"] = r.algo;
    j["T1"] = r.t1;
    j["T2"] = r.t2;
    j["index"] = r.index;
    return j.dump();
}

}  // namespace icsi
