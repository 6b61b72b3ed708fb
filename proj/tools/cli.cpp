#include "cli.hpp"

#include "json_config.hpp"

#include "icsi/harness.hpp"
#include "icsi/ranking.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace icsi::cli {

namespace {

struct GenArgs {
    std::uint64_t seed = 0;
    std::vector<int> dims{2, 10, 30, 50};
    std::vector<int> functions;
    std::string out;
};

struct EvalArgs {
    int func = 0;
    int dim = 0;
    std::string point;
    std::string instance;
    std::string instances;
    bool identity = false;
    std::uint64_t seed = 0;
};

struct RunArgs {
    std::string algo;
    std::vector<int> dims{2, 10, 30, 50};
    int runs = kProtocolRuns;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> instance_seed;
    std::string instances;
    std::string out;
    int jobs = 1;
    std::optional<long long> budget;
    std::vector<int> functions;
    std::optional<int> population;
    std::vector<std::string> params;
    bool quiet = false;
};

struct TimingArgs {
    std::string algo;
    int reps = 5;
    std::uint64_t seed = 0;
    long long evals = 300000;
    std::optional<double> t1;
    std::optional<double> t2;
};

struct RankArgs {
    std::string dir;
    double alpha = 0.05;
    std::string test = "welch";
    int runs = kProtocolRuns;
    std::string out;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomically(const std::filesystem::path &path, const std::string &text) {
    const auto tmp = std::filesystem::path(path).concat(".tmp");
    {
        std::ofstream out(tmp, std::ios::binary);
        out << text;
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

Vector read_point(const std::string &path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception &e) {
        throw std::runtime_error(path + ": not valid JSON: " + e.what());
    }
    if (j.is_object() && j.contains("x"))
        j = j["x"];
    if (!j.is_array())
        throw std::runtime_error(path + ": expected a JSON array of numbers or {\"x\": [...]}");
    Vector x;
    for (const auto &v : j) {
        if (!v.is_number())
            throw std::runtime_error(path + ": point entries must be numbers");
        x.push_back(v.get<double>());
    }
    return x;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

OptimizerConfig build_config(const RunArgs &a) {
    OptimizerConfig cfg = default_config(parse_algorithm(a.algo));
    if (a.population)
        cfg.population = *a.population;
    for (const auto &kv : a.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        if (!cfg.params.contains(key))
            throw std::invalid_argument("--param: " + cfg.name + " has no parameter '" + key + "'");
        try {
            cfg.params[key] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception &) {
            throw std::invalid_argument("--param: cannot parse value in '" + kv + "'");
        }
    }
    cfg.validate();
    return cfg;
}

int cmd_gen(const GenArgs &a, std::ostream &out) {
    std::vector<int> fids = a.functions;
    if (fids.empty())
        for (int f = 1; f <= kNumFunctions; ++f)
            fids.push_back(f);
    for (int f : fids)
        (void)FunctionId(f);
    std::filesystem::create_directories(a.out);
    for (int d : a.dims)
        for (int f : fids) {
            const auto path = std::filesystem::path(a.out) / instance_filename(f, d);
            save_instance(make_instance(FunctionId(f), d, a.seed), path);
            out << path.string() << '\n';
        }
    return 0;
}

int cmd_eval(const EvalArgs &a, std::ostream &out) {
    const FunctionId fid(a.func);
    ProblemInstance inst;
    if (!a.instance.empty())
        inst = load_instance(a.instance);
    else if (a.identity)
        inst = ProblemInstance::identity(fid, a.dim);
    else if (!a.instances.empty())
        inst = load_instance(std::filesystem::path(a.instances) / instance_filename(a.func, a.dim));
    else
        inst = make_instance(fid, a.dim, a.seed);
    if (inst.fid != fid || inst.dim != a.dim)
        throw std::runtime_error("instance holds f" + std::to_string(inst.fid.value()) +
                                 " at D=" + std::to_string(inst.dim) + ", requested f" +
                                 std::to_string(a.func) + " at D=" + std::to_string(a.dim));
    const Vector x = read_point(a.point);
    out << format_value(transformed_eval(inst, x)) << '\n';
    return 0;
}

int cmd_run(const RunArgs &a, std::ostream &out, std::ostream &err) {
    ExperimentPlan plan;
    plan.algo = build_config(a);
    plan.dims = a.dims;
    plan.runs = a.runs;
    plan.master_seed = a.seed;
    plan.instance_seed = a.instance_seed.value_or(a.seed);
    if (!a.instances.empty())
        plan.instance_dir = a.instances;
    plan.budget = a.budget;
    plan.functions = a.functions;
    plan.jobs = a.jobs;
    plan.out_dir = a.out;
    if (!a.quiet)
        plan.log = [&err](const std::string &msg) { err << msg << std::endl; };
    plan.validate();

    const auto result = run_experiment(plan);
    for (const auto &m : result.matrices)
        out << (std::filesystem::path(a.out) / result_filename(m.algo_name, m.dim)).string()
            << '\n';
    return 0;
}

int cmd_timing(const TimingArgs &a, std::ostream &out, std::ostream &err) {
    RunArgs ra;
    ra.algo = a.algo;
    const OptimizerConfig cfg = build_config(ra);
    TimingReport r;
    if (a.t1 || a.t2) {
        if (!a.t1 || !a.t2)
            throw std::invalid_argument("--t1 and --t2 must be given together");
        r = make_timing_report(cfg.name, *a.t1, *a.t2);
    } else {
        TimingSetup setup;
        setup.repetitions = a.reps;
        setup.seed = a.seed;
        setup.evaluations = a.evals;
        err << "timing " << cfg.name << ": " << a.reps << " x " << a.evals
            << " evaluations of f9 at D=30" << std::endl;
        r = timing_index(cfg, setup);
    }
    out << timing_to_json(r) << '\n';
    return 0;
}

int cmd_rank(const RankArgs &a, std::ostream &out) {
    if (a.test != "welch" && a.test != "pooled")
        throw std::invalid_argument("--test must be welch or pooled");
    const TTestKind kind = a.test == "welch" ? TTestKind::welch : TTestKind::pooled;
    const auto results =
        load_result_set(a.dir, a.runs > 0 ? std::optional<int>(a.runs) : std::nullopt);
    const PointsTable table = score(results, a.alpha, kind);
    const std::string csv = points_table_csv(table);
    out << csv << '\n' << "Rank,Algorithm,Points\n";
    for (const auto &e : final_ranking(table))
        out << e.rank << ',' << e.algo << ',' << e.points << '\n';
    if (!a.out.empty()) {
        std::filesystem::create_directories(a.out);
        write_file_atomically(std::filesystem::path(a.out) / "points.csv", csv);
        write_file_atomically(std::filesystem::path(a.out) / "ranking.json",
                              ranking_json(table, a.alpha, kind) + "\n");
    }
    return 0;
}

}  // namespace

int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"ICSI-2014-BS benchmark suite, protocol harness and round-robin ranking",
                 "icsi-bench"};
    app.require_subcommand(1, 1);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file with flag values, nested by subcommand");

    GenArgs gen;
    auto *gen_cmd = app.add_subcommand("gen-instances", "Write shifted/rotated instance files");
    gen_cmd->add_option("--seed", gen.seed, "Instance seed");
    gen_cmd->add_option("--dims", gen.dims, "Dimensions")->delimiter(',')->check(CLI::Range(2, 1000));
    gen_cmd->add_option("--functions", gen.functions, "Function ids (default all)")
        ->delimiter(',')
        ->check(CLI::Range(1, kNumFunctions));
    gen_cmd->add_option("--out", gen.out, "Output directory")->required();

    EvalArgs ev;
    auto *eval_cmd = app.add_subcommand("eval", "Evaluate one point on one instance");
    eval_cmd->add_option("--func", ev.func, "Function id")->required()->check(CLI::Range(1, kNumFunctions));
    eval_cmd->add_option("--dim", ev.dim, "Dimension")->required()->check(CLI::Range(2, 100000));
    eval_cmd->add_option("--point", ev.point, "JSON array with the point")
        ->required()
        ->check(CLI::ExistingFile);
    auto *inst_opt = eval_cmd->add_option("--instance", ev.instance, "Instance file")
                         ->check(CLI::ExistingFile);
    auto *ident_opt = eval_cmd->add_flag("--identity", ev.identity, "No shift, no rotation");
    eval_cmd->add_option("--instances", ev.instances, "Instance directory")
        ->envname(kInstanceDirEnv)
        ->check(CLI::ExistingDirectory);
    eval_cmd->add_option("--seed", ev.seed, "Seed for a generated instance");
    inst_opt->excludes(ident_opt);

    RunArgs run;
    auto *run_cmd = app.add_subcommand("run", "Run the 30-function protocol");
    run_cmd->add_option("--algo", run.algo, "rs, de or pso")
        ->required()
        ->check(CLI::IsMember({"rs", "de", "pso"}));
    run_cmd->add_option("--dims", run.dims, "Dimensions")->delimiter(',')->check(CLI::Range(2, 100000));
    run_cmd->add_option("--runs", run.runs, "Independent runs per function")->check(CLI::Range(1, 100000));
    run_cmd->add_option("--seed", run.seed, "Master seed");
    run_cmd->add_option("--instance-seed", run.instance_seed,
                        "Seed for generated instances (default: --seed)");
    run_cmd->add_option("--instances", run.instances, "Instance directory")
        ->envname(kInstanceDirEnv)
        ->check(CLI::ExistingDirectory);
    run_cmd->add_option("--out", run.out, "Output directory")->required();
    run_cmd->add_option("--jobs", run.jobs, "Worker threads")->check(CLI::Range(1, 4096));
    run_cmd->add_option("--budget", run.budget, "Override the 10000*D budget (non-protocol)")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--functions", run.functions, "Function ids (non-protocol subset)")
        ->delimiter(',')
        ->check(CLI::Range(1, kNumFunctions));
    run_cmd->add_option("--pop", run.population, "Population size")->check(CLI::PositiveNumber);
    run_cmd->add_option("--param", run.params, "Strategy parameter key=value");
    run_cmd->add_flag("--quiet", run.quiet, "No progress output");

    TimingArgs timing;
    auto *timing_cmd = app.add_subcommand("timing", "Measure the (T2-T1)/T1 index");
    timing_cmd->add_option("--algo", timing.algo, "rs, de or pso")
        ->required()
        ->check(CLI::IsMember({"rs", "de", "pso"}));
    timing_cmd->add_option("--reps", timing.reps, "Repetitions")->check(CLI::Range(1, 1000));
    timing_cmd->add_option("--seed", timing.seed, "Seed");
    timing_cmd->add_option("--evals", timing.evals, "Evaluations per repetition")
        ->check(CLI::PositiveNumber);
    timing_cmd->add_option("--t1", timing.t1, "Use this T1 instead of measuring");
    timing_cmd->add_option("--t2", timing.t2, "Use this T2 instead of measuring");

    RankArgs rank;
    auto *rank_cmd = app.add_subcommand("rank", "Round-robin t-test ranking of result files");
    rank_cmd->add_option("--dir", rank.dir, "Directory of <algo>_<D>d.csv files")
        ->required()
        ->check(CLI::ExistingDirectory);
    rank_cmd->add_option("--alpha", rank.alpha, "Significance level")->check(CLI::Range(1e-12, 1.0 - 1e-12));
    rank_cmd->add_option("--test", rank.test, "welch or pooled")
        ->check(CLI::IsMember({"welch", "pooled"}));
    rank_cmd->add_option("--runs", rank.runs, "Expected columns per row (0: any)")
        ->check(CLI::NonNegativeNumber);
    rank_cmd->add_option("--out", rank.out, "Also write points.csv and ranking.json here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err);
    }

    try {
        if (*gen_cmd)
            return cmd_gen(gen, out);
        if (*eval_cmd)
            return cmd_eval(ev, out);
        if (*run_cmd)
            return cmd_run(run, out, err);
        if (*timing_cmd)
            return cmd_timing(timing, out, err);
        if (*rank_cmd)
            return cmd_rank(rank, out);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << std::endl;
        return 1;
    }
    return 1;
}

}  // namespace icsi::cli
