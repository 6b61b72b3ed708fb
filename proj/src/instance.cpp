#include "icsi/instance.hpp"

#include "icsi/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace icsi {

namespace {

constexpr int kZeroAnchors[] = {1, 2, 4, 5, 7, 8, 10, 11, 12, 13, 16, 17, 20, 21, 22, 23};

void check_dim(int dim) {
    if (dim < 2)
        throw std::invalid_argument("dimension must be at least 2, got " + std::to_string(dim));
}

Eigen::MatrixXd haar_rotation(int dim, RandomStream &rng) {
    Eigen::MatrixXd a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            a(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd &r = qr.matrixQR();
    for (int j = 0; j < dim; ++j)
        if (r(j, j) < 0.0)
            q.col(j) = -q.col(j);
    return q;
}

}  // namespace

Vector ProblemInstance::transform(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim)
        throw std::invalid_argument("point has " + std::to_string(x.size()) +
                                    " coordinates, instance dimension is " + std::to_string(dim));
    Eigen::VectorXd d(dim);
    for (int i = 0; i < dim; ++i) {
        if (!std::isfinite(x[i]))
            throw std::domain_error("non-finite coordinate at index " + std::to_string(i));
        d(i) = x[i] - shift[i];
    }
    Eigen::VectorXd y = rotation * d;
    return Vector(y.data(), y.data() + dim);
}

ProblemInstance ProblemInstance::identity(FunctionId fid, int dim) {
    check_dim(dim);
    ProblemInstance inst;
    inst.fid = fid;
    inst.dim = dim;
    inst.shift.assign(dim, 0.0);
    inst.rotation = Eigen::MatrixXd::Identity(dim, dim);
    inst.known_optimum = invariant_optimum(fid, dim);
    return inst;
}

std::optional<double> invariant_optimum(FunctionId fid, int dim) {
    if (std::ranges::find(kZeroAnchors, fid.value()) != std::end(kZeroAnchors))
        return 0.0;
    if (fid.value() == 3 && dim == 2)
        return 5.0 / 3.0;
    return std::nullopt;
}

ProblemInstance make_instance(FunctionId fid, int dim, std::uint64_t seed) {
    check_dim(dim);
    RandomStream rng(combine_seed({seed, static_cast<std::uint64_t>(fid.value()),
                                   static_cast<std::uint64_t>(dim)}));
    ProblemInstance inst;
    inst.fid = fid;
    inst.dim = dim;
    inst.seed = seed;
    inst.shift.resize(dim);
    for (double &s : inst.shift)
        s = rng.uniform(-kShiftBound, kShiftBound);
    inst.rotation = haar_rotation(dim, rng);
    inst.known_optimum = invariant_optimum(fid, dim);

    // The f3 minimiser sits at y = (50/3, 50/3), not at the shift point, so it
    // can fall outside the box for shifts near the edge.
    if (fid.value() == 3 && inst.known_optimum) {
        Eigen::VectorXd y = Eigen::VectorXd::Constant(dim, 50.0 / 3.0);
        Eigen::VectorXd x = inst.rotation.transpose() * y;
        for (int i = 0; i < dim; ++i)
            if (std::abs(x(i) + inst.shift[i]) > kDomainBound)
                inst.known_optimum.reset();
    }
    return inst;
}

double transformed_eval(const ProblemInstance &inst, std::span<const double> x) {
    return eval_raw(inst.fid, inst.transform(x));
}

double orthogonality_error(const Eigen::MatrixXd &r) {
    const Eigen::MatrixXd e = r.transpose() * r - Eigen::MatrixXd::Identity(r.cols(), r.cols());
    return e.cwiseAbs().maxCoeff();
}

double eps_clamp(double value, double f_star) {
    if (std::abs(value - f_star) < kEpsilon)
        return f_star;
    return value;
}

std::string instance_to_json(const ProblemInstance &inst) {
    nlohmann::ordered_json j;
    j["fid"] = inst.fid.value();
    j["D"] = inst.dim;
    j["seed"] = inst.seed;
    j["shift"] = inst.shift;
    std::vector<double> rot;
    rot.reserve(static_cast<std::size_t>(inst.dim) * inst.dim);
    for (int i = 0; i < inst.dim; ++i)
        for (int k = 0; k < inst.dim; ++k)
            rot.push_back(inst.rotation(i, k));
    j["rotation"] = rot;
    if (inst.known_optimum)
        j["known_optimum"] = *inst.known_optimum;
    return j.dump();
}

ProblemInstance instance_from_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::runtime_error(std::string("instance file is not valid JSON: ") + e.what());
    }
    try {
        ProblemInstance inst;
        inst.fid = FunctionId(j.at("fid").get<int>());
        inst.dim = j.at("D").get<int>();
        check_dim(inst.dim);
        inst.seed = j.value("seed", std::uint64_t{0});
        inst.shift = j.at("shift").get<Vector>();
        if (static_cast<int>(inst.shift.size()) != inst.dim)
            throw std::runtime_error("shift has " + std::to_string(inst.shift.size()) +
                                     " entries, expected " + std::to_string(inst.dim));
        const auto rot = j.at("rotation").get<std::vector<double>>();
        if (rot.size() != static_cast<std::size_t>(inst.dim) * inst.dim)
            throw std::runtime_error("rotation has " + std::to_string(rot.size()) +
                                     " entries, expected D*D");
        inst.rotation.resize(inst.dim, inst.dim);
        for (int i = 0; i < inst.dim; ++i)
            for (int k = 0; k < inst.dim; ++k)
                inst.rotation(i, k) = rot[static_cast<std::size_t>(i) * inst.dim + k];
        if (orthogonality_error(inst.rotation) >= 1e-10)
            throw std::runtime_error("rotation is not orthogonal");
        if (j.contains("known_optimum") && !j["known_optimum"].is_null())
            inst.known_optimum = j["known_optimum"].get<double>();
        return inst;
    } catch (const nlohmann::json::exception &e) {
        throw std::runtime_error(std::string("malformed instance file: ") + e.what());
    }
}

void save_instance(const ProblemInstance &inst, const std::filesystem::path &path) {
    const auto tmp = std::filesystem::path(path).concat(".tmp");
    {
        std::ofstream out(tmp);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << instance_to_json(inst) << '\n';
        if (!out)
            throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

ProblemInstance load_instance(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open instance file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return instance_from_json(ss.str());
    } catch (const std::exception &e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

std::string instance_filename(int fid, int dim) {
    return "f" + std::to_string(fid) + "_d" + std::to_string(dim) + ".json";
}

BudgetedEvaluator::BudgetedEvaluator(const ProblemInstance &inst, long long budget)
    : BudgetedEvaluator([&inst](std::span<const double> x) { return transformed_eval(inst, x); },
                        inst.dim, budget) {}

BudgetedEvaluator::BudgetedEvaluator(Objective objective, int dim, long long budget)
    : objective_(std::move(objective)), dim_(dim), budget_(budget),
      best_value_(std::numeric_limits<double>::infinity()) {
    if (budget < 0)
        throw std::invalid_argument("negative budget");
}

double BudgetedEvaluator::operator()(std::span<const double> x) {
    if (used_ >= budget_)
        throw BudgetExhausted(budget_);
    const double v = objective_(x);
    ++used_;
    if (improvements_.empty() || v < best_value_ || std::isnan(best_value_)) {
        best_value_ = v;
        best_point_.assign(x.begin(), x.end());
        improvements_.push_back({used_, v});
    }
    return v;
}

std::vector<TracePoint> best_so_far_trace(const BudgetedEvaluator &ev) {
    std::vector<TracePoint> trace;
    const auto &imp = ev.improvements();
    if (imp.empty())
        return trace;
    trace.reserve(static_cast<std::size_t>(ev.used()));
    std::size_t k = 0;
    double best = imp.front().best_value;
    for (long long i = 1; i <= ev.used(); ++i) {
        if (k < imp.size() && imp[k].eval_index == i)
            best = imp[k++].best_value;
        trace.push_back({i, best});
    }
    return trace;
}

}  // namespace icsi
