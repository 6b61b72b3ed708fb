#include "icsi/ranking.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace icsi {

namespace {

// Continued fraction for I_x(a, b), modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
    constexpr int max_iter = 10000;
    constexpr double eps = 1e-16;
    constexpr double tiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny)
        d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps)
            return h;
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge");
}

struct Moments {
    double mean;
    double var;  // unbiased
    double n;
};

Moments moments(std::span<const double> s) {
    const double n = static_cast<double>(s.size());
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : s)
        ss += (v - mean) * (v - mean);
    return {mean, ss / (n - 1.0), n};
}

void check_sample(std::span<const double> s, const char *name) {
    if (s.size() < 2)
        throw std::invalid_argument(std::string("sample ") + name + " needs at least 2 values");
    for (double v : s)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string("sample ") + name + " has a non-finite value");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("incomplete beta needs a, b > 0");
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("incomplete beta needs x in [0, 1]");
    if (x == 0.0)
        return 0.0;
    if (x == 1.0)
        return 1.0;
    const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                  a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double dof) {
    if (!(dof > 0.0))
        throw std::invalid_argument("t distribution needs positive degrees of freedom");
    if (std::isnan(t))
        throw std::invalid_argument("t is NaN");
    if (std::isinf(t))
        return t > 0 ? 1.0 : 0.0;
    const double tail = 0.5 * incomplete_beta(0.5 * dof, 0.5, dof / (dof + t * t));
    return t > 0.0 ? 1.0 - tail : tail;
}

PairwiseOutcome t_test(std::span<const double> a, std::span<const double> b, double alpha,
                       TTestKind kind) {
    check_sample(a, "a");
    check_sample(b, "b");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1)");

    const Moments ma = moments(a);
    const Moments mb = moments(b);
    PairwiseOutcome out;

    double se2;
    if (kind == TTestKind::welch) {
        const double qa = ma.var / ma.n;
        const double qb = mb.var / mb.n;
        se2 = qa + qb;
        out.dof = se2 > 0.0 ? se2 * se2 / (qa * qa / (ma.n - 1.0) + qb * qb / (mb.n - 1.0))
                            : ma.n + mb.n - 2.0;
    } else {
        out.dof = ma.n + mb.n - 2.0;
        const double pooled = ((ma.n - 1.0) * ma.var + (mb.n - 1.0) * mb.var) / out.dof;
        se2 = pooled * (1.0 / ma.n + 1.0 / mb.n);
    }

    const double diff = ma.mean - mb.mean;
    if (se2 > 0.0) {
        out.t_stat = diff / std::sqrt(se2);
        out.p_value = incomplete_beta(0.5 * out.dof, 0.5,
                                      out.dof / (out.dof + out.t_stat * out.t_stat));
        out.significant = out.p_value < alpha;
    } else if (diff != 0.0) {
        out.t_stat = std::copysign(std::numeric_limits<double>::infinity(), diff);
        out.p_value = 0.0;
        out.significant = true;
    } else {
        out.t_stat = 0.0;
        out.p_value = 1.0;
        out.significant = false;
    }
    if (out.significant && diff != 0.0)
        out.winner = diff < 0.0 ? Side::first : Side::second;
    else
        out.significant = false;
    return out;
}

std::vector<int> round_robin(std::span<const ResultMatrix> results, double alpha, TTestKind kind) {
    std::vector<int> points(results.size(), 0);
    if (results.empty())
        return points;
    const int runs = results.front().runs();
    for (const auto &m : results) {
        if (m.values.size() != static_cast<std::size_t>(kNumFunctions) || m.runs() != runs)
            throw std::invalid_argument("result matrix for '" + m.algo_name +
                                        "' does not match the shape of '" +
                                        results.front().algo_name + "'");
        if (m.dim != results.front().dim)
            throw std::invalid_argument("result matrices mix dimensions " +
                                        std::to_string(results.front().dim) + " and " +
                                        std::to_string(m.dim));
    }
    // Each unordered pair is tested once; the outcome is antisymmetric.
    for (int f = 1; f <= kNumFunctions; ++f)
        for (std::size_t i = 0; i < results.size(); ++i)
            for (std::size_t j = i + 1; j < results.size(); ++j) {
                const auto o = t_test(results[i].row(f), results[j].row(f), alpha, kind);
                if (o.winner == Side::first)
                    ++points[i];
                else if (o.winner == Side::second)
                    ++points[j];
            }
    return points;
}

std::vector<int> PointsTable::sums() const {
    std::vector<int> s(algos.size(), 0);
    for (const auto &row : points)
        for (std::size_t a = 0; a < row.size() && a < s.size(); ++a)
            s[a] += row[a];
    return s;
}

std::vector<RankingEntry> final_ranking(const PointsTable &table) {
    const auto sums = table.sums();
    std::vector<RankingEntry> out;
    for (std::size_t a = 0; a < table.algos.size(); ++a)
        out.push_back({0, table.algos[a], sums[a]});
    std::stable_sort(out.begin(), out.end(),
                     [](const auto &l, const auto &r) { return l.points > r.points; });
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i].rank = (i > 0 && out[i].points == out[i - 1].points) ? out[i - 1].rank
                                                                     : static_cast<int>(i) + 1;
    return out;
}

ResultSet load_result_set(const std::filesystem::path &dir, std::optional<int> runs) {
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error("results directory " + dir.string() + " does not exist");
    std::map<int, std::map<std::string, ResultMatrix>> found;
    std::set<std::string> algos;
    for (const auto &entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file())
            continue;
        const auto name = parse_result_filename(entry.path().filename().string());
        if (!name)
            continue;
        found[name->second][name->first] = read_result_csv(entry.path(), runs);
        algos.insert(name->first);
    }
    if (found.empty())
        throw std::runtime_error("no <algo>_<D>d.csv files in " + dir.string());

    ResultSet rs;
    rs.algos.assign(algos.begin(), algos.end());
    for (auto &[dim, by_algo] : found) {
        std::vector<ResultMatrix> row;
        for (const auto &algo : rs.algos) {
            const auto it = by_algo.find(algo);
            if (it == by_algo.end())
                throw std::runtime_error("missing " + (dir / result_filename(algo, dim)).string());
            row.push_back(std::move(it->second));
        }
        rs.dims.push_back(dim);
        rs.by_dim.push_back(std::move(row));
    }
    return rs;
}

PointsTable score(const ResultSet &results, double alpha, TTestKind kind) {
    PointsTable t;
    t.algos = results.algos;
    t.dims = results.dims;
    for (const auto &row : results.by_dim)
        t.points.push_back(round_robin(row, alpha, kind));
    return t;
}

std::string points_table_csv(const PointsTable &table) {
    std::string out = "Dim\\Alg";
    for (const auto &a : table.algos)
        out += "," + a;
    out += '\n';
    for (std::size_t d = 0; d < table.points.size(); ++d) {
        out += std::to_string(table.dims.at(d));
        for (int p : table.points[d])
            out += "," + std::to_string(p);
        out += '\n';
    }
    out += "Sum";
    for (int s : table.sums())
        out += "," + std::to_string(s);
    out += '\n';
    return out;
}

std::string ranking_json(const PointsTable &table, double alpha, TTestKind kind) {
    nlohmann::ordered_json j;
    j["alpha"] = alpha;
    j["test"] = kind == TTestKind::welch ? "welch" : "pooled";
    j["dims"] = table.dims;
    j["algorithms"] = table.algos;
    j["points"] = table.points;
    j["sum"] = table.sums();
    auto ranking = nlohmann::ordered_json::array();
    for (const auto &e : final_ranking(table))
        ranking.push_back({{"rank", e.rank}, {"algo", e.algo}, {"points", e.points}});
    j["ranking"] = ranking;
    return j.dump(2);
}

}  // namespace icsi
