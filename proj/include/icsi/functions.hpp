#pragma once

// The 30 ICSI-2014-BS kernels, evaluated on already shifted/rotated inputs.
//
// Every function here is pure. Inputs are the transformed point y; each basic
// kernel applies its own input scaling z = (c / 100) * y before evaluating.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace icsi {

using Vector = std::vector<double>;

enum class FunctionClass { basic, weighted_composition, nested_composition };

inline constexpr int kNumFunctions = 30;
inline constexpr int kLastBasic = 22;
inline constexpr int kLastWeighted = 26;

class FunctionId {
public:
    explicit FunctionId(int id);

    int value() const { return id_; }
    FunctionClass kind() const;

    friend bool operator==(FunctionId, FunctionId) = default;

private:
    int id_;
};

/// Input scale factor c for a basic kernel, so that z = (c / 100) * y.
/// f3 depends on the evaluation dimension (c = D^2).
double scale_factor(FunctionId fid, std::size_t dim);

/// z = (c / 100) * y. Only defined for basic kernels (1..22).
Vector input_scale(FunctionId fid, std::span<const double> y);

double eval_basic(FunctionId fid, std::span<const double> y);
double eval_weighted(FunctionId fid, std::span<const double> y);
double eval_nested(FunctionId fid, std::span<const double> y);

/// Dispatches over the three function classes.
double eval_raw(FunctionId fid, std::span<const double> y);

struct WeightedTerm {
    int inner;
    double weight;
};

/// Weighted sum terms of f23..f26.
std::span<const WeightedTerm> weighted_terms(FunctionId fid);

struct NestedSpec {
    int inner[3];
    int outer;
};

/// Inner triple and outer kernel of f27..f30.
NestedSpec nested_spec(FunctionId fid);

std::string function_name(FunctionId fid);

}  // namespace icsi
