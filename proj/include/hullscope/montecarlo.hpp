#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hullscope/membership.hpp"
#include "hullscope/rng.hpp"
#include "hullscope/samplers.hpp"

namespace hullscope {

struct EstimateConfig {
    SamplerSpec data_spec;
    std::optional<SamplerSpec> query_spec;  // defaults to data_spec
    std::size_t n_points = 1;
    std::size_t trials = 10'000;
    Seed seed{};
    Tolerance tol{};
    std::size_t workers = 0;  // 0 = hardware concurrency; never changes the counts

    const SamplerSpec& effective_query_spec() const { return query_spec ? *query_spec : data_spec; }
    void validate() const;
};

enum class EstimateKind { Interpolation, ConvexPosition };

const char* to_string(EstimateKind kind);

struct EstimateResult {
    EstimateKind kind = EstimateKind::Interpolation;
    std::string data_spec;
    std::string query_spec;  // empty for convex-position estimates
    std::size_t n_points = 0;
    std::size_t dim = 0;
    std::size_t trials = 0;
    std::size_t successes = 0;
    std::size_t nonconverged = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;  // Wilson 95%
    double ci_high = 1.0;
    Seed seed{};
    double wall_time = 0.0;  // seconds; the only field that varies between reruns
};

/// Fraction of trials whose query lands in the hull of N fresh data points.
/// Trial i draws X then x from Rng(mix_seed(seed, i)); samplers share the structure seed `seed`.
EstimateResult estimate_interpolation_prob(const EstimateConfig& cfg);

/// Fraction of trials in which n fresh points are in convex position (no point inside the
/// hull of the others). Requires n >= 3.
EstimateResult estimate_convex_position_prob(const SamplerSpec& spec, std::size_t n,
                                             std::size_t trials, Seed seed,
                                             const Tolerance& tol = {}, std::size_t workers = 0);

/// One interpolation estimate per (N, d) with d outer and N inner. Row (N, d) uses the seed
/// mix_seed(base.seed, d << 32 | N), so its value does not depend on the rest of the grid.
std::vector<EstimateResult> sweep(const EstimateConfig& base, const std::vector<std::size_t>& n_grid,
                                  const std::vector<std::size_t>& d_grid);

/// Seed used for row (N, d) of a sweep.
Seed sweep_row_seed(Seed base, std::size_t n_points, std::size_t dim);

/// `kind,data_spec,query_spec,N,d,trials,successes,p_hat,ci_low,ci_high,nonconverged,seed,seconds`
const std::string& estimate_csv_header();
std::string to_csv_row(const EstimateResult& r);
nlohmann::json to_json(const EstimateResult& r);

}  // namespace hullscope
