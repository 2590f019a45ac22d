#include "hullscope/montecarlo.hpp"

#include <chrono>
#include <cstdio>
#include <numeric>

#include "hullscope/errors.hpp"
#include "hullscope/parallel.hpp"
#include "hullscope/stats.hpp"

namespace hullscope {

namespace {

using Clock = std::chrono::steady_clock;

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

void finish(EstimateResult& r, const std::vector<char>& success, const std::vector<char>& stalled,
            Clock::time_point started) {
    r.trials = success.size();
    r.successes = static_cast<std::size_t>(std::accumulate(success.begin(), success.end(), std::size_t{0}));
    r.nonconverged = static_cast<std::size_t>(std::accumulate(stalled.begin(), stalled.end(), std::size_t{0}));
    r.p_hat = static_cast<double>(r.successes) / static_cast<double>(r.trials);
    const Interval ci = wilson_interval(r.successes, r.trials, kZ95);
    r.ci_low = ci.low;
    r.ci_high = ci.high;
    r.wall_time = std::chrono::duration<double>(Clock::now() - started).count();
}

}  // namespace

void EstimateConfig::validate() const {
    data_spec.validate();
    effective_query_spec().validate();
    if (trials < 1) throw InvalidInput("trials must be at least 1");
    if (n_points < 1) throw InvalidInput("N must be at least 1");
    if (effective_query_spec().dim != data_spec.dim) {
        throw DimensionError("query sampler dimension differs from data sampler dimension");
    }
    tol.validate();
}

const char* to_string(EstimateKind kind) {
    return kind == EstimateKind::Interpolation ? "interpolation" : "convex_position";
}

EstimateResult estimate_interpolation_prob(const EstimateConfig& cfg) {
    cfg.validate();
    const auto started = Clock::now();
    const Sampler data(cfg.data_spec, cfg.seed.value);
    const Sampler query(cfg.effective_query_spec(), cfg.seed.value);

    std::vector<char> success(cfg.trials, 0);
    std::vector<char> stalled(cfg.trials, 0);
    parallel_for(cfg.trials, cfg.workers, [&](std::size_t i) {
        Rng rng(mix_seed(cfg.seed.value, i));
        const PointSet X = data.draw(cfg.n_points, rng);
        std::vector<double> x(cfg.data_spec.dim);
        query.draw_row(rng, x);
        const MembershipResult m = test_membership(X, x, cfg.tol, StopRule::Certificate);
        success[i] = m.status == Status::Interpolation;
        stalled[i] = !m.converged;
    });

    EstimateResult r;
    r.kind = EstimateKind::Interpolation;
    r.data_spec = cfg.data_spec.to_string();
    r.query_spec = cfg.effective_query_spec().to_string();
    r.n_points = cfg.n_points;
    r.dim = cfg.data_spec.dim;
    r.seed = cfg.seed;
    finish(r, success, stalled, started);
    return r;
}

EstimateResult estimate_convex_position_prob(const SamplerSpec& spec, std::size_t n,
                                             std::size_t trials, Seed seed,
                                             const Tolerance& tol, std::size_t workers) {
    spec.validate();
    tol.validate();
    if (n < 3) throw InvalidInput("convex position estimate needs n >= 3");
    if (trials < 1) throw InvalidInput("trials must be at least 1");
    const auto started = Clock::now();
    const Sampler sampler(spec, seed.value);

    std::vector<char> success(trials, 0);
    std::vector<char> stalled(trials, 0);
    parallel_for(trials, workers, [&](std::size_t i) {
        Rng rng(mix_seed(seed.value, i));
        const PointSet X = sampler.draw(n, rng);
        const ConvexPositionCount c = convex_position_count(X, tol, 1);
        success[i] = c.in_convex_position();
        stalled[i] = c.nonconverged > 0;
    });

    EstimateResult r;
    r.kind = EstimateKind::ConvexPosition;
    r.data_spec = spec.to_string();
    r.n_points = n;
    r.dim = spec.dim;
    r.seed = seed;
    finish(r, success, stalled, started);
    return r;
}

Seed sweep_row_seed(Seed base, std::size_t n_points, std::size_t dim) {
    return Seed{mix_seed(base.value, (static_cast<std::uint64_t>(dim) << 32) | n_points)};
}

std::vector<EstimateResult> sweep(const EstimateConfig& base, const std::vector<std::size_t>& n_grid,
                                  const std::vector<std::size_t>& d_grid) {
    if (n_grid.empty() || d_grid.empty()) throw InvalidInput("sweep grids must be nonempty");
    std::vector<EstimateResult> rows;
    rows.reserve(n_grid.size() * d_grid.size());
    for (std::size_t d : d_grid) {
        EstimateConfig cfg = base;
        cfg.data_spec = base.data_spec.with_dim(d);
        if (base.query_spec) cfg.query_spec = base.query_spec->with_dim(d);
        for (std::size_t n : n_grid) {
            cfg.n_points = n;
            cfg.seed = sweep_row_seed(base.seed, n, d);
            rows.push_back(estimate_interpolation_prob(cfg));
        }
    }
    return rows;
}

const std::string& estimate_csv_header() {
    static const std::string header =
        "kind,data_spec,query_spec,N,d,trials,successes,p_hat,ci_low,ci_high,nonconverged,seed,seconds";
    return header;
}

std::string to_csv_row(const EstimateResult& r) {
    std::string out;
    out += to_string(r.kind);
    out += ',' + csv_field(r.data_spec) + ',' + csv_field(r.query_spec);
    out += ',' + std::to_string(r.n_points) + ',' + std::to_string(r.dim);
    out += ',' + std::to_string(r.trials) + ',' + std::to_string(r.successes);
    out += ',' + format_real(r.p_hat) + ',' + format_real(r.ci_low) + ',' + format_real(r.ci_high);
    out += ',' + std::to_string(r.nonconverged) + ',' + std::to_string(r.seed.value);
    char seconds[32];
    std::snprintf(seconds, sizeof seconds, "%.3f", r.wall_time);
    out += ',';
    out += seconds;
    return out;
}

nlohmann::json to_json(const EstimateResult& r) {
    return {
        {"kind", to_string(r.kind)},
        {"data_spec", r.data_spec},
        {"query_spec", r.query_spec},
        {"N", r.n_points},
        {"d", r.dim},
        {"trials", r.trials},
        {"successes", r.successes},
        {"p_hat", r.p_hat},
        {"ci_low", r.ci_low},
        {"ci_high", r.ci_high},
        {"nonconverged", r.nonconverged},
        {"seed", r.seed.value},
        {"seconds", r.wall_time},
    };
}

}  // namespace hullscope
