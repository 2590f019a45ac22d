// Acceptance suite: one PASS/FAIL line per criterion.
//
// Every criterion runs first with one worker. Criterion 12 reruns all of them with 4 and 16
// workers and compares a serialized fingerprint of their results.
//
// MNIST is read from $HULLSCOPE_DATA/mnist, falling back to <source>/data/mnist.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hullscope/analytic.hpp"
#include "hullscope/datasets.hpp"
#include "hullscope/experiments.hpp"
#include "hullscope/membership.hpp"
#include "hullscope/montecarlo.hpp"
#include "hullscope/parallel.hpp"
#include "hullscope/samplers.hpp"
#include "hullscope/stats.hpp"
#include "planar_oracle.hpp"

using namespace hullscope;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    bool ran = true;  // false when the inputs are missing
    std::string detail;
    std::string fingerprint;
};

struct Criterion {
    int id;
    std::string title;
    double time_limit;  // seconds, 0 = none
    std::function<Outcome(std::size_t)> run;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string fingerprint(const EstimateResult& r) {
    return std::to_string(r.successes) + "/" + std::to_string(r.trials) + ":" + std::to_string(r.nonconverged) + ":" +
           fmt(r.p_hat) + ":" + fmt(r.ci_low) + ":" + fmt(r.ci_high) + ";";
}

Interval ci99(const EstimateResult& r) { return wilson_interval(r.successes, r.trials, kZ99); }
Interval ci95(const EstimateResult& r) { return {r.ci_low, r.ci_high}; }

// ---------------------------------------------------------------------------------------------

Outcome exact_formulas(std::size_t workers) {
    struct Case {
        const char* name;
        ExactProbability exact;
        const char* expected;
        const char* spec;
        std::size_t n;
    };
    const std::vector<Case> cases{
        {"parallelogram(3)", valtr_parallelogram(3), "1", "square", 3},
        {"parallelogram(4)", valtr_parallelogram(4), "25/36", "square", 4},
        {"parallelogram(5)", valtr_parallelogram(5), "49/144", "square", 5},
        {"triangle(3)", valtr_triangle(3), "1", "triangle", 3},
        {"triangle(4)", valtr_triangle(4), "2/3", "triangle", 4},
    };
    Outcome o{true, true, "", ""};
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const Case& c = cases[i];
        const bool exact_ok = c.exact.exact() == c.expected;
        const EstimateResult r = estimate_convex_position_prob(SamplerSpec::parse(c.spec), c.n, 1'000'000,
                                                               Seed{1000 + i}, {}, workers);
        const bool mc_ok = ci99(r).contains(c.exact.float_value);
        o.pass = o.pass && exact_ok && mc_ok;
        o.detail += std::string(c.name) + "=" + c.exact.exact() + (exact_ok ? "" : "(!)") + " mc=" + fmt_short(r.p_hat) +
                    (mc_ok ? "" : " (" + std::to_string(r.successes) + "/" + std::to_string(r.trials) + ", outside 99%)") + "; ";
        o.fingerprint += c.exact.exact() + "|" + fingerprint(r);
    }
    return o;
}

Outcome kabluchko_wendel(std::size_t) {
    Outcome o{true, true, "", ""};
    double worst = 0.0;
    std::size_t cells = 0;
    for (std::size_t d = 1; d <= 12; ++d) {
        for (std::size_t n = d + 1; n <= 40; ++n) {
            const double a = gaussian_extrapolation_prob({n, d, 0.0});
            const double w = wendel(n, d).float_value;
            worst = std::max(worst, std::abs(a - w));
            o.fingerprint += fmt(a) + ",";
            ++cells;
        }
    }
    o.pass = worst <= 1e-10;
    o.detail = std::to_string(cells) + " cells, max |diff| = " + fmt(worst);
    return o;
}

Outcome kabluchko_simulation(std::size_t workers) {
    struct Case {
        std::size_t n, d;
        double sigma2;
    };
    Outcome o{true, true, "", ""};
    std::uint64_t seed = 3000;
    for (const Case c : {Case{10, 3, 1.0}, Case{20, 5, 1.0}, Case{15, 4, 0.25}}) {
        const double p_out = gaussian_extrapolation_prob({c.n, c.d, c.sigma2});
        EstimateConfig cfg;
        cfg.data_spec = SamplerSpec::parse("gauss:d=" + std::to_string(c.d));
        cfg.query_spec = SamplerSpec::parse("gauss:d=" + std::to_string(c.d) + ",sigma=" + fmt(std::sqrt(c.sigma2)));
        cfg.n_points = c.n;
        cfg.trials = 1'000'000;
        cfg.seed = Seed{seed++};
        cfg.workers = workers;
        const EstimateResult r = estimate_interpolation_prob(cfg);
        const Interval ci = ci99(r);
        const bool ok = ci.contains(1.0 - p_out);
        o.pass = o.pass && ok;
        o.detail += "(" + std::to_string(c.n) + "," + std::to_string(c.d) + "," + fmt_short(c.sigma2) +
                    "): analytic " + fmt_short(p_out) + " vs mc [" + fmt_short(1 - ci.high) + "," +
                    fmt_short(1 - ci.low) + "]" + (ok ? "" : " MISS") + "; ";
        o.fingerprint += fmt(p_out) + "|" + fingerprint(r);
    }
    return o;
}

Outcome one_dimensional(std::size_t workers) {
    Outcome o{true, true, "", ""};
    std::uint64_t seed = 4000;
    std::size_t checked = 0;
    for (const char* spec : {"gauss:d=1", "ball:d=1", "uniform:d=1"}) {
        for (std::size_t n : {3u, 9u, 19u}) {
            EstimateConfig cfg;
            cfg.data_spec = SamplerSpec::parse(spec);
            cfg.n_points = n;
            cfg.trials = 100'000;
            cfg.seed = Seed{seed++};
            cfg.workers = workers;
            const EstimateResult r = estimate_interpolation_prob(cfg);
            const double expected = double(n - 1) / double(n + 1);
            const bool ok = ci99(r).contains(expected);
            o.pass = o.pass && ok;
            if (!ok) o.detail += std::string(spec) + " N=" + std::to_string(n) + " p=" + fmt_short(r.p_hat) + " MISS; ";
            o.fingerprint += fingerprint(r);
            ++checked;
        }
    }
    o.detail = std::to_string(checked) + " (sampler, N) cells within Wilson 99%; " + o.detail;
    return o;
}

Outcome geometry_oracle(std::size_t workers) {
    const std::size_t instances = 10'000;
    std::vector<char> eligible(instances, 0), agree(instances, 0);
    parallel_for(instances, workers, [&](std::size_t t) {
        Rng rng(mix_seed(5000, t));
        const std::size_t n = 3 + rng.below(30);
        Matrix m(n, 2);
        const bool square = rng.below(2) == 0;
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = square ? rng.uniform() : rng.normal();
        const PointSet X(m);
        const double spread = square ? 0.7 : 2.0;
        const double cx = square ? 0.5 : 0.0;
        std::vector<double> q{cx + spread * rng.normal(), cx + spread * rng.normal()};
        const MembershipResult r = test_membership(X, q);
        std::vector<oracle::P2> pts;
        for (std::size_t i = 0; i < n; ++i) pts.push_back({X.row(i)[0], X.row(i)[1]});
        const auto hull = oracle::monotone_chain(pts);
        if (oracle::distance_to_boundary(hull, {q[0], q[1]}) <= 10 * r.band) return;
        eligible[t] = 1;
        agree[t] = (r.status == Status::Interpolation) == oracle::strictly_inside(hull, {q[0], q[1]});
    });
    std::size_t n_eligible = 0, n_agree = 0;
    Outcome o{true, true, "", ""};
    for (std::size_t t = 0; t < instances; ++t) {
        n_eligible += eligible[t];
        n_agree += eligible[t] && agree[t];
        o.fingerprint += char('0' + eligible[t] + 2 * agree[t]);
    }
    o.pass = n_eligible > 0 && n_agree == n_eligible;
    o.detail = std::to_string(n_agree) + "/" + std::to_string(n_eligible) + " eligible queries agree (" +
               std::to_string(instances - n_eligible) + " within 10 bands of the boundary skipped)";
    return o;
}

// N at which p crosses 0.5, interpolated linearly in log2 N; 0 if it never does.
double crossing(const std::vector<EstimateResult>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double p0 = rows[i - 1].p_hat, p1 = rows[i].p_hat;
        if (p0 < 0.5 && p1 >= 0.5) {
            const double l0 = std::log2(double(rows[i - 1].n_points)), l1 = std::log2(double(rows[i].n_points));
            return std::exp2(l0 + (0.5 - p0) / (p1 - p0) * (l1 - l0));
        }
    }
    return 0.0;
}

bool no_smaller(const EstimateResult& later, const EstimateResult& earlier) {
    return later.p_hat >= earlier.p_hat || ci95(later).overlaps(ci95(earlier));
}

Outcome curve_shape(std::size_t workers) {
    Outcome o{true, true, "", ""};
    EstimateConfig base;
    base.data_spec = SamplerSpec::parse("gauss:d=2");
    base.trials = 10'000;
    base.seed = Seed{6000};
    base.workers = workers;

    // (a) monotone shape on d = 2..8, N = 2..1024; (b) uses the same rows extended to N = 4096.
    std::vector<std::size_t> n_grid;
    for (std::size_t n = 2; n <= 4096; n *= 2) n_grid.push_back(n);
    const std::vector<std::size_t> d_grid{2, 3, 4, 5, 6, 7, 8};
    std::vector<std::vector<EstimateResult>> rows;
    for (std::size_t d : d_grid) {
        const std::vector<std::size_t> grid = d >= 4 && d % 2 == 0 ? n_grid : std::vector<std::size_t>(n_grid.begin(), n_grid.begin() + 10);
        rows.push_back(sweep(base, grid, {d}));
        for (const auto& r : rows.back()) o.fingerprint += fingerprint(r);
    }
    std::size_t violations = 0;
    for (std::size_t a = 0; a < d_grid.size(); ++a) {
        for (std::size_t i = 1; i < 10; ++i) violations += !no_smaller(rows[a][i], rows[a][i - 1]);
        if (a > 0) {
            for (std::size_t i = 0; i < 10; ++i) violations += !no_smaller(rows[a - 1][i], rows[a][i]);
        }
    }
    const bool a_ok = violations == 0;
    o.detail += "(a) " + std::to_string(violations) + " monotonicity violations beyond 95% CI overlap; ";

    const double c4 = crossing(rows[2]), c6 = crossing(rows[4]), c8 = crossing(rows[6]);
    const bool b_ok = c4 > 0 && c6 >= 1.5 * c4 && c8 >= 1.5 * c6;
    o.detail += "(b) N_0.5: d4=" + fmt_short(c4) + " d6=" + fmt_short(c6) + " d8=" + fmt_short(c8) + "; ";

    EstimateConfig affine = base;
    affine.data_spec = SamplerSpec::parse("affine:d=8,dstar=4");
    affine.seed = Seed{6100};
    const auto ambient = sweep(affine, {64}, {8, 32, 128});
    bool c_ok = true;
    for (std::size_t i = 0; i < ambient.size(); ++i) {
        for (std::size_t j = i + 1; j < ambient.size(); ++j) c_ok = c_ok && ci95(ambient[i]).overlaps(ci95(ambient[j]));
        o.fingerprint += fingerprint(ambient[i]);
    }
    o.detail += "(c) N=64 p: d8=" + fmt_short(ambient[0].p_hat) + " d32=" + fmt_short(ambient[1].p_hat) +
                " d128=" + fmt_short(ambient[2].p_hat) + (c_ok ? " CIs overlap" : " CIs disjoint");
    o.pass = a_ok && b_ok && c_ok;
    return o;
}

Outcome buchta(std::size_t workers) {
    Outcome o{true, true, "", ""};
    std::vector<double> p;
    for (std::size_t d : {5u, 10u, 20u}) {
        const EstimateResult r = estimate_convex_position_prob(SamplerSpec::parse("ball:d=" + std::to_string(d)), d + 4,
                                                               10'000, Seed{7000 + d}, {}, workers);
        p.push_back(r.p_hat);
        o.fingerprint += fingerprint(r);
        o.detail += "d=" + std::to_string(d) + ": " + fmt_short(r.p_hat) + "  ";
    }
    o.pass = p[2] >= 0.99 && p[0] <= p[1] && p[1] <= p[2];
    return o;
}

Outcome hypercube(std::size_t workers) {
    std::ostringstream out, err;
    const int code = cli::run({"hypercube-audit", "--d", "8", "--mds", "--threads", std::to_string(workers)}, out, err);
    Outcome o{false, true, "", ""};
    if (code != 0) {
        o.detail = "hypercube-audit failed: " + err.str();
        return o;
    }
    const nlohmann::json j = nlohmann::json::parse(out.str());
    const std::size_t high = j["in_hull_high_dim"], low = j["in_hull_mds2d"];
    o.pass = j["vertices"] == 256 && high == 0 && low >= 1;
    o.detail = "256 vertices, in hull in 8-D: " + std::to_string(high) + ", strictly inside after 2-D MDS: " +
               std::to_string(low);
    o.fingerprint = std::to_string(high) + "," + std::to_string(low);
    return o;
}

fs::path mnist_dir() {
    if (const char* root = std::getenv("HULLSCOPE_DATA"); root != nullptr && *root != '\0') return fs::path(root) / "mnist";
    return fs::path(HULLSCOPE_SOURCE_DIR) / "data" / "mnist";
}

std::optional<ImageDataset> load_mnist_or_explain(Outcome& o) {
    const fs::path dir = mnist_dir();
    try {
        ImageDataset ds = load_mnist(dir);
        keep_first_train_rows(ds, 50'000);
        return ds;
    } catch (const std::exception& e) {
        o.pass = false;
        o.ran = false;
        o.detail = "MNIST not available at " + dir.string() + " (" + e.what() + ")";
        return std::nullopt;
    }
}

Outcome pixel_trend(std::size_t workers) {
    Outcome o{true, true, "", ""};
    const auto ds = load_mnist_or_explain(o);
    if (!ds) return o;
    const SubsetSpec subset{10'000, 1'000, Seed{9000}};
    const std::vector<std::size_t> dims{2, 4, 8, 16, 24};
    for (SelectionStrategy s : {SelectionStrategy::CentralPatch, SelectionStrategy::SmoothSubsample}) {
        std::vector<DatasetRow> rows;
        for (std::size_t d : dims) rows.push_back(dataset_proportion(*ds, s, d, subset, {}, workers));
        std::size_t inversions = 0;
        bool big_inversion = false;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].fraction <= rows[i - 1].fraction) continue;
            ++inversions;
            const std::size_t m = rows[i].test_rows;
            const auto a = wilson_interval(static_cast<std::size_t>(std::llround(rows[i].fraction * m)), m);
            const auto b = wilson_interval(static_cast<std::size_t>(std::llround(rows[i - 1].fraction * m)), m);
            big_inversion = big_inversion || !a.overlaps(b);
        }
        const bool ok = rows[0].fraction > 0 && inversions <= 1 && !big_inversion &&
                        rows[4].fraction < 0.2 * rows[1].fraction;
        o.pass = o.pass && ok;
        o.detail += std::string(to_string(s)) + ":";
        for (const auto& r : rows) {
            o.detail += " " + fmt_short(r.fraction);
            o.fingerprint += fmt(r.fraction) + ",";
        }
        o.detail += ok ? "; " : " (trend not met); ";
    }
    return o;
}

Outcome projection_check(std::size_t workers) {
    Outcome o{true, true, "", ""};
    const auto ds = load_mnist_or_explain(o);
    if (!ds) return o;
    std::vector<std::size_t> train_idx(ds->train_count());
    for (std::size_t i = 0; i < train_idx.size(); ++i) train_idx[i] = i;
    const auto test_idx = test_subset(*ds, {0, 1'000, Seed{10'000}});
    const PointSet train = image_rows(ds->train_images, ds->image_size(), train_idx);
    const PointSet test = image_rows(ds->test_images, ds->image_size(), test_idx);
    std::vector<double> f;
    for (std::size_t k : {10u, 20u, 30u}) {
        f.push_back(projection_proportion(train, test, {512, k, Seed{10'001}}, {}, workers));
        o.fingerprint += fmt(f.back()) + ",";
    }
    o.pass = f[0] >= 0.75 && f[0] <= 0.90 && f[1] < f[0] && f[2] <= f[1];
    o.detail = "train " + std::to_string(train.n_points()) + ", test " + std::to_string(test.n_points()) +
               "; fraction at 10/20/30 dims: " + fmt_short(f[0]) + " " + fmt_short(f[1]) + " " + fmt_short(f[2]);
    return o;
}

Outcome jll(std::size_t) {
    const std::size_t k = jll_dimension(10'000, 0.1);
    std::size_t failures = 0;
    std::string fp = std::to_string(k) + ":";
    for (std::size_t d = 1; d <= 512; ++d) {
        const JllDilemma r = jll_dilemma(d, 0.1);
        failures += !r.dilemma;
        fp += std::to_string(r.jll_dim) + ",";
    }
    return {k == 7895 && failures == 0, true,
            "jll_dimension(1e4, 0.1) = " + std::to_string(k) + "; dilemma false for " + std::to_string(failures) +
                " of d = 1..512",
            fp};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "exact Valtr probabilities, confirmed at 1e6 trials", 120, exact_formulas},
        {2, "Kabluchko at sigma^2 = 0 equals Wendel", 60, kabluchko_wendel},
        {3, "Kabluchko vs 1e6-trial simulation", 600, kabluchko_simulation},
        {4, "d = 1 closed form (N-1)/(N+1)", 0, one_dimensional},
        {5, "membership vs exact planar oracle", 0, geometry_oracle},
        {6, "Gaussian interpolation curves: shape", 1200, curve_shape},
        {7, "Buchta trend in the ball", 0, buchta},
        {8, "hypercube audit", 60, hypercube},
        {9, "MNIST pixel-selection trend", 1800, pixel_trend},
        {10, "MNIST random-projection spot check", 1800, projection_check},
        {11, "JLL dimension and dilemma", 0, jll},
    };

    bool all_pass = true;
    std::vector<Outcome> first;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run(1);
        } catch (const std::exception& e) {
            o = {false, false, std::string("error: ") + e.what(), ""};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.time_limit > 0 && secs > c.time_limit) {
            o.pass = false;
            o.detail += " [runtime limit " + fmt_short(c.time_limit) + " s exceeded]";
        }
        all_pass = all_pass && o.pass;
        std::printf("%s criterion %d: %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        first.push_back(std::move(o));
    }

    const auto t0 = std::chrono::steady_clock::now();
    std::string mismatched, skipped;
    for (std::size_t workers : {4u, 16u}) {
        for (std::size_t i = 0; i < criteria.size(); ++i) {
            if (!first[i].ran) continue;
            Outcome again;
            try {
                again = criteria[i].run(workers);
            } catch (const std::exception& e) {
                again.fingerprint = std::string("error: ") + e.what();
            }
            if (again.fingerprint != first[i].fingerprint) {
                mismatched += " " + std::to_string(criteria[i].id) + "@" + std::to_string(workers);
            }
        }
    }
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!first[i].ran) skipped += " " + std::to_string(criteria[i].id);
    }
    const bool det_ok = mismatched.empty() && skipped.empty();
    all_pass = all_pass && det_ok;
    std::string detail = mismatched.empty() ? "all rerun criteria bit-identical under 1, 4 and 16 workers"
                                            : "fingerprint mismatch:" + mismatched;
    if (!skipped.empty()) detail += "; not verifiable for criteria" + skipped + " (inputs missing)";
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion 12: determinism across worker counts: %s [%.1f s]\n", det_ok ? "PASS" : "FAIL",
                detail.c_str(), secs);
    return all_pass ? 0 : 1;
}
