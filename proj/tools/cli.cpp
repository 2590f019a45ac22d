#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "cli_support.hpp"
#include "hullscope/analytic.hpp"
#include "hullscope/datasets.hpp"
#include "hullscope/errors.hpp"
#include "hullscope/experiments.hpp"
#include "hullscope/linalg.hpp"
#include "hullscope/membership.hpp"
#include "hullscope/montecarlo.hpp"
#include "hullscope/samplers.hpp"
#include "hullscope/selection.hpp"

namespace hullscope::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Common {
    std::uint64_t seed = 0;
    std::size_t trials = 10'000;
    double tol_abs = 1e-9;
    double tol_rel = 1e-7;
    std::string out;
    std::string format;
    std::size_t threads = 0;

    Tolerance tolerance() const {
        Tolerance t;
        t.tau_abs = tol_abs;
        t.tau_rel = tol_rel;
        t.validate();
        return t;
    }
};

struct Options {
    Common common;
    // inputs
    std::string data, spec, query_spec, query, embeddings;
    std::optional<std::size_t> n, query_vertex, d, k;
    std::string n_grid, d_grid;
    // analytic
    std::string op;
    std::optional<double> sigma2, r, eps;
    std::size_t nodes = 200;
    bool no_refine = false;
    // dataset
    std::string dataset = "mnist", path, strategy = "central_patch", train_embeddings, test_embeddings;
    std::size_t train_rows = 0, test_rows = 0, train_pool = 0;
    std::string mode = "pixels", kept_dims = "10";
    std::size_t embed_dim = 512;
    // pca / audit
    std::string thresholds = "0.9,0.99";
    bool mds = false;
};

// Writes results to --out or the output stream; CSV files get a sidecar manifest.
class Sink {
public:
    Sink(const Common& c, std::ostream& out) : common_(c), out_(out) {}

    void json_result(json payload, Manifest& manifest) {
        manifest.finish();
        payload["manifest"] = manifest.to_json();
        write(payload.dump(2) + "\n");
    }

    void csv_result(const std::string& text, Manifest& manifest) {
        manifest.finish();
        write(text);
        if (!common_.out.empty()) {
            std::ofstream m(common_.out + ".manifest.json");
            m << manifest.to_json().dump(2) << "\n";
            if (!m) throw InvalidInput("cannot write " + common_.out + ".manifest.json");
        }
    }

private:
    void write(const std::string& text) {
        if (common_.out.empty()) {
            out_ << text;
            return;
        }
        std::ofstream f(common_.out);
        f << text;
        if (!f) throw InvalidInput("cannot write " + common_.out);
    }

    const Common& common_;
    std::ostream& out_;
};

bool want_json(const Common& c, bool json_default) {
    if (c.format.empty()) return json_default;
    if (c.format == "json") return true;
    if (c.format == "csv") return false;
    throw InvalidInput("--format must be csv or json");
}

// Adds d=<dim> to a sampler spec text that does not name a dimension.
SamplerSpec spec_with_dim(const std::string& text, std::size_t dim) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) return SamplerSpec::parse(text + ":d=" + std::to_string(dim));
    std::istringstream params(text.substr(colon + 1));
    std::string item;
    while (std::getline(params, item, ',')) {
        const std::string key = item.substr(0, item.find('='));
        if (key == "d" || key == "dim") return SamplerSpec::parse(text).with_dim(dim);
    }
    return SamplerSpec::parse(text + ",d=" + std::to_string(dim));
}

std::size_t default_sample_size(const SamplerSpec& spec, const std::optional<std::size_t>& n) {
    if (n) return *n;
    if (spec.kind == SamplerKind::HypercubeVertices) return std::size_t{1} << spec.dim;
    throw InvalidInput("--n is required with --spec");
}

// Points from --data (CSV), --embeddings, or --spec with --n and --seed.
PointSet input_points(const Options& o, json& params) {
    const int sources = !o.data.empty() + !o.embeddings.empty() + !o.spec.empty();
    if (sources != 1) throw InvalidInput("give exactly one of --data, --embeddings, --spec");
    if (!o.data.empty()) {
        params["data"] = o.data;
        return read_points_csv(o.data);
    }
    if (!o.embeddings.empty()) {
        params["embeddings"] = o.embeddings;
        return load_embeddings(o.embeddings);
    }
    const SamplerSpec spec = SamplerSpec::parse(o.spec);
    const std::size_t n = default_sample_size(spec, o.n);
    params["spec"] = spec.to_string();
    params["n"] = n;
    return sample(spec, n, Seed{o.common.seed});
}

std::vector<double> to_std(std::span<const double> v) { return {v.begin(), v.end()}; }

json membership_json(const MembershipResult& r) {
    json j = {{"status", to_string(r.status)},
              {"distance", r.distance},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"scale", r.scale},
              {"band", r.band}};
    j["coefficients"] = r.coefficients ? json(*r.coefficients) : json(nullptr);
    j["witness"] = r.witness ? json(*r.witness) : json(nullptr);
    return j;
}

int cmd_membership(const Options& o, Sink& sink) {
    Manifest manifest("membership", o.common.seed);
    json& params = manifest.params();
    PointSet X = input_points(o, params);
    std::vector<double> q;
    if (o.query_vertex && !o.query.empty()) throw InvalidInput("give one of --query, --query-vertex");
    if (o.query_vertex) {
        if (*o.query_vertex >= X.n_points()) throw InvalidInput("--query-vertex out of range");
        q = X.row_vector(*o.query_vertex);
        X = X.without_row(*o.query_vertex);
        params["query_vertex"] = *o.query_vertex;
    } else if (!o.query.empty()) {
        const PointSet Q = read_points_csv(o.query);
        if (Q.n_points() != 1) throw InvalidInput(o.query + ": expected exactly one query row");
        q = Q.row_vector(0);
        params["query"] = o.query;
    } else {
        throw InvalidInput("--query or --query-vertex is required");
    }
    params["tol_abs"] = o.common.tol_abs;
    params["tol_rel"] = o.common.tol_rel;
    const MembershipResult r = test_membership(X, q, o.common.tolerance());
    sink.json_result(membership_json(r), manifest);
    return r.status == Status::Interpolation ? kExitOk : kExitExtrapolation;
}

void put_estimate_params(json& params, const EstimateConfig& cfg) {
    params["spec"] = cfg.data_spec.to_string();
    params["query_spec"] = cfg.effective_query_spec().to_string();
    params["trials"] = cfg.trials;
    params["tol_abs"] = cfg.tol.tau_abs;
    params["tol_rel"] = cfg.tol.tau_rel;
    params["threads"] = cfg.workers;
}

void emit_estimates(const std::vector<EstimateResult>& rows, const Options& o, Sink& sink, Manifest& manifest) {
    if (want_json(o.common, false)) {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(to_json(r));
        sink.json_result({{"results", arr}}, manifest);
        return;
    }
    std::string text = estimate_csv_header() + "\n";
    for (const auto& r : rows) text += to_csv_row(r) + "\n";
    sink.csv_result(text, manifest);
}

EstimateConfig estimate_config(const Options& o, const SamplerSpec& data) {
    EstimateConfig cfg;
    cfg.data_spec = data;
    if (!o.query_spec.empty()) cfg.query_spec = spec_with_dim(o.query_spec, data.dim);
    cfg.trials = o.common.trials;
    cfg.seed = Seed{o.common.seed};
    cfg.tol = o.common.tolerance();
    cfg.workers = o.common.threads;
    return cfg;
}

int cmd_estimate(const Options& o, Sink& sink) {
    Manifest manifest("estimate", o.common.seed);
    if (!o.n) throw InvalidInput("--n is required");
    EstimateConfig cfg = estimate_config(o, SamplerSpec::parse(o.spec));
    cfg.n_points = *o.n;
    put_estimate_params(manifest.params(), cfg);
    manifest.params()["n"] = *o.n;
    emit_estimates({estimate_interpolation_prob(cfg)}, o, sink, manifest);
    return kExitOk;
}

int cmd_sweep(const Options& o, Sink& sink) {
    Manifest manifest("sweep", o.common.seed);
    const std::vector<std::size_t> n_grid = parse_grid(o.n_grid);
    const std::vector<std::size_t> d_grid = parse_grid(o.d_grid);
    EstimateConfig cfg = estimate_config(o, spec_with_dim(o.spec, d_grid.front()));
    put_estimate_params(manifest.params(), cfg);
    manifest.params()["n_grid"] = n_grid;
    manifest.params()["d_grid"] = d_grid;
    emit_estimates(sweep(cfg, n_grid, d_grid), o, sink, manifest);
    return kExitOk;
}

int cmd_convex_position(const Options& o, Sink& sink) {
    Manifest manifest("convex-position", o.common.seed);
    json& params = manifest.params();
    if (!o.data.empty()) {
        const PointSet X = input_points(o, params);
        const ConvexPositionCount c = convex_position_count(X, o.common.tolerance(), o.common.threads);
        json flags = json::array();
        for (bool f : c.flags) flags.push_back(f);
        sink.json_result({{"points", X.n_points()},
                          {"dim", X.dim()},
                          {"in_hull_count", c.in_hull_count},
                          {"convex_position", c.in_convex_position()},
                          {"nonconverged", c.nonconverged},
                          {"flags", flags}},
                         manifest);
        return kExitOk;
    }
    if (!o.n) throw InvalidInput("--n is required");
    const SamplerSpec spec = SamplerSpec::parse(o.spec);
    params["spec"] = spec.to_string();
    params["n"] = *o.n;
    params["trials"] = o.common.trials;
    emit_estimates({estimate_convex_position_prob(spec, *o.n, o.common.trials, Seed{o.common.seed},
                                                  o.common.tolerance(), o.common.threads)},
                   o, sink, manifest);
    return kExitOk;
}

template <class T>
const T& need(const std::optional<T>& v, const char* flag) {
    if (!v) throw InvalidInput(std::string(flag) + " is required");
    return *v;
}

json exact_payload(const std::string& op, json params, const ExactProbability& p) {
    return {{"op", op}, {"params", std::move(params)}, {"exact", p.exact()}, {"float", p.float_value}, {"meta", json::object()}};
}

json analytic_payload(const Options& o) {
    const std::string& op = o.op;
    if (op == "valtr-parallelogram" || op == "valtr-triangle") {
        const std::size_t n = need(o.n, "--n");
        return exact_payload(op, {{"n", n}}, op == "valtr-triangle" ? valtr_triangle(n) : valtr_parallelogram(n));
    }
    if (op == "wendel") {
        const std::size_t n = need(o.n, "--n"), d = need(o.d, "--d");
        return exact_payload(op, {{"n", n}, {"d", d}}, wendel(n, d));
    }
    if (op == "barany") {
        const std::size_t d = need(o.d, "--d");
        const BaranyThreshold t = barany_threshold(d);
        json j = {{"op", op}, {"params", {{"d", d}}}, {"exact", nullptr}, {"float", t.value},
                  {"meta", {{"log2_threshold", t.log2_value}}}};
        if (std::isinf(t.value)) j["float"] = nullptr;
        if (o.n) {
            j["params"]["n"] = *o.n;
            j["meta"]["limit"] = to_string(barany_limit(*o.n, d));
        }
        return j;
    }
    QuadratureConfig q{o.nodes, 1e-8, !o.no_refine};
    if (op == "absorption") {
        const std::size_t n = need(o.n, "--n"), d = need(o.d, "--d");
        const double s2 = need(o.sigma2, "--sigma2");
        const double p = gaussian_extrapolation_prob({n, d, s2}, q);
        json j = {{"op", op}, {"params", {{"n", n}, {"d", d}, {"sigma2", s2}}}, {"exact", nullptr}, {"float", p},
                  {"meta", {{"nodes", q.nodes}, {"refine", q.refine}}}};
        if (s2 == 0.0) j["meta"]["wendel_exact"] = wendel(n, d).exact();
        return j;
    }
    if (op == "g") {
        const std::size_t n = need(o.n, "--n");
        const double r = need(o.r, "--r");
        const std::complex<double> g = g_function(n, r, q);
        return {{"op", op}, {"params", {{"n", n}, {"r", r}}}, {"exact", nullptr}, {"float", g.real()},
                {"meta", {{"imag", g.imag()}, {"nodes", q.nodes}}}};
    }
    if (op == "jll") {
        const std::size_t n = need(o.n, "--n");
        const double eps = need(o.eps, "--eps");
        const std::size_t k = jll_dimension(n, eps);
        return {{"op", op}, {"params", {{"n", n}, {"eps", eps}}}, {"exact", std::to_string(k)},
                {"float", static_cast<double>(k)}, {"meta", json::object()}};
    }
    if (op == "jll-dilemma") {
        const std::size_t d = need(o.d, "--d");
        const double eps = need(o.eps, "--eps");
        const JllDilemma r = jll_dilemma(d, eps);
        return {{"op", op}, {"params", {{"d", d}, {"eps", eps}}}, {"exact", std::to_string(r.jll_dim)},
                {"float", static_cast<double>(r.jll_dim)},
                {"meta", {{"log2_n_points", r.log2_n_points}, {"dilemma", r.dilemma}}}};
    }
    throw InvalidInput("unknown analytic operation '" + op + "'");
}

int cmd_analytic(const Options& o, Sink& sink, const std::string& name) {
    Manifest manifest(name, o.common.seed);
    json payload = analytic_payload(o);
    manifest.params() = payload["params"];
    manifest.params()["op"] = o.op;
    sink.json_result(std::move(payload), manifest);
    return kExitOk;
}

fs::path dataset_dir(const Options& o) {
    if (!o.path.empty()) return o.path;
    const char* root = std::getenv("HULLSCOPE_DATA");
    if (root == nullptr || *root == '\0') throw InvalidInput("--path not given and HULLSCOPE_DATA is unset");
    return fs::path(root) / o.dataset;
}

ImageDataset load_dataset(const Options& o) {
    const fs::path dir = dataset_dir(o);
    if (!fs::is_directory(dir)) throw InvalidInput("dataset directory " + dir.string() + " does not exist");
    if (o.dataset == "mnist") return load_mnist(dir);
    if (o.dataset == "cifar10") return load_cifar10_dir(dir);
    throw InvalidInput("--dataset must be mnist or cifar10");
}

std::vector<SelectionStrategy> strategies(const std::string& text) {
    if (text == "both") return {SelectionStrategy::CentralPatch, SelectionStrategy::SmoothSubsample};
    return {parse_strategy(text)};
}

void emit_dataset_rows(const std::vector<DatasetRow>& rows, const Options& o, Sink& sink, Manifest& manifest) {
    if (want_json(o.common, false)) {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(to_json(r));
        sink.json_result({{"results", arr}}, manifest);
        return;
    }
    std::string text = dataset_csv_header() + "\n";
    for (const auto& r : rows) text += to_csv_row(r) + "\n";
    sink.csv_result(text, manifest);
}

std::vector<std::size_t> first_rows(std::size_t count) {
    std::vector<std::size_t> rows(count);
    for (std::size_t i = 0; i < count; ++i) rows[i] = i;
    return rows;
}

// Random-column subsets of two embedding matrices.
std::vector<DatasetRow> embedding_rows(const Options& o, json& params) {
    const PointSet train = load_embeddings(o.train_embeddings);
    const PointSet test = load_embeddings(o.test_embeddings);
    if (train.dim() != test.dim()) throw DimensionError("train and test embeddings differ in width");
    params["train_embeddings"] = o.train_embeddings;
    params["test_embeddings"] = o.test_embeddings;
    std::vector<DatasetRow> rows;
    for (std::size_t k : parse_grid(o.kept_dims)) {
        const std::vector<std::size_t> cols = choose_columns(train.dim(), k, Seed{mix_seed(o.common.seed, k)});
        const ProportionResult p = interpolation_proportion(select_columns(train, cols), select_columns(test, cols),
                                                            o.common.tolerance(), o.common.threads);
        DatasetRow row;
        row.dataset = fs::path(o.train_embeddings).stem().string();
        row.strategy = SelectionStrategy::CentralPatch;
        row.target_dim = k;
        row.train_rows = train.n_points();
        row.test_rows = test.n_points();
        row.fraction = p.fraction;
        row.nonconverged = p.nonconverged;
        row.seed = Seed{o.common.seed};
        rows.push_back(row);
    }
    return rows;
}

int cmd_dataset(const Options& o, Sink& sink) {
    Manifest manifest("dataset", o.common.seed);
    json& params = manifest.params();
    params["tol_abs"] = o.common.tol_abs;
    params["tol_rel"] = o.common.tol_rel;
    if (!o.train_embeddings.empty() || !o.test_embeddings.empty()) {
        const std::vector<DatasetRow> rows = embedding_rows(o, params);
        if (want_json(o.common, false)) {
            json arr = json::array();
            for (const auto& r : rows) {
                json j = to_json(r);
                j["strategy"] = "random_columns";
                arr.push_back(j);
            }
            sink.json_result({{"results", arr}}, manifest);
        } else {
            std::string text = dataset_csv_header() + "\n";
            for (const auto& r : rows) {
                std::string line = to_csv_row(r);
                line.replace(line.find("central_patch"), 13, "random_columns");
                text += line + "\n";
            }
            sink.csv_result(text, manifest);
        }
        return kExitOk;
    }

    ImageDataset ds = load_dataset(o);
    keep_first_train_rows(ds, o.train_pool);
    params["dataset"] = o.dataset;
    params["path"] = dataset_dir(o).string();
    params["train_pool"] = ds.train_count();
    params["train_rows"] = o.train_rows;
    params["test_rows"] = o.test_rows;
    SubsetSpec subset{o.train_rows, o.test_rows, Seed{o.common.seed}};
    std::vector<DatasetRow> rows;
    if (o.mode == "pixels") {
        const std::vector<std::size_t> dims = parse_grid(o.d_grid);
        params["strategy"] = o.strategy;
        params["d_grid"] = dims;
        for (SelectionStrategy s : strategies(o.strategy)) {
            for (std::size_t d : dims) {
                rows.push_back(dataset_proportion(ds, s, d, subset, o.common.tolerance(), o.common.threads));
            }
        }
    } else if (o.mode == "projection") {
        const std::vector<std::size_t> train_idx = first_rows(ds.train_count());
        const std::vector<std::size_t> test_idx = test_subset(ds, subset);
        const PointSet train = image_rows(ds.train_images, ds.image_size(), train_idx);
        const PointSet test = image_rows(ds.test_images, ds.image_size(), test_idx);
        params["embed_dim"] = o.embed_dim;
        for (std::size_t k : parse_grid(o.kept_dims)) {
            DatasetRow row;
            row.dataset = ds.name + "-projection" + std::to_string(o.embed_dim);
            row.strategy = SelectionStrategy::CentralPatch;
            row.target_dim = k;
            row.train_rows = train.n_points();
            row.test_rows = test.n_points();
            row.fraction = projection_proportion(train, test, {o.embed_dim, k, Seed{o.common.seed}},
                                                 o.common.tolerance(), o.common.threads);
            row.seed = Seed{o.common.seed};
            rows.push_back(row);
        }
    } else {
        throw InvalidInput("--mode must be pixels or projection");
    }
    emit_dataset_rows(rows, o, sink, manifest);
    return kExitOk;
}

int cmd_pca(const Options& o, Sink& sink) {
    Manifest manifest("pca", o.common.seed);
    const PointSet X = input_points(o, manifest.params());
    const PcaSpectrum s = pca_explained(X);
    json comps = json::object();
    for (double t : parse_reals(o.thresholds)) {
        if (!(t > 0.0 && t <= 1.0)) throw InvalidInput("thresholds must lie in (0, 1]");
        char key[32];
        std::snprintf(key, sizeof key, "%g", t);
        comps[key] = s.components_for(t);
    }
    manifest.params()["thresholds"] = o.thresholds;
    sink.json_result({{"points", X.n_points()},
                      {"dim", X.dim()},
                      {"eigenvalues", s.eigenvalues},
                      {"degenerate", s.degenerate},
                      {"components_for", comps}},
                     manifest);
    return kExitOk;
}

int cmd_mds(const Options& o, Sink& sink) {
    Manifest manifest("mds", o.common.seed);
    const PointSet X = input_points(o, manifest.params());
    const std::size_t k = o.k.value_or(2);
    manifest.params()["k"] = k;
    const PointSet Y = classical_mds(X, k);
    if (want_json(o.common, false)) {
        json rows = json::array();
        for (std::size_t i = 0; i < Y.n_points(); ++i) rows.push_back(to_std(Y.row(i)));
        sink.json_result({{"k", k}, {"coordinates", rows}}, manifest);
        return kExitOk;
    }
    std::string text;
    for (std::size_t j = 0; j < k; ++j) text += (j ? ",x" : "x") + std::to_string(j + 1);
    text += "\n";
    for (std::size_t i = 0; i < Y.n_points(); ++i) {
        for (std::size_t j = 0; j < k; ++j) text += (j ? "," : "") + format_double(Y.row(i)[j]);
        text += "\n";
    }
    sink.csv_result(text, manifest);
    return kExitOk;
}

int cmd_hypercube_audit(const Options& o, Sink& sink) {
    Manifest manifest("hypercube-audit", o.common.seed);
    const std::size_t d = need(o.d, "--d");
    if (d < 2 || d > 12) throw DomainError("hypercube audit needs 2 <= d <= 12");
    manifest.params()["d"] = d;
    manifest.params()["mds"] = o.mds;
    const PointSet cube = enumerate_hypercube(d);
    const Tolerance tol = o.common.tolerance();
    const ConvexPositionCount high = convex_position_count(cube, tol, o.common.threads);
    json report = {{"d", d}, {"vertices", cube.n_points()}, {"in_hull_high_dim", high.in_hull_count}};
    if (o.mds) {
        const PointSet flat = classical_mds(cube, 2);
        // Strictly inside: the square of half-width ten bands around the point lies in the hull
        // of the others. The hull is convex, so the four corners decide it.
        const ConvexPositionCount low = convex_position_count(flat, tol, o.common.threads);
        std::size_t strict = 0;
        for (std::size_t i = 0; i < flat.n_points(); ++i) {
            if (!low.flags[i]) continue;
            const PointSet others = flat.without_row(i);
            bool interior = true;
            for (double dx : {-1.0, 1.0}) {
                for (double dy : {-1.0, 1.0}) {
                    std::vector<double> p = flat.row_vector(i);
                    const double step = 10 * tol.band(membership_scale(others, p));
                    p[0] += dx * step;
                    p[1] += dy * step;
                    interior = interior && test_membership(others, p, tol).status == Status::Interpolation;
                }
            }
            strict += interior;
        }
        report["in_hull_mds2d"] = strict;
    }
    sink.json_result(report, manifest);
    return kExitOk;
}

void add_common(CLI::App* app, Common& c, bool with_trials) {
    app->add_option("--seed", c.seed, "master seed")->capture_default_str();
    if (with_trials) app->add_option("--trials", c.trials, "Monte-Carlo trials")->capture_default_str();
    app->add_option("--tol-abs", c.tol_abs, "absolute slack")->capture_default_str();
    app->add_option("--tol-rel", c.tol_rel, "relative slack (times scale)")->capture_default_str();
    app->add_option("--out", c.out, "output file (default: standard output)");
    app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--threads", c.threads, "worker threads (0 = hardware concurrency)")->capture_default_str();
}

void add_points_input(CLI::App* app, Options& o) {
    app->add_option("--data", o.data, "numeric CSV, one point per line");
    app->add_option("--embeddings", o.embeddings, "embedding file (<base>.json + <base>.f32le)");
    app->add_option("--spec", o.spec, "sampler spec, e.g. gauss:d=8");
    app->add_option("--n", o.n, "sample size for --spec");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"hullscope: interpolation and extrapolation in high dimension"};
    app.require_subcommand(1);
    Options o;

    auto* membership = app.add_subcommand("membership", "test whether a query lies in the hull of a point set");
    add_points_input(membership, o);
    membership->add_option("--query", o.query, "CSV with the single query row");
    membership->add_option("--query-vertex", o.query_vertex, "hold out this row of the data as the query");
    add_common(membership, o.common, false);

    auto* estimate = app.add_subcommand("estimate", "Monte-Carlo interpolation probability");
    estimate->add_option("--spec", o.spec, "data sampler")->required();
    estimate->add_option("--query-spec", o.query_spec, "query sampler (default: the data sampler)");
    estimate->add_option("--n", o.n, "dataset size N")->required();
    add_common(estimate, o.common, true);

    auto* sweep_cmd = app.add_subcommand("sweep", "estimates over an (N, d) grid");
    sweep_cmd->add_option("--spec", o.spec, "data sampler; d is taken from --d")->required();
    sweep_cmd->add_option("--query-spec", o.query_spec, "query sampler");
    sweep_cmd->add_option("--n", o.n_grid, "N grid, e.g. 2:1024:x2")->required();
    sweep_cmd->add_option("--d", o.d_grid, "d grid, e.g. 2,4,6,8")->required();
    add_common(sweep_cmd, o.common, true);

    auto* convex = app.add_subcommand("convex-position", "convex-position probability or leave-one-out count");
    convex->add_option("--spec", o.spec, "sampler");
    convex->add_option("--n", o.n, "points per trial");
    convex->add_option("--data", o.data, "count hull-interior rows of this CSV instead");
    add_common(convex, o.common, true);

    auto* analytic = app.add_subcommand("analytic", "closed-form probabilities and bounds");
    analytic->add_option("op", o.op, "valtr-parallelogram, valtr-triangle, wendel, barany, absorption, g, jll, jll-dilemma")
        ->required();
    analytic->add_option("--n", o.n, "number of points");
    analytic->add_option("--d", o.d, "dimension");
    analytic->add_option("--sigma2", o.sigma2, "query variance");
    analytic->add_option("--r", o.r, "g_n argument");
    analytic->add_option("--eps", o.eps, "JL distortion");
    analytic->add_option("--nodes", o.nodes, "initial Gauss-Hermite nodes")->capture_default_str();
    analytic->add_flag("--no-refine", o.no_refine, "skip node doubling");
    add_common(analytic, o.common, false);

    auto* jll = app.add_subcommand("jll", "Johnson-Lindenstrauss dimension (--n) or dilemma report (--d)");
    jll->add_option("--n", o.n, "number of points");
    jll->add_option("--d", o.d, "dimension for the N = 2^d dilemma");
    jll->add_option("--eps", o.eps, "distortion")->required();
    add_common(jll, o.common, false);

    auto* dataset = app.add_subcommand("dataset", "fraction of test images inside the training hull");
    dataset->add_option("--dataset", o.dataset, "mnist or cifar10")->capture_default_str();
    dataset->add_option("--path", o.path, "dataset directory (default: $HULLSCOPE_DATA/<dataset>)");
    dataset->add_option("--mode", o.mode, "pixels or projection")->capture_default_str();
    dataset->add_option("--strategy", o.strategy, "central_patch, smooth_subsample or both")->capture_default_str();
    dataset->add_option("--d", o.d_grid, "pixel dimension grid");
    dataset->add_option("--train-rows", o.train_rows, "train subset size (0 = all)");
    dataset->add_option("--test-rows", o.test_rows, "test subset size (0 = all)");
    dataset->add_option("--train-pool", o.train_pool, "keep only the first rows of the train split (0 = all)");
    dataset->add_option("--embed-dim", o.embed_dim, "projection width")->capture_default_str();
    dataset->add_option("--kept-dims", o.kept_dims, "grid of kept projection or embedding columns")
        ->capture_default_str();
    dataset->add_option("--train-embeddings", o.train_embeddings, "precomputed train embeddings");
    dataset->add_option("--test-embeddings", o.test_embeddings, "precomputed test embeddings");
    add_common(dataset, o.common, false);

    auto* pca = app.add_subcommand("pca", "covariance spectrum and components needed per threshold");
    add_points_input(pca, o);
    pca->add_option("--threshold", o.thresholds, "explained-variance thresholds")->capture_default_str();
    add_common(pca, o.common, false);

    auto* mds = app.add_subcommand("mds", "classical multidimensional scaling");
    add_points_input(mds, o);
    mds->add_option("--k", o.k, "embedding dimension (default 2)");
    add_common(mds, o.common, false);

    auto* audit = app.add_subcommand("hypercube-audit", "check that cube vertices stay extreme, optionally after MDS");
    audit->add_option("--d", o.d, "cube dimension, 2..12")->required();
    audit->add_flag("--mds", o.mds, "also count points inside the 2-D MDS hull");
    add_common(audit, o.common, false);

    std::vector<const char*> argv{"hullscope"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }

    try {
        Sink sink(o.common, out);
        if (*membership) return cmd_membership(o, sink);
        if (*estimate) return cmd_estimate(o, sink);
        if (*sweep_cmd) return cmd_sweep(o, sink);
        if (*convex) return cmd_convex_position(o, sink);
        if (*analytic) return cmd_analytic(o, sink, "analytic");
        if (*jll) {
            if (o.n.has_value() == o.d.has_value()) throw InvalidInput("give exactly one of --n, --d");
            Options copy = o;
            copy.op = o.n ? "jll" : "jll-dilemma";
            return cmd_analytic(copy, sink, "jll");
        }
        if (*dataset) return cmd_dataset(o, sink);
        if (*pca) return cmd_pca(o, sink);
        if (*mds) return cmd_mds(o, sink);
        if (*audit) return cmd_hypercube_audit(o, sink);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

}  // namespace hullscope::cli
