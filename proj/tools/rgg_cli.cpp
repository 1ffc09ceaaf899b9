// Command-line surface over the shared-library C API. Every subcommand
// writes CSV/JSON artifacts with a reproducibility preamble (version, seed,
// spec) so a run can be repeated bit-for-bit.
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rgg/rgg.h"

namespace {

struct CliError {
    int code;
    std::string message;
};

void require_ok(rgg_status st, const std::string& what) {
    if (st != RGG_OK) throw CliError{static_cast<int>(st), what + ": " + rgg_last_error()};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{2, "cannot open " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_out(const std::string& path) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out) throw CliError{2, "cannot write " + path};
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Reproducibility preamble: comment lines, then the header row.
void preamble(std::ofstream& out, const std::string& schema, std::uint64_t seed,
              const std::string& spec_desc) {
    out << "# rgg " << rgg_version() << " schema=" << schema << "/1\n";
    out << "# seed=" << seed << "\n";
    if (!spec_desc.empty()) out << "# spec=" << spec_desc << "\n";
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return v;
}

struct SpecHandle {
    rgg_spec* ptr = nullptr;
    ~SpecHandle() { rgg_spec_free(ptr); }
};
struct DistHandle {
    rgg_dist* ptr = nullptr;
    ~DistHandle() { rgg_dist_free(ptr); }
};

std::string dist_json_arg(const std::string& inline_json, const std::string& file) {
    if (!file.empty()) return read_file(file);
    return inline_json;
}

// ---- exact-curve ----
void cmd_exact_curve(const std::string& geometry, double lo, double hi, int points,
                     const std::string& out_path, std::uint64_t seed) {
    auto out = open_out(out_path);
    preamble(out, "exact-curve", seed, geometry);
    out << "r0,p0,p1,p2,p3,entropy_bits,p_bar\n";
    for (const double r0 : linspace(lo, hi, points)) {
        double p[4], h, pbar;
        require_ok(rgg_exact_probabilities(geometry.c_str(), r0, p), "exact probabilities");
        require_ok(rgg_exact_entropy(geometry.c_str(), r0, &h), "exact entropy");
        require_ok(rgg_exact_pbar(geometry.c_str(), r0, &pbar), "exact p-bar");
        out << fmt(r0) << ',' << fmt(p[0]) << ',' << fmt(p[1]) << ',' << fmt(p[2]) << ','
            << fmt(p[3]) << ',' << fmt(h) << ',' << fmt(pbar) << '\n';
    }
}

// ---- entropy-mc ----
void cmd_entropy_mc(const std::string& spec_text, double lo, double hi, int points,
                    std::uint64_t L, std::uint64_t seed, const std::string& out_path) {
    SpecHandle spec;
    require_ok(rgg_spec_parse_json(spec_text.c_str(), &spec.ptr), "spec");
    const std::vector<double> grid = linspace(lo, hi, points);
    std::vector<double> h(points), esys(points), sd(points);
    require_ok(rgg_entropy_curve(spec.ptr, grid.data(), grid.size(), L, seed, h.data(),
                                 esys.data(), sd.data()),
               "entropy curve");
    auto out = open_out(out_path);
    preamble(out, "entropy-mc", seed, spec_text);
    out << "r0,entropy_bits,systematic_error,standard_error,L\n";
    for (int i = 0; i < points; ++i)
        out << fmt(grid[i]) << ',' << fmt(h[i]) << ',' << fmt(esys[i]) << ',' << fmt(sd[i]) << ','
            << L << '\n';
}

// ---- sample-counts ----
void cmd_sample_counts(const std::string& spec_text, std::uint64_t L, std::uint64_t seed,
                       const std::string& out_path) {
    SpecHandle spec;
    require_ok(rgg_spec_parse_json(spec_text.c_str(), &spec.ptr), "spec");
    uint64_t* counts = nullptr;
    size_t len = 0;
    require_ok(rgg_sample_counts(spec.ptr, L, seed, &counts, &len), "sample counts");
    auto out = open_out(out_path);
    preamble(out, "sample-counts", seed, spec_text);
    out << "graph_mask,count\n";
    for (size_t g = 0; g < len; ++g) out << g << ',' << counts[g] << '\n';
    rgg_buffer_free(counts);
}

// ---- covariance ----
void cmd_covariance(const std::string& geometry, const std::string& dist_json,
                    const std::string& out_path) {
    rgg_covariance cov;
    require_ok(rgg_covariance_model(geometry.c_str(), dist_json.c_str(), &cov), "covariance");
    auto out = open_out(out_path);
    out << "{\n"
        << "  \"geometry\": \"" << geometry << "\",\n"
        << "  \"mu\": " << fmt(cov.mu) << ",\n"
        << "  \"alpha\": " << fmt(cov.alpha) << ",\n"
        << "  \"beta\": " << fmt(cov.beta) << ",\n"
        << "  \"gamma\": " << fmt(cov.gamma) << ",\n"
        << "  \"kurtosis\": " << fmt(cov.kurtosis) << ",\n"
        << "  \"converges_to_er\": " << (cov.converges_to_er ? "true" : "false") << "\n"
        << "}\n";
}

// ---- limit-curve ----
void cmd_limit_curve(const std::string& geometry, const std::string& dist_json, int n, double lo,
                     double hi, int points, std::uint64_t samples, std::uint64_t seed,
                     const std::string& out_path) {
    const std::vector<double> grid = linspace(lo, hi, points);
    std::vector<double> h(points), pbar(points);
    if (n <= 7) {
        require_ok(rgg_limit_entropy_curve(geometry.c_str(), dist_json.c_str(), n, grid.data(),
                                           grid.size(), samples, seed, h.data(), pbar.data()),
                   "limit curve");
    } else {
        rgg_covariance cov;
        require_ok(rgg_covariance_model(geometry.c_str(), dist_json.c_str(), &cov), "covariance");
        for (int i = 0; i < points; ++i) {
            require_ok(rgg_limit_entropy_large_n(geometry.c_str(), dist_json.c_str(), n, grid[i],
                                                 samples / 1000 + 200, 4000, seed + i, &h[i]),
                       "limit entropy");
            pbar[i] = 0.5 * std::erfc(-grid[i] / std::sqrt(2.0 * cov.alpha));
        }
    }
    auto out = open_out(out_path);
    preamble(out, "limit-curve", seed, geometry + " n=" + std::to_string(n) + " " + dist_json);
    out << "t,entropy_bits,p_bar\n";
    for (int i = 0; i < points; ++i)
        out << fmt(grid[i]) << ',' << fmt(h[i]) << ',' << fmt(pbar[i]) << '\n';
}

// ---- edgeworth-curve ----
void cmd_edgeworth_curve(const std::string& geometry, const std::string& dist_json, int n,
                         double t, const std::vector<int>& dims, std::uint64_t samples,
                         std::uint64_t seed, const std::string& out_path,
                         const std::string& fit_path) {
    std::vector<double> h(dims.size()), clamped(dims.size());
    double abc[3], se_a[1];
    require_ok(rgg_edgeworth_curve(geometry.c_str(), dist_json.c_str(), n, t, dims.data(),
                                   dims.size(), samples, seed, h.data(), clamped.data(), abc,
                                   se_a),
               "edgeworth curve");
    auto out = open_out(out_path);
    preamble(out, "edgeworth-curve", seed,
             geometry + " n=" + std::to_string(n) + " t=" + fmt(t));
    out << "d,entropy_bits,clamped_mass\n";
    for (std::size_t i = 0; i < dims.size(); ++i)
        out << dims[i] << ',' << fmt(h[i]) << ',' << fmt(clamped[i]) << '\n';
    if (!fit_path.empty()) {
        auto fit = open_out(fit_path);
        fit << "{ \"a\": " << fmt(abc[0]) << ", \"b\": " << fmt(abc[1]) << ", \"c\": "
            << fmt(abc[2]) << ", \"se_a\": " << fmt(se_a[0]) << " }\n";
    }
}

// ---- optimize ----
void cmd_optimize(const std::string& spec_text, std::uint64_t L, int grid_size, std::uint64_t seed,
                  const std::string& out_path, const std::string& grid_path) {
    SpecHandle spec;
    require_ok(rgg_spec_parse_json(spec_text.c_str(), &spec.ptr), "spec");
    rgg_optimize_result res;
    std::vector<double> gr(grid_size), gh(grid_size);
    require_ok(rgg_optimize_r0(spec.ptr, L, grid_size, seed, &res, gr.data(), gh.data()),
               "optimize");
    auto out = open_out(out_path);
    out << "{\n"
        << "  \"r0_hat\": " << fmt(res.r0_hat) << ",\n"
        << "  \"se_r0\": " << fmt(res.se_r0) << ",\n"
        << "  \"H_max\": " << fmt(res.entropy_max) << ",\n"
        << "  \"se_H\": " << fmt(res.se_entropy) << ",\n"
        << "  \"p_bar_max\": " << fmt(res.p_bar_max) << ",\n"
        << "  \"fit\": { \"a\": " << fmt(res.fit_a) << ", \"b\": " << fmt(res.fit_b)
        << ", \"c\": " << fmt(res.fit_c) << " },\n"
        << "  \"condition_number\": " << fmt(res.condition_number) << ",\n"
        << "  \"rebracketed\": " << (res.rebracketed ? "true" : "false") << ",\n"
        << "  \"seed\": " << seed << ",\n"
        << "  \"L\": " << L << ",\n"
        << "  \"version\": \"" << rgg_version() << "\"\n"
        << "}\n";
    if (!grid_path.empty()) {
        auto gout = open_out(grid_path);
        preamble(gout, "optimize-grid", seed, spec_text);
        gout << "r0,entropy_bits\n";
        for (int i = 0; i < grid_size; ++i) gout << fmt(gr[i]) << ',' << fmt(gh[i]) << '\n';
    }
}

std::string make_spec(const std::string& geometry, int dim, int n, const std::string& dist,
                      const std::string& connection) {
    std::ostringstream ss;
    ss << R"({"geometry":{"kind":")" << geometry << R"(","dimension":)" << dim << R"(},"n":)" << n
       << R"(,"distribution":)" << dist << R"(,"connection":)" << connection << "}";
    return ss.str();
}

// ---- table3 ----
void cmd_table3(std::uint64_t L, int grid_size, std::uint64_t seed, const std::string& out_path) {
    auto out = open_out(out_path);
    preamble(out, "table3", seed, "uniform nodes, n=3");
    out << "geometry,dimension,connection,eta,r0_hat,se_r0,entropy_max,se_entropy,p_bar_max\n";
    int row = 0;
    for (const auto& [geom, dim] : std::vector<std::pair<std::string, int>>{
             {"cube", 1}, {"torus", 1}, {"cube", 2}, {"torus", 2}, {"cube", 3}, {"torus", 3}}) {
        for (int eta = 1; eta <= 7; ++eta) {
            const bool hard = eta == 7;
            const std::string conn =
                hard ? R"({"kind":"hard","r0":0.1})"
                     : R"({"kind":"rayleigh","r0":0.1,"eta":)" + std::to_string(eta) + "}";
            const std::string spec_text =
                make_spec(geom, dim, 3, R"({"kind":"uniform"})", conn);
            SpecHandle spec;
            require_ok(rgg_spec_parse_json(spec_text.c_str(), &spec.ptr), "spec");
            rgg_optimize_result res;
            require_ok(rgg_optimize_r0(spec.ptr, L, grid_size, seed + 31 * row, &res, nullptr,
                                       nullptr),
                       "optimize " + geom + std::to_string(dim));
            out << geom << ',' << dim << ',' << (hard ? "hard" : "rayleigh") << ','
                << (hard ? "" : std::to_string(eta)) << ',' << fmt(res.r0_hat) << ','
                << fmt(res.se_r0) << ',' << fmt(res.entropy_max) << ',' << fmt(res.se_entropy)
                << ',' << fmt(res.p_bar_max) << '\n';
            out.flush();
            ++row;
        }
    }
}

// ---- figures ----
void emit_edge_marginals(const std::string& geometry, const std::string& dist_json,
                         const std::string& label, int n, std::uint64_t samples,
                         std::uint64_t seed, const std::string& dir) {
    DistHandle dist;
    require_ok(
        rgg_limit_distribution(geometry.c_str(), dist_json.c_str(), n, 0.0, samples, seed, 0,
                               &dist.ptr),
        "limit distribution");
    const int m = n * (n - 1) / 2;
    std::vector<double> un(m + 1), no(m + 1);
    require_ok(rgg_dist_edge_marginals(dist.ptr, un.data(), no.data()), "edge marginals");
    auto out = open_out(dir + "/edge_marginals_" + geometry + "_" + label + "_n" +
                        std::to_string(n) + ".csv");
    preamble(out, "edge-marginals", seed, geometry + " " + label + " n=" + std::to_string(n));
    out << "k,unnormalised,normalised\n";
    for (int k = 0; k <= m; ++k)
        out << k << ',' << fmt(un[k]) << ',' << fmt(no[k]) << '\n';
}

void cmd_figures(std::uint64_t samples, std::uint64_t L, std::uint64_t seed,
                 const std::string& dir) {
    const std::string uniform = R"({"kind":"uniform"})";
    const std::string tgauss = R"({"kind":"truncated_gaussian"})";

    cmd_exact_curve("torus1d", 0.0, 0.5, 201, dir + "/exact_torus.csv", seed);
    cmd_exact_curve("line1d", 0.0, 1.0, 201, dir + "/exact_line.csv", seed);

    for (const auto& [dist, label] : {std::pair{uniform, "uniform"}, {tgauss, "tgauss"}}) {
        for (int n : {3, 7}) {
            emit_edge_marginals("cube", dist, label, n, samples, seed + n, dir);
            emit_edge_marginals("torus", dist, label, n, samples, seed + n, dir);
        }
        for (int n : {3, 11})
            cmd_limit_curve("cube", dist, n, -1.0, 1.0, 21, samples, seed + n,
                            dir + "/limit_entropy_cube_" + std::string(label) + "_n" +
                                std::to_string(n) + ".csv");
    }

    // entropy vs dimension for n = 4: gaussian, edgeworth, simulated + fit
    const std::vector<int> dims = {15, 20, 25, 35, 50, 75, 100, 150, 250};
    for (const std::string geometry : {"cube", "torus"}) {
        std::vector<double> he(dims.size()), clamped(dims.size());
        double abc[3], se_a[1];
        require_ok(rgg_edgeworth_curve(geometry.c_str(), uniform.c_str(), 4, 0.0, dims.data(),
                                       dims.size(), samples, seed, he.data(), clamped.data(), abc,
                                       se_a),
                   "edgeworth curve");
        DistHandle limit;
        require_ok(rgg_limit_distribution(geometry.c_str(), uniform.c_str(), 4, 0.0, samples,
                                          seed, 0, &limit.ptr),
                   "limit distribution");
        const double h_gauss = rgg_dist_entropy_bits(limit.ptr);
        auto out = open_out(dir + "/entropy_vs_dimension_" + geometry + "_n4.csv");
        preamble(out, "edgeworth-figure", seed, geometry + " uniform n=4 t=0");
        out << "d,gaussian_entropy,edgeworth_entropy,simulated_entropy,fit_a,fit_b,fit_c\n";
        for (std::size_t i = 0; i < dims.size(); ++i) {
            double r0 = 0.0;
            require_ok(rgg_r0_for_t(geometry.c_str(), uniform.c_str(), 0.0, dims[i], &r0),
                       "r0 for t");
            const std::string spec_text = make_spec(
                geometry, dims[i], 4, uniform,
                std::string(R"({"kind":"hard","r0":)") + fmt(r0) + "}");
            SpecHandle spec;
            require_ok(rgg_spec_parse_json(spec_text.c_str(), &spec.ptr), "spec");
            DistHandle sim;
            require_ok(rgg_mc_distribution(spec.ptr, L, seed + 100 + i, &sim.ptr), "simulation");
            out << dims[i] << ',' << fmt(h_gauss) << ',' << fmt(he[i]) << ','
                << fmt(rgg_dist_entropy_bits(sim.ptr)) << ',' << fmt(abc[0]) << ',' << fmt(abc[1])
                << ',' << fmt(abc[2]) << '\n';
            out.flush();
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random geometric graph ensemble entropy toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    int threads = 0;
    app.add_option("--seed", seed, "global RNG seed")->capture_default_str();
    app.add_option("--threads", threads, "worker thread cap (0 = auto)")->capture_default_str();

    // exact-curve
    auto* exact = app.add_subcommand("exact-curve", "closed-form n=3, d=1 curves");
    std::string ex_geom = "torus1d", ex_out = "exact_curve.csv";
    double ex_lo = 0.0, ex_hi = 0.5;
    int ex_points = 101;
    exact->add_option("--geometry", ex_geom, "torus1d | line1d")->capture_default_str();
    exact->add_option("--r0-min", ex_lo)->capture_default_str();
    exact->add_option("--r0-max", ex_hi)->capture_default_str();
    exact->add_option("--points", ex_points)->capture_default_str();
    exact->add_option("--out", ex_out)->capture_default_str();

    // entropy-mc
    auto* mc = app.add_subcommand("entropy-mc", "Monte-Carlo entropy curve over r0");
    std::string mc_spec_file, mc_spec_inline, mc_out = "entropy_mc.csv";
    double mc_lo = 0.05, mc_hi = 0.45;
    int mc_points = 21;
    std::uint64_t mc_L = 1'000'000;
    mc->add_option("--spec", mc_spec_file, "ensemble spec JSON file");
    mc->add_option("--spec-json", mc_spec_inline, "inline ensemble spec JSON");
    mc->add_option("--r0-min", mc_lo)->capture_default_str();
    mc->add_option("--r0-max", mc_hi)->capture_default_str();
    mc->add_option("--points", mc_points)->capture_default_str();
    mc->add_option("--samples", mc_L, "graphs per grid point")->capture_default_str();
    mc->add_option("--out", mc_out)->capture_default_str();
    bool mc_paper = false;
    mc->add_flag("--paper-scale", mc_paper, "use L = 1e8 graphs per grid point");

    // optimize
    auto* opt = app.add_subcommand("optimize", "entropy-maximizing connection range");
    std::string opt_spec_file, opt_spec_inline, opt_out = "optimize.json", opt_grid;
    std::uint64_t opt_L = 1'000'000;
    int opt_N = 100;
    bool opt_paper = false;
    opt->add_option("--spec", opt_spec_file, "ensemble spec JSON file");
    opt->add_option("--spec-json", opt_spec_inline, "inline ensemble spec JSON");
    opt->add_option("--grid-size", opt_N)->capture_default_str();
    opt->add_option("--samples", opt_L)->capture_default_str();
    opt->add_option("--out", opt_out)->capture_default_str();
    opt->add_option("--grid-csv", opt_grid, "also write the refined grid");
    opt->add_flag("--paper-scale", opt_paper, "use L = 1e8 samples per grid point");

    // table3
    auto* t3 = app.add_subcommand("table3", "maximum entropy across geometries and connections");
    std::string t3_out = "table3.csv";
    std::uint64_t t3_L = 1'000'000;
    int t3_N = 100;
    bool t3_paper = false;
    t3->add_option("--samples", t3_L)->capture_default_str();
    t3->add_option("--grid-size", t3_N)->capture_default_str();
    t3->add_option("--out", t3_out)->capture_default_str();
    t3->add_flag("--paper-scale", t3_paper, "use L = 1e8 samples per grid point");

    // sample-counts
    auto* sc = app.add_subcommand("sample-counts", "raw graph count vector as CSV");
    std::string sc_spec_file, sc_spec_inline, sc_out = "counts.csv";
    std::uint64_t sc_L = 1'000'000;
    sc->add_option("--spec", sc_spec_file, "ensemble spec JSON file");
    sc->add_option("--spec-json", sc_spec_inline, "inline ensemble spec JSON");
    sc->add_option("--samples", sc_L)->capture_default_str();
    sc->add_option("--out", sc_out)->capture_default_str();

    // covariance
    auto* cov = app.add_subcommand("covariance", "d->infinity covariance model constants");
    std::string cov_geom = "torus", cov_dist = R"({"kind":"uniform"})", cov_dist_file,
                cov_out = "covariance.json";
    cov->add_option("--geometry", cov_geom, "cube | torus")->capture_default_str();
    cov->add_option("--dist", cov_dist, "coordinate distribution JSON")->capture_default_str();
    cov->add_option("--dist-file", cov_dist_file, "coordinate distribution JSON file");
    cov->add_option("--out", cov_out)->capture_default_str();

    // limit-curve
    auto* lc = app.add_subcommand("limit-curve", "limit entropy over the normalised range t");
    std::string lc_geom = "cube", lc_dist = R"({"kind":"uniform"})", lc_dist_file,
                lc_out = "limit_curve.csv";
    int lc_n = 3, lc_points = 21;
    double lc_lo = -1.0, lc_hi = 1.0;
    std::uint64_t lc_M = 1'000'000;
    bool lc_paper = false;
    lc->add_option("--geometry", lc_geom)->capture_default_str();
    lc->add_option("--dist", lc_dist)->capture_default_str();
    lc->add_option("--dist-file", lc_dist_file);
    lc->add_option("--n", lc_n)->capture_default_str();
    lc->add_option("--t-min", lc_lo)->capture_default_str();
    lc->add_option("--t-max", lc_hi)->capture_default_str();
    lc->add_option("--points", lc_points)->capture_default_str();
    lc->add_option("--samples", lc_M)->capture_default_str();
    lc->add_option("--out", lc_out)->capture_default_str();
    lc->add_flag("--paper-scale", lc_paper, "use M = 1e7 draws");

    // edgeworth-curve
    auto* ec = app.add_subcommand("edgeworth-curve", "finite-d Edgeworth entropy over d");
    std::string ec_geom = "cube", ec_dist = R"({"kind":"uniform"})", ec_out = "edgeworth.csv",
                ec_fit = "edgeworth_fit.json";
    int ec_n = 4;
    double ec_t = 0.0;
    std::vector<int> ec_dims = {15, 20, 25, 35, 50, 75, 100, 150, 250};
    std::uint64_t ec_M = 1'000'000;
    bool ec_paper = false;
    ec->add_option("--geometry", ec_geom)->capture_default_str();
    ec->add_option("--dist", ec_dist)->capture_default_str();
    ec->add_option("--n", ec_n)->capture_default_str();
    ec->add_option("--t", ec_t)->capture_default_str();
    ec->add_option("--dims", ec_dims, "dimension grid")->delimiter(',');
    ec->add_option("--samples", ec_M)->capture_default_str();
    ec->add_option("--out", ec_out)->capture_default_str();
    ec->add_option("--fit-out", ec_fit)->capture_default_str();
    ec->add_flag("--paper-scale", ec_paper, "use M = 1e7 draws");

    // figures
    auto* fig = app.add_subcommand("figures", "plot-ready CSV set for the study figures");
    std::string fig_dir = "figures";
    std::uint64_t fig_M = 1'000'000, fig_L = 1'000'000;
    bool fig_paper = false;
    fig->add_option("--out-dir", fig_dir)->capture_default_str();
    fig->add_option("--samples", fig_M, "Gaussian/Edgeworth draws")->capture_default_str();
    fig->add_option("--sim-samples", fig_L, "simulation graphs per dimension")
        ->capture_default_str();
    fig->add_flag("--paper-scale", fig_paper, "raise budgets to the published scale");

    CLI11_PARSE(app, argc, argv);

    try {
        rgg_set_threads(threads);
        if (exact->parsed()) {
            cmd_exact_curve(ex_geom, ex_lo, ex_hi, ex_points, ex_out, seed);
        } else if (mc->parsed()) {
            if (mc_spec_file.empty() && mc_spec_inline.empty())
                throw CliError{2, "entropy-mc needs --spec or --spec-json"};
            cmd_entropy_mc(mc_spec_file.empty() ? mc_spec_inline : read_file(mc_spec_file), mc_lo,
                           mc_hi, mc_points, mc_paper ? 100'000'000 : mc_L, seed, mc_out);
        } else if (opt->parsed()) {
            if (opt_spec_file.empty() && opt_spec_inline.empty())
                throw CliError{2, "optimize needs --spec or --spec-json"};
            cmd_optimize(opt_spec_file.empty() ? opt_spec_inline : read_file(opt_spec_file),
                         opt_paper ? 100'000'000 : opt_L, opt_N, seed, opt_out, opt_grid);
        } else if (sc->parsed()) {
            if (sc_spec_file.empty() && sc_spec_inline.empty())
                throw CliError{2, "sample-counts needs --spec or --spec-json"};
            cmd_sample_counts(sc_spec_file.empty() ? sc_spec_inline : read_file(sc_spec_file),
                              sc_L, seed, sc_out);
        } else if (t3->parsed()) {
            cmd_table3(t3_paper ? 100'000'000 : t3_L, t3_N, seed, t3_out);
        } else if (cov->parsed()) {
            cmd_covariance(cov_geom, dist_json_arg(cov_dist, cov_dist_file), cov_out);
        } else if (lc->parsed()) {
            cmd_limit_curve(lc_geom, dist_json_arg(lc_dist, lc_dist_file), lc_n, lc_lo, lc_hi,
                            lc_points, lc_paper ? 10'000'000 : lc_M, seed, lc_out);
        } else if (ec->parsed()) {
            cmd_edgeworth_curve(ec_geom, ec_dist, ec_n, ec_t, ec_dims,
                                ec_paper ? 10'000'000 : ec_M, seed, ec_out, ec_fit);
        } else if (fig->parsed()) {
            cmd_figures(fig_paper ? 10'000'000 : fig_M, fig_paper ? 100'000'000 : fig_L, seed,
                        fig_dir);
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
