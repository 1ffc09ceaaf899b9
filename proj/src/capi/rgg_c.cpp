#include "rgg/rgg.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "edgeworth.hpp"
#include "exact_small.hpp"
#include "graphs.hpp"
#include "limit.hpp"
#include "mc_entropy.hpp"
#include "optimize.hpp"
#include "parallel.hpp"
#include "sampling.hpp"
#include "spec_io.hpp"

struct rgg_spec {
    rgg::EnsembleSpec spec;
};
struct rgg_dist {
    rgg::GraphDistribution dist;
};

namespace {

thread_local std::string t_error;

void set_error(const std::string& msg) { t_error = msg; }

// Maps C++ failures onto the status codes: spec/argument errors -> 2,
// numeric errors -> 3, anything else -> 4.
template <class Fn>
rgg_status guarded(Fn&& fn) {
    try {
        fn();
        return RGG_OK;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return RGG_ERR_SPEC;
    } catch (const std::domain_error& e) {
        set_error(e.what());
        return RGG_ERR_SPEC;
    } catch (const std::runtime_error& e) {
        set_error(e.what());
        return RGG_ERR_NUMERIC;
    } catch (const std::exception& e) {
        set_error(e.what());
        return RGG_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return RGG_ERR_INTERNAL;
    }
}

rgg::ExactGeometry exact_geometry(const char* name) {
    const std::string s = name ? name : "";
    if (s == "torus1d") return rgg::ExactGeometry::Torus1D;
    if (s == "line1d") return rgg::ExactGeometry::Line1D;
    throw std::invalid_argument("exact geometry must be \"torus1d\" or \"line1d\"");
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

rgg::CovarianceModel model_from(const char* geometry, const char* dist_json) {
    const rgg::GeometryKind kind = rgg::geometry_kind_from_name(geometry ? geometry : "");
    const rgg::CoordinateDistribution dist =
        rgg::distribution_from_json(dist_json ? dist_json : "");
    return rgg::covariance_model(kind, dist);
}

}  // namespace

extern "C" {

const char* rgg_version(void) { return "0.1.0"; }

const char* rgg_last_error(void) { return t_error.c_str(); }

void rgg_set_threads(int n) { rgg::set_thread_count(n); }

void rgg_string_free(char* s) { delete[] s; }
void rgg_buffer_free(void* p) { ::operator delete[](p); }

rgg_status rgg_spec_parse_json(const char* json_text, rgg_spec** out) {
    return guarded([&] {
        if (!json_text || !out) throw std::invalid_argument("null argument");
        *out = new rgg_spec{rgg::spec_from_json(json_text)};
    });
}

rgg_status rgg_spec_to_json(const rgg_spec* spec, char** json_out) {
    return guarded([&] {
        if (!spec || !json_out) throw std::invalid_argument("null argument");
        *json_out = dup_string(rgg::spec_to_json(spec->spec));
    });
}

rgg_status rgg_spec_with_r0(const rgg_spec* spec, double r0, rgg_spec** out) {
    return guarded([&] {
        if (!spec || !out) throw std::invalid_argument("null argument");
        *out = new rgg_spec{spec->spec.with_r0(r0)};
    });
}

void rgg_spec_free(rgg_spec* spec) { delete spec; }

void rgg_dist_free(rgg_dist* dist) { delete dist; }

int rgg_dist_n(const rgg_dist* dist) { return dist ? dist->dist.n : 0; }

const char* rgg_dist_method(const rgg_dist* dist) {
    return dist ? rgg::method_name(dist->dist.method) : "";
}

double rgg_dist_entropy_bits(const rgg_dist* dist) { return dist ? dist->dist.entropy_bits : 0.0; }

rgg_status rgg_dist_probs(const rgg_dist* dist, const double** probs, size_t* count) {
    return guarded([&] {
        if (!dist || !probs || !count) throw std::invalid_argument("null argument");
        *probs = dist->dist.probs.data();
        *count = dist->dist.probs.size();
    });
}

rgg_status rgg_dist_edge_marginals(const rgg_dist* dist, double* unnormalised, double* normalised) {
    return guarded([&] {
        if (!dist || !unnormalised || !normalised) throw std::invalid_argument("null argument");
        const rgg::EdgeCountMarginals m = rgg::edge_count_marginals(dist->dist);
        for (std::size_t k = 0; k < m.unnormalised.size(); ++k) {
            unnormalised[k] = m.unnormalised[k];
            normalised[k] = m.normalised[k];
        }
    });
}

rgg_status rgg_dist_error(const rgg_dist* dist, double* systematic_bits, double* standard_bits) {
    return guarded([&] {
        if (!dist || !systematic_bits || !standard_bits)
            throw std::invalid_argument("null argument");
        if (!dist->dist.error) throw std::invalid_argument("distribution carries no error info");
        *systematic_bits = dist->dist.error->systematic;
        *standard_bits = dist->dist.error->standard;
    });
}

double rgg_dist_clamped_mass(const rgg_dist* dist) { return dist ? dist->dist.clamped_mass : 0.0; }

rgg_status rgg_dist_to_json(const rgg_dist* dist, char** json_out) {
    return guarded([&] {
        if (!dist || !json_out) throw std::invalid_argument("null argument");
        *json_out = dup_string(rgg::distribution_to_json(dist->dist));
    });
}

rgg_status rgg_sample_counts(const rgg_spec* spec, uint64_t L, uint64_t seed, uint64_t** counts,
                             size_t* count_len) {
    return guarded([&] {
        if (!spec || !counts || !count_len) throw std::invalid_argument("null argument");
        const std::vector<std::uint64_t> c = rgg::sample_counts(spec->spec, L, seed);
        auto* buf = static_cast<std::uint64_t*>(::operator new[](c.size() * sizeof(std::uint64_t)));
        std::memcpy(buf, c.data(), c.size() * sizeof(std::uint64_t));
        *counts = buf;
        *count_len = c.size();
    });
}

rgg_status rgg_mc_distribution(const rgg_spec* spec, uint64_t L, uint64_t seed, rgg_dist** out) {
    return guarded([&] {
        if (!spec || !out) throw std::invalid_argument("null argument");
        const std::vector<std::uint64_t> c = rgg::sample_counts(spec->spec, L, seed);
        const rgg::EntropyEstimate est = rgg::estimate_entropy(c, L);
        rgg::GraphDistribution d;
        d.n = spec->spec.n;
        d.method = rgg::DistributionMethod::MonteCarlo;
        d.probs.resize(c.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            d.probs[i] = static_cast<double>(c[i]) / static_cast<double>(L);
        d.entropy_bits = est.entropy_bits;
        d.error = rgg::ErrorInfo{est.systematic_error_bits(), est.standard_error_bits()};
        *out = new rgg_dist{std::move(d)};
    });
}

rgg_status rgg_estimate_entropy(const uint64_t* counts, size_t count_len, uint64_t L,
                                double* entropy_bits, double* systematic_bits,
                                double* standard_bits) {
    return guarded([&] {
        if (!counts || !entropy_bits || !systematic_bits || !standard_bits)
            throw std::invalid_argument("null argument");
        const rgg::EntropyEstimate est =
            rgg::estimate_entropy(std::span<const std::uint64_t>(counts, count_len), L);
        *entropy_bits = est.entropy_bits;
        *systematic_bits = est.systematic_error_bits();
        *standard_bits = est.standard_error_bits();
    });
}

rgg_status rgg_entropy_curve(const rgg_spec* spec, const double* r0_grid, size_t n_r0, uint64_t L,
                             uint64_t seed, double* entropy_bits, double* systematic_bits,
                             double* standard_bits) {
    return guarded([&] {
        if (!spec || !r0_grid || !entropy_bits) throw std::invalid_argument("null argument");
        const std::vector<double> grid(r0_grid, r0_grid + n_r0);
        const std::vector<rgg::CurvePoint> curve = rgg::entropy_curve(spec->spec, grid, L, seed);
        for (std::size_t i = 0; i < curve.size(); ++i) {
            entropy_bits[i] = curve[i].estimate.entropy_bits;
            if (systematic_bits) systematic_bits[i] = curve[i].estimate.systematic_error_bits();
            if (standard_bits) standard_bits[i] = curve[i].estimate.standard_error_bits();
        }
    });
}

rgg_status rgg_exact_probabilities(const char* geometry, double r0, double p_out[4]) {
    return guarded([&] {
        if (!p_out) throw std::invalid_argument("null argument");
        const rgg::ExactPieces e = rgg::exact_probabilities(exact_geometry(geometry), r0);
        p_out[0] = e.p0;
        p_out[1] = e.p1;
        p_out[2] = e.p2;
        p_out[3] = e.p3;
    });
}

rgg_status rgg_exact_entropy(const char* geometry, double r0, double* entropy_bits) {
    return guarded([&] {
        if (!entropy_bits) throw std::invalid_argument("null argument");
        *entropy_bits = rgg::exact_entropy(exact_geometry(geometry), r0);
    });
}

rgg_status rgg_exact_pbar(const char* geometry, double r0, double* p_bar) {
    return guarded([&] {
        if (!p_bar) throw std::invalid_argument("null argument");
        *p_bar = rgg::exact_pbar(exact_geometry(geometry), r0);
    });
}

rgg_status rgg_exact_maximizer(const char* geometry, double* r0_hat, double* entropy_max,
                               double* p_bar_max) {
    return guarded([&] {
        if (!r0_hat || !entropy_max || !p_bar_max) throw std::invalid_argument("null argument");
        const rgg::ExactMaximizer m = rgg::exact_maximizer(exact_geometry(geometry));
        *r0_hat = m.r0_hat;
        *entropy_max = m.entropy_max;
        *p_bar_max = m.p_bar_max;
    });
}

rgg_status rgg_covariance_model(const char* geometry, const char* dist_json, rgg_covariance* out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("null argument");
        const rgg::GeometryKind kind = rgg::geometry_kind_from_name(geometry ? geometry : "");
        const rgg::CoordinateDistribution dist =
            rgg::distribution_from_json(dist_json ? dist_json : "");
        const rgg::CovarianceModel m = rgg::covariance_model(kind, dist);
        out->mu = m.mu;
        out->alpha = m.alpha;
        out->beta = m.beta;
        out->gamma = m.gamma;
        out->kurtosis = rgg::kurtosis(dist);
        out->converges_to_er = std::fabs(m.beta) < 1e-9 ? 1 : 0;
    });
}

rgg_status rgg_kurtosis(const char* dist_json, double* out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("null argument");
        *out = rgg::kurtosis(rgg::distribution_from_json(dist_json ? dist_json : ""));
    });
}

rgg_status rgg_normalised_range(const char* geometry, const char* dist_json, double r0, int d,
                                double* t_out) {
    return guarded([&] {
        if (!t_out) throw std::invalid_argument("null argument");
        *t_out = rgg::normalised_range(model_from(geometry, dist_json), r0, d);
    });
}

rgg_status rgg_r0_for_t(const char* geometry, const char* dist_json, double t, int d,
                        double* r0_out) {
    return guarded([&] {
        if (!r0_out) throw std::invalid_argument("null argument");
        *r0_out = rgg::r0_for_t(model_from(geometry, dist_json), t, d);
    });
}

rgg_status rgg_limit_distribution(const char* geometry, const char* dist_json, int n, double t,
                                  uint64_t samples, uint64_t seed, int force_mc, rgg_dist** out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("null argument");
        rgg::LimitOptions opt;
        opt.samples = samples;
        opt.seed = seed;
        opt.force_mc = force_mc != 0;
        *out = new rgg_dist{
            rgg::gaussian_limit_distribution(model_from(geometry, dist_json), n, t, opt)};
    });
}

rgg_status rgg_limit_entropy_curve(const char* geometry, const char* dist_json, int n,
                                   const double* t_grid, size_t n_t, uint64_t samples,
                                   uint64_t seed, double* entropy_bits, double* p_bar) {
    return guarded([&] {
        if (!t_grid || !entropy_bits) throw std::invalid_argument("null argument");
        rgg::LimitOptions opt;
        opt.samples = samples;
        opt.seed = seed;
        const std::vector<double> grid(t_grid, t_grid + n_t);
        const auto curve =
            rgg::limit_entropy_curve(model_from(geometry, dist_json), n, grid, opt);
        for (std::size_t i = 0; i < curve.size(); ++i) {
            entropy_bits[i] = curve[i].entropy_bits;
            if (p_bar) p_bar[i] = curve[i].p_bar;
        }
    });
}

rgg_status rgg_soft_limit_probability(const char* geometry, const char* dist_json, double eta,
                                      double k_scale, double* p_k) {
    return guarded([&] {
        if (!p_k) throw std::invalid_argument("null argument");
        *p_k = rgg::soft_limit_probability(eta, k_scale, model_from(geometry, dist_json));
    });
}

rgg_status rgg_limit_entropy_large_n(const char* geometry, const char* dist_json, int n, double t,
                                     uint64_t graph_samples, uint64_t inner_samples, uint64_t seed,
                                     double* entropy_bits) {
    return guarded([&] {
        if (!entropy_bits) throw std::invalid_argument("null argument");
        *entropy_bits = rgg::limit_entropy_large_n(model_from(geometry, dist_json), n, t,
                                                   graph_samples, inner_samples, seed);
    });
}

rgg_status rgg_third_moments(const char* geometry, const char* dist_json, rgg_moments* out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("null argument");
        const rgg::GeometryKind kind = rgg::geometry_kind_from_name(geometry ? geometry : "");
        const rgg::CoordinateDistribution dist =
            rgg::distribution_from_json(dist_json ? dist_json : "");
        const rgg::ThirdMoments tm = rgg::third_moments(kind, dist);
        out->e1 = tm.e1;
        out->e2 = tm.e2;
        out->e3 = tm.e3;
        out->e4 = tm.e4;
        out->e5 = tm.e5;
        out->e6 = tm.e6;
        out->e7 = tm.e7;
        out->e8 = tm.e8;
    });
}

rgg_status rgg_edgeworth_distribution(const char* geometry, const char* dist_json, int n, double t,
                                      int d, uint64_t samples, uint64_t seed, rgg_dist** out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("null argument");
        const rgg::GeometryKind kind = rgg::geometry_kind_from_name(geometry ? geometry : "");
        const rgg::CoordinateDistribution dist =
            rgg::distribution_from_json(dist_json ? dist_json : "");
        const rgg::EdgeworthModel model = rgg::make_edgeworth_model(kind, dist, n);
        *out = new rgg_dist{rgg::edgeworth_distribution(model, t, d, samples, seed)};
    });
}

rgg_status rgg_edgeworth_curve(const char* geometry, const char* dist_json, int n, double t,
                               const int* d_grid, size_t n_d, uint64_t samples, uint64_t seed,
                               double* entropy_bits, double* clamped_mass, double fit_abc[3],
                               double fit_se_a[1]) {
    return guarded([&] {
        if (!d_grid || !entropy_bits) throw std::invalid_argument("null argument");
        const rgg::GeometryKind kind = rgg::geometry_kind_from_name(geometry ? geometry : "");
        const rgg::CoordinateDistribution dist =
            rgg::distribution_from_json(dist_json ? dist_json : "");
        const std::vector<int> grid(d_grid, d_grid + n_d);
        const auto [pts, fit] =
            rgg::entropy_vs_dimension(kind, dist, n, t, grid, samples, seed);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            entropy_bits[i] = pts[i].entropy_bits;
            if (clamped_mass) clamped_mass[i] = pts[i].clamped_mass;
        }
        if (fit_abc) {
            fit_abc[0] = fit.a;
            fit_abc[1] = fit.b;
            fit_abc[2] = fit.c;
        }
        if (fit_se_a) fit_se_a[0] = fit.se_a;
    });
}

rgg_status rgg_optimize_r0(const rgg_spec* spec, uint64_t L, int grid_size, uint64_t seed,
                           rgg_optimize_result* out, double* grid_r0, double* grid_entropy) {
    return guarded([&] {
        if (!spec || !out) throw std::invalid_argument("null argument");
        const rgg::OptimizeResult r = rgg::optimize_r0(spec->spec, L, grid_size, seed);
        out->r0_hat = r.r0_hat;
        out->se_r0 = r.se_r0;
        out->entropy_max = r.h_max;
        out->se_entropy = r.se_h;
        out->p_bar_max = r.p_bar_max;
        out->fit_a = r.fit.a_tilde;
        out->fit_b = r.fit.b_tilde;
        out->fit_c = r.fit.c_tilde;
        out->condition_number = r.fit.condition_number;
        out->rebracketed = r.rebracketed ? 1 : 0;
        if (grid_r0 && grid_entropy) {
            for (std::size_t i = 0; i < r.grid.size() && i < static_cast<std::size_t>(grid_size);
                 ++i) {
                grid_r0[i] = r.grid[i].r0;
                grid_entropy[i] = r.grid[i].estimate.entropy_bits;
            }
        }
    });
}

}  // extern "C"
