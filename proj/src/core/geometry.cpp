#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "quadrature.hpp"

namespace rgg {

namespace {

constexpr int kGridPoints = 4097;  // 4096 cells over [0,1]
constexpr int kCells = kGridPoints - 1;
constexpr double kH = 1.0 / kCells;

// Fritsch-Carlson monotonicity-limited slopes for cubic Hermite data on a
// uniform grid with spacing h.
std::vector<double> fc_slopes(const std::vector<double>& y, double h) {
    const std::size_t n = y.size();
    std::vector<double> d(n - 1), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i]) / h;
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) m[i] = 0.5 * (d[i - 1] + d[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            m[i] = m[i + 1] = 0.0;
            continue;
        }
        const double a = m[i] / d[i];
        const double b = m[i + 1] / d[i];
        const double s = a * a + b * b;
        if (s > 9.0) {
            const double tau = 3.0 / std::sqrt(s);
            m[i] = tau * a * d[i];
            m[i + 1] = tau * b * d[i];
        }
    }
    return m;
}

double hermite_eval(double y0, double y1, double m0, double m1, double h, double s) {
    const double s2 = s * s, s3 = s2 * s;
    return y0 * (2 * s3 - 3 * s2 + 1) + h * m0 * (s3 - 2 * s2 + s) +
           y1 * (-2 * s3 + 3 * s2) + h * m1 * (s3 - s2);
}

// Integral of the Hermite cubic from the cell start to local coordinate s.
double hermite_partial(double y0, double y1, double m0, double m1, double h, double s) {
    const double s2 = s * s, s3 = s2 * s, s4 = s2 * s2;
    return h * (y0 * (0.5 * s4 - s3 + s) + y1 * (-0.5 * s4 + s3) +
                h * (m0 * (0.25 * s4 - (2.0 / 3.0) * s3 + 0.5 * s2) +
                     m1 * (0.25 * s4 - s3 / 3.0)));
}

// Power-basis coefficients of the cell cubic in the local coordinate s.
void hermite_power(double y0, double y1, double m0, double m1, double h, double c[4]) {
    c[0] = y0;
    c[1] = h * m0;
    c[2] = -3 * y0 + 3 * y1 - h * (2 * m0 + m1);
    c[3] = 2 * y0 - 2 * y1 + h * (m0 + m1);
}

}  // namespace

double Geometry::diameter() const {
    const double per_coord = kind == GeometryKind::Torus ? 0.5 : 1.0;
    return per_coord * std::sqrt(static_cast<double>(dimension));
}

double torus_coordinate_distance(double x, double y) {
    if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0)
        throw std::domain_error("torus_coordinate_distance: inputs must lie in [0,1]");
    const double d = std::fabs(x - y);
    return std::min(d, 1.0 - d);
}

double distance(const Geometry& g, const Point& a, const Point& b) {
    if (static_cast<int>(a.size()) != g.dimension || static_cast<int>(b.size()) != g.dimension)
        throw std::invalid_argument("distance: point dimension mismatch");
    double s = 0.0;
    if (g.kind == GeometryKind::Torus) {
        for (int k = 0; k < g.dimension; ++k) {
            const double d = torus_coordinate_distance(a[k], b[k]);
            s += d * d;
        }
    } else {
        for (int k = 0; k < g.dimension; ++k) {
            const double d = a[k] - b[k];
            s += d * d;
        }
    }
    return std::sqrt(s);
}

CoordinateDistribution CoordinateDistribution::uniform() {
    CoordinateDistribution d;
    d.kind_ = Kind::Uniform;
    d.mean_ = 0.5;
    d.var_ = 1.0 / 12.0;
    d.m3_ = 0.0;
    d.m4_ = 1.0 / 80.0;
    return d;
}

CoordinateDistribution CoordinateDistribution::truncated_gaussian() {
    CoordinateDistribution d;
    d.kind_ = Kind::TruncatedGaussian;
    d.norm_ = integrate_checked([](double x) { return std::exp(-(x - 0.5) * (x - 0.5)); },
                                0.0, 1.0, 1e-14);
    std::vector<double> vals(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) {
        const double s = i * kH - 0.5;
        vals[i] = std::exp(-s * s) / d.norm_;
    }
    d.build_tables(std::move(vals));
    return d;
}

CoordinateDistribution CoordinateDistribution::bernoulli(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("bernoulli: p must lie in [0,1]");
    CoordinateDistribution d;
    d.kind_ = Kind::Bernoulli;
    d.p_ = p;
    d.mean_ = p;
    d.var_ = p * (1.0 - p);
    const double q = 1.0 - p;
    d.m3_ = p * q * (q - p);
    d.m4_ = p * q * (1.0 - 3.0 * p + 3.0 * p * p);
    return d;
}

CoordinateDistribution CoordinateDistribution::tabulated(std::vector<double> density) {
    if (density.size() < 9) throw std::invalid_argument("tabulated: need at least 9 samples");
    for (double v : density)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("tabulated: density values must be finite and >= 0");
    CoordinateDistribution d;
    d.kind_ = Kind::Tabulated;

    // Resample the user grid onto the internal grid through the same monotone
    // cubic that defines the density between samples.
    const std::size_t cells_in = density.size() - 1;
    const double h_in = 1.0 / static_cast<double>(cells_in);
    const std::vector<double> sl = fc_slopes(density, h_in);
    std::vector<double> vals(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) {
        const double pos = (i * kH) / h_in;
        const std::size_t c = std::min(static_cast<std::size_t>(pos), cells_in - 1);
        const double s = pos - static_cast<double>(c);
        vals[i] = std::max(0.0, hermite_eval(density[c], density[c + 1], sl[c], sl[c + 1], h_in, s));
    }
    d.build_tables(std::move(vals));
    return d;
}

CoordinateDistribution CoordinateDistribution::tabulated_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("tabulated_from_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("tabulated_from_csv: empty file");
    {
        std::istringstream probe(line);
        double v;
        if (probe >> v) throw std::invalid_argument("tabulated_from_csv: missing header row");
    }
    std::vector<double> xs, ds;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double x, dens;
        if (!(row >> x >> dens))
            throw std::invalid_argument("tabulated_from_csv: bad row at line " + std::to_string(lineno));
        xs.push_back(x);
        ds.push_back(dens);
    }
    if (xs.size() < 9) throw std::invalid_argument("tabulated_from_csv: too few rows");
    if (xs.front() != 0.0 || xs.back() != 1.0)
        throw std::invalid_argument("tabulated_from_csv: x must span [0,1]");
    const double h = 1.0 / static_cast<double>(xs.size() - 1);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (!(xs[i + 1] > xs[i]))
            throw std::invalid_argument("tabulated_from_csv: x must be strictly increasing");
        if (std::fabs(xs[i + 1] - xs[i] - h) > 1e-9)
            throw std::invalid_argument("tabulated_from_csv: x grid must be uniform");
    }
    return tabulated(std::move(ds));
}

void CoordinateDistribution::build_tables(std::vector<double> vals) {
    pdf_grid_ = std::move(vals);
    slopes_ = fc_slopes(pdf_grid_, kH);

    grid_cdf_.assign(kGridPoints, 0.0);
    double acc = 0.0;
    for (int c = 0; c < kCells; ++c) {
        acc += hermite_partial(pdf_grid_[c], pdf_grid_[c + 1], slopes_[c], slopes_[c + 1], kH, 1.0);
        grid_cdf_[c + 1] = acc;
    }
    const double total = grid_cdf_.back();
    if (total < 1e-12) throw std::invalid_argument("distribution: density integrates to ~0");
    for (double& v : pdf_grid_) v /= total;
    for (double& v : slopes_) v /= total;
    for (double& v : grid_cdf_) v /= total;
    grid_cdf_.back() = 1.0;

    // Raw moments, exact per cell for the piecewise cubic.
    double raw[5] = {0, 0, 0, 0, 0};
    for (int c = 0; c < kCells; ++c) {
        double pw[4];
        hermite_power(pdf_grid_[c], pdf_grid_[c + 1], slopes_[c], slopes_[c + 1], kH, pw);
        // int_0^1 s^m * cubic(s) ds
        double sm[5];
        for (int m = 0; m <= 4; ++m) {
            sm[m] = 0.0;
            for (int k = 0; k < 4; ++k) sm[m] += pw[k] / static_cast<double>(m + k + 1);
        }
        const double x0 = c * kH;
        double xpow[5] = {1, x0, x0 * x0, x0 * x0 * x0, x0 * x0 * x0 * x0};
        double hpow[5] = {1, kH, kH * kH, kH * kH * kH, kH * kH * kH * kH};
        // x^j = (x0 + h s)^j expanded binomially
        static const double binom[5][5] = {
            {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
        for (int j = 0; j <= 4; ++j) {
            double v = 0.0;
            for (int m = 0; m <= j; ++m) v += binom[j][m] * xpow[j - m] * hpow[m] * sm[m];
            raw[j] += kH * v;
        }
    }
    mean_ = raw[1] / raw[0];
    const double m1 = mean_;
    var_ = raw[2] - 2 * m1 * raw[1] + m1 * m1 * raw[0];
    m3_ = raw[3] - 3 * m1 * raw[2] + 3 * m1 * m1 * raw[1] - m1 * m1 * m1 * raw[0];
    m4_ = raw[4] - 4 * m1 * raw[3] + 6 * m1 * m1 * raw[2] - 4 * m1 * m1 * m1 * raw[1] +
          m1 * m1 * m1 * m1 * raw[0];
}

double CoordinateDistribution::pdf(double x) const {
    if (x < 0.0 || x > 1.0) return 0.0;
    switch (kind_) {
        case Kind::Uniform:
            return 1.0;
        case Kind::TruncatedGaussian: {
            const double s = x - 0.5;
            return std::exp(-s * s) / norm_;
        }
        case Kind::Tabulated: {
            const int c = std::min(static_cast<int>(x / kH), kCells - 1);
            const double s = x / kH - c;
            return std::max(0.0, hermite_eval(pdf_grid_[c], pdf_grid_[c + 1], slopes_[c],
                                              slopes_[c + 1], kH, s));
        }
        case Kind::Bernoulli:
            throw std::logic_error("pdf: Bernoulli coordinate law has no density");
    }
    return 0.0;
}

double CoordinateDistribution::cdf(double x) const {
    if (kind_ == Kind::Bernoulli) {
        if (x < 0.0) return 0.0;
        if (x < 1.0) return 1.0 - p_;
        return 1.0;
    }
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (kind_ == Kind::Uniform) return x;
    const int c = std::min(static_cast<int>(x / kH), kCells - 1);
    const double s = x / kH - c;
    return grid_cdf_[c] +
           hermite_partial(pdf_grid_[c], pdf_grid_[c + 1], slopes_[c], slopes_[c + 1], kH, s);
}

double CoordinateDistribution::sample(PhiloxStream& rng) const {
    switch (kind_) {
        case Kind::Uniform:
            return rng.next_double();
        case Kind::Bernoulli:
            return rng.next_double() < p_ ? 1.0 : 0.0;
        default:
            break;
    }
    const double u = rng.next_double();
    const auto it = std::upper_bound(grid_cdf_.begin(), grid_cdf_.end(), u);
    int c = static_cast<int>(it - grid_cdf_.begin()) - 1;
    c = std::clamp(c, 0, kCells - 1);
    const double target = u - grid_cdf_[c];
    const double y0 = pdf_grid_[c], y1 = pdf_grid_[c + 1];
    const double m0 = slopes_[c], m1 = slopes_[c + 1];
    double lo = 0.0, hi = 1.0, s = 0.5;
    const double mass = grid_cdf_[c + 1] - grid_cdf_[c];
    if (mass > 0.0) s = std::clamp(target / mass, 0.0, 1.0);
    for (int iter = 0; iter < 40; ++iter) {
        const double f = hermite_partial(y0, y1, m0, m1, kH, s) - target;
        if (f > 0.0)
            hi = s;
        else
            lo = s;
        const double df = kH * std::max(0.0, hermite_eval(y0, y1, m0, m1, kH, s));
        double next = df > 1e-300 ? s - f / df : 0.5 * (lo + hi);
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - s) < 1e-14) {
            s = next;
            break;
        }
        s = next;
    }
    return std::clamp((c + s) * kH, 0.0, 1.0);
}

double CoordinateDistribution::central_moment(int k) const {
    switch (k) {
        case 2: return var_;
        case 3: return m3_;
        case 4: return m4_;
        default: throw std::invalid_argument("central_moment: k must be 2, 3 or 4");
    }
}

Point sample_point(const Geometry& g, const CoordinateDistribution& dist, PhiloxStream& rng) {
    Point p(g.dimension);
    for (int k = 0; k < g.dimension; ++k) p[k] = dist.sample(rng);
    return p;
}

}  // namespace rgg
