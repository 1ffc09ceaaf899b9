#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace rgg {

namespace {

// K15 abscissae on [0,1] and the paired (G7, K15) weights.
constexpr int kPoints = 8;
constexpr double kAbscissa[kPoints] = {
    0.000000000000000000000000000000000e+00,
    2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01,
    5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01,
    8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01,
    9.914553711208126392068546975263285e-01,
};
constexpr double kWeightGauss[kPoints] = {
    4.179591836734693877551020408163265e-01,
    0.0,
    3.818300505051189449503697754889751e-01,
    0.0,
    2.797053914892766679014677714237796e-01,
    0.0,
    1.294849661688696932706114326790820e-01,
    0.0,
};
constexpr double kWeightKronrod[kPoints] = {
    2.094821410847278280129991748917143e-01,
    2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01,
    1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01,
    1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02,
    2.293532201052922496373200805896959e-02,
};

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(c);
    double g7 = kWeightGauss[0] * f0;
    double k15 = kWeightKronrod[0] * f0;
    double abs_sum = kWeightKronrod[0] * std::fabs(f0);
    for (int i = 1; i < kPoints; ++i) {
        const double dx = h * kAbscissa[i];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        g7 += kWeightGauss[i] * (f1 + f2);
        k15 += kWeightKronrod[i] * (f1 + f2);
        abs_sum += kWeightKronrod[i] * (std::fabs(f1) + std::fabs(f2));
    }
    g7 *= h;
    k15 *= h;
    abs_sum *= std::fabs(h);
    double err = std::fabs(k15 - g7);
    // QUADPACK-style sharpening of the raw difference.
    if (abs_sum > 0.0 && err > 0.0) {
        const double scaled = 200.0 * err / abs_sum;
        err = abs_sum * std::min(1.0, scaled * std::sqrt(scaled));
    }
    return {a, b, k15, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, const std::vector<double>& breakpoints) {
    QuadratureResult res;
    if (a == b) return res;

    std::vector<double> cuts;
    cuts.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b) cuts.push_back(x);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Interval> heap;
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Interval iv = gk15(f, cuts[i], cuts[i + 1]);
        total += iv.value;
        total_err += iv.error;
        heap.push(iv);
    }

    const int max_splits = 4000;
    int splits = 0;
    while (total_err > abs_tol && splits < max_splits) {
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            heap.push(worst);  // interval at floating-point resolution
            break;
        }
        Interval left = gk15(f, worst.a, mid);
        Interval right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++splits;
    }
    res.value = total;
    res.error = total_err;
    res.converged = total_err <= std::max(abs_tol, 1e-12 * std::fabs(total));
    return res;
}

double integrate_checked(const std::function<double(double)>& f, double a, double b,
                         double abs_tol, const std::vector<double>& breakpoints) {
    const QuadratureResult r = integrate(f, a, b, abs_tol, breakpoints);
    if (!r.converged) throw std::runtime_error("quadrature did not converge");
    return r.value;
}

}  // namespace rgg
