#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "exact_small.hpp"

using namespace rgg;

TEST_CASE("torus pieces at r0 = 1/4") {
    const ExactPieces e = exact_probabilities(ExactGeometry::Torus1D, 0.25);
    CHECK(e.p0 == doctest::Approx(1.0 / 16).epsilon(1e-14));
    CHECK(e.p1 == doctest::Approx(3.0 / 16).epsilon(1e-14));
    CHECK(e.p2 == doctest::Approx(1.0 / 16).epsilon(1e-14));
    CHECK(e.p3 == doctest::Approx(3.0 / 16).epsilon(1e-14));
}

TEST_CASE("line p0 vanishes at the branch point") {
    const ExactPieces e = exact_probabilities(ExactGeometry::Line1D, 0.5);
    CHECK(e.p0 == 0.0);
}

TEST_CASE("degenerate radii") {
    const ExactPieces z = exact_probabilities(ExactGeometry::Torus1D, 0.0);
    CHECK(z.p0 == 1.0);
    CHECK(z.p3 == 0.0);
    const ExactPieces full = exact_probabilities(ExactGeometry::Torus1D, 0.7);
    CHECK(full.p3 == 1.0);
    const ExactPieces fl = exact_probabilities(ExactGeometry::Line1D, 1.2);
    CHECK(fl.p3 == 1.0);
    CHECK(exact_entropy(ExactGeometry::Torus1D, 0.0) == 0.0);
    CHECK(exact_entropy(ExactGeometry::Line1D, 0.0) == 0.0);
    CHECK_THROWS_AS(exact_probabilities(ExactGeometry::Line1D, -0.1), std::domain_error);
}

TEST_CASE("pieces sum to one") {
    for (ExactGeometry g : {ExactGeometry::Torus1D, ExactGeometry::Line1D}) {
        const double top = g == ExactGeometry::Torus1D ? 0.5 : 1.0;
        for (int i = 0; i <= 200; ++i) {
            const ExactPieces e = exact_probabilities(g, top * i / 200.0);
            CHECK(e.p0 + 3 * e.p1 + 3 * e.p2 + e.p3 == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(e.p0 >= -1e-15);
            CHECK(e.p1 >= -1e-15);
            CHECK(e.p2 >= -1e-15);
            CHECK(e.p3 >= -1e-15);
        }
    }
}

TEST_CASE("branch continuity") {
    const double eps = 1e-9;
    {
        const ExactPieces a = exact_probabilities(ExactGeometry::Torus1D, 1.0 / 3.0 - eps);
        const ExactPieces b = exact_probabilities(ExactGeometry::Torus1D, 1.0 / 3.0 + eps);
        CHECK(a.p0 == doctest::Approx(b.p0).epsilon(1e-7));
        CHECK(a.p1 == doctest::Approx(b.p1).epsilon(1e-6));
        CHECK(a.p2 == doctest::Approx(b.p2).epsilon(1e-6));
        CHECK(a.p3 == doctest::Approx(b.p3).epsilon(1e-6));
    }
    {
        // both branch formulas agree exactly at the point itself
        const ExactPieces lo = exact_probabilities(ExactGeometry::Torus1D, std::nextafter(1.0 / 3.0, 0.0));
        const ExactPieces hi = exact_probabilities(ExactGeometry::Torus1D, 1.0 / 3.0);
        CHECK(lo.p3 == doctest::Approx(hi.p3).epsilon(1e-12));
        CHECK(lo.p2 == doctest::Approx(hi.p2).epsilon(1e-10));
        CHECK(lo.p1 == doctest::Approx(hi.p1).epsilon(1e-10));
        CHECK(std::fabs(lo.p0 - hi.p0) < 1e-12);
    }
    {
        const ExactPieces lo = exact_probabilities(ExactGeometry::Line1D, std::nextafter(0.5, 0.0));
        const ExactPieces hi = exact_probabilities(ExactGeometry::Line1D, 0.5);
        CHECK(lo.p3 == doctest::Approx(hi.p3).epsilon(1e-12));
        CHECK(lo.p2 == doctest::Approx(hi.p2).epsilon(1e-10));
        CHECK(lo.p1 == doctest::Approx(hi.p1).epsilon(1e-10));
        CHECK(std::fabs(lo.p0 - hi.p0) < 1e-12);
    }
}

TEST_CASE("exact entropies") {
    CHECK(exact_entropy(ExactGeometry::Torus1D, 0.25) ==
          doctest::Approx(4.0 - 0.75 * std::log2(3.0)).epsilon(1e-13));
    CHECK(exact_entropy(ExactGeometry::Torus1D, 0.25) == doctest::Approx(2.8112781245).epsilon(1e-9));
    CHECK(exact_entropy(ExactGeometry::Line1D, 0.283) == doctest::Approx(2.771).epsilon(5e-4));
}

TEST_CASE("maximizers") {
    const ExactMaximizer t = exact_maximizer(ExactGeometry::Torus1D);
    CHECK(t.r0_hat == 0.25);
    CHECK(t.entropy_max == doctest::Approx(2.8112781245).epsilon(1e-9));
    CHECK(t.p_bar_max == 0.5);

    const ExactMaximizer l = exact_maximizer(ExactGeometry::Line1D);
    CHECK(l.r0_hat == doctest::Approx(0.2833305).epsilon(1e-5));
    CHECK(l.entropy_max == doctest::Approx(2.7715214).epsilon(1e-6));
    CHECK(l.p_bar_max == doctest::Approx(0.4863848).epsilon(1e-5));
}

TEST_CASE("entropy derivative vanishes at the torus maximizer") {
    const double h = 1e-5;
    const double d = (exact_entropy(ExactGeometry::Torus1D, 0.25 + h) -
                      exact_entropy(ExactGeometry::Torus1D, 0.25 - h)) /
                     (2 * h);
    CHECK(std::fabs(d) < 1e-6);
}

TEST_CASE("line pbar is the integral of 2(1-r)") {
    CHECK(exact_pbar(ExactGeometry::Line1D, 0.283) ==
          doctest::Approx(2 * 0.283 - 0.283 * 0.283).epsilon(1e-14));
    CHECK(exact_pbar(ExactGeometry::Torus1D, 0.2) == doctest::Approx(0.4).epsilon(1e-14));
}
