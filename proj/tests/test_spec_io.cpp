#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "spec_io.hpp"

using namespace rgg;

TEST_CASE("spec JSON round trip") {
    const char* text = R"({
        "geometry": {"kind": "torus", "dimension": 2},
        "n": 4,
        "distribution": {"kind": "bernoulli", "p": 0.3},
        "connection": {"kind": "rayleigh", "r0": 0.4, "eta": 2.5}
    })";
    const EnsembleSpec spec = spec_from_json(text);
    CHECK(spec.geometry.kind == GeometryKind::Torus);
    CHECK(spec.geometry.dimension == 2);
    CHECK(spec.n == 4);
    CHECK(spec.dist.kind() == CoordinateDistribution::Kind::Bernoulli);
    CHECK(spec.dist.bernoulli_p() == 0.3);
    CHECK(spec.connection.kind == ConnectionModel::Kind::Rayleigh);
    CHECK(spec.connection.eta == 2.5);

    const EnsembleSpec again = spec_from_json(spec_to_json(spec));
    CHECK(again.geometry.dimension == spec.geometry.dimension);
    CHECK(again.connection.r0 == spec.connection.r0);
    CHECK(spec_to_json(again) == spec_to_json(spec));
}

TEST_CASE("defaulted distribution kinds parse") {
    const EnsembleSpec spec = spec_from_json(
        R"({"geometry":{"kind":"cube","dimension":1},"n":3,
            "distribution":{"kind":"uniform"},
            "connection":{"kind":"hard","r0":0.25}})");
    CHECK(spec.dist.kind() == CoordinateDistribution::Kind::Uniform);
    CHECK(spec.connection.kind == ConnectionModel::Kind::Hard);
}

TEST_CASE("inline tabulated density") {
    std::string text = R"({"geometry":{"kind":"cube","dimension":1},"n":3,
        "distribution":{"kind":"tabulated","density":[)";
    for (int i = 0; i < 33; ++i) text += (i ? ",1.0" : "1.0");
    text += R"(]},"connection":{"kind":"hard","r0":0.25}})";
    const EnsembleSpec spec = spec_from_json(text);
    CHECK(spec.dist.kind() == CoordinateDistribution::Kind::Tabulated);
    CHECK(spec.dist.mean() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("spec errors") {
    CHECK_THROWS_AS(static_cast<void>(spec_from_json("not json")), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(spec_from_json("{}")), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(spec_from_json(
                        R"({"geometry":{"kind":"sphere","dimension":1},"n":3,
                            "distribution":{"kind":"uniform"},
                            "connection":{"kind":"hard","r0":0.2}})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(spec_from_json(
                        R"({"geometry":{"kind":"cube","dimension":1},"n":30,
                            "distribution":{"kind":"uniform"},
                            "connection":{"kind":"hard","r0":0.2}})")),
                    std::invalid_argument);
}
