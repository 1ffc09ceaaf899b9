#include "spec_io.hpp"

#include <stdexcept>

#include "json.hpp"

namespace rgg {

using nlohmann::json;

GeometryKind geometry_kind_from_name(const std::string& name) {
    if (name == "cube") return GeometryKind::Cube;
    if (name == "torus") return GeometryKind::Torus;
    throw std::invalid_argument("geometry kind must be \"cube\" or \"torus\", got \"" + name + "\"");
}

const char* geometry_kind_name(GeometryKind kind) {
    return kind == GeometryKind::Cube ? "cube" : "torus";
}

namespace {

CoordinateDistribution parse_distribution(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "uniform") return CoordinateDistribution::uniform();
    if (kind == "truncated_gaussian") return CoordinateDistribution::truncated_gaussian();
    if (kind == "bernoulli") return CoordinateDistribution::bernoulli(j.at("p").get<double>());
    if (kind == "tabulated") {
        if (j.contains("csv"))
            return CoordinateDistribution::tabulated_from_csv(j.at("csv").get<std::string>());
        return CoordinateDistribution::tabulated(j.at("density").get<std::vector<double>>());
    }
    throw std::invalid_argument("unknown distribution kind \"" + kind + "\"");
}

json distribution_to_json_obj(const CoordinateDistribution& d) {
    json j;
    switch (d.kind()) {
        case CoordinateDistribution::Kind::Uniform: j["kind"] = "uniform"; break;
        case CoordinateDistribution::Kind::TruncatedGaussian: j["kind"] = "truncated_gaussian"; break;
        case CoordinateDistribution::Kind::Bernoulli:
            j["kind"] = "bernoulli";
            j["p"] = d.bernoulli_p();
            break;
        case CoordinateDistribution::Kind::Tabulated:
            j["kind"] = "tabulated";
            break;
    }
    return j;
}

}  // namespace

CoordinateDistribution distribution_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("distribution JSON parse error: ") + e.what());
    }
    try {
        return parse_distribution(j);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("distribution JSON: ") + e.what());
    }
}

EnsembleSpec spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("spec JSON parse error: ") + e.what());
    }
    try {
        EnsembleSpec spec;
        const json& g = j.at("geometry");
        spec.geometry.kind = geometry_kind_from_name(g.at("kind").get<std::string>());
        spec.geometry.dimension = g.at("dimension").get<int>();
        spec.n = j.at("n").get<int>();
        spec.dist = parse_distribution(j.at("distribution"));
        const json& c = j.at("connection");
        const std::string ck = c.at("kind").get<std::string>();
        if (ck == "hard")
            spec.connection = ConnectionModel::hard(c.at("r0").get<double>());
        else if (ck == "rayleigh")
            spec.connection = ConnectionModel::rayleigh(c.at("r0").get<double>(),
                                                        c.at("eta").get<double>());
        else
            throw std::invalid_argument("connection kind must be \"hard\" or \"rayleigh\"");
        spec.validate();
        return spec;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("spec JSON: ") + e.what());
    }
}

std::string spec_to_json(const EnsembleSpec& spec) {
    json j;
    j["geometry"] = {{"kind", geometry_kind_name(spec.geometry.kind)},
                     {"dimension", spec.geometry.dimension}};
    j["n"] = spec.n;
    j["distribution"] = distribution_to_json_obj(spec.dist);
    json c;
    if (spec.connection.kind == ConnectionModel::Kind::Hard) {
        c["kind"] = "hard";
        c["r0"] = spec.connection.r0;
    } else {
        c["kind"] = "rayleigh";
        c["r0"] = spec.connection.r0;
        c["eta"] = spec.connection.eta;
    }
    j["connection"] = c;
    return j.dump();
}

}  // namespace rgg
