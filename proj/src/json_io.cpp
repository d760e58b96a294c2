#include "harmin/json_io.hpp"

#include <cstdio>

#include "harmin/errors.hpp"

namespace harmin {

namespace {

Vec vec_from_json(const Json& j) {
    if (!j.is_array()) throw SchemaError("expected an array of numbers");
    Vec v;
    for (const auto& e : j) {
        if (!e.is_number()) throw SchemaError("expected a number");
        v.push_back(e.get<double>());
    }
    return v;
}

std::vector<Vec> points_from_json(const Json& j, int dim, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + ": expected an array");
    std::vector<Vec> pts;
    for (const auto& e : j) {
        Vec v = vec_from_json(e);
        if (static_cast<int>(v.size()) != dim) throw SchemaError(std::string(what) + ": dimension mismatch");
        pts.push_back(std::move(v));
    }
    return pts;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Json to_json(const Polytope& p) {
    Json j;
    j["dim"] = p.dim;
    j["vertices"] = Json::array();
    for (const Vec& v : p.vertices) j["vertices"].push_back(v);
    return j;
}

Polytope polytope_from_json(const Json& j) {
    if (!j.contains("dim") || !j.contains("vertices")) throw SchemaError("polytope: needs dim and vertices");
    Polytope p;
    p.dim = j.at("dim").get<int>();
    p.vertices = points_from_json(j.at("vertices"), p.dim, "polytope vertices");
    return p;
}

Json to_json(const Zonotope& z) {
    Json j;
    j["dim"] = z.dim;
    j["base"] = z.base;
    j["generators"] = Json::array();
    for (const Vec& g : z.generators) j["generators"].push_back(g);
    return j;
}

Zonotope zonotope_from_json(const Json& j) {
    if (!j.contains("dim") || !j.contains("base") || !j.contains("generators"))
        throw SchemaError("zonotope: needs dim, base and generators");
    Zonotope z;
    z.dim = j.at("dim").get<int>();
    z.base = vec_from_json(j.at("base"));
    if (static_cast<int>(z.base.size()) != z.dim) throw SchemaError("zonotope: base dimension mismatch");
    z.generators = points_from_json(j.at("generators"), z.dim, "zonotope generators");
    return z;
}

Json domain_to_json(const Domain& d, int mesh_count) {
    if (d.kind != Domain::Kind::ball) throw SchemaError("domain: only balls serialize");
    Json j;
    j["kind"] = "ball";
    j["center"] = d.center;
    j["radius"] = d.radius;
    j["mesh_count"] = mesh_count;
    return j;
}

std::pair<DomainPtr, int> domain_from_json(const Json& j) {
    if (!j.contains("kind")) throw SchemaError("domain: missing kind");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "ball") throw SchemaError("domain: unsupported kind '" + kind + "'");
    if (!j.contains("center") || !j.contains("radius")) throw SchemaError("domain: ball needs center and radius");
    Vec center = vec_from_json(j.at("center"));
    const int m = static_cast<int>(center.size());
    const double radius = j.at("radius").get<double>();
    const int mesh_count = j.value("mesh_count", 0);
    return {make_ball(m, std::move(center), radius), mesh_count};
}

Json to_json(const DiscreteDistribution& nu) {
    Json j;
    j["dim"] = nu.dim;
    j["atoms"] = Json::array();
    for (const Vec& a : nu.atoms) j["atoms"].push_back(a);
    j["probs"] = nu.probs;
    return j;
}

DiscreteDistribution distribution_from_json(const Json& j) {
    if (!j.contains("dim") || !j.contains("atoms") || !j.contains("probs"))
        throw SchemaError("distribution: needs dim, atoms and probs");
    const int dim = j.at("dim").get<int>();
    auto atoms = points_from_json(j.at("atoms"), dim, "distribution atoms");
    std::vector<double> probs;
    for (const auto& e : j.at("probs")) probs.push_back(e.get<double>());
    try {
        return canonical_distribution(dim, std::move(atoms), std::move(probs));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("distribution: ") + e.what());
    }
}

std::string measure_to_csv(const HarmonicMeasure& mu) {
    std::string out = "node_index";
    const int m = mu.mesh->domain->m;
    for (int i = 0; i < m; ++i) out += ",tau_" + std::to_string(i);
    out += ",weight\n";
    for (int j = 0; j < mu.mesh->count(); ++j) {
        out += std::to_string(j);
        for (int i = 0; i < m; ++i) out += "," + format_double(mu.mesh->nodes[j][i]);
        out += "," + format_double(mu.weights[j]) + "\n";
    }
    return out;
}

}  // namespace harmin
