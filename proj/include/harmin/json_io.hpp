#pragma once

#include <string>

#include <json.hpp>

#include "harmin/harmonic.hpp"
#include "harmin/polytope.hpp"
#include "harmin/zonoid_random.hpp"
#include "harmin/zonotope.hpp"

namespace harmin {

using Json = nlohmann::json;

// {"dim": n, "vertices": [[...], ...]}
Json to_json(const Polytope& p);
Polytope polytope_from_json(const Json& j);

// {"dim": n, "base": [...], "generators": [[...], ...]}
Json to_json(const Zonotope& z);
Zonotope zonotope_from_json(const Json& j);

// {"kind":"ball","center":[...],"radius":r,"mesh_count":N}
Json domain_to_json(const Domain& d, int mesh_count);
std::pair<DomainPtr, int> domain_from_json(const Json& j);

// {"dim":n,"atoms":[[...]],"probs":[...]}
Json to_json(const DiscreteDistribution& nu);
DiscreteDistribution distribution_from_json(const Json& j);

// CSV columns: node_index, tau coordinates, weight. 17 significant digits.
std::string measure_to_csv(const HarmonicMeasure& mu);

std::string format_double(double v);

}  // namespace harmin
