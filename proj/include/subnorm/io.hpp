#pragma once

#include "subnorm/classify.hpp"
#include "subnorm/consistency.hpp"
#include "subnorm/lifting.hpp"
#include "subnorm/matsym.hpp"
#include "subnorm/trees.hpp"

#include <json.hpp>

#include <string>

namespace subnorm {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A space+map fixture document:
/// {"points":[{"id":int,"mass":"p/q"},...],"map":{"id":"id",...},
///  "boundary":[ids], "exits":[ids], "entries":[ids]} (last three optional).
struct SpaceMapDoc {
    MeasureSpace space;
    SelfMap map;
    Boundary boundary;
    WindowMarks marks;
};

SpaceMapDoc space_map_from_json(const Json& j);
Json space_map_to_json(const MeasureSpace& space, const SelfMap& map, const Boundary& boundary);

/// Measures are lists [{"t":"p/q","w":"p/q"},...].
AtomicMeasure measure_from_json(const Json& j);
Json measure_to_json(const AtomicMeasure& m);

/// {"measures":{"id":[atoms],...}}
Family family_from_json(const Json& j);
Json family_to_json(const Family& f);

Json verdict_to_json(const Verdict& v);

/// {"m_lo":int,"m_hi":int,"kappa":[ints],"alpha":["p/q",...]};
/// arrays are indexed from m_lo.
TreeProfile profile_from_json(const Json& j);

/// {"vertices":[ids],"parent":{"id":id},"lambda2":{"id":"p/q"},
///  "anchor":id,"boundary":[ids]}
WeightedTree weighted_tree_from_json(const Json& j);

/// {"dim":int,"eigenvalues":["p/q",...],"basis":[["p/q",...],...],
///  "complex":bool}; the basis entry lists eigenvectors.
SpectralSymbol symbol_from_json(const Json& j);
DensitySeries density_from_json(const Json& j);  // ["a0","a1",...]

/// {"theta":[atoms],"mu1":"p/q","depth":int}
GeneratorSpec generator_spec_from_json(const Json& j);

Json classification_to_json(const std::vector<OrbitComponent>& components,
                            const std::vector<Verdict>& verdicts);

Json lift_to_json(const Lift& lift);

Json derivative_table_to_json(const MeasureSpace& space, const DerivativeTable& table);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace subnorm
