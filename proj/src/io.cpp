#include "subnorm/io.hpp"

#include <fstream>

namespace subnorm {

namespace {

Rat rat_from_json(const Json& j) {
    try {
        if (j.is_number_integer()) return Rat(j.get<long long>());
        return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad rational: ") + e.what());
    }
}

PointId id_from_key(const std::string& key) {
    try {
        return static_cast<PointId>(std::stoul(key));
    } catch (const std::exception&) {
        throw ParseError("bad point id key: " + key);
    }
}

Boundary ids_from_json(const Json& j, const char* field) {
    Boundary out;
    if (!j.contains(field)) return out;
    for (const auto& v : j.at(field)) out.insert(v.get<PointId>());
    return out;
}

}  // namespace

SpaceMapDoc space_map_from_json(const Json& j) {
    try {
        std::vector<PointId> points;
        std::map<PointId, Rat> mass;
        for (const auto& p : j.at("points")) {
            PointId id = p.at("id").get<PointId>();
            points.push_back(id);
            mass[id] = rat_from_json(p.at("mass"));
        }
        std::map<PointId, PointId> image;
        for (const auto& [k, v] : j.at("map").items())
            image[id_from_key(k)] = v.is_string() ? id_from_key(v.get<std::string>())
                                                  : v.get<PointId>();
        MeasureSpace space(std::move(points), std::move(mass));
        SelfMap map(space, std::move(image));
        WindowMarks marks{ids_from_json(j, "exits"), ids_from_json(j, "entries")};
        return {std::move(space), std::move(map), ids_from_json(j, "boundary"),
                std::move(marks)};
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad space/map document: ") + e.what());
    }
}

Json space_map_to_json(const MeasureSpace& space, const SelfMap& map, const Boundary& boundary) {
    Json points = Json::array();
    for (PointId x : space.points())
        points.push_back({{"id", x}, {"mass", rational_str(space.mass(x))}});
    Json image = Json::object();
    for (PointId x : space.points()) image[std::to_string(x)] = map.image(x);
    Json out{{"points", std::move(points)}, {"map", std::move(image)}};
    if (!boundary.empty()) out["boundary"] = boundary;
    return out;
}

AtomicMeasure measure_from_json(const Json& j) {
    std::vector<AtomicMeasure::Atom> atoms;
    try {
        for (const auto& a : j)
            atoms.push_back({rat_from_json(a.at("t")), rat_from_json(a.at("w"))});
        return AtomicMeasure(std::move(atoms));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad measure: ") + e.what());
    }
}

Json measure_to_json(const AtomicMeasure& m) {
    Json out = Json::array();
    for (const auto& a : m.atoms())
        out.push_back({{"t", rational_str(a.t)}, {"w", rational_str(a.w)}});
    return out;
}

Family family_from_json(const Json& j) {
    std::map<PointId, AtomicMeasure> measures;
    try {
        for (const auto& [k, v] : j.at("measures").items())
            measures.emplace(id_from_key(k), measure_from_json(v));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad family: ") + e.what());
    }
    return Family(std::move(measures));
}

Json family_to_json(const Family& f) {
    Json measures = Json::object();
    for (const auto& [x, m] : f.measures()) measures[std::to_string(x)] = measure_to_json(m);
    return Json{{"measures", std::move(measures)}};
}

Json verdict_to_json(const Verdict& v) {
    Json out;
    switch (v.status) {
        case Status::Subnormal: out["status"] = "Subnormal"; break;
        case Status::NotSubnormal: out["status"] = "NotSubnormal"; break;
        case Status::Inconclusive: out["status"] = "Inconclusive"; break;
    }
    out["witness"] = v.witness;
    if (v.point) out["point"] = *v.point;
    out["window"] = v.window;
    if (!v.determinacy.empty()) out["determinacy"] = v.determinacy;
    if (v.certificate) out["certificate"] = family_to_json(*v.certificate);
    return out;
}

TreeProfile profile_from_json(const Json& j) {
    try {
        long lo = j.at("m_lo").get<long>();
        long hi = j.at("m_hi").get<long>();
        std::map<long, unsigned> kappa;
        long m = lo;
        for (const auto& k : j.at("kappa")) kappa[m++] = k.get<unsigned>();
        std::map<long, Rat> alpha;
        m = lo;
        for (const auto& a : j.at("alpha")) alpha[m++] = rat_from_json(a);
        return TreeProfile(lo, hi, std::move(kappa), std::move(alpha));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad profile: ") + e.what());
    }
}

WeightedTree weighted_tree_from_json(const Json& j) {
    try {
        WeightedTree t;
        for (const auto& v : j.at("vertices")) t.vertices.push_back(v.get<PointId>());
        for (const auto& [k, v] : j.at("parent").items())
            t.parent[id_from_key(k)] = v.get<PointId>();
        for (const auto& [k, v] : j.at("lambda2").items())
            t.lambda2[id_from_key(k)] = rat_from_json(v);
        t.anchor = j.at("anchor").get<PointId>();
        for (PointId b : ids_from_json(j, "boundary")) t.boundary.insert(b);
        return t;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad tree: ") + e.what());
    }
}

SpectralSymbol symbol_from_json(const Json& j) {
    try {
        unsigned dim = j.at("dim").get<unsigned>();
        std::vector<Rat> eigenvalues;
        for (const auto& l : j.at("eigenvalues")) eigenvalues.push_back(rat_from_json(l));
        std::vector<Vec> basis;
        for (const auto& col : j.at("basis")) {
            Vec v;
            for (const auto& c : col) v.push_back(rat_from_json(c));
            basis.push_back(std::move(v));
        }
        bool complex_symbol = j.value("complex", false);
        return SpectralSymbol(dim, std::move(eigenvalues), std::move(basis), complex_symbol);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad symbol: ") + e.what());
    }
}

DensitySeries density_from_json(const Json& j) {
    std::vector<Rat> coeffs;
    try {
        for (const auto& c : j) coeffs.push_back(rat_from_json(c));
        return DensitySeries(std::move(coeffs));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad density: ") + e.what());
    }
}

GeneratorSpec generator_spec_from_json(const Json& j) {
    try {
        GeneratorSpec spec{measure_from_json(j.at("theta")), rat_from_json(j.at("mu1")),
                           j.at("depth").get<unsigned>()};
        return spec;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad generator spec: ") + e.what());
    }
}

Json classification_to_json(const std::vector<OrbitComponent>& components,
                            const std::vector<Verdict>& verdicts) {
    Json out = Json::array();
    for (std::size_t i = 0; i < components.size(); ++i) {
        const auto& c = components[i];
        const char* kind = "?";
        switch (c.kind) {
            case OrbitKind::TypeI: kind = "I"; break;
            case OrbitKind::TypeII: kind = "II"; break;
            case OrbitKind::TypeIII: kind = "III"; break;
            case OrbitKind::TruncatedUnknown: kind = "?"; break;
        }
        Json entry{{"kind", kind}, {"points", c.points}};
        if (c.kind == OrbitKind::TypeIII) entry["cycle_length"] = c.cycle_length;
        if (i < verdicts.size()) entry["verdict"] = verdict_to_json(verdicts[i]);
        out.push_back(std::move(entry));
    }
    return out;
}

Json lift_to_json(const Lift& lift) {
    Json out = Json::array();
    for (const auto& p : lift.product.points()) {
        if (lift.product.rho(p) == 0) continue;
        ProductPoint q = lift.map.image(p);
        Rat num = 0;
        for (const auto& pre : lift.map.preimage(p)) num += lift.product.rho(pre);
        out.push_back({{"x", p.x},
                       {"t", rational_str(p.t)},
                       {"rho", rational_str(lift.product.rho(p))},
                       {"phi_image", Json::array({q.x, rational_str(q.t)})},
                       {"h", rational_str(num / lift.product.rho(p))}});
    }
    return out;
}

Json derivative_table_to_json(const MeasureSpace& space, const DerivativeTable& table) {
    Json out = Json::object();
    for (PointId x : space.points()) {
        Json row = Json::array();
        for (unsigned n = 1; n <= table.order(); ++n) row.push_back(table.value(n, x).str());
        out[std::to_string(x)] = std::move(row);
    }
    return out;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace subnorm
