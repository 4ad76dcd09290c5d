#include "subnorm/mspace.hpp"

#include <algorithm>

namespace subnorm {

MeasureSpace::MeasureSpace(std::vector<PointId> points, std::map<PointId, Rat> mass)
    : points_(std::move(points)), mass_(std::move(mass)) {
    std::set<PointId> seen;
    bool any_positive = false;
    for (PointId p : points_) {
        if (!seen.insert(p).second)
            throw std::invalid_argument("MeasureSpace: duplicate point id " + std::to_string(p));
        auto it = mass_.find(p);
        if (it == mass_.end())
            throw std::invalid_argument("MeasureSpace: missing mass for point " + std::to_string(p));
        if (it->second < 0)
            throw std::invalid_argument("MeasureSpace: negative mass at point " + std::to_string(p));
        if (it->second > 0) any_positive = true;
    }
    if (mass_.size() != points_.size())
        throw std::invalid_argument("MeasureSpace: mass map mentions unknown points");
    if (!any_positive)
        throw std::invalid_argument("MeasureSpace: all masses are zero");
}

const Rat& MeasureSpace::mass(PointId x) const {
    auto it = mass_.find(x);
    if (it == mass_.end())
        throw std::out_of_range("MeasureSpace: unknown point " + std::to_string(x));
    return it->second;
}

Rat MeasureSpace::total_mass() const {
    Rat total = 0;
    for (const auto& [p, m] : mass_) total += m;
    return total;
}

SelfMap::SelfMap(const MeasureSpace& space, std::map<PointId, PointId> image)
    : image_(std::move(image)) {
    for (PointId p : space.points()) {
        auto it = image_.find(p);
        if (it == image_.end())
            throw std::invalid_argument("SelfMap: no image for point " + std::to_string(p));
        if (!space.contains(it->second))
            throw std::invalid_argument("SelfMap: image of " + std::to_string(p) +
                                        " is not a point of the space");
        preimage_[it->second].insert(p);
    }
    if (image_.size() != space.points().size())
        throw std::invalid_argument("SelfMap: image map mentions unknown points");
}

PointId SelfMap::image(PointId x) const {
    auto it = image_.find(x);
    if (it == image_.end()) throw std::out_of_range("SelfMap: unknown point " + std::to_string(x));
    return it->second;
}

const std::set<PointId>& SelfMap::preimage(PointId x) const {
    auto it = preimage_.find(x);
    return it == preimage_.end() ? empty_ : it->second;
}

PointId SelfMap::iterate(PointId x, unsigned n) const {
    for (unsigned i = 0; i < n; ++i) x = image(x);
    return x;
}

std::set<PointId> SelfMap::iterated_preimage(const std::set<PointId>& s, unsigned n) const {
    std::set<PointId> cur = s;
    for (unsigned i = 0; i < n; ++i) {
        std::set<PointId> next;
        for (PointId x : cur) {
            const auto& pre = preimage(x);
            next.insert(pre.begin(), pre.end());
        }
        cur = std::move(next);
    }
    return cur;
}

bool SelfMap::is_injective(const MeasureSpace& space) const {
    for (PointId p : space.points())
        if (preimage(p).size() > 1) return false;
    return true;
}

const ExtRat& DerivativeTable::value(unsigned n, PointId x) const {
    auto it = values_.find({n, x});
    if (it == values_.end())
        throw std::out_of_range("DerivativeTable: missing value for n=" + std::to_string(n) +
                                ", x=" + std::to_string(x));
    return it->second;
}

NonsingularCheck check_nonsingular(const MeasureSpace& space, const SelfMap& map) {
    for (PointId x : space.points()) {
        if (space.mass(x) != 0) continue;
        Rat fiber_mass = 0;
        for (PointId y : map.preimage(x)) fiber_mass += space.mass(y);
        if (fiber_mass != 0) return {false, x};
    }
    return {true, std::nullopt};
}

DerivativeTable derivative_table(const MeasureSpace& space, const SelfMap& map, unsigned order) {
    auto ns = check_nonsingular(space, map);
    if (!ns.ok) throw NonsingularityViolation(*ns.witness);
    std::map<std::pair<unsigned, PointId>, ExtRat> values;
    for (PointId x : space.points()) {
        std::set<PointId> pre = {x};
        values[{0, x}] = ExtRat(Rat(1));
        for (unsigned n = 1; n <= order; ++n) {
            pre = map.iterated_preimage({x}, n);
            Rat num = 0;
            for (PointId y : pre) num += space.mass(y);
            values[{n, x}] = ext_div(num, space.mass(x));
        }
    }
    return DerivativeTable(order, std::move(values));
}

std::map<PointId, Rat> conditional_expectation(const MeasureSpace& space, const SelfMap& map,
                                               const std::map<PointId, Rat>& f) {
    std::map<PointId, Rat> out;
    for (PointId x : space.points()) {
        const auto& fiber = map.preimage(x);
        if (fiber.empty()) continue;
        Rat fiber_mass = 0, integral = 0;
        for (PointId y : fiber) {
            fiber_mass += space.mass(y);
            auto it = f.find(y);
            if (it == f.end())
                throw std::invalid_argument("conditional_expectation: f undefined at " +
                                            std::to_string(y));
            integral += it->second * space.mass(y);
        }
        Rat avg = fiber_mass == 0 ? Rat(1) : integral / fiber_mass;
        for (PointId y : fiber) out[y] = avg;
    }
    return out;
}

bool verify_transport_identity(const MeasureSpace& space, const SelfMap& map,
                               const std::map<PointId, Rat>& f) {
    DerivativeTable table = derivative_table(space, map, 1);
    Rat lhs = 0;
    for (PointId x : space.points()) {
        if (space.mass(x) == 0) continue;
        PointId px = map.image(x);
        const ExtRat& h = table.value(1, px);
        // h_phi o phi > 0 a.e. for nonsingular maps
        if (h.is_infinite() || h.finite_value() == 0)
            throw std::logic_error("verify_transport_identity: h(phi(x)) not in (0,inf)");
        lhs += f.at(px) / h.finite_value() * space.mass(x);
    }
    Rat rhs = 0;
    for (PointId x : space.points()) {
        const ExtRat& h = table.value(1, x);
        if (h.is_finite() && h.finite_value() == 0) continue;
        if (space.mass(x) == 0) continue;
        rhs += f.at(x) * space.mass(x);
    }
    return lhs == rhs;
}

bool verify_derivative_recurrence(const MeasureSpace& space, const SelfMap& map,
                                  const DerivativeTable& table) {
    if (table.order() < 1) throw std::invalid_argument("verify_derivative_recurrence: order < 1");
    for (unsigned n = 0; n + 1 <= table.order(); ++n) {
        for (PointId x : space.points()) {
            if (space.mass(x) == 0) continue;
            const ExtRat& lhs = table.value(n + 1, x);
            const ExtRat& h1 = table.value(1, x);
            // E(h_{phi^n}) evaluated on the fiber over x, 0 on massless fibers
            Rat fiber_mass = 0, integral = 0;
            for (PointId y : map.preimage(x)) {
                fiber_mass += space.mass(y);
                const ExtRat& hn = table.value(n, y);
                if (hn.is_infinite()) return false;
                integral += hn.finite_value() * space.mass(y);
            }
            ExtRat expect = fiber_mass == 0 ? ExtRat(Rat(0)) : ExtRat(integral / fiber_mass);
            if (lhs != h1 * expect) return false;
        }
    }
    return true;
}

ExtRat bounded_below_constant(const MeasureSpace& space, const SelfMap& map,
                              const std::set<PointId>& boundary) {
    DerivativeTable table = derivative_table(space, map, 1);
    std::optional<ExtRat> best;
    for (PointId x : space.points()) {
        if (space.mass(x) == 0 || boundary.count(x)) continue;
        const ExtRat& h = table.value(1, x);
        if (!best || h < *best) best = h;
    }
    return best.value_or(ExtRat::infinity());
}

ExtRat norm_squared_upper(const MeasureSpace& space, const SelfMap& map,
                          const std::set<PointId>& boundary) {
    DerivativeTable table = derivative_table(space, map, 1);
    ExtRat best(Rat(0));
    for (PointId x : space.points()) {
        if (space.mass(x) == 0 || boundary.count(x)) continue;
        const ExtRat& h = table.value(1, x);
        if (best < h) best = h;
    }
    return best;
}

DisjointUnion disjoint_union(const std::vector<std::pair<MeasureSpace, SelfMap>>& parts) {
    if (parts.empty()) throw std::invalid_argument("disjoint_union: no components");
    std::vector<PointId> points;
    std::map<PointId, Rat> mass;
    std::map<PointId, PointId> image;
    std::map<PointId, std::pair<std::size_t, PointId>> origin;
    PointId offset = 0;
    for (std::size_t c = 0; c < parts.size(); ++c) {
        const auto& [sp, mp] = parts[c];
        std::map<PointId, PointId> relabel;
        PointId next = offset;
        for (PointId p : sp.points()) relabel[p] = next++;
        for (PointId p : sp.points()) {
            PointId q = relabel[p];
            points.push_back(q);
            mass[q] = sp.mass(p);
            image[q] = relabel[mp.image(p)];
            origin[q] = {c, p};
        }
        offset = next;
    }
    MeasureSpace space(std::move(points), std::move(mass));
    SelfMap map(space, std::move(image));
    return {std::move(space), std::move(map), std::move(origin)};
}

}  // namespace subnorm
