#include "subnorm/lifting.hpp"

namespace subnorm {

ProductSpace::ProductSpace(std::vector<ProductPoint> points, std::map<ProductPoint, Rat> rho)
    : points_(std::move(points)), rho_(std::move(rho)) {
    for (const auto& p : points_)
        if (!rho_.count(p)) throw std::invalid_argument("ProductSpace: missing rho value");
}

const Rat& ProductSpace::rho(const ProductPoint& p) const {
    auto it = rho_.find(p);
    if (it == rho_.end()) throw std::out_of_range("ProductSpace: unknown product point");
    return it->second;
}

Rat ProductSpace::total_mass() const {
    Rat total = 0;
    for (const auto& [p, m] : rho_) total += m;
    return total;
}

LiftedMap::LiftedMap(const ProductSpace& product, const SelfMap& base) {
    for (const auto& p : product.points()) {
        ProductPoint q{base.image(p.x), p.t};
        if (!product.contains(q))
            throw std::invalid_argument("LiftedMap: image point missing from product");
        image_[p] = q;
        preimage_[q].insert(p);
    }
}

ProductPoint LiftedMap::image(const ProductPoint& p) const {
    auto it = image_.find(p);
    if (it == image_.end()) throw std::out_of_range("LiftedMap: unknown product point");
    return it->second;
}

const std::set<ProductPoint>& LiftedMap::preimage(const ProductPoint& p) const {
    auto it = preimage_.find(p);
    return it == preimage_.end() ? empty_ : it->second;
}

Lift build_lift(const MeasureSpace& space, const SelfMap& map, const Family& family,
                const Boundary& boundary) {
    family.validate_for(space);
    std::map<ProductPoint, Rat> rho;
    for (PointId x : space.points())
        for (const auto& atom : family.at(x).atoms()) {
            Rat m = space.mass(x) * atom.w;
            if (m > 0) rho[{x, atom.t}] = m;
        }
    // close under the lifted map so it stays total; added points carry rho 0
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<ProductPoint> frontier;
        for (const auto& [p, m] : rho) {
            ProductPoint q{map.image(p.x), p.t};
            if (!rho.count(q)) frontier.push_back(q);
        }
        for (const auto& q : frontier) {
            rho.emplace(q, Rat(0));
            grew = true;
        }
    }
    std::vector<ProductPoint> points;
    for (const auto& [p, m] : rho) points.push_back(p);
    ProductSpace product(std::move(points), std::move(rho));
    LiftedMap lifted(product, map);
    return {std::move(product), std::move(lifted), boundary};
}

namespace {

bool base_fiber_clear(const LiftedMap& lifted, const ProductPoint& p, const Boundary& boundary) {
    if (boundary.count(p.x)) return false;
    for (const auto& q : lifted.preimage(p))
        if (boundary.count(q.x)) return false;
    return true;
}

Rat lift_derivative(const ProductSpace& product, const LiftedMap& lifted, const ProductPoint& p) {
    Rat num = 0;
    for (const auto& q : lifted.preimage(p)) num += product.rho(q);
    return num / product.rho(p);
}

}  // namespace

CheckResult verify_lift_derivative(const MeasureSpace& space, const Lift& lift) {
    (void)space;
    for (const auto& p : lift.product.points()) {
        if (lift.product.rho(p) == 0) continue;
        if (!base_fiber_clear(lift.map, p, lift.base_boundary)) continue;
        if (lift_derivative(lift.product, lift.map, p) != p.t) return {false, p.x};
    }
    return {true, std::nullopt};
}

CheckResult verify_lift_quasinormal(const MeasureSpace& space, const Lift& lift) {
    (void)space;
    for (const auto& p : lift.product.points()) {
        if (lift.product.rho(p) == 0) continue;
        ProductPoint q = lift.map.image(p);
        if (lift.product.rho(q) == 0) continue;
        if (!base_fiber_clear(lift.map, p, lift.base_boundary)) continue;
        if (!base_fiber_clear(lift.map, q, lift.base_boundary)) continue;
        if (lift_derivative(lift.product, lift.map, p) !=
            lift_derivative(lift.product, lift.map, q))
            return {false, p.x};
    }
    return {true, std::nullopt};
}

}  // namespace subnorm
