#pragma once

#include "subnorm/consistency.hpp"

#include <map>
#include <set>
#include <vector>

namespace subnorm {

/// A point of the product space X x T: a base point paired with an atom.
struct ProductPoint {
    PointId x;
    Rat t;
    bool operator==(const ProductPoint& o) const { return x == o.x && t == o.t; }
    bool operator<(const ProductPoint& o) const {
        return x != o.x ? x < o.x : t < o.t;
    }
};

/// Product of the base space with the finite atom union T, carrying
/// rho(x,t) = mu(x) * P(x,{t}). Zero-mass product points are dropped.
class ProductSpace {
public:
    ProductSpace(std::vector<ProductPoint> points, std::map<ProductPoint, Rat> rho);

    const std::vector<ProductPoint>& points() const { return points_; }
    const Rat& rho(const ProductPoint& p) const;
    bool contains(const ProductPoint& p) const { return rho_.count(p) != 0; }
    Rat total_mass() const;

private:
    std::vector<ProductPoint> points_;
    std::map<ProductPoint, Rat> rho_;
};

/// The lifted transformation (x,t) -> (phi(x),t).
class LiftedMap {
public:
    LiftedMap(const ProductSpace& product, const SelfMap& base);

    ProductPoint image(const ProductPoint& p) const;
    const std::set<ProductPoint>& preimage(const ProductPoint& p) const;

private:
    std::map<ProductPoint, ProductPoint> image_;
    std::map<ProductPoint, std::set<ProductPoint>> preimage_;
    std::set<ProductPoint> empty_;
};

struct Lift {
    ProductSpace product;
    LiftedMap map;
    Boundary base_boundary;  // carried over for interiority checks
};

/// Materializes rho and Phi for a probability family.
/// Product points over phi-images outside the base space never occur
/// (the base map is total); points of zero rho-mass are dropped, except
/// that every (x,t) in the image of the lifted map is kept so the map
/// stays total on the product.
Lift build_lift(const MeasureSpace& space, const SelfMap& map, const Family& family,
                const Boundary& boundary = {});

/// h_Phi(x,t) computed on the product equals t at every positive-rho
/// interior point.
CheckResult verify_lift_derivative(const MeasureSpace& space, const Lift& lift);

/// h_Phi = h_Phi o Phi at positive-rho interior points (quasinormality).
CheckResult verify_lift_quasinormal(const MeasureSpace& space, const Lift& lift);

}  // namespace subnorm
