#pragma once

#include "subnorm/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace subnorm {

using PointId = unsigned long;

/// Finite set of atoms with nonnegative rational masses.
class MeasureSpace {
public:
    MeasureSpace(std::vector<PointId> points, std::map<PointId, Rat> mass);

    const std::vector<PointId>& points() const { return points_; }
    const Rat& mass(PointId x) const;
    bool contains(PointId x) const { return mass_.count(x) != 0; }
    Rat total_mass() const;

private:
    std::vector<PointId> points_;
    std::map<PointId, Rat> mass_;
};

/// Total transformation of a space's point set, with cached preimages.
class SelfMap {
public:
    SelfMap(const MeasureSpace& space, std::map<PointId, PointId> image);

    PointId image(PointId x) const;
    const std::set<PointId>& preimage(PointId x) const;
    PointId iterate(PointId x, unsigned n) const;
    /// phi^{-n}(S), computed by iterated preimage.
    std::set<PointId> iterated_preimage(const std::set<PointId>& s, unsigned n) const;
    bool is_injective(const MeasureSpace& space) const;

private:
    std::map<PointId, PointId> image_;
    std::map<PointId, std::set<PointId>> preimage_;
    std::set<PointId> empty_;
};

/// Values of h_{phi^n}(x) for n = 0..order. h_{phi^0} = 1 by convention,
/// and h(x) = 1 whenever mu(x) = 0 (the 0/0 = 1 convention).
class DerivativeTable {
public:
    DerivativeTable(unsigned order, std::map<std::pair<unsigned, PointId>, ExtRat> values)
        : order_(order), values_(std::move(values)) {}

    unsigned order() const { return order_; }
    const ExtRat& value(unsigned n, PointId x) const;

private:
    unsigned order_;
    std::map<std::pair<unsigned, PointId>, ExtRat> values_;
};

struct NonsingularityViolation : std::runtime_error {
    PointId witness;
    explicit NonsingularityViolation(PointId x)
        : std::runtime_error("map is singular at point " + std::to_string(x)), witness(x) {}
};

struct NonsingularCheck {
    bool ok;
    std::optional<PointId> witness;  // violating point when !ok
};

/// True iff every mu-null point has mu-null preimage.
NonsingularCheck check_nonsingular(const MeasureSpace& space, const SelfMap& map);

DerivativeTable derivative_table(const MeasureSpace& space, const SelfMap& map, unsigned order);

/// Fiber-averaging conditional expectation; equals 1 on fibers of zero
/// total mass, and acts as the identity on singleton fibers.
std::map<PointId, Rat> conditional_expectation(const MeasureSpace& space, const SelfMap& map,
                                               const std::map<PointId, Rat>& f);

/// Checks the transport identity
///   sum_x f(phi(x))/h(phi(x)) mu(x)  ==  sum over {h > 0} of f dmu
/// as exact rationals. Requires f >= 0 and h finite.
bool verify_transport_identity(const MeasureSpace& space, const SelfMap& map,
                               const std::map<PointId, Rat>& f);

/// Checks h_{phi^{n+1}} = h_phi * E(h_{phi^n}) o phi^{-1} at every
/// positive-mass point, for all n < table.order().
bool verify_derivative_recurrence(const MeasureSpace& space, const SelfMap& map,
                                  const DerivativeTable& table);

/// inf of h_phi over positive-mass points outside the truncation boundary;
/// C_phi is bounded below iff positive.
ExtRat bounded_below_constant(const MeasureSpace& space, const SelfMap& map,
                              const std::set<PointId>& boundary = {});

/// sup of h_phi over positive-mass points outside the truncation boundary;
/// equals ||C_phi||^2 when finite.
ExtRat norm_squared_upper(const MeasureSpace& space, const SelfMap& map,
                          const std::set<PointId>& boundary = {});

struct DisjointUnion {
    MeasureSpace space;
    SelfMap map;
    /// new point id -> (component index, original id)
    std::map<PointId, std::pair<std::size_t, PointId>> origin;
};

/// Relabeled disjoint union; each component is invariant with invariant complement.
DisjointUnion disjoint_union(const std::vector<std::pair<MeasureSpace, SelfMap>>& parts);

}  // namespace subnorm
