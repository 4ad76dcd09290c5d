#pragma once

#include "subnorm/consistency.hpp"

#include <map>
#include <set>
#include <vector>

namespace subnorm {

struct WindowExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SizeOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotRepresenting : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BoundaryIncomplete : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Generation data of a rootless leafless directed tree with constant
/// valence kappa_m and mass alpha_m per generation, restricted to the
/// window [m_lo, m_hi]. The window must contain generation 0, which
/// anchors the normalized preimage count kappa_hat.
class TreeProfile {
public:
    TreeProfile(long m_lo, long m_hi, std::map<long, unsigned> kappa, std::map<long, Rat> alpha);

    long m_lo() const { return m_lo_; }
    long m_hi() const { return m_hi_; }
    unsigned kappa(long m) const;  // valence, defined on [m_lo, m_hi - 1]
    const Rat& alpha(long m) const;

    /// kappa_hat(0) = 1; kappa_hat(m) = kappa_0 ... kappa_{m-1} for m > 0
    /// and the reciprocal product 1/(kappa_m ... kappa_{-1}) for m < 0.
    /// Satisfies kappa(m) * kappa_hat(m) = kappa_hat(m+1).
    Rat kappa_hat(long m) const;
    /// gamma_m = alpha_m * kappa_hat(m): the two-sided moment candidate.
    Rat gamma(long m) const;

private:
    long m_lo_;
    long m_hi_;
    std::map<long, unsigned> kappa_;
    std::map<long, Rat> alpha_;
};

/// h_{phi^n} on generation m, by the closed form
/// (alpha_{m+n}/alpha_m) * kappa_m ... kappa_{m+n-1}.
Rat tree_derivative(const TreeProfile& profile, unsigned n, long m);

/// Window verdict: {gamma_m} over [m_lo, m_hi] must be a two-sided
/// Stieltjes window. A pass yields Subnormal; the certificate carries the
/// generation measures (keyed by m - m_lo) when a window representing
/// measure nu for the normalized sequence gamma_m / alpha_0 is found.
Verdict tree_subnormal(const TreeProfile& profile,
                       const RepresentingMeasureOptions& search = {});

/// Generation-indexed probability measures
/// P(G_m, dt) = (alpha_0 / gamma_m) t^m nu(dt).
/// Throws NotRepresenting unless the m-th moment of nu equals
/// gamma_m / alpha_0 for every m in the window.
std::map<long, AtomicMeasure> tree_family(const TreeProfile& profile, const AtomicMeasure& nu);

struct TreeBounds {
    Rat norm_squared;       // sup supp nu
    Rat bounded_below_sq;   // inf supp nu
    bool left_semi_fredholm;  // inf supp nu > 0
};

TreeBounds tree_bounds(const TreeProfile& profile, const AtomicMeasure& nu);

struct TreeSlice {
    MeasureSpace space;
    SelfMap map;  // parent map; the anchor carries a self-loop
    Boundary boundary;  // anchor (incomplete fiber) and the deepest generation
    std::map<PointId, long> generation;
};

/// Finite slice: one anchor at generation 0, kappa_m children per point of
/// generation m, masses alpha_m, map = parent. Requires the window to
/// cover [0, depth].
TreeSlice materialize_tree(const TreeProfile& profile, unsigned depth,
                           std::size_t point_budget = 4096);

/// A weighted shift on a rootless tree, windowed. A vertex in `boundary`
/// may lack its parent or part of its children inside the window.
struct WeightedTree {
    std::vector<PointId> vertices;
    std::map<PointId, PointId> parent;  // absent only for boundary vertices
    std::map<PointId, Rat> lambda2;     // squared weights, > 0
    PointId anchor;
    std::set<PointId> boundary;
};

struct ShiftModel {
    MeasureSpace space;
    SelfMap map;  // parent map; parentless boundary vertices get self-loops
    Boundary boundary;
};

/// Composition model of the weighted shift: masses propagated from
/// mu(anchor) = 1 by mu(v) = lambda2_v * mu(parent(v)), map = parent.
ShiftModel shift_to_composition(const WeightedTree& tree);

/// The local consistency condition of the shift: for every interior u,
/// mu_u = sum over children v of lambda2_v * (1/t) mu_v, exactly. When it
/// holds, the same measures pass verify_cc on the composition model.
CheckResult verify_shift_consistency(const WeightedTree& tree, const ShiftModel& model,
                                     const std::map<PointId, AtomicMeasure>& measures);

}  // namespace subnorm
