#pragma once

#include "subnorm/measure.hpp"
#include "subnorm/mspace.hpp"

#include <optional>
#include <string>
#include <variant>

namespace subnorm {

/// One probability measure P(x,.) per point of the space.
class Family {
public:
    Family() = default;
    explicit Family(std::map<PointId, AtomicMeasure> measures);

    const AtomicMeasure& at(PointId x) const;
    const std::map<PointId, AtomicMeasure>& measures() const { return measures_; }
    /// Checks the family covers every point and each measure has mass 1.
    void validate_for(const MeasureSpace& space) const;

private:
    std::map<PointId, AtomicMeasure> measures_;
};

enum class Status { Subnormal, NotSubnormal, Inconclusive };

struct Verdict {
    Status status;
    std::string witness;                // human-readable reason
    std::optional<PointId> point;       // violating / certifying point when applicable
    std::optional<Family> certificate;  // present for every Subnormal verdict
    unsigned window = 0;                // depth of the moment window used
    std::string determinacy;            // surrogate used, when one was ("compact-support", ...)
};

/// Parameters of the fixed-point chain construction: a seed measure
/// concentrated on (1,infty), the mass at point 1, and a truncation depth.
struct GeneratorSpec {
    AtomicMeasure seed;  // theta
    Rat mu1;             // mu(1)
    unsigned depth;      // points 0..depth

    /// alpha = integral of 1/(t-1) d theta; requires all atoms > 1.
    Rat alpha() const;
    void validate() const;  // throws SpecViolation
};

struct SpecViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MassOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivideByZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckResult {
    bool ok;
    std::optional<PointId> witness;
};

using Boundary = std::set<PointId>;

/// Consistency condition at atomic scale: for every x whose fiber has
/// positive mass, t*P(x,dt) equals sum over positive-mass preimages y of
/// (mu(y)/mu(x)) P(y,.), as exact atomic measures. Points whose fiber
/// touches the truncation boundary are skipped (marked unchecked).
CheckResult verify_cc(const MeasureSpace& space, const SelfMap& map, const Family& family,
                      const Boundary& boundary = {});

/// Strong consistency condition: P(x,.) = t*P(phi(x),dt)/h(phi(x)) at
/// every positive-mass x. Throws DivideByZero when h(phi(x)) = 0.
CheckResult verify_scc(const MeasureSpace& space, const SelfMap& map, const Family& family,
                       const Boundary& boundary = {});

/// h_{phi^n}(x) equals the n-th moment of P(x,.) exactly, for all n up to
/// the table order and all positive-mass x outside the boundary horizon.
bool verify_moment_identity(const MeasureSpace& space, const SelfMap& map, const Family& family,
                            const DerivativeTable& table, const Boundary& boundary = {});

struct SccConsequences {
    bool no_mass_at_zero;        // P(x,{0}) = 0 everywhere
    bool negative_moment_measure;  // (1/t^n) P(x,dt) = P(phi^n(x),.)/prod h
    bool forward_moment_product;   // n-th moment of P(phi^n(x),.) = prod h
    bool negative_moment_product;  // integral t^{-n} dP(x) = 1/prod h
    bool product_inequalities;     // both inequalities of the product chain
    bool all() const {
        return no_mass_at_zero && negative_moment_measure && forward_moment_product &&
               negative_moment_product && product_inequalities;
    }
};

SccConsequences verify_scc_consequences(const MeasureSpace& space, const SelfMap& map,
                                        const Family& family, unsigned n_max,
                                        const Boundary& boundary = {});

/// E(h_{phi^n}) = h_{phi^n} at positive-mass points for all n <= order,
/// cross-checked through the composed-product identities.
bool verify_expectation_invariance(const MeasureSpace& space, const SelfMap& map,
                                   const DerivativeTable& table);

/// P_j(x,.) = pushforward of P(x,.) under t -> t^j.
Family power_family(const Family& family, unsigned j);

/// CC for the j-th iterate of the map, with the pushforward family.
CheckResult verify_cc_power(const MeasureSpace& space, const SelfMap& map, const Family& family,
                            unsigned j, const Boundary& boundary = {});

/// sum_{j<=n} h_{phi^j}(x) <= (n+1)(1 + h_{phi^n}(x)) at positive-mass
/// points whose horizon covers order n.
bool verify_domain_inequality(const MeasureSpace& space, const SelfMap& map,
                              const DerivativeTable& table, unsigned n,
                              const Boundary& boundary = {});

struct LocalStep {
    AtomicMeasure measure;  // theta-tilde at x (may carry an atom at 0)
    Rat epsilon;            // the defect mass placed at 0
};

/// One local-consistency step: assembles the parent representing measure
/// from child measures. Throws MassOverflow when the children carry more
/// than unit (1/t)-mass, which certifies no such measure exists.
LocalStep local_consistency_step(const MeasureSpace& space, const SelfMap& map, PointId x,
                                 const std::map<PointId, AtomicMeasure>& child_measures);

struct DecideOptions {
    Boundary boundary;
    RepresentingMeasureOptions search;
};

/// Window pipeline: derivative table, positivity of h, per-point Hankel
/// windows, certificate search, CC replay.
Verdict decide_subnormal_discrete(const MeasureSpace& space, const SelfMap& map, unsigned depth,
                                  const DecideOptions& opts = {});

struct GeneratedExample {
    MeasureSpace space;
    SelfMap map;
    Family family;
    DerivativeTable expected;  // closed-form h values, valid inside the horizon
    ExtRat norm_squared;
    Rat epsilon;  // defect mass at atom 1 in P(0,.)
    Boundary boundary;
};

/// Truncated fixed-point chain: phi(0)=0, phi(n)=n-1, masses and family
/// from the seed measure. The deepest point is the truncation boundary.
GeneratedExample generate_fixed_point_example(const GeneratorSpec& spec);

/// When h is phi-invariant, the family P(x,.) = delta at h(phi(x)) passes
/// CC; otherwise reports the first witness of non-invariance.
std::variant<Family, PointId> quasinormal_family(const MeasureSpace& space, const SelfMap& map,
                                                 const Boundary& boundary = {});

}  // namespace subnorm
