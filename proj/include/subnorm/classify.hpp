#pragma once

#include "subnorm/consistency.hpp"

#include <vector>

namespace subnorm {

enum class OrbitKind { TypeI, TypeII, TypeIII, TruncatedUnknown };

/// A maximal invariant component of an injective symbol.
/// TypeIII points are listed along the cycle starting from the smallest id;
/// path components are listed from head to tail.
struct OrbitComponent {
    OrbitKind kind;
    std::vector<PointId> points;
    unsigned cycle_length = 0;  // set for TypeIII
};

struct NotInjective : std::runtime_error {
    PointId witness;
    explicit NotInjective(PointId x)
        : std::runtime_error("map is not injective at " + std::to_string(x)), witness(x) {}
};

struct NotARoot : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Window marks for truncated orbits. A point in `exits` has its stored
/// image ignored (the true image lies outside the window); a point in
/// `entries` may have a preimage outside the window.
struct WindowMarks {
    std::set<PointId> exits;
    std::set<PointId> entries;
};

/// Partition of an injective symbol into maximal invariant components.
/// A path whose head is a genuine orbit start is TypeI; if the head is an
/// entry mark the window cannot distinguish a one-sided from a two-sided
/// orbit and the component is TruncatedUnknown. Cycles are TypeIII.
std::vector<OrbitComponent> decompose_orbits(const MeasureSpace& space, const SelfMap& map,
                                             const WindowMarks& marks = {});

/// Per-component verdict: TypeI is never subnormal; a cycle is subnormal
/// iff its masses are constant (unitary case); the remaining kinds are
/// delegated to the window pipeline on the restricted component.
Verdict component_verdict(const MeasureSpace& space, const SelfMap& map,
                          const OrbitComponent& component, const WindowMarks& marks = {});

/// Telescoping product of h along every orbit of a root of the identity:
/// h(x) * h(phi^{-1}(x)) * ... over a full cycle equals 1 at every
/// positive-mass point.
bool verify_cycle_product(const MeasureSpace& space, const SelfMap& map, unsigned n);

struct RootReport {
    bool bijective;
    bool h_power_n_is_one;      // h_{phi^n} = 1 at every point
    bool unitary;               // h_phi = 1 at every positive-mass point
    Status verdict;             // Subnormal iff unitary
    bool selfadjoint_candidate; // involution with paired equal masses
};

RootReport analyze_root_of_identity(const MeasureSpace& space, const SelfMap& map, unsigned n);

}  // namespace subnorm
