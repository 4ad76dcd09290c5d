#include "subnorm/classify.hpp"

#include <algorithm>

namespace subnorm {

std::vector<OrbitComponent> decompose_orbits(const MeasureSpace& space, const SelfMap& map,
                                             const WindowMarks& marks) {
    // effective edges: x -> image(x), except at window exits
    std::map<PointId, PointId> succ;
    std::map<PointId, PointId> pred;
    for (PointId x : space.points()) {
        if (marks.exits.count(x)) continue;
        PointId y = map.image(x);
        if (pred.count(y)) throw NotInjective(y);
        succ[x] = y;
        pred[y] = x;
    }

    std::set<PointId> unseen(space.points().begin(), space.points().end());
    std::vector<OrbitComponent> out;
    // anchor each component at its smallest unvisited id for determinism
    while (!unseen.empty()) {
        PointId anchor = *unseen.begin();
        // walk back to the head (or around the cycle)
        PointId head = anchor;
        std::set<PointId> visited = {head};
        bool cycle = false;
        while (pred.count(head)) {
            head = pred.at(head);
            if (!visited.insert(head).second) {  // returned to a seen point: cycle
                cycle = true;
                break;
            }
        }
        OrbitComponent comp;
        if (cycle) {
            // traverse the cycle from its smallest point
            PointId start = *std::min_element(visited.begin(), visited.end());
            comp.kind = OrbitKind::TypeIII;
            PointId cur = start;
            do {
                comp.points.push_back(cur);
                cur = succ.at(cur);
            } while (cur != start);
            comp.cycle_length = static_cast<unsigned>(comp.points.size());
        } else {
            comp.kind = marks.entries.count(head) ? OrbitKind::TruncatedUnknown : OrbitKind::TypeI;
            PointId cur = head;
            comp.points.push_back(cur);
            while (succ.count(cur)) {
                cur = succ.at(cur);
                comp.points.push_back(cur);
            }
        }
        for (PointId p : comp.points) unseen.erase(p);
        out.push_back(std::move(comp));
    }
    std::sort(out.begin(), out.end(),
              [](const OrbitComponent& a, const OrbitComponent& b) {
                  return a.points.front() < b.points.front();
              });
    return out;
}

Verdict component_verdict(const MeasureSpace& space, const SelfMap& map,
                          const OrbitComponent& component, const WindowMarks& marks) {
    if (component.kind == OrbitKind::TypeI) {
        return {Status::NotSubnormal, "one-sided orbit: not subnormal (not even hyponormal)",
                component.points.front(), std::nullopt, 0, ""};
    }
    if (component.kind == OrbitKind::TypeIII) {
        const Rat& m0 = space.mass(component.points.front());
        for (PointId p : component.points) {
            if (space.mass(p) != m0)
                return {Status::NotSubnormal, "cycle with non-constant masses: not unitary", p,
                        std::nullopt, 0, ""};
        }
        std::map<PointId, AtomicMeasure> fam;
        for (PointId p : component.points) fam.emplace(p, AtomicMeasure::dirac(Rat(1)));
        return {Status::Subnormal, "unitary cycle (h = 1)", std::nullopt,
                Family(std::move(fam)), 0, ""};
    }
    // two-sided or indistinguishable window: delegate to the window pipeline
    std::vector<PointId> pts = component.points;
    std::map<PointId, Rat> mass;
    std::map<PointId, PointId> image;
    Boundary boundary;
    for (PointId p : pts) {
        mass[p] = space.mass(p);
        if (marks.exits.count(p)) {
            image[p] = p;  // placeholder, masked by the boundary
            boundary.insert(p);
        } else {
            image[p] = map.image(p);
        }
        if (marks.entries.count(p)) boundary.insert(p);
    }
    MeasureSpace sub(std::move(pts), std::move(mass));
    SelfMap submap(sub, std::move(image));
    unsigned depth = std::max<unsigned>(2, std::min<unsigned>(6, static_cast<unsigned>(
                                                                    component.points.size())));
    DecideOptions opts;
    opts.boundary = std::move(boundary);
    return decide_subnormal_discrete(sub, submap, depth, opts);
}

static void require_root(const MeasureSpace& space, const SelfMap& map, unsigned n) {
    if (n == 0) throw NotARoot("n must be positive");
    for (PointId x : space.points())
        if (map.iterate(x, n) != x)
            throw NotARoot("phi^n is not the identity at " + std::to_string(x));
}

bool verify_cycle_product(const MeasureSpace& space, const SelfMap& map, unsigned n) {
    require_root(space, map, n);
    DerivativeTable table = derivative_table(space, map, 1);
    for (PointId x : space.points()) {
        if (space.mass(x) == 0) continue;
        Rat prod = 1;
        PointId cur = x;
        for (unsigned j = 0; j < n; ++j) {
            prod *= table.value(1, cur).finite_value();
            cur = map.iterate(cur, n - 1);  // phi^{-1} = phi^{n-1} for a root
        }
        if (prod != 1) return false;
    }
    return true;
}

RootReport analyze_root_of_identity(const MeasureSpace& space, const SelfMap& map, unsigned n) {
    require_root(space, map, n);
    RootReport r{};
    r.bijective = map.is_injective(space);
    DerivativeTable table = derivative_table(space, map, n);
    r.h_power_n_is_one = true;
    for (PointId x : space.points())
        if (table.value(n, x) != ExtRat(Rat(1))) r.h_power_n_is_one = false;
    r.unitary = true;
    for (PointId x : space.points()) {
        if (space.mass(x) == 0) continue;
        if (table.value(1, x) != ExtRat(Rat(1))) r.unitary = false;
    }
    r.verdict = r.unitary ? Status::Subnormal : Status::NotSubnormal;
    r.selfadjoint_candidate = true;
    for (PointId x : space.points()) {
        if (map.iterate(x, 2) != x || space.mass(x) != space.mass(map.image(x)))
            r.selfadjoint_candidate = false;
    }
    return r;
}

}  // namespace subnorm
