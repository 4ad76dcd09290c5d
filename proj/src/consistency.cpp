#include "subnorm/consistency.hpp"

#include <algorithm>

namespace subnorm {

Family::Family(std::map<PointId, AtomicMeasure> measures) : measures_(std::move(measures)) {}

const AtomicMeasure& Family::at(PointId x) const {
    auto it = measures_.find(x);
    if (it == measures_.end())
        throw std::out_of_range("Family: no measure for point " + std::to_string(x));
    return it->second;
}

void Family::validate_for(const MeasureSpace& space) const {
    for (PointId x : space.points()) {
        const AtomicMeasure& p = at(x);
        if (p.total_mass() != 1)
            throw std::invalid_argument("Family: P(" + std::to_string(x) +
                                        ",.) is not a probability measure");
    }
}

Rat GeneratorSpec::alpha() const {
    Rat a = 0;
    for (const auto& atom : seed.atoms()) {
        if (atom.t <= 1) throw SpecViolation("seed measure has an atom in [0,1]");
        a += atom.w / (atom.t - 1);
    }
    return a;
}

void GeneratorSpec::validate() const {
    if (seed.empty()) throw SpecViolation("seed measure is empty");
    if (seed.total_mass() != 1) throw SpecViolation("seed measure must have total mass 1");
    Rat a = alpha();  // also rejects atoms <= 1
    if (mu1 <= 0 || mu1 * a > 1) throw SpecViolation("mu(1) must lie in (0, 1/alpha]");
    if (depth < 2) throw SpecViolation("depth must be at least 2");
}

namespace {

// Largest n <= max_n such that the iterated preimages of {x} up to level
// n-1 stay clear of the truncation boundary; h_{phi^n}(x) is trustworthy
// exactly for those n.
unsigned horizon(const SelfMap& map, PointId x, const Boundary& boundary, unsigned max_n) {
    if (boundary.empty()) return max_n;
    std::set<PointId> level = {x};
    for (unsigned n = 1; n <= max_n; ++n) {
        for (PointId y : level)
            if (boundary.count(y)) return n - 1;
        level = map.iterated_preimage(level, 1);
    }
    return max_n;
}

bool fiber_touches(const SelfMap& map, PointId x, const Boundary& boundary) {
    for (PointId y : map.preimage(x))
        if (boundary.count(y)) return true;
    return false;
}

Rat fiber_mass(const MeasureSpace& space, const SelfMap& map, PointId x) {
    Rat m = 0;
    for (PointId y : map.preimage(x)) m += space.mass(y);
    return m;
}

Rat finite_h(const DerivativeTable& table, unsigned n, PointId x) {
    const ExtRat& v = table.value(n, x);
    if (v.is_infinite()) throw std::logic_error("infinite derivative value");
    return v.finite_value();
}

AtomicMeasure weighted_by_inv_tn(const AtomicMeasure& m, unsigned n) {
    AtomicMeasure out = m;
    for (unsigned i = 0; i < n; ++i) out = out.weighted_by_inv_t();
    return out;
}

}  // namespace

CheckResult verify_cc(const MeasureSpace& space, const SelfMap& map, const Family& family,
                      const Boundary& boundary) {
    for (PointId x : space.points()) {
        if (fiber_mass(space, map, x) == 0) continue;
        if (boundary.count(x) || fiber_touches(map, x, boundary)) continue;
        if (space.mass(x) == 0) throw NonsingularityViolation(x);
        AtomicMeasure lhs = family.at(x).weighted_by_t();
        AtomicMeasure rhs;
        for (PointId y : map.preimage(x)) {
            if (space.mass(y) == 0) continue;
            rhs = rhs + family.at(y).scaled(space.mass(y) / space.mass(x));
        }
        if (lhs != rhs) return {false, x};
    }
    return {true, std::nullopt};
}

CheckResult verify_scc(const MeasureSpace& space, const SelfMap& map, const Family& family,
                       const Boundary& boundary) {
    for (PointId x : space.points()) {
        if (space.mass(x) == 0) continue;
        PointId px = map.image(x);
        if (boundary.count(x) || boundary.count(px) || fiber_touches(map, px, boundary)) continue;
        Rat h = fiber_mass(space, map, px) / space.mass(px);
        if (h == 0)
            throw DivideByZero("verify_scc: h(phi(" + std::to_string(x) + ")) = 0");
        AtomicMeasure rhs = family.at(px).weighted_by_t().scaled(1 / h);
        if (family.at(x) != rhs) return {false, x};
    }
    return {true, std::nullopt};
}

bool verify_moment_identity(const MeasureSpace& space, const SelfMap& map, const Family& family,
                            const DerivativeTable& table, const Boundary& boundary) {
    for (PointId x : space.points()) {
        if (space.mass(x) == 0) continue;
        unsigned n_max = horizon(map, x, boundary, table.order());
        for (unsigned n = 0; n <= n_max; ++n) {
            if (finite_h(table, n, x) != family.at(x).moment(static_cast<long>(n))) return false;
        }
    }
    return true;
}

SccConsequences verify_scc_consequences(const MeasureSpace& space, const SelfMap& map,
                                        const Family& family, unsigned n_max,
                                        const Boundary& boundary) {
    SccConsequences r{true, true, true, true, true};
    DerivativeTable table = derivative_table(space, map, 1);
    for (PointId x : space.points()) {
        if (space.mass(x) == 0 || boundary.count(x)) continue;
        if (family.at(x).has_atom_at_zero()) r.no_mass_at_zero = false;
        for (unsigned n = 1; n <= n_max; ++n) {
            // forward orbit must stay clear of untrusted h values
            bool usable = true;
            std::vector<PointId> orbit(2 * n + 1);
            orbit[0] = x;
            for (unsigned j = 1; j <= 2 * n; ++j) {
                orbit[j] = map.image(orbit[j - 1]);
                if (boundary.count(orbit[j]) || fiber_touches(map, orbit[j], boundary))
                    usable = false;
            }
            if (!usable) continue;
            Rat prod_first = 1, prod_second = 1;
            for (unsigned j = 1; j <= n; ++j) prod_first *= finite_h(table, 1, orbit[j]);
            for (unsigned j = n + 1; j <= 2 * n; ++j) prod_second *= finite_h(table, 1, orbit[j]);
            if (prod_first == 0) continue;  // SCC precondition failed upstream

            const AtomicMeasure& px = family.at(x);
            const AtomicMeasure& pn = family.at(orbit[n]);
            if (weighted_by_inv_tn(px, n) != pn.scaled(1 / prod_first))
                r.negative_moment_measure = false;
            if (pn.moment(static_cast<long>(n)) != prod_first) r.forward_moment_product = false;
            if (px.moment(-static_cast<long>(n)) != 1 / prod_first)
                r.negative_moment_product = false;
            Rat mom = px.moment(static_cast<long>(n));
            if (!(prod_second <= prod_first && prod_first <= mom)) r.product_inequalities = false;
        }
    }
    return r;
}

bool verify_expectation_invariance(const MeasureSpace& space, const SelfMap& map,
                                   const DerivativeTable& table) {
    if (table.order() < 2) throw std::invalid_argument("verify_expectation_invariance: order < 2");
    for (unsigned n = 1; n <= table.order(); ++n) {
        std::map<PointId, Rat> f;
        for (PointId x : space.points()) f[x] = finite_h(table, n, x);
        auto e = conditional_expectation(space, map, f);
        for (PointId x : space.points()) {
            if (space.mass(x) == 0) continue;
            auto it = e.find(x);
            if (it != e.end() && it->second != f[x]) return false;
        }
    }
    // cross-assertions through the composed-product identities
    for (PointId x : space.points()) {
        if (space.mass(x) == 0) continue;
        for (unsigned n = 1; n < table.order(); ++n) {
            PointId px = map.image(x);
            if (finite_h(table, n + 1, px) != finite_h(table, 1, px) * finite_h(table, n, x))
                return false;
        }
        for (unsigned n = 1; n <= table.order(); ++n) {
            PointId pn = map.iterate(x, n);
            Rat prod = 1;
            for (unsigned j = 1; j <= n; ++j) prod *= finite_h(table, 1, map.iterate(x, j));
            if (finite_h(table, n, pn) != prod) return false;
            if (n + 1 <= table.order() &&
                finite_h(table, n + 1, pn) != prod * finite_h(table, 1, x))
                return false;
            // h_{m+n} o phi^n = h_n o phi^n * h_m
            for (unsigned m = 0; m + n <= table.order(); ++m) {
                if (finite_h(table, m + n, pn) !=
                    finite_h(table, n, pn) * finite_h(table, m, x))
                    return false;
            }
        }
    }
    return true;
}

Family power_family(const Family& family, unsigned j) {
    std::map<PointId, AtomicMeasure> out;
    for (const auto& [x, p] : family.measures()) out.emplace(x, pushforward_power(p, j));
    return Family(std::move(out));
}

CheckResult verify_cc_power(const MeasureSpace& space, const SelfMap& map, const Family& family,
                            unsigned j, const Boundary& boundary) {
    std::map<PointId, PointId> image_j;
    for (PointId x : space.points()) image_j[x] = map.iterate(x, j);
    SelfMap map_j(space, std::move(image_j));
    // enlarge the boundary so a skip triggers whenever any intermediate
    // preimage level within j steps is incomplete
    Boundary enlarged = boundary;
    if (!boundary.empty()) {
        for (PointId x : space.points()) {
            std::set<PointId> level = {x};
            for (unsigned i = 0; i < j && !enlarged.count(x); ++i) {
                for (PointId y : level)
                    if (boundary.count(y)) enlarged.insert(x);
                level = map.iterated_preimage(level, 1);
            }
        }
    }
    return verify_cc(space, map_j, power_family(family, j), enlarged);
}

bool verify_domain_inequality(const MeasureSpace& space, const SelfMap& map,
                              const DerivativeTable& table, unsigned n,
                              const Boundary& boundary) {
    if (table.order() < n) throw std::invalid_argument("verify_domain_inequality: order < n");
    for (PointId x : space.points()) {
        if (space.mass(x) == 0) continue;
        if (horizon(map, x, boundary, n) < n) continue;  // table values untrustworthy
        Rat sum = 0;
        for (unsigned jj = 0; jj <= n; ++jj) sum += finite_h(table, jj, x);
        if (!(sum <= Rat(n + 1) * (1 + finite_h(table, n, x)))) return false;
    }
    return true;
}

LocalStep local_consistency_step(const MeasureSpace& space, const SelfMap& map, PointId x,
                                 const std::map<PointId, AtomicMeasure>& child_measures) {
    AtomicMeasure acc;
    Rat mx = space.mass(x);
    if (fiber_mass(space, map, x) == 0)
        throw std::invalid_argument("local_consistency_step: fiber over x has zero mass");
    for (PointId y : map.preimage(x)) {
        if (space.mass(y) == 0) continue;
        auto it = child_measures.find(y);
        if (it == child_measures.end())
            throw std::invalid_argument("local_consistency_step: missing child measure at " +
                                        std::to_string(y));
        if (it->second.has_atom_at_zero())
            throw std::invalid_argument("local_consistency_step: child measure has an atom at 0");
        acc = acc + it->second.weighted_by_inv_t().scaled(space.mass(y) / mx);
    }
    Rat eps = 1 - acc.total_mass();
    if (eps < 0)
        throw MassOverflow("children carry more than unit 1/t-mass at point " + std::to_string(x));
    if (eps > 0) acc = acc + AtomicMeasure::dirac(Rat(0), eps);
    return {std::move(acc), eps};
}

Verdict decide_subnormal_discrete(const MeasureSpace& space, const SelfMap& map, unsigned depth,
                                  const DecideOptions& opts) {
    auto ns = check_nonsingular(space, map);
    if (!ns.ok) throw NonsingularityViolation(*ns.witness);
    DerivativeTable table = derivative_table(space, map, depth);
    const Boundary& boundary = opts.boundary;

    for (PointId x : space.points()) {
        if (space.mass(x) == 0 || boundary.count(x)) continue;
        if (finite_h(table, 1, x) == 0) {
            Verdict v{Status::NotSubnormal,
                      "h_phi vanishes at a positive-mass point (no preimage mass)",
                      x, std::nullopt, depth, ""};
            return v;
        }
    }

    for (PointId x : space.points()) {
        if (space.mass(x) == 0 || boundary.count(x)) continue;
        unsigned n_max = horizon(map, x, boundary, depth);
        std::vector<ExtRat> vals;
        for (unsigned n = 0; n <= n_max; ++n) vals.push_back(table.value(n, x));
        if (!is_stieltjes(MomentSequence(std::move(vals)))) {
            Verdict v{Status::NotSubnormal,
                      "Hankel window of {h_{phi^n}(x)} is not positive semidefinite",
                      x, std::nullopt, n_max, ""};
            return v;
        }
    }

    std::map<PointId, AtomicMeasure> cert;
    for (PointId x : space.points()) {
        if (space.mass(x) == 0) {
            cert.emplace(x, AtomicMeasure::dirac(Rat(1)));
            continue;
        }
        unsigned n_max = horizon(map, x, boundary, depth);
        std::vector<ExtRat> vals;
        for (unsigned n = 0; n <= n_max; ++n) vals.push_back(table.value(n, x));
        auto nu = representing_measure_window(MomentSequence(std::move(vals)), opts.search);
        if (!nu) {
            Verdict v{Status::Inconclusive,
                      "no window representing measure found at point " + std::to_string(x),
                      x, std::nullopt, n_max, ""};
            return v;
        }
        cert.emplace(x, std::move(*nu));
    }
    Family family(std::move(cert));
    auto cc = verify_cc(space, map, family, boundary);
    if (!cc.ok) {
        Verdict v{Status::Inconclusive,
                  "window certificates do not satisfy the consistency condition",
                  cc.witness, std::nullopt, depth, ""};
        return v;
    }
    Verdict v{Status::Subnormal, "consistency certificate verified", std::nullopt,
              std::move(family), depth, "compact-support-window"};
    return v;
}

GeneratedExample generate_fixed_point_example(const GeneratorSpec& spec) {
    spec.validate();
    unsigned depth = spec.depth;

    // closed-form masses, extended beyond the truncation for the expected table
    auto mu_of = [&](unsigned n) -> Rat {
        if (n == 0) return Rat(1);
        if (n == 1) return spec.mu1;
        Rat m = 0;
        for (const auto& a : spec.seed.atoms()) {
            Rat p = 1;
            for (unsigned e = 0; e + 1 < n; ++e) p *= a.t;
            m += a.w * p;
        }
        return spec.mu1 * m;
    };

    std::vector<PointId> points;
    std::map<PointId, Rat> mass;
    std::map<PointId, PointId> image;
    for (unsigned n = 0; n <= depth; ++n) {
        points.push_back(n);
        mass[n] = mu_of(n);
        image[n] = n == 0 ? 0 : n - 1;
    }
    MeasureSpace space(std::move(points), std::move(mass));
    SelfMap map(space, std::move(image));

    Rat eps = 1;
    std::map<PointId, AtomicMeasure> fam;
    {
        std::vector<AtomicMeasure::Atom> p0;
        for (const auto& a : spec.seed.atoms()) {
            Rat w = spec.mu1 * a.w / (a.t - 1);
            eps -= w;
            p0.push_back({a.t, w});
        }
        if (eps > 0) p0.push_back({Rat(1), eps});
        fam.emplace(0, AtomicMeasure(std::move(p0)));
    }
    for (unsigned k = 1; k <= depth; ++k) {
        std::vector<AtomicMeasure::Atom> pk;
        for (const auto& a : spec.seed.atoms()) {
            Rat p = 1;
            for (unsigned e = 0; e + 1 < k; ++e) p *= a.t;
            pk.push_back({a.t, spec.mu1 * a.w * p / space.mass(k)});
        }
        fam.emplace(k, AtomicMeasure(std::move(pk)));
    }
    Family family(std::move(fam));
    family.validate_for(space);

    std::map<std::pair<unsigned, PointId>, ExtRat> expected;
    for (unsigned n = 0; n <= depth; ++n) {
        Rat head = 0;  // sum of mu(0..n)
        for (unsigned j = 0; j <= n; ++j) head += mu_of(j);
        expected[{n, 0}] = ExtRat(head);
        for (unsigned k = 1; k <= depth; ++k)
            expected[{n, k}] = ExtRat(mu_of(n + k) / space.mass(k));
    }

    Rat sup_theta = *spec.seed.max_atom();
    Rat norm2 = std::max(Rat(1) + spec.mu1, sup_theta);

    return {std::move(space), std::move(map), std::move(family),
            DerivativeTable(depth, std::move(expected)), ExtRat(norm2), eps,
            Boundary{depth}};
}

std::variant<Family, PointId> quasinormal_family(const MeasureSpace& space, const SelfMap& map,
                                                 const Boundary& boundary) {
    DerivativeTable table = derivative_table(space, map, 1);
    for (PointId x : space.points()) {
        if (space.mass(x) == 0 || boundary.count(x)) continue;
        PointId px = map.image(x);
        if (boundary.count(px)) continue;
        Rat hx = finite_h(table, 1, x);
        Rat hpx = finite_h(table, 1, px);
        if (hx <= 0 || hpx <= 0)
            throw std::invalid_argument("quasinormal_family: h must be positive at " +
                                        std::to_string(x));
        if (hx != hpx) return x;
    }
    std::map<PointId, AtomicMeasure> fam;
    for (PointId x : space.points()) {
        PointId px = map.image(x);
        Rat h = boundary.count(px) ? finite_h(table, 1, x) : finite_h(table, 1, px);
        if (h <= 0) h = 1;  // zero-mass or boundary placeholder
        fam.emplace(x, AtomicMeasure::dirac(h));
    }
    return Family(std::move(fam));
}

}  // namespace subnorm
