#include "subnorm/trees.hpp"

#include <deque>

namespace subnorm {

TreeProfile::TreeProfile(long m_lo, long m_hi, std::map<long, unsigned> kappa,
                         std::map<long, Rat> alpha)
    : m_lo_(m_lo), m_hi_(m_hi), kappa_(std::move(kappa)), alpha_(std::move(alpha)) {
    if (m_lo_ > 0 || m_hi_ < 0)
        throw std::invalid_argument("TreeProfile: window must contain generation 0");
    for (long m = m_lo_; m < m_hi_; ++m) {
        auto it = kappa_.find(m);
        if (it == kappa_.end()) throw std::invalid_argument("TreeProfile: missing kappa value");
        if (it->second < 1) throw std::invalid_argument("TreeProfile: kappa must be >= 1");
    }
    for (long m = m_lo_; m <= m_hi_; ++m) {
        auto it = alpha_.find(m);
        if (it == alpha_.end()) throw std::invalid_argument("TreeProfile: missing alpha value");
        if (it->second <= 0) throw std::invalid_argument("TreeProfile: alpha must be positive");
    }
}

unsigned TreeProfile::kappa(long m) const {
    if (m < m_lo_ || m >= m_hi_) throw WindowExceeded("kappa outside window");
    return kappa_.at(m);
}

const Rat& TreeProfile::alpha(long m) const {
    if (m < m_lo_ || m > m_hi_) throw WindowExceeded("alpha outside window");
    return alpha_.at(m);
}

Rat TreeProfile::kappa_hat(long m) const {
    if (m < m_lo_ || m > m_hi_) throw WindowExceeded("kappa_hat outside window");
    Rat prod = 1;
    if (m > 0)
        for (long j = 0; j < m; ++j) prod *= kappa(j);
    else
        for (long j = m; j < 0; ++j) prod /= kappa(j);
    return prod;
}

Rat TreeProfile::gamma(long m) const { return alpha(m) * kappa_hat(m); }

Rat tree_derivative(const TreeProfile& profile, unsigned n, long m) {
    long top = m + static_cast<long>(n);
    if (m < profile.m_lo() || top > profile.m_hi())
        throw WindowExceeded("tree_derivative: m + n outside window");
    Rat value = profile.alpha(top) / profile.alpha(m);
    for (long j = m; j < top; ++j) value *= profile.kappa(j);
    return value;
}

Verdict tree_subnormal(const TreeProfile& profile, const RepresentingMeasureOptions& search) {
    std::vector<Rat> gammas;
    for (long m = profile.m_lo(); m <= profile.m_hi(); ++m) gammas.push_back(profile.gamma(m));
    unsigned window = static_cast<unsigned>(profile.m_hi() - profile.m_lo());
    TwoSidedSequence seq(profile.m_lo(), gammas);
    if (!is_two_sided_stieltjes(seq))
        return {Status::NotSubnormal,
                "generation sequence alpha_m * kappa_hat(m) fails a shifted Hankel window",
                std::nullopt, std::nullopt, window, ""};

    // one representing measure for the normalized window recovers the family
    const Rat& a0 = profile.alpha(0);
    std::vector<ExtRat> normalized;
    for (const Rat& g : gammas) normalized.emplace_back(g / a0);
    auto theta = representing_measure_window(MomentSequence(std::move(normalized)), search);
    if (theta && !theta->has_atom_at_zero()) {
        std::vector<AtomicMeasure::Atom> atoms;
        for (const auto& a : theta->atoms())
            atoms.push_back({a.t, a.w * rat_pow(a.t, -profile.m_lo())});
        AtomicMeasure nu{std::move(atoms)};
        std::map<PointId, AtomicMeasure> cert;
        for (auto& [m, p] : tree_family(profile, nu))
            cert.emplace(static_cast<PointId>(m - profile.m_lo()), std::move(p));
        return {Status::Subnormal, "two-sided Stieltjes window with representing measure",
                std::nullopt, Family(std::move(cert)), window, "compact-support-window"};
    }
    return {Status::Inconclusive,
            "two-sided Stieltjes window holds; no representing measure on the search grid",
            std::nullopt, std::nullopt, window, ""};
}

std::map<long, AtomicMeasure> tree_family(const TreeProfile& profile, const AtomicMeasure& nu) {
    const Rat& a0 = profile.alpha(0);
    std::map<long, AtomicMeasure> family;
    for (long m = profile.m_lo(); m <= profile.m_hi(); ++m) {
        Rat g = profile.gamma(m);
        if (nu.moment(m) != g / a0)
            throw NotRepresenting("nu misses the window moment at generation " +
                                  std::to_string(m));
        std::vector<AtomicMeasure::Atom> atoms;
        for (const auto& a : nu.atoms()) atoms.push_back({a.t, a.w * rat_pow(a.t, m) * a0 / g});
        family.emplace(m, AtomicMeasure(std::move(atoms)));
    }
    return family;
}

TreeBounds tree_bounds(const TreeProfile& profile, const AtomicMeasure& nu) {
    (void)tree_family(profile, nu);  // enforces the representing precondition
    Rat top = *nu.max_atom();
    Rat bot = *nu.min_atom();
    return {top, bot, bot > 0};
}

TreeSlice materialize_tree(const TreeProfile& profile, unsigned depth,
                           std::size_t point_budget) {
    if (static_cast<long>(depth) > profile.m_hi() || profile.m_lo() > 0)
        throw WindowExceeded("materialize_tree: window must cover [0, depth]");
    std::vector<PointId> points;
    std::map<PointId, Rat> mass;
    std::map<PointId, PointId> parent;
    std::map<PointId, long> generation;

    PointId next = 0;
    std::vector<PointId> current = {next};
    points.push_back(next);
    mass[next] = profile.alpha(0);
    parent[next] = next;  // anchor self-loop, masked by the boundary
    generation[next] = 0;
    ++next;
    for (long m = 0; m < static_cast<long>(depth); ++m) {
        std::vector<PointId> children;
        for (PointId p : current)
            for (unsigned c = 0; c < profile.kappa(m); ++c) {
                if (points.size() >= point_budget)
                    throw SizeOverflow("materialize_tree: point budget exceeded");
                points.push_back(next);
                mass[next] = profile.alpha(m + 1);
                parent[next] = p;
                generation[next] = m + 1;
                children.push_back(next);
                ++next;
            }
        current = std::move(children);
    }
    Boundary boundary = {0};
    for (PointId p : current) boundary.insert(p);
    MeasureSpace space(std::move(points), std::move(mass));
    SelfMap map(space, std::move(parent));
    return {std::move(space), std::move(map), std::move(boundary), std::move(generation)};
}

ShiftModel shift_to_composition(const WeightedTree& tree) {
    std::map<PointId, std::vector<PointId>> children;
    for (const auto& [v, u] : tree.parent) children[u].push_back(v);
    for (PointId v : tree.vertices) {
        if (tree.boundary.count(v)) continue;
        if (!tree.parent.count(v))
            throw BoundaryIncomplete("interior vertex " + std::to_string(v) + " has no parent");
        if (children[v].empty())
            throw BoundaryIncomplete("interior vertex " + std::to_string(v) + " has no child");
    }
    for (const auto& [v, l2] : tree.lambda2)
        if (l2 <= 0) throw std::invalid_argument("shift weights must be nonzero");

    // mass propagation from the anchor, along parent links in both directions
    std::map<PointId, Rat> mass;
    mass[tree.anchor] = 1;
    std::deque<PointId> queue = {tree.anchor};
    while (!queue.empty()) {
        PointId u = queue.front();
        queue.pop_front();
        auto pit = tree.parent.find(u);
        if (pit != tree.parent.end() && pit->second != u && !mass.count(pit->second)) {
            mass[pit->second] = mass.at(u) / tree.lambda2.at(u);
            queue.push_back(pit->second);
        }
        for (PointId v : children[u])
            if (!mass.count(v)) {
                mass[v] = tree.lambda2.at(v) * mass.at(u);
                queue.push_back(v);
            }
    }
    for (PointId v : tree.vertices)
        if (!mass.count(v))
            throw BoundaryIncomplete("vertex " + std::to_string(v) +
                                     " is not connected to the anchor");

    std::map<PointId, PointId> image;
    for (PointId v : tree.vertices) {
        auto pit = tree.parent.find(v);
        image[v] = pit == tree.parent.end() ? v : pit->second;
    }
    MeasureSpace space(tree.vertices, std::move(mass));
    SelfMap map(space, std::move(image));
    Boundary boundary(tree.boundary.begin(), tree.boundary.end());
    return {std::move(space), std::move(map), std::move(boundary)};
}

CheckResult verify_shift_consistency(const WeightedTree& tree, const ShiftModel& model,
                                     const std::map<PointId, AtomicMeasure>& measures) {
    std::map<PointId, std::vector<PointId>> children;
    for (const auto& [v, u] : tree.parent) children[u].push_back(v);
    for (PointId u : tree.vertices) {
        if (tree.boundary.count(u)) continue;  // child set may be incomplete
        AtomicMeasure sum;
        for (PointId v : children[u])
            sum = sum + measures.at(v).weighted_by_inv_t().scaled(tree.lambda2.at(v));
        if (sum != measures.at(u)) return {false, u};
    }
    return verify_cc(model.space, model.map, Family(measures), model.boundary);
}

}  // namespace subnorm
