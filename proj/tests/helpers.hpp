#pragma once

#include "subnorm/consistency.hpp"

#include <random>

namespace subnorm::testing {

// phi(0)=0, phi(n)=n-1 with masses (1, 1, 2, 4, ..., 2^{depth-1}):
// the theta = delta_2, mu(1) = 1 chain, built directly so it can serve as
// an oracle against the generator.
inline std::pair<MeasureSpace, SelfMap> chain(unsigned depth) {
    std::vector<PointId> points;
    std::map<PointId, Rat> mass;
    std::map<PointId, PointId> image;
    for (PointId n = 0; n <= depth; ++n) {
        points.push_back(n);
        mass[n] = n == 0 ? Rat(1) : rat_pow(Rat(2), static_cast<long>(n) - 1);
        image[n] = n == 0 ? 0 : n - 1;
    }
    MeasureSpace space(std::move(points), std::move(mass));
    SelfMap map(space, std::move(image));
    return {std::move(space), std::move(map)};
}

inline Family constant_family(const MeasureSpace& space, const AtomicMeasure& p) {
    std::map<PointId, AtomicMeasure> m;
    for (PointId x : space.points()) m.emplace(x, p);
    return Family(std::move(m));
}

// deterministic small-rational generator for property tests
class Rng {
public:
    explicit Rng(unsigned seed) : gen_(seed) {}

    unsigned pick(unsigned lo, unsigned hi) {
        return std::uniform_int_distribution<unsigned>(lo, hi)(gen_);
    }

    Rat positive_rational(unsigned max_num = 8, unsigned max_den = 4) {
        return Rat(pick(1, max_num)) / Rat(pick(1, max_den));
    }

    std::pair<MeasureSpace, SelfMap> space_and_map(unsigned max_points = 12) {
        unsigned n = pick(2, max_points);
        std::vector<PointId> points;
        std::map<PointId, Rat> mass;
        std::map<PointId, PointId> image;
        for (PointId x = 0; x < n; ++x) {
            points.push_back(x);
            mass[x] = positive_rational();
            image[x] = pick(0, n - 1);
        }
        MeasureSpace space(std::move(points), std::move(mass));
        SelfMap map(space, std::move(image));
        return {std::move(space), std::move(map)};
    }

    AtomicMeasure atomic_measure(unsigned max_atoms = 4) {
        unsigned n = pick(1, max_atoms);
        std::map<Rat, Rat> weights;
        for (unsigned i = 0; i < n; ++i) weights[positive_rational(6, 3)] += positive_rational();
        std::vector<AtomicMeasure::Atom> atoms;
        for (const auto& [t, w] : weights) atoms.push_back({t, w});
        return AtomicMeasure(std::move(atoms));
    }

private:
    std::mt19937 gen_;
};

}  // namespace subnorm::testing
