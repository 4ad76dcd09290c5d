#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "subnorm/measure.hpp"

using namespace subnorm;
using testing::Rng;

namespace {

// independent oracle: Laplace-expansion determinant, no elimination shared
// with the library path
Rat naive_det(const std::vector<std::vector<Rat>>& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    Rat out = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Rat>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Rat> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Rat term = m[0][j] * naive_det(minor);
        out += (j % 2 == 0) ? term : -term;
    }
    return out;
}

// PSD via nonnegativity of all principal minors (exponential, oracle-only)
bool oracle_psd(const std::vector<std::vector<Rat>>& m) {
    std::size_t n = m.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        std::vector<std::vector<Rat>> sub;
        for (std::size_t r : idx) {
            std::vector<Rat> row;
            for (std::size_t c : idx) row.push_back(m[r][c]);
            sub.push_back(std::move(row));
        }
        if (naive_det(sub) < 0) return false;
    }
    return true;
}

bool oracle_stieltjes(const std::vector<Rat>& a) {
    std::size_t n = a.size();
    auto hankel = [&](std::size_t d, std::size_t shift) {
        std::vector<std::vector<Rat>> m(d, std::vector<Rat>(d));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) m[i][j] = a[i + j + shift];
        return m;
    };
    std::size_t d0 = (n - 1) / 2 + 1;
    std::size_t d1 = n / 2;
    if (!oracle_psd(hankel(d0, 0))) return false;
    if (d1 > 0 && !oracle_psd(hankel(d1, 1))) return false;
    return true;
}

MomentSequence seq(std::vector<long> v) {
    std::vector<ExtRat> out;
    for (long x : v) out.emplace_back(Rat(x));
    return MomentSequence(std::move(out));
}

}  // namespace

TEST_CASE("power moments") {
    CHECK(moments_of(AtomicMeasure::dirac(Rat(1)), 3).finite_values() ==
          std::vector<Rat>{1, 1, 1, 1});
    CHECK(moments_of(AtomicMeasure::dirac(Rat(2)), 4).finite_values() ==
          std::vector<Rat>{1, 2, 4, 8, 16});
    AtomicMeasure mix({{Rat(1), Rat(1, 2)}, {Rat(3), Rat(1, 2)}});
    CHECK(moments_of(mix, 2).finite_values() == std::vector<Rat>{1, 2, 5});
}

TEST_CASE("window Stieltjes test") {
    CHECK(is_stieltjes(seq({1, 2, 4, 8, 16})));
    CHECK_FALSE(is_stieltjes(seq({1, 2, 1})));  // det [[1,2],[2,1]] = -3
    CHECK(naive_det({{Rat(1), Rat(2)}, {Rat(2), Rat(1)}}) == Rat(-3));
    CHECK(is_stieltjes(seq({1, 1, 2, 6, 24})));
    CHECK(oracle_stieltjes({1, 1, 2, 6, 24}));
    CHECK_THROWS_AS(is_stieltjes(MomentSequence({ExtRat(Rat(1)), ExtRat::infinity()})),
                    InfiniteEntry);
}

TEST_CASE("Stieltjes window agrees with the minor oracle") {
    Rng rng(101);
    for (int i = 0; i < 40; ++i) {
        std::vector<Rat> vals;
        std::vector<ExtRat> evals;
        unsigned n = rng.pick(3, 6);
        for (unsigned k = 0; k < n; ++k) {
            Rat v = rng.positive_rational(16, 4);
            vals.push_back(v);
            evals.emplace_back(v);
        }
        CHECK(is_stieltjes(MomentSequence(evals)) == oracle_stieltjes(vals));
    }
}

TEST_CASE("soundness on moments of atomic measures") {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        auto nu = rng.atomic_measure();
        CHECK(is_stieltjes(moments_of(nu, rng.pick(2, 6))));
    }
}

TEST_CASE("two-sided windows") {
    CHECK(is_two_sided_stieltjes(TwoSidedSequence(-3, std::vector<Rat>(7, Rat(1)))));
    std::vector<Rat> pow2;
    for (long m = -3; m <= 3; ++m) pow2.push_back(rat_pow(Rat(2), m));
    CHECK(is_two_sided_stieltjes(TwoSidedSequence(-3, pow2)));
    CHECK_FALSE(is_two_sided_stieltjes(
        TwoSidedSequence(-2, std::vector<Rat>{1, 2, 1, 2, 1})));
}

TEST_CASE("Carleman surrogate") {
    std::vector<ExtRat> p2, ones, nn;
    p2.emplace_back(Rat(1));
    ones.emplace_back(Rat(1));
    nn.emplace_back(Rat(1));
    for (long n = 1; n <= 8; ++n) {
        p2.emplace_back(rat_pow(Rat(2), n));
        ones.emplace_back(Rat(1));
    }
    // the b*n^n growth envelope: terms n^{-1/2}; needs a longer window
    // before the extrapolated sum clears the threshold
    for (long n = 1; n <= 24; ++n) nn.emplace_back(rat_pow(Rat(n), n));
    CHECK(carleman_determinate(MomentSequence(p2)));
    CHECK(carleman_determinate(MomentSequence(ones)));
    CHECK(carleman_determinate(MomentSequence(nn)));
    // factorially-squared growth decays too fast for the window surrogate
    std::vector<ExtRat> fast;
    Rat f = 1;
    fast.emplace_back(f);
    for (long n = 1; n <= 8; ++n) {
        f *= rat_pow(Rat(4 * n * n), n);
        fast.emplace_back(f);
    }
    CHECK_FALSE(carleman_determinate(MomentSequence(fast)));
}

TEST_CASE("support supremum from ratios") {
    auto r2 = sup_support_from_ratios(moments_of(AtomicMeasure::dirac(Rat(2)), 5));
    CHECK(r2.value == ExtRat(Rat(2)));
    CHECK(r2.increasing_verified);

    AtomicMeasure mix({{Rat(1), Rat(1, 2)}, {Rat(3), Rat(1, 2)}});
    auto r3 = sup_support_from_ratios(moments_of(mix, 6));
    CHECK(r3.value < ExtRat(Rat(3)));
    CHECK(r3.increasing_verified);

    CHECK_THROWS_AS(sup_support_from_ratios(seq({1, 2, 1})), MonotonicityViolation);
}

TEST_CASE("ratio supremum grows toward the top atom") {
    Rng rng(131);
    for (int i = 0; i < 20; ++i) {
        auto nu = rng.atomic_measure();
        auto r = sup_support_from_ratios(moments_of(nu, 6));
        CHECK(r.value <= ExtRat(*nu.max_atom()));
        auto wider = sup_support_from_ratios(moments_of(nu, 9));
        CHECK(r.value <= wider.value);
    }
}

TEST_CASE("representing measure search") {
    auto d2 = representing_measure_window(seq({1, 2, 4, 8}));
    REQUIRE(d2.has_value());
    CHECK(*d2 == AtomicMeasure::dirac(Rat(2)));

    auto d1 = representing_measure_window(seq({1, 1, 1}));
    REQUIRE(d1.has_value());
    CHECK(*d1 == AtomicMeasure::dirac(Rat(1)));

    CHECK_FALSE(representing_measure_window(seq({1, 2, 1})).has_value());
}

TEST_CASE("representing measure round trip") {
    Rng rng(211);
    for (int i = 0; i < 15; ++i) {
        // measures on the search grid itself so the window is always solvable
        AtomicMeasure nu({{Rat(rng.pick(0, 2)), rng.positive_rational(4, 2)},
                          {Rat(rng.pick(3, 5)), rng.positive_rational(4, 2)}});
        unsigned order = rng.pick(3, 5);
        auto target = moments_of(nu, order);
        auto found = representing_measure_window(target);
        REQUIRE(found.has_value());
        CHECK(moments_of(*found, order).finite_values() == target.finite_values());
    }
}

TEST_CASE("pushforward powers") {
    CHECK(pushforward_power(AtomicMeasure::dirac(Rat(2)), 3) == AtomicMeasure::dirac(Rat(8)));
    AtomicMeasure half({{Rat(1), Rat(1, 2)}, {Rat(2), Rat(1, 2)}});
    CHECK(pushforward_power(half, 2) ==
          AtomicMeasure({{Rat(1), Rat(1, 2)}, {Rat(4), Rat(1, 2)}}));
    CHECK(pushforward_power(half, 1) == half);

    Rng rng(311);
    for (int i = 0; i < 20; ++i) {
        auto nu = rng.atomic_measure();
        unsigned j = rng.pick(1, 3), order = rng.pick(1, 4);
        auto strided = moments_of(pushforward_power(nu, j), order).finite_values();
        auto full = moments_of(nu, j * order).finite_values();
        for (unsigned n = 0; n <= order; ++n) CHECK(strided[n] == full[n * j]);
    }
}

TEST_CASE("atoms merge on collision") {
    AtomicMeasure merged({{Rat(2), Rat(1, 3)}, {Rat(2), Rat(2, 3)}, {Rat(1), Rat(1)}});
    CHECK(merged == AtomicMeasure({{Rat(1), Rat(1)}, {Rat(2), Rat(1)}}));
    // (+/-1)^2 collision through the pushforward
    AtomicMeasure pm({{Rat(1, 2), Rat(1)}, {Rat(2), Rat(1)}});
    CHECK(pushforward_power(pm, 2) ==
          AtomicMeasure({{Rat(1, 4), Rat(1)}, {Rat(4), Rat(1)}}));
}
