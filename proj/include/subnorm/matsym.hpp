#pragma once

#include "subnorm/measure.hpp"

#include <vector>

namespace subnorm {

struct ZeroVector : std::runtime_error {
    ZeroVector() : std::runtime_error("zero vector not allowed here") {}
};

struct AtomBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Vec = std::vector<Rat>;

/// A normal symbol in diagonalized form: eigenvalues with an orthonormal
/// eigenbasis (columns). `exact` symbols must be orthonormal as exact
/// rationals; non-exact symbols (e.g. from the Jacobi path) are checked to
/// 1e-12 and downstream comparisons fall back to the same tolerance.
/// `complex_symbol` switches the determinant convention to |det|^2.
class SpectralSymbol {
public:
    SpectralSymbol(unsigned dim, std::vector<Rat> eigenvalues, std::vector<Vec> basis,
                   bool complex_symbol = false, bool exact = true);

    static SpectralSymbol scalar(const Rat& lambda);  // 1x1 convenience
    static SpectralSymbol diagonal(std::vector<Rat> eigenvalues);

    unsigned dim() const { return dim_; }
    const std::vector<Rat>& eigenvalues() const { return eigenvalues_; }
    const std::vector<Vec>& basis() const { return basis_; }
    bool is_exact() const { return exact_; }
    const Rat& det_abs() const { return det_abs_; }

    Vec apply(const Vec& x) const;          // A x
    Vec apply_inverse(const Vec& x) const;  // A^{-1} x

private:
    unsigned dim_;
    std::vector<Rat> eigenvalues_;
    std::vector<Vec> basis_;
    bool exact_;
    Rat det_abs_;
};

/// Truncated power series with nonnegative coefficients; some coefficient
/// of index >= 1 must be positive.
class DensitySeries {
public:
    explicit DensitySeries(std::vector<Rat> coefficients);

    const std::vector<Rat>& coefficients() const { return coefficients_; }
    unsigned truncation() const { return static_cast<unsigned>(coefficients_.size()) - 1; }
    Rat eval(const Rat& z) const;

private:
    std::vector<Rat> coefficients_;
};

Rat dot(const Vec& a, const Vec& b);
Rat norm_squared(const Vec& x);
bool is_zero(const Vec& x);

/// h_A(x) = gamma(|A^{-1}x|^2) / (|det A| gamma(|x|^2)). Throws ZeroVector
/// for x = 0; requires gamma(|x|^2) > 0.
Rat h_A(const SpectralSymbol& symbol, const DensitySeries& density, const Vec& x);

/// Spectral measure of |A|^{-2} localized at x: atoms 1/lambda_i^2 with
/// weights <x,v_i>^2. Total mass |x|^2; the zero vector gives the zero
/// measure.
AtomicMeasure spectral_measure(const SpectralSymbol& symbol, const Vec& x);

/// nu_{Ax} equals the (1/t)-reweighting of nu_x.
bool verify_overt(const SpectralSymbol& symbol, const Vec& x);

/// Multiplicative convolution power: atoms are n-fold products. n = 0
/// gives the unit delta_1.
AtomicMeasure convolution_power(const AtomicMeasure& measure, unsigned n,
                                std::size_t atom_budget = 4096);

struct MatrixFamily {
    AtomicMeasure measure;
    Rat tail_deficit;  // 1 - total mass; 0 whenever gamma is not truncated
};

/// P(x,.) = (1/gamma(|x|^2)) sum_n a_n nu_x^{*n} pushed through the
/// 1/|det A| dilation; P(0,.) = delta_1.
MatrixFamily matrix_family(const SpectralSymbol& symbol, const DensitySeries& density,
                           const Vec& x, std::size_t atom_budget = 4096);

/// Per sample x: P(x,.) = t P(Ax,dt) / h_A(Ax), exactly for exact symbols,
/// within `tolerance` otherwise.
bool verify_matrix_scc(const SpectralSymbol& symbol, const DensitySeries& density,
                       const std::vector<Vec>& sample_points, double tolerance = 1e-9,
                       std::size_t atom_budget = 4096);

/// Diagonalization of a symmetric matrix by cyclic Jacobi rotations on
/// doubles; the result is a non-exact symbol.
SpectralSymbol jacobi_symbol(const std::vector<std::vector<double>>& symmetric,
                             bool complex_symbol = false, double tol = 1e-12);

}  // namespace subnorm
