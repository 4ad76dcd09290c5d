#include "subnorm/matsym.hpp"

#include <cmath>

namespace subnorm {

namespace {

Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

bool close(const Rat& a, const Rat& b, double tol) {
    return std::abs(to_double(a) - to_double(b)) <= tol;
}

bool measures_close(const AtomicMeasure& a, const AtomicMeasure& b, double tol) {
    // greedy atom pairing; positions from the float path may drift
    if (a.atoms().size() != b.atoms().size()) return false;
    for (std::size_t i = 0; i < a.atoms().size(); ++i) {
        if (!close(a.atoms()[i].t, b.atoms()[i].t, tol)) return false;
        if (!close(a.atoms()[i].w, b.atoms()[i].w, tol)) return false;
    }
    return true;
}

}  // namespace

SpectralSymbol::SpectralSymbol(unsigned dim, std::vector<Rat> eigenvalues, std::vector<Vec> basis,
                               bool complex_symbol, bool exact)
    : dim_(dim), eigenvalues_(std::move(eigenvalues)), basis_(std::move(basis)), exact_(exact) {
    if (dim_ == 0 || eigenvalues_.size() != dim_ || basis_.size() != dim_)
        throw std::invalid_argument("SpectralSymbol: dimension mismatch");
    for (const Rat& l : eigenvalues_)
        if (l == 0) throw std::invalid_argument("SpectralSymbol: zero eigenvalue");
    for (const Vec& v : basis_)
        if (v.size() != dim_) throw std::invalid_argument("SpectralSymbol: basis vector size");
    for (unsigned i = 0; i < dim_; ++i)
        for (unsigned j = i; j < dim_; ++j) {
            Rat d = dot(basis_[i], basis_[j]);
            Rat expect = i == j ? 1 : 0;
            if (exact_ ? d != expect : !close(d, expect, 1e-12))
                throw std::invalid_argument("SpectralSymbol: basis not orthonormal");
        }
    det_abs_ = 1;
    for (const Rat& l : eigenvalues_) det_abs_ *= abs_rat(l);
    if (complex_symbol) det_abs_ *= det_abs_;
}

SpectralSymbol SpectralSymbol::scalar(const Rat& lambda) {
    return SpectralSymbol(1, {lambda}, {{Rat(1)}});
}

SpectralSymbol SpectralSymbol::diagonal(std::vector<Rat> eigenvalues) {
    unsigned n = static_cast<unsigned>(eigenvalues.size());
    std::vector<Vec> basis(n, Vec(n, Rat(0)));
    for (unsigned i = 0; i < n; ++i) basis[i][i] = 1;
    return SpectralSymbol(n, std::move(eigenvalues), std::move(basis));
}

Vec SpectralSymbol::apply(const Vec& x) const {
    Vec out(dim_, Rat(0));
    for (unsigned i = 0; i < dim_; ++i) {
        Rat c = eigenvalues_[i] * dot(x, basis_[i]);
        for (unsigned k = 0; k < dim_; ++k) out[k] += c * basis_[i][k];
    }
    return out;
}

Vec SpectralSymbol::apply_inverse(const Vec& x) const {
    Vec out(dim_, Rat(0));
    for (unsigned i = 0; i < dim_; ++i) {
        Rat c = dot(x, basis_[i]) / eigenvalues_[i];
        for (unsigned k = 0; k < dim_; ++k) out[k] += c * basis_[i][k];
    }
    return out;
}

DensitySeries::DensitySeries(std::vector<Rat> coefficients)
    : coefficients_(std::move(coefficients)) {
    if (coefficients_.empty()) throw std::invalid_argument("DensitySeries: empty");
    bool positive_tail = false;
    for (std::size_t k = 0; k < coefficients_.size(); ++k) {
        if (coefficients_[k] < 0) throw std::invalid_argument("DensitySeries: negative coefficient");
        if (k >= 1 && coefficients_[k] > 0) positive_tail = true;
    }
    if (!positive_tail)
        throw std::invalid_argument("DensitySeries: needs a positive coefficient of index >= 1");
}

Rat DensitySeries::eval(const Rat& z) const {
    Rat out = 0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) out = out * z + *it;
    return out;
}

Rat dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rat out = 0;
    for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
    return out;
}

Rat norm_squared(const Vec& x) { return dot(x, x); }

bool is_zero(const Vec& x) {
    for (const Rat& c : x)
        if (c != 0) return false;
    return true;
}

Rat h_A(const SpectralSymbol& symbol, const DensitySeries& density, const Vec& x) {
    if (is_zero(x)) throw ZeroVector();
    Rat gx = density.eval(norm_squared(x));
    if (gx <= 0) throw std::invalid_argument("h_A: gamma vanishes at |x|^2");
    return density.eval(norm_squared(symbol.apply_inverse(x))) / (symbol.det_abs() * gx);
}

AtomicMeasure spectral_measure(const SpectralSymbol& symbol, const Vec& x) {
    std::vector<AtomicMeasure::Atom> atoms;
    for (unsigned i = 0; i < symbol.dim(); ++i) {
        Rat c = dot(x, symbol.basis()[i]);
        if (c == 0) continue;
        Rat l = symbol.eigenvalues()[i];
        atoms.push_back({Rat(1) / (l * l), c * c});
    }
    return AtomicMeasure(std::move(atoms));
}

bool verify_overt(const SpectralSymbol& symbol, const Vec& x) {
    AtomicMeasure lhs = spectral_measure(symbol, symbol.apply(x));
    AtomicMeasure nu_x = spectral_measure(symbol, x);
    AtomicMeasure rhs = nu_x.empty() ? nu_x : nu_x.weighted_by_inv_t();
    return symbol.is_exact() ? lhs == rhs : measures_close(lhs, rhs, 1e-9);
}

AtomicMeasure convolution_power(const AtomicMeasure& measure, unsigned n,
                                std::size_t atom_budget) {
    AtomicMeasure out = AtomicMeasure::dirac(Rat(1));
    for (unsigned k = 0; k < n; ++k) {
        std::vector<AtomicMeasure::Atom> atoms;
        for (const auto& a : out.atoms())
            for (const auto& b : measure.atoms()) atoms.push_back({a.t * b.t, a.w * b.w});
        if (atoms.size() > atom_budget)
            throw AtomBudgetExceeded("convolution power exceeds the atom budget");
        out = AtomicMeasure(std::move(atoms));
    }
    return out;
}

MatrixFamily matrix_family(const SpectralSymbol& symbol, const DensitySeries& density,
                           const Vec& x, std::size_t atom_budget) {
    if (is_zero(x)) return {AtomicMeasure::dirac(Rat(1)), Rat(0)};
    Rat gx = density.eval(norm_squared(x));
    if (gx <= 0) throw std::invalid_argument("matrix_family: gamma vanishes at |x|^2");
    AtomicMeasure nu = spectral_measure(symbol, x);
    Rat inv_det = Rat(1) / symbol.det_abs();
    AtomicMeasure sum;
    for (unsigned n = 0; n <= density.truncation(); ++n) {
        const Rat& a_n = density.coefficients()[n];
        if (a_n == 0) continue;
        sum = sum + convolution_power(nu, n, atom_budget).dilated(inv_det).scaled(a_n / gx);
    }
    return {sum, Rat(1) - sum.total_mass()};
}

bool verify_matrix_scc(const SpectralSymbol& symbol, const DensitySeries& density,
                       const std::vector<Vec>& sample_points, double tolerance,
                       std::size_t atom_budget) {
    for (const Vec& x : sample_points) {
        if (is_zero(x)) throw ZeroVector();
        Vec ax = symbol.apply(x);
        AtomicMeasure lhs = matrix_family(symbol, density, ax, atom_budget)
                                .measure.weighted_by_t()
                                .scaled(Rat(1) / h_A(symbol, density, ax));
        AtomicMeasure rhs = matrix_family(symbol, density, x, atom_budget).measure;
        if (symbol.is_exact() ? lhs != rhs : !measures_close(lhs, rhs, tolerance)) return false;
    }
    return true;
}

SpectralSymbol jacobi_symbol(const std::vector<std::vector<double>>& symmetric,
                             bool complex_symbol, double tol) {
    std::size_t n = symmetric.size();
    std::vector<std::vector<double>> a = symmetric;
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("jacobi_symbol: not square");
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

    for (unsigned sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off <= tol * tol) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) <= tol / (10.0 * n)) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
    }
    std::vector<Rat> eigenvalues;
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < n; ++i) {
        eigenvalues.emplace_back(Rat(a[i][i]));
        Vec col;
        for (std::size_t k = 0; k < n; ++k) col.emplace_back(Rat(v[k][i]));
        basis.push_back(std::move(col));
    }
    return SpectralSymbol(static_cast<unsigned>(n), std::move(eigenvalues), std::move(basis),
                          complex_symbol, /*exact=*/false);
}

}  // namespace subnorm
