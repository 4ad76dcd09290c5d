#include "subnorm/measure.hpp"

#include <algorithm>
#include <cmath>

namespace subnorm {

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.t < b.t; });
    std::vector<Atom> merged;
    for (auto& a : atoms_) {
        if (a.t < 0) throw std::invalid_argument("AtomicMeasure: negative atom position");
        if (a.w == 0) continue;
        if (a.w < 0) throw std::invalid_argument("AtomicMeasure: negative weight");
        if (!merged.empty() && merged.back().t == a.t)
            merged.back().w += a.w;
        else
            merged.push_back(a);
    }
    atoms_ = std::move(merged);
}

AtomicMeasure AtomicMeasure::dirac(const Rat& t, const Rat& w) {
    return AtomicMeasure({{t, w}});
}

Rat AtomicMeasure::total_mass() const {
    Rat total = 0;
    for (const auto& a : atoms_) total += a.w;
    return total;
}

Rat AtomicMeasure::moment(long n) const {
    Rat total = 0;
    for (const auto& a : atoms_) {
        if (n >= 0) {
            Rat p = 1;
            for (long i = 0; i < n; ++i) p *= a.t;
            total += a.w * p;
        } else {
            if (a.t == 0)
                throw std::domain_error("AtomicMeasure: negative moment with an atom at 0");
            Rat p = 1;
            for (long i = 0; i < -n; ++i) p /= a.t;
            total += a.w * p;
        }
    }
    return total;
}

Rat AtomicMeasure::mass_at(const Rat& t) const {
    for (const auto& a : atoms_)
        if (a.t == t) return a.w;
    return Rat(0);
}

std::optional<Rat> AtomicMeasure::min_atom() const {
    if (atoms_.empty()) return std::nullopt;
    return atoms_.front().t;
}

std::optional<Rat> AtomicMeasure::max_atom() const {
    if (atoms_.empty()) return std::nullopt;
    return atoms_.back().t;
}

bool AtomicMeasure::has_atom_at_zero() const {
    return !atoms_.empty() && atoms_.front().t == 0;
}

AtomicMeasure AtomicMeasure::weighted_by_t() const {
    std::vector<Atom> out;
    for (const auto& a : atoms_)
        if (a.t != 0) out.push_back({a.t, a.w * a.t});
    return AtomicMeasure(std::move(out));
}

AtomicMeasure AtomicMeasure::weighted_by_inv_t() const {
    std::vector<Atom> out;
    for (const auto& a : atoms_) {
        if (a.t == 0) throw std::domain_error("weighted_by_inv_t: atom at 0");
        out.push_back({a.t, a.w / a.t});
    }
    return AtomicMeasure(std::move(out));
}

AtomicMeasure AtomicMeasure::scaled(const Rat& c) const {
    if (c < 0) throw std::invalid_argument("scaled: negative factor");
    std::vector<Atom> out;
    for (const auto& a : atoms_) out.push_back({a.t, a.w * c});
    return AtomicMeasure(std::move(out));
}

AtomicMeasure AtomicMeasure::dilated(const Rat& c) const {
    if (c <= 0) throw std::invalid_argument("dilated: factor must be positive");
    std::vector<Atom> out;
    for (const auto& a : atoms_) out.push_back({a.t * c, a.w});
    return AtomicMeasure(std::move(out));
}

AtomicMeasure AtomicMeasure::operator+(const AtomicMeasure& o) const {
    std::vector<Atom> out = atoms_;
    out.insert(out.end(), o.atoms_.begin(), o.atoms_.end());
    return AtomicMeasure(std::move(out));
}

MomentSequence::MomentSequence(std::vector<ExtRat> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("MomentSequence: empty");
    // once infinite, stay infinite
    bool seen_inf = false;
    for (const auto& v : values_) {
        if (seen_inf && v.is_finite())
            throw std::invalid_argument("MomentSequence: finite entry after an infinite one");
        if (v.is_infinite()) seen_inf = true;
    }
}

bool MomentSequence::all_finite() const {
    return values_.back().is_finite();
}

std::vector<Rat> MomentSequence::finite_values() const {
    if (!all_finite()) throw InfiniteEntry();
    std::vector<Rat> out;
    out.reserve(values_.size());
    for (const auto& v : values_) out.push_back(v.finite_value());
    return out;
}

TwoSidedSequence::TwoSidedSequence(long lo, std::vector<Rat> values)
    : lo_(lo), values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("TwoSidedSequence: empty window");
    for (const auto& v : values_)
        if (v <= 0) throw std::invalid_argument("TwoSidedSequence: nonpositive value");
}

const Rat& TwoSidedSequence::at(long m) const {
    if (m < lo_ || m > hi()) throw std::out_of_range("TwoSidedSequence: index outside window");
    return values_[static_cast<std::size_t>(m - lo_)];
}

MomentSequence moments_of(const AtomicMeasure& measure, unsigned order) {
    std::vector<ExtRat> vals;
    vals.reserve(order + 1);
    // running powers, one multiply per atom per order
    std::vector<Rat> pw(measure.atoms().size(), Rat(1));
    for (unsigned n = 0; n <= order; ++n) {
        Rat s = 0;
        for (std::size_t i = 0; i < pw.size(); ++i) s += measure.atoms()[i].w * pw[i];
        vals.emplace_back(s);
        for (std::size_t i = 0; i < pw.size(); ++i) pw[i] *= measure.atoms()[i].t;
    }
    return MomentSequence(std::move(vals));
}

bool is_psd(const std::vector<std::vector<Rat>>& m) {
    std::size_t n = m.size();
    std::vector<std::vector<Rat>> a = m;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i][i] < 0) return false;
        if (a[i][i] == 0) {
            // a zero pivot forces the whole row to vanish
            for (std::size_t j = i + 1; j < n; ++j)
                if (a[i][j] != 0) return false;
            continue;
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (a[j][i] == 0) continue;
            Rat f = a[j][i] / a[i][i];
            for (std::size_t k = i; k < n; ++k) a[j][k] -= f * a[i][k];
        }
        for (std::size_t j = i + 1; j < n; ++j) a[i][j] = 0;  // keep symmetry bookkeeping simple
        for (std::size_t j = i + 1; j < n; ++j) a[j][i] = 0;
    }
    return true;
}

static std::vector<std::vector<Rat>> hankel(const std::vector<Rat>& a, std::size_t shift,
                                            std::size_t dim) {
    std::vector<std::vector<Rat>> h(dim, std::vector<Rat>(dim));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) h[i][j] = a[i + j + shift];
    return h;
}

bool is_stieltjes(const MomentSequence& seq) {
    std::vector<Rat> a = seq.finite_values();
    std::size_t n = a.size();
    std::size_t d0 = (n - 1) / 2 + 1;       // indices i+j <= n-1
    std::size_t d1 = n >= 2 ? n / 2 : 0;    // indices i+j+1 <= n-1
    if (!is_psd(hankel(a, 0, d0))) return false;
    if (d1 > 0 && !is_psd(hankel(a, 1, d1))) return false;
    return true;
}

bool is_two_sided_stieltjes(const TwoSidedSequence& seq) {
    for (long s = seq.lo(); s <= seq.hi(); ++s) {
        std::vector<ExtRat> tail;
        for (long m = s; m <= seq.hi(); ++m) tail.emplace_back(seq.at(m));
        if (!is_stieltjes(MomentSequence(std::move(tail)))) return false;
    }
    return true;
}

bool carleman_determinate(const MomentSequence& seq, const CarlemanOptions& opts) {
    std::vector<Rat> a = seq.finite_values();
    for (const auto& v : a)
        if (v <= 0) throw std::invalid_argument("carleman_determinate: entries must be positive");
    std::size_t n_terms = a.size() - 1;  // terms for n = 1..N
    if (n_terms < 2) return false;
    std::vector<double> term(n_terms);
    double sum = 0;
    for (std::size_t n = 1; n <= n_terms; ++n) {
        term[n - 1] = std::pow(to_double(a[n]), -1.0 / (2.0 * static_cast<double>(n)));
        sum += term[n - 1];
    }
    if (sum > opts.threshold) return true;
    // linear extrapolation of the term sequence from the window tail
    std::size_t mid = n_terms / 2;
    double t_last = term[n_terms - 1];
    double t_mid = term[mid - 1];
    double slope = (t_last - t_mid) / static_cast<double>(n_terms - mid);
    if (t_last <= 0) return false;
    if (slope >= 0) return true;  // nonvanishing terms: the series diverges
    double steps = t_last / -slope;                // extrapolated terms until zero-crossing
    double extra = t_last * steps / 2.0;           // triangle under the extrapolant
    return sum + extra > opts.threshold;
}

RatioSupremum sup_support_from_ratios(const MomentSequence& seq) {
    std::vector<Rat> a = seq.finite_values();
    for (const auto& v : a)
        if (v <= 0)
            throw std::invalid_argument("sup_support_from_ratios: entries must be positive");
    if (a.size() < 2) return {ExtRat(Rat(0)), true};
    std::optional<Rat> prev;
    Rat sup = 0;
    for (std::size_t n = 0; n + 1 < a.size(); ++n) {
        Rat r = a[n + 1] / a[n];
        if (prev && r < *prev) throw MonotonicityViolation(n);
        if (r > sup) sup = r;
        prev = r;
    }
    return {ExtRat(sup), true};
}

// Solves the k x k Vandermonde-moment system for weights; nullopt if singular.
static std::optional<std::vector<Rat>> solve_weights(const std::vector<Rat>& atoms,
                                                     const std::vector<Rat>& rhs) {
    std::size_t k = atoms.size();
    std::vector<std::vector<Rat>> m(k, std::vector<Rat>(k + 1));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            Rat p = 1;
            for (std::size_t e = 0; e < i; ++e) p *= atoms[j];
            m[i][j] = p;
        }
        m[i][k] = rhs[i];
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        while (piv < k && m[piv][col] == 0) ++piv;
        if (piv == k) return std::nullopt;
        std::swap(m[col], m[piv]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col] / m[col][col];
            for (std::size_t c = col; c <= k; ++c) m[r][c] -= f * m[col][c];
        }
    }
    std::vector<Rat> w(k);
    for (std::size_t i = 0; i < k; ++i) w[i] = m[i][k] / m[i][i];
    return w;
}

static bool matches_all_moments(const AtomicMeasure& nu, const std::vector<Rat>& a) {
    MomentSequence got = moments_of(nu, static_cast<unsigned>(a.size() - 1));
    for (std::size_t n = 0; n < a.size(); ++n)
        if (got.values()[n].finite_value() != a[n]) return false;
    return true;
}

std::optional<AtomicMeasure> representing_measure_window(const MomentSequence& seq,
                                                         const RepresentingMeasureOptions& opts) {
    std::vector<Rat> a = seq.finite_values();
    std::size_t len = a.size();
    if (a[0] < 0) return std::nullopt;
    if (a[0] == 0) {
        for (const auto& v : a)
            if (v != 0) return std::nullopt;
        return AtomicMeasure::zero();
    }
    std::size_t k_max = (len + 1) / 2;

    // rank-1 shortcut: atom at a_1/a_0
    {
        AtomicMeasure cand = AtomicMeasure::dirac(len >= 2 ? a[1] / a[0] : Rat(1), a[0]);
        if (matches_all_moments(cand, a)) return cand;
    }

    // candidate grid: p/q fractions plus observed consecutive ratios
    std::vector<Rat> grid;
    for (unsigned q = 1; q <= opts.max_den; ++q)
        for (unsigned p = 0; p <= opts.max_val * q; ++p) grid.push_back(Rat(p, q));
    for (std::size_t n = 0; n + 1 < len; ++n)
        if (a[n] != 0) grid.push_back(a[n + 1] / a[n]);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<Rat> rhs(a.begin(), a.end());
    for (std::size_t k = 2; k <= k_max && k <= grid.size(); ++k) {
        if (k > len) break;
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            std::vector<Rat> atoms(k);
            for (std::size_t i = 0; i < k; ++i) atoms[i] = grid[idx[i]];
            std::vector<Rat> first(rhs.begin(), rhs.begin() + static_cast<long>(k));
            if (auto w = solve_weights(atoms, first)) {
                bool ok = true;
                std::vector<AtomicMeasure::Atom> list;
                for (std::size_t i = 0; i < k; ++i) {
                    if ((*w)[i] < 0) { ok = false; break; }
                    if ((*w)[i] > 0) list.push_back({atoms[i], (*w)[i]});
                }
                if (ok) {
                    AtomicMeasure cand(std::move(list));
                    if (matches_all_moments(cand, a)) return cand;
                }
            }
            // next combination
            long i = static_cast<long>(k) - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] ==
                                 grid.size() - k + static_cast<std::size_t>(i))
                --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
    return std::nullopt;
}

AtomicMeasure pushforward_power(const AtomicMeasure& measure, unsigned j) {
    if (j == 0) throw std::invalid_argument("pushforward_power: j must be positive");
    std::vector<AtomicMeasure::Atom> out;
    for (const auto& a : measure.atoms()) {
        Rat p = 1;
        for (unsigned e = 0; e < j; ++e) p *= a.t;
        out.push_back({p, a.w});
    }
    return AtomicMeasure(std::move(out));
}

}  // namespace subnorm
