#pragma once

#include "subnorm/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace subnorm {

/// Finite atomic measure on R+: distinct sorted atoms with positive weights.
class AtomicMeasure {
public:
    struct Atom {
        Rat t;  // position, >= 0
        Rat w;  // weight, > 0
        bool operator==(const Atom& o) const { return t == o.t && w == o.w; }
    };

    AtomicMeasure() = default;
    explicit AtomicMeasure(std::vector<Atom> atoms);

    static AtomicMeasure dirac(const Rat& t, const Rat& w = Rat(1));
    static AtomicMeasure zero() { return AtomicMeasure(); }

    const std::vector<Atom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }
    Rat total_mass() const;
    Rat moment(long n) const;  // negative n requires all atoms positive
    Rat mass_at(const Rat& t) const;
    std::optional<Rat> min_atom() const;
    std::optional<Rat> max_atom() const;
    bool has_atom_at_zero() const;

    /// Pointwise reweight by t -> t (the measure t * nu(dt)).
    AtomicMeasure weighted_by_t() const;
    /// Reweight by t -> 1/t; requires no atom at 0.
    AtomicMeasure weighted_by_inv_t() const;
    AtomicMeasure scaled(const Rat& c) const;  // c * nu, c >= 0
    /// Dilation of positions: atoms t -> c*t, c > 0.
    AtomicMeasure dilated(const Rat& c) const;

    AtomicMeasure operator+(const AtomicMeasure& o) const;
    bool operator==(const AtomicMeasure& o) const { return atoms_ == o.atoms_; }
    bool operator!=(const AtomicMeasure& o) const { return !(*this == o); }

private:
    std::vector<Atom> atoms_;
};

/// One-sided sequence a_0..a_N of extended nonnegative rationals.
class MomentSequence {
public:
    explicit MomentSequence(std::vector<ExtRat> values);

    const std::vector<ExtRat>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    bool all_finite() const;
    /// Throws InfiniteEntry unless all entries are finite.
    std::vector<Rat> finite_values() const;

private:
    std::vector<ExtRat> values_;
};

/// Z-indexed window of positive rationals.
class TwoSidedSequence {
public:
    TwoSidedSequence(long lo, std::vector<Rat> values);

    long lo() const { return lo_; }
    long hi() const { return lo_ + static_cast<long>(values_.size()) - 1; }
    const Rat& at(long m) const;

private:
    long lo_;
    std::vector<Rat> values_;
};

struct InfiniteEntry : std::runtime_error {
    InfiniteEntry() : std::runtime_error("moment sequence has an infinite entry") {}
};

struct MonotonicityViolation : std::runtime_error {
    std::size_t index;  // first n with a_{n+1}/a_n < a_n/a_{n-1}
    explicit MonotonicityViolation(std::size_t n)
        : std::runtime_error("moment ratios decrease at index " + std::to_string(n)), index(n) {}
};

/// Exact power moments sum w_i t_i^n, n = 0..N.
MomentSequence moments_of(const AtomicMeasure& measure, unsigned order);

/// Exact positive-semidefiniteness of a symmetric rational matrix,
/// by symmetric elimination (no floating point).
bool is_psd(const std::vector<std::vector<Rat>>& m);

/// Window Stieltjes test: both Hankel matrices (a_{i+j}) and (a_{i+j+1})
/// over the largest windows fitting into the sequence are PSD. Necessary
/// at finite length, sufficient only for full infinite sequences.
bool is_stieltjes(const MomentSequence& seq);

/// Applies is_stieltjes to every suffix of the window (all shifts
/// expressible inside it).
bool is_two_sided_stieltjes(const TwoSidedSequence& seq);

struct CarlemanOptions {
    double threshold = 10.0;  // divergence threshold for the extrapolated sum
};

/// Sufficient-only determinacy test: the Carleman partial sum
/// sum_n a_n^{-1/(2n)}, extended by linear extrapolation of the term
/// sequence from the window tail, must exceed the threshold.
/// false means inconclusive, never "indeterminate".
bool carleman_determinate(const MomentSequence& seq, const CarlemanOptions& opts = {});

struct RatioSupremum {
    ExtRat value;
    bool increasing_verified;  // monotone nondecreasing inside the window
};

/// sup of a_{n+1}/a_n over the window. Throws MonotonicityViolation if the
/// ratios decrease (which certifies the input is not Stieltjes).
RatioSupremum sup_support_from_ratios(const MomentSequence& seq);

struct RepresentingMeasureOptions {
    /// candidate atom grid: all p/q with 1 <= q <= max_den, 0 <= p/q <= max_val
    unsigned max_den = 3;
    unsigned max_val = 8;
};

/// Searches for an atomic measure with at most ceil((N+1)/2) atoms matching
/// all window moments exactly. Grid-limited: nullopt is not a disproof.
std::optional<AtomicMeasure> representing_measure_window(
    const MomentSequence& seq, const RepresentingMeasureOptions& opts = {});

/// Pushforward under t -> t^j; colliding atoms are merged.
AtomicMeasure pushforward_power(const AtomicMeasure& measure, unsigned j);

}  // namespace subnorm
