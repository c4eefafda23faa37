#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sturmian/models.hpp"
#include "sturmian/rational.hpp"
#include "sturmian/tmm.hpp"

namespace sturmian {

// Frequencies with |cos(kappa L)| within this guard of 1 count as admitted;
// keeps grid samples that sit exactly on band edges stable across equivalent
// evaluations (e.g. the rod's vertical period).
inline constexpr double kAdmitTol = 1e-12;

struct Band {
    double lo = 0.0, hi = 0.0;
    double width() const { return hi - lo; }
};

struct BandList {
    Rational alpha;
    std::vector<Band> intervals;    // sorted, disjoint
    bool narrow_warning = false;    // some interval narrower than 2 coarse grid steps

    std::size_t band_count() const { return intervals.size(); }
};

enum class BandMethod {
    Auto,        // ChainEigen for chains, Sampled otherwise
    Sampled,     // coarse scan + sign-change detection + bisection refinement
    ChainEigen,  // exact band edges from the periodic/antiperiodic Bloch problems
};

struct SweepRange {
    double omega_min = 0.0;
    double omega_max = 1.0;
};

// Passband intervals of the waveguide generated by alpha over the range.
// coarse_steps = 0 picks the default of 40 samples per supercell element.
BandList passbands(const ModelSpec& spec, const Rational& alpha, const SweepRange& range,
                   std::int64_t coarse_steps = 0, double refine_tol = 1e-9,
                   BandMethod method = BandMethod::Auto);

// Scan an arbitrary half-trace function for its |z| <= 1 intervals: coarse
// sampling, sign-change anchored zero location, bisected edges.
std::vector<Band> scan_passbands(const std::function<double(double)>& half_trace,
                                 const SweepRange& range, std::int64_t coarse_steps,
                                 double refine_tol = 1e-9);

// True when band_count equals nu + delta, after merging numerically touching
// bands (the list is already merged at its refine_tol).
bool band_count_check(const BandList& bands, const Rational& alpha);

double bands_measure(const std::vector<Band>& bands);
std::vector<Band> bands_intersection(const std::vector<Band>& a, const std::vector<Band>& b);

// Dense boolean admissibility grid over (alpha, omega).
struct BulkGrid {
    std::vector<Rational> alphas;          // i/M in lowest terms
    std::vector<double> omegas;
    std::vector<std::uint8_t> admitted;    // row-major: alphas.size() x omegas.size()

    bool at(std::size_t i, std::size_t j) const { return admitted[i * omegas.size() + j] != 0; }
};

// Pointwise sweep: column i is the exact rational i/M. Deterministic: the
// grid bytes do not depend on the worker count.
BulkGrid bulk_spectrum(const ModelSpec& spec, std::int64_t M, const SweepRange& range,
                       std::int64_t omega_steps, int workers = 1);

// Single-sample admissibility, the same rule the grid uses.
bool admitted_at(const ModelSpec& spec, const ContinuedFraction& cf, double omega);

struct SelfSimRow {
    std::int64_t r = 0;
    Rational alpha;
    double zeta = 0.0;
    std::int64_t n_elements = 0;
    BandList bands;
    double inside_fraction = 0.0;   // passband measure lying inside b's passbands
};

struct SelfSimReport {
    ContinuedFraction prefix;
    Rational a, b;
    BandList b_bands;
    std::vector<SelfSimRow> rows;
};

// Band lists along the family alpha_r = [0; a_1, ..., a_n + r], r = 0..r_max,
// with the nesting fractions against the limit system b.
SelfSimReport selfsim_sequence(const ContinuedFraction& prefix, std::int64_t r_max,
                               const ModelSpec& spec, const SweepRange& range,
                               std::int64_t coarse_steps = 0, double refine_tol = 1e-9);

} // namespace sturmian
