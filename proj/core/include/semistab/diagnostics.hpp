#pragma once

// Orbit-level stability analytics: weak orbits, Cesaro means, density-one
// extraction, relatively dense sequences, mixing correlations and the
// finite-horizon stability classifier.

#include "semistab/core.hpp"
#include "semistab/flow.hpp"
#include "semistab/resolvent.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace semistab {

/// t -> <T(t)x, y> on the grid.
Signal weak_orbit(const SemigroupEvaluator& backend, const ComplexVector& x,
                  const ComplexVector& y, const TimeGrid& grid);

/// t -> f(phi_t(x0)): the Koopman orbit of f tested against the point
/// functional at x0.
Signal weak_orbit(const Flow& flow, const Observable& f, const FlowPoint& x0, const TimeGrid& grid);

// ---------------------------------------------------------------------------
// Density-one extraction

enum class DensityVerdict { density_one_convergence_evidence, fails };

std::string to_string(DensityVerdict v);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct DensityLevel {
    double epsilon = 0.0;
    double density = 0.0;          ///< |{t <= T : f >= eps}| / T
    double trailing_density = 0.0; ///< same on [T/2, T]
    /// (t, |{s <= t : f(s) >= eps}| / t) at the block boundaries.
    std::vector<std::pair<double, double>> cumulative;
};

struct DensityBlock {
    double start = 0.0;
    double end = 0.0;
    double epsilon = 0.0;          ///< level excised on this block
    double excised_fraction = 0.0; ///< excised length / block length
};

struct DensityReport {
    std::vector<double> epsilon_ladder;
    std::vector<DensityLevel> levels;
    std::vector<DensityBlock> blocks;
    /// Excised grid cells merged into maximal intervals; M is the complement
    /// in [0, T].
    std::vector<Interval> excised;
    double m_density = 0.0; ///< |M| / T
    double density_tol = 0.0;
    double horizon = 0.0;
    DensityVerdict verdict = DensityVerdict::fails;
};

/// Builds M by removing {f >= eps_j} on the j-th dyadic block
/// [T 2^{j-L}, T 2^{j-L+1}) (block 0 starts at 0), L = ladder length. The
/// verdict is positive when the excised fraction of the last block, at the
/// smallest eps, is at most density_tol. Grid cell k is [t_k, t_k + dt).
DensityReport density_one_extract(const Signal& s,
                                  const std::vector<double>& epsilon_ladder = {0.5, 0.2, 0.1, 0.05},
                                  double density_tol = 0.1);

// ---------------------------------------------------------------------------
// Cesaro means

struct CesaroStatistic {
    Signal running_mean;     ///< of |<T(s)x, y>|
    double tail = 0.0;       ///< average of the running mean over the last 10% of the grid
    double final_value = 0.0;
    double tail_start = 0.0;
};

CesaroStatistic cesaro_statistic(const Signal& orbit);

CesaroStatistic cesaro_stability_statistic(const SemigroupEvaluator& backend, const ComplexVector& x,
                                           const ComplexVector& y, const TimeGrid& grid);

// ---------------------------------------------------------------------------
// Relatively dense sequences

struct RelativelyDenseReport {
    double ell = 0.0;
    Interval window;
    double sequence_max = 0.0; ///< max |<T(t_n)x, y>| over t_n in [window.lo - ell, window.hi]
    double orbit_max = 0.0;    ///< max |<T(t)x, y>| over the window grid
    double envelope = 0.0;     ///< sup_{0 <= s <= ell} ||T(s)||
    double state_bound = 0.0;  ///< envelope * max ||T(t_n)x|| ||y|| over the same t_n
    double tol = 0.0;
    bool hypothesis_holds = false; ///< sequence_max <= tol
    bool conclusion_holds = false; ///< orbit_max <= state_bound
    std::string message;
};

/// Validates that every gap of t_sequence (starting from 0) is <= ell and
/// compares the orbit on `window` with its values along the sequence.
RelativelyDenseReport relatively_dense_check(const SemigroupEvaluator& backend,
                                             const ComplexVector& x, const ComplexVector& y,
                                             const std::vector<double>& t_sequence, double ell,
                                             Interval window, double dt = 0.01, double tol = 0.05);

// ---------------------------------------------------------------------------
// Mixing

/// Finite union of intervals on R/Z (or on the first coordinate of a 1-D flow).
struct IntervalSet {
    std::vector<Interval> parts;
    double measure() const;
    bool contains(double u) const;
};

struct MonteCarloSampler {
    std::uint64_t seed = 12345;
    std::size_t budget = 100000;
};

struct MixingCorrelation {
    double t = 0.0;
    double value = 0.0;     ///< mu(phi_t^{-1}A cap B) - mu(A) mu(B)
    double std_error = 0.0; ///< 0 on the exact path
    bool exact = false;
    std::size_t samples = 0;
};

/// Exact circle-interval arithmetic for torus rotations, Monte-Carlo with
/// uniform samples of the first coordinate otherwise.
MixingCorrelation mixing_correlation(const Flow& flow, const IntervalSet& a_set,
                                     const IntervalSet& b_set, double t,
                                     const MonteCarloSampler& sampler = {});

using PointSampler = std::function<FlowPoint(std::mt19937_64&)>;
using Indicator = std::function<bool(const FlowPoint&)>;

/// Monte-Carlo correlation for indicator sets under a user sampler of mu.
MixingCorrelation mixing_correlation(const Flow& flow, const Indicator& a_set,
                                     const Indicator& b_set, double t,
                                     const PointSampler& draw, const MonteCarloSampler& sampler);

struct MixingCesaro {
    Signal correlation; ///< C(t) on the grid
    Signal running_abs_mean;
    double cesaro_abs_mean = 0.0; ///< (1/T) int_0^T |C|
    double tol = 0.0;
    bool weakly_mixing_evidence = false; ///< cesaro_abs_mean <= tol
};

MixingCesaro mixing_cesaro(const Flow& flow, const IntervalSet& a_set, const IntervalSet& b_set,
                           const TimeGrid& grid, const MonteCarloSampler& sampler = {},
                           double tol = 0.01);

// ---------------------------------------------------------------------------
// Classification

enum class StabilityVerdict {
    weak_stability_evidence,
    almost_weak_only_evidence,
    not_almost_weak,
    inconclusive,
};

std::string to_string(StabilityVerdict v);

struct ClassifyConfig {
    double horizon = 1000.0;
    double dt = 0.01;
    double cesaro_tol = 0.05;
    double weak_tol = 0.05;         ///< trailing orbit sup below this counts as decay
    double recurrence_floor = 0.2;  ///< recurrence at or above this counts as non-decay
    double trailing_fraction = 0.1;
    std::vector<double> adversarial_probes;
    std::size_t probe_count = 5;    ///< only the last probes within the horizon are used
    std::vector<double> abel_ladder; ///< empty: route default
    double abel_floor = 1e-6;
    /// Log-log slope below this means no decay in a. On the frequency route a
    /// ladder also counts as bounded away when its linear extrapolation to
    /// a = 0 keeps at least half of the last value.
    double abel_slope_max = 0.2;
    double pointwise_floor = 0.05;  ///< off the frequency route; abel_floor applies on it
    std::size_t pointwise_samples = 64;
    std::size_t frequency_route_max_dim = 256;
};

struct ObservationReport {
    double cesaro_abs_tail = 0.0;
    double cesaro_final = 0.0;
    double trailing_sup = 0.0;
    std::vector<std::pair<double, double>> probe_values; ///< (t, |<T(t)x,y>|)
    double recurrence = 0.0; ///< max of trailing_sup and the probe values
    std::string abel_route;  ///< "frequency" or "time"
    std::vector<double> abel_a;
    std::vector<double> abel_values;
    LimitEstimate abel_limit;
    bool abel_bounded_away = false;
    double pointwise_abel_max = -1.0; ///< -1 when not evaluated
    double pointwise_abel_frequency = 0.0;
    bool pointwise_bounded_away = false;
    std::optional<Signal> orbit;
    std::optional<Signal> running_mean;
    StabilityVerdict verdict = StabilityVerdict::inconclusive;
};

struct StabilityReport {
    double cesaro_abs_tail = 0.0;    ///< max over observations
    double abel_square_tail = 0.0;   ///< max of the last Abel value
    double pointwise_abel_max = -1.0;
    int imaginary_eigen_count = -1;  ///< -1 when no eigenvalue scan is available
    std::vector<Complex> imaginary_eigenvalues;
    double recurrence_floor = 0.0;   ///< max recurrence over observations
    StabilityVerdict verdict = StabilityVerdict::inconclusive;
    ClassifyConfig config;
    std::vector<ObservationReport> observations;
};

/// Observation pairs are normalized by the backend norm first, so verdicts
/// do not depend on the scale of x and y.
StabilityReport classify(const SemigroupEvaluator& backend,
                         const std::vector<std::pair<ComplexVector, ComplexVector>>& observations,
                         const ClassifyConfig& config = {});

struct KoopmanObservation {
    Observable f;
    FlowPoint x0;
};

StabilityReport classify_koopman(const Flow& flow, const std::vector<KoopmanObservation>& observations,
                                 const ClassifyConfig& config = {});

} // namespace semistab
