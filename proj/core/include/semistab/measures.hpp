#pragma once

// Fourier analysis of atomic spectral measures: transforms, decay
// diagnostics at infinity, and time averages of |F mu|^2.

#include "semistab/core.hpp"
#include "semistab/discrete_measure.hpp"

#include <string>
#include <utility>
#include <vector>

namespace semistab {

/// F mu(t) = sum_j w_j e^{i t r_j}. Factor-structured measures are evaluated
/// as the product of their factor transforms; everything else by direct
/// summation.
Complex fourier_transform(const DiscreteMeasure& mu, double t);

/// Direct summation over the atom list regardless of factor structure.
Complex fourier_transform_direct(const DiscreteMeasure& mu, double t);

/// Transform of the infinite-depth middle-thirds Cantor measure on [0, 1],
/// prod_k e^{i t 3^{-k}} cos(t 3^{-k}), truncated `terms` factors past the
/// scale of t.
Complex cantor_fourier_limit(double t, unsigned terms = 60);

struct FourierProfile {
    Signal samples;
    std::vector<std::pair<double, double>> peak_report; ///< (t, |F mu(t)|) at probe times
};

FourierProfile fourier_profile(const DiscreteMeasure& mu, const TimeGrid& grid,
                               const std::vector<double>& probe_times = {});

enum class DecayVerdict { decaying_evidence, non_decaying_evidence };

std::string to_string(DecayVerdict v);

struct WindowSupremum {
    double start = 0.0;
    double end = 0.0;
    double sup = 0.0;
};

struct RajchmanOptions {
    double vanish_tol = 0.05;       ///< bound on the trailing supremum
    double trailing_fraction = 0.2; ///< trailing window is [(1 - f) T, T]
    std::vector<double> adversarial_probes;
};

struct RajchmanReport {
    std::vector<WindowSupremum> windows;
    double trend_slope = 0.0; ///< least-squares slope of log sup vs log window centre
    double trailing_sup = 0.0;
    std::vector<std::pair<double, double>> probe_values;
    double probe_max = 0.0;
    DecayVerdict verdict = DecayVerdict::decaying_evidence;
    RajchmanOptions options;
    double horizon = 0.0;
};

/// Finite-horizon evidence on whether F mu vanishes at infinity.
RajchmanReport rajchman_diagnostic(const DiscreteMeasure& mu, const TimeGrid& probe_grid,
                                   double window, const RajchmanOptions& options = {});

struct WienerAverage {
    double value = 0.0;
    double limit = 0.0; ///< sum of squared atom masses
    double horizon = 0.0;
    double dt = 0.0;
};

/// (1/2T) int_{-T}^{T} |F mu|^2 dt by the trapezoid rule. dt <= 0 picks a step
/// resolving the largest atom frequency.
WienerAverage wiener_average(const DiscreteMeasure& mu, double horizon, double dt = 0.0);

} // namespace semistab
