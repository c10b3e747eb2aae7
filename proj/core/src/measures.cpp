#include "semistab/measures.hpp"

#include <algorithm>
#include <cmath>

namespace semistab {

namespace {

Complex atom_sum(const std::vector<Atom>& atoms, double t) {
    Complex sum{0.0, 0.0};
    for (const auto& a : atoms) {
        const double phase = t * a.location;
        sum += a.weight * Complex{std::cos(phase), std::sin(phase)};
    }
    return sum;
}

} // namespace

Complex fourier_transform(const DiscreteMeasure& mu, double t) {
    if (!mu.has_factor_structure()) {
        return atom_sum(mu.atoms(), t);
    }
    Complex product{1.0, 0.0};
    for (const auto& factor : mu.convolution_factors()) {
        product *= atom_sum(factor, t);
    }
    return product;
}

Complex fourier_transform_direct(const DiscreteMeasure& mu, double t) {
    return atom_sum(mu.atoms(), t);
}

Complex cantor_fourier_limit(double t, unsigned terms) {
    // Factors with 3^k well below |t| contribute unit-modulus terms of size 1
    // only for special t; keep every scale down to |t| 3^{-k} ~ 3^{-terms}.
    const double scale = std::abs(t) > 1.0 ? std::ceil(std::log(std::abs(t)) / std::log(3.0)) : 0.0;
    const auto k_max = static_cast<unsigned>(scale) + terms;
    Complex product{1.0, 0.0};
    double u = t;
    for (unsigned k = 1; k <= k_max; ++k) {
        u /= 3.0;
        product *= Complex{std::cos(u), std::sin(u)} * std::cos(u);
    }
    return product;
}

FourierProfile fourier_profile(const DiscreteMeasure& mu, const TimeGrid& grid,
                               const std::vector<double>& probe_times) {
    std::vector<Complex> values(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        values[k] = fourier_transform(mu, grid.time(k));
    }
    FourierProfile profile{Signal(grid, std::move(values)), {}};
    for (double t : probe_times) {
        profile.peak_report.emplace_back(t, std::abs(fourier_transform(mu, t)));
    }
    return profile;
}

std::string to_string(DecayVerdict v) {
    return v == DecayVerdict::decaying_evidence ? "decaying-evidence" : "non-decaying-evidence";
}

RajchmanReport rajchman_diagnostic(const DiscreteMeasure& mu, const TimeGrid& probe_grid,
                                   double window, const RajchmanOptions& options) {
    if (!(window > 0.0)) {
        throw ValidationError("rajchman_diagnostic: window must be > 0");
    }
    const double span = probe_grid.t_max() - probe_grid.t_start();
    if (span < 3.0 * window) {
        throw ValidationError("rajchman_diagnostic: probe grid must cover several windows");
    }
    RajchmanReport report;
    report.options = options;
    report.horizon = probe_grid.t_max();

    std::vector<double> mod(probe_grid.size());
    for (std::size_t k = 0; k < probe_grid.size(); ++k) {
        mod[k] = std::abs(fourier_transform(mu, probe_grid.time(k)));
    }

    WindowSupremum current{probe_grid.t_start(), probe_grid.t_start() + window, 0.0};
    for (std::size_t k = 0; k < probe_grid.size(); ++k) {
        const double t = probe_grid.time(k);
        while (t >= current.end && current.end < probe_grid.t_max()) {
            report.windows.push_back(current);
            current = WindowSupremum{current.end, current.end + window, 0.0};
        }
        current.sup = std::max(current.sup, mod[k]);
    }
    current.end = std::min(current.end, probe_grid.t_max());
    report.windows.push_back(current);

    // Regression skips the first window, where F mu(0) = total mass dominates.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 1; i < report.windows.size(); ++i) {
        const auto& w = report.windows[i];
        if (w.sup <= 0.0) {
            continue;
        }
        const double x = std::log(0.5 * (w.start + w.end));
        const double y = std::log(w.sup);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2) {
        const double denom = static_cast<double>(n) * sxx - sx * sx;
        report.trend_slope = denom != 0.0 ? (static_cast<double>(n) * sxy - sx * sy) / denom : 0.0;
    }

    const double trailing_start = probe_grid.t_max() - options.trailing_fraction * span;
    for (std::size_t k = probe_grid.index_at_or_after(trailing_start); k < probe_grid.size(); ++k) {
        report.trailing_sup = std::max(report.trailing_sup, mod[k]);
    }
    for (double t : options.adversarial_probes) {
        const double v = std::abs(fourier_transform(mu, t));
        report.probe_values.emplace_back(t, v);
        report.probe_max = std::max(report.probe_max, v);
    }
    const bool decaying =
        report.trailing_sup < options.vanish_tol && report.probe_max < options.vanish_tol;
    report.verdict =
        decaying ? DecayVerdict::decaying_evidence : DecayVerdict::non_decaying_evidence;
    return report;
}

WienerAverage wiener_average(const DiscreteMeasure& mu, double horizon, double dt) {
    if (!(horizon > 0.0)) {
        throw ValidationError("wiener_average: T must be > 0");
    }
    if (dt <= 0.0) {
        const double r = std::max({1.0, std::abs(mu.min_location()), std::abs(mu.max_location())});
        dt = 0.05 / r;
    }
    // |F mu(-t)| = |F mu(t)| for real atoms, so the symmetric average equals
    // the one-sided average over [0, T].
    const TimeGrid grid = TimeGrid::from_horizon(horizon, dt);
    std::vector<double> sq(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        sq[k] = std::norm(fourier_transform(mu, grid.time(k)));
    }
    WienerAverage out;
    out.value = trapezoid_integral(sq, grid.dt()) / horizon;
    out.limit = mu.atom_mass_square_sum();
    out.horizon = horizon;
    out.dt = grid.dt();
    return out;
}

} // namespace semistab
