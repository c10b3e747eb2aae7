#include "semistab/diagnostics.hpp"

#include "semistab/linalg.hpp"
#include "semistab/matrix_semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace semistab {

Signal weak_orbit(const SemigroupEvaluator& backend, const ComplexVector& x,
                  const ComplexVector& y, const TimeGrid& grid) {
    return Signal(grid, backend.orbit_values(x, y, grid));
}

Signal weak_orbit(const Flow& flow, const Observable& f, const FlowPoint& x0, const TimeGrid& grid) {
    const auto traj = flow.trajectory(x0, grid);
    std::vector<Complex> values(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        values[k] = f.fn(traj[k]);
    }
    return Signal(grid, std::move(values));
}

std::string to_string(DensityVerdict v) {
    return v == DensityVerdict::density_one_convergence_evidence
               ? "density-one-convergence-evidence"
               : "fails";
}

DensityReport density_one_extract(const Signal& s, const std::vector<double>& epsilon_ladder,
                                  double density_tol) {
    if (epsilon_ladder.empty()) {
        throw ValidationError("density_one_extract: empty epsilon ladder");
    }
    for (std::size_t j = 0; j < epsilon_ladder.size(); ++j) {
        const double e = epsilon_ladder[j];
        if (!(e > 0.0) || !std::isfinite(e)) {
            throw ValidationError("density_one_extract: epsilons must be finite and > 0");
        }
        if (j > 0 && !(e < epsilon_ladder[j - 1])) {
            throw ValidationError("density_one_extract: epsilon ladder must be strictly decreasing");
        }
    }
    if (!(density_tol >= 0.0 && density_tol <= 1.0)) {
        throw ValidationError("density_one_extract: density_tol must lie in [0, 1]");
    }
    const auto& grid = s.grid();
    if (grid.t_start() != 0.0) {
        throw ValidationError("density_one_extract: signal grid must start at 0");
    }
    std::vector<double> f(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k].imag() != 0.0 || !(s[k].real() >= 0.0)) {
            throw ValidationError("density_one_extract: signal must be real and nonnegative "
                                  "(apply abs first)");
        }
        f[k] = s[k].real();
    }

    const std::size_t cells = grid.n_steps();
    const double dt = grid.dt();
    const double horizon = grid.t_max();
    const std::size_t levels = epsilon_ladder.size();

    DensityReport out;
    out.epsilon_ladder = epsilon_ladder;
    out.density_tol = density_tol;
    out.horizon = horizon;

    std::vector<double> bounds(levels + 1);
    for (std::size_t j = 0; j <= levels; ++j) {
        bounds[j] = horizon * std::ldexp(1.0, static_cast<int>(j) - static_cast<int>(levels));
    }
    bounds[0] = 0.0;
    std::vector<std::size_t> first_cell(levels + 1);
    for (std::size_t j = 0; j <= levels; ++j) {
        first_cell[j] = std::min(grid.index_at_or_after(bounds[j]), cells);
    }
    first_cell[levels] = cells;

    const std::size_t half = std::min(grid.index_at_or_after(0.5 * horizon), cells);
    for (double eps : epsilon_ladder) {
        DensityLevel level;
        level.epsilon = eps;
        std::size_t count = 0;
        std::size_t trailing = 0;
        std::size_t next_bound = 1;
        for (std::size_t k = 0; k < cells; ++k) {
            while (next_bound <= levels && k == first_cell[next_bound]) {
                if (k > 0) {
                    const double t = static_cast<double>(k) * dt;
                    level.cumulative.emplace_back(t, static_cast<double>(count) * dt / t);
                }
                ++next_bound;
            }
            if (f[k] >= eps) {
                ++count;
                if (k >= half) {
                    ++trailing;
                }
            }
        }
        level.cumulative.emplace_back(horizon, static_cast<double>(count) * dt / horizon);
        level.density = static_cast<double>(count) * dt / horizon;
        const std::size_t trailing_cells = cells - half;
        level.trailing_density =
            trailing_cells > 0 ? static_cast<double>(trailing) / static_cast<double>(trailing_cells)
                               : 0.0;
        out.levels.push_back(std::move(level));
    }

    std::vector<bool> excised(cells, false);
    for (std::size_t j = 0; j < levels; ++j) {
        DensityBlock block;
        block.start = bounds[j];
        block.end = bounds[j + 1];
        block.epsilon = epsilon_ladder[j];
        std::size_t count = 0;
        for (std::size_t k = first_cell[j]; k < first_cell[j + 1]; ++k) {
            if (f[k] >= block.epsilon) {
                excised[k] = true;
                ++count;
            }
        }
        const std::size_t n = first_cell[j + 1] - first_cell[j];
        block.excised_fraction = n > 0 ? static_cast<double>(count) / static_cast<double>(n) : 0.0;
        out.blocks.push_back(block);
    }

    std::size_t removed = 0;
    for (std::size_t k = 0; k < cells; ++k) {
        if (!excised[k]) {
            continue;
        }
        ++removed;
        const double lo = static_cast<double>(k) * dt;
        if (!out.excised.empty() && std::abs(out.excised.back().hi - lo) <= 1e-9 * dt) {
            out.excised.back().hi = lo + dt;
        } else {
            out.excised.push_back({lo, lo + dt});
        }
    }
    out.m_density = 1.0 - static_cast<double>(removed) / static_cast<double>(cells);
    out.verdict = out.blocks.back().excised_fraction <= density_tol
                      ? DensityVerdict::density_one_convergence_evidence
                      : DensityVerdict::fails;
    return out;
}

CesaroStatistic cesaro_statistic(const Signal& orbit) {
    Signal mean = running_mean(orbit, MeanTransform::abs);
    const auto& grid = orbit.grid();
    const double start = grid.t_max() - 0.1 * (grid.t_max() - grid.t_start());
    const std::size_t k0 = grid.index_at_or_after(start);
    double acc = 0.0;
    for (std::size_t k = k0; k < mean.size(); ++k) {
        acc += mean[k].real();
    }
    const double tail = acc / static_cast<double>(mean.size() - k0);
    const double last = mean[mean.size() - 1].real();
    return CesaroStatistic{std::move(mean), tail, last, grid.time(k0)};
}

CesaroStatistic cesaro_stability_statistic(const SemigroupEvaluator& backend, const ComplexVector& x,
                                           const ComplexVector& y, const TimeGrid& grid) {
    if (grid.t_start() != 0.0) {
        throw ValidationError("cesaro_stability_statistic: grid must start at 0");
    }
    return cesaro_statistic(weak_orbit(backend, x, y, grid));
}

namespace {

double semigroup_envelope(const SemigroupEvaluator& backend, double ell) {
    if (const auto* m = dynamic_cast<const MatrixSemigroup*>(&backend)) {
        double sup = 1.0;
        constexpr int samples = 200;
        for (int k = 1; k <= samples; ++k) {
            const double s = ell * static_cast<double>(k) / samples;
            sup = std::max(sup, linalg::operator_norm(m->propagator(s)));
        }
        return sup;
    }
    if (backend.capabilities().is_contractive_claimed) {
        return 1.0;
    }
    throw ValidationError("relatively_dense_check: no norm envelope for this backend");
}

} // namespace

RelativelyDenseReport relatively_dense_check(const SemigroupEvaluator& backend,
                                             const ComplexVector& x, const ComplexVector& y,
                                             const std::vector<double>& t_sequence, double ell,
                                             Interval window, double dt, double tol) {
    if (!(ell > 0.0) || !std::isfinite(ell)) {
        throw ValidationError("relatively_dense_check: ell must be finite and > 0");
    }
    if (!(window.lo >= 0.0) || !(window.hi > window.lo) || !std::isfinite(window.hi)) {
        throw ValidationError("relatively_dense_check: window must satisfy 0 <= lo < hi");
    }
    if (t_sequence.empty()) {
        throw ValidationError("relatively_dense_check: empty sequence");
    }
    double prev = 0.0;
    for (double t : t_sequence) {
        if (!std::isfinite(t) || t < prev) {
            throw ValidationError("relatively_dense_check: sequence must be finite, nonnegative "
                                  "and nondecreasing");
        }
        if (t - prev > ell) {
            std::ostringstream os;
            os << "relatively_dense_check: gap " << t - prev << " between t = " << prev
               << " and t = " << t << " exceeds ell = " << ell;
            throw ValidationError(os.str());
        }
        prev = t;
    }
    if (window.hi - prev > ell) {
        std::ostringstream os;
        os << "relatively_dense_check: sequence ends at t = " << prev
           << ", leaving a gap beyond ell = " << ell << " before the window end " << window.hi;
        throw ValidationError(os.str());
    }

    RelativelyDenseReport out;
    out.ell = ell;
    out.window = window;
    out.tol = tol;
    out.envelope = semigroup_envelope(backend, ell);
    const double y_norm = backend.state_norm(y);
    double state_max = 0.0;
    for (double t : t_sequence) {
        if (t < window.lo - ell || t > window.hi) {
            continue;
        }
        const ComplexVector tx = backend.apply(t, x);
        out.sequence_max = std::max(out.sequence_max, std::abs(backend.inner(tx, y)));
        state_max = std::max(state_max, backend.state_norm(tx));
    }
    out.state_bound = out.envelope * state_max * y_norm;

    const double span = window.hi - window.lo;
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(span / dt)));
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = window.lo + span * static_cast<double>(k) / static_cast<double>(steps);
        out.orbit_max = std::max(out.orbit_max, std::abs(backend.orbit_value(t, x, y)));
    }
    out.hypothesis_holds = out.sequence_max <= tol;
    out.conclusion_holds = out.orbit_max <= out.state_bound * (1.0 + 1e-9) + 1e-15;
    std::ostringstream os;
    if (!out.hypothesis_holds) {
        os << "hypothesis fails: sequence values reach " << out.sequence_max << " > " << tol;
    } else {
        os << "hypothesis holds: sequence max " << out.sequence_max << ", orbit max "
           << out.orbit_max << (out.conclusion_holds ? " <= " : " > ") << "bound "
           << out.state_bound;
    }
    out.message = os.str();
    return out;
}

double IntervalSet::measure() const {
    double total = 0.0;
    for (const auto& p : parts) {
        total += p.hi - p.lo;
    }
    return total;
}

bool IntervalSet::contains(double u) const {
    return std::any_of(parts.begin(), parts.end(),
                       [u](const Interval& p) { return u >= p.lo && u <= p.hi; });
}

namespace {

void validate_interval_set(const IntervalSet& s, const char* what) {
    std::vector<Interval> sorted = s.parts;
    std::sort(sorted.begin(), sorted.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        const auto& p = sorted[k];
        if (!(p.lo >= 0.0) || !(p.hi <= 1.0) || !(p.lo <= p.hi)) {
            throw ValidationError(std::string(what) + ": intervals must satisfy 0 <= lo <= hi <= 1");
        }
        if (k > 0 && p.lo < sorted[k - 1].hi) {
            throw ValidationError(std::string(what) + ": intervals must not overlap");
        }
    }
}

double overlap(double a0, double a1, double b0, double b1) {
    return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

/// |(A - shift) cap B| on R/Z.
double circle_overlap(const IntervalSet& a_set, const IntervalSet& b_set, double shift) {
    double total = 0.0;
    for (const auto& a : a_set.parts) {
        const double lo = a.lo - shift;
        const double hi = a.hi - shift;
        for (const auto& b : b_set.parts) {
            for (int wrap = -1; wrap <= 1; ++wrap) {
                total += overlap(lo + wrap, hi + wrap, b.lo, b.hi);
            }
        }
    }
    return total;
}

} // namespace

MixingCorrelation mixing_correlation(const Flow& flow, const IntervalSet& a_set,
                                     const IntervalSet& b_set, double t,
                                     const MonteCarloSampler& sampler) {
    validate_interval_set(a_set, "mixing_correlation");
    validate_interval_set(b_set, "mixing_correlation");
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ValidationError("mixing_correlation: t must be finite and >= 0");
    }
    MixingCorrelation out;
    out.t = t;
    const double product = a_set.measure() * b_set.measure();
    if (flow.kind() == FlowKind::torus_rotation) {
        double shift = std::fmod(*flow.rotation_speed() * t, 1.0);
        if (shift < 0.0) {
            shift += 1.0;
        }
        out.exact = true;
        out.value = circle_overlap(a_set, b_set, shift) - product;
        return out;
    }
    if (flow.dim() != 1) {
        throw ValidationError("mixing_correlation: interval sets need a one-dimensional flow");
    }
    const Indicator in_a = [&a_set](const FlowPoint& p) { return a_set.contains(p[0]); };
    const Indicator in_b = [&b_set](const FlowPoint& p) { return b_set.contains(p[0]); };
    const PointSampler uniform = [](std::mt19937_64& rng) {
        FlowPoint p(1);
        p[0] = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        return p;
    };
    out = mixing_correlation(flow, in_a, in_b, t, uniform, sampler);
    return out;
}

MixingCorrelation mixing_correlation(const Flow& flow, const Indicator& a_set,
                                     const Indicator& b_set, double t, const PointSampler& draw,
                                     const MonteCarloSampler& sampler) {
    if (sampler.budget == 0) {
        throw ValidationError("mixing_correlation: Monte-Carlo budget must be positive");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ValidationError("mixing_correlation: t must be finite and >= 0");
    }
    std::mt19937_64 rng(sampler.seed);
    std::size_t hits_a = 0, hits_b = 0, hits_joint = 0;
    for (std::size_t k = 0; k < sampler.budget; ++k) {
        const FlowPoint x = draw(rng);
        const bool in_b = b_set(x);
        const bool in_a = a_set(x);
        const bool moved_in_a = a_set(flow.advance(x, t).point);
        hits_a += in_a ? 1 : 0;
        hits_b += in_b ? 1 : 0;
        hits_joint += (in_b && moved_in_a) ? 1 : 0;
    }
    const auto n = static_cast<double>(sampler.budget);
    const double pa = static_cast<double>(hits_a) / n;
    const double pb = static_cast<double>(hits_b) / n;
    const double pj = static_cast<double>(hits_joint) / n;
    MixingCorrelation out;
    out.t = t;
    out.exact = false;
    out.samples = sampler.budget;
    out.value = pj - pa * pb;
    out.std_error = std::sqrt(std::max(0.0, pj * (1.0 - pj)) / n);
    return out;
}

MixingCesaro mixing_cesaro(const Flow& flow, const IntervalSet& a_set, const IntervalSet& b_set,
                           const TimeGrid& grid, const MonteCarloSampler& sampler, double tol) {
    if (grid.t_start() != 0.0) {
        throw ValidationError("mixing_cesaro: grid must start at 0");
    }
    std::vector<Complex> values(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        values[k] = mixing_correlation(flow, a_set, b_set, grid.time(k), sampler).value;
    }
    Signal corr(grid, std::move(values));
    Signal mean = running_mean(corr, MeanTransform::abs);
    const double final_mean = mean[mean.size() - 1].real();
    return MixingCesaro{std::move(corr), std::move(mean), final_mean, tol, final_mean <= tol};
}

std::string to_string(StabilityVerdict v) {
    switch (v) {
    case StabilityVerdict::weak_stability_evidence:
        return "weak-stability-evidence";
    case StabilityVerdict::almost_weak_only_evidence:
        return "almost-weak-only-evidence";
    case StabilityVerdict::not_almost_weak:
        return "not-almost-weak";
    case StabilityVerdict::inconclusive:
    default:
        return "inconclusive";
    }
}

namespace {

const std::vector<double> kFrequencyLadder{1e-1, 1e-2, 1e-3, 1e-4};

bool bounded_away(const LimitEstimate& e, double floor, double slope_max) {
    return e.last >= floor && e.log_slope < slope_max;
}

/// Abel mean a * 2 pi int_0^T e^{-2at} |orbit|^2 dt for each a with a T >= 10.
std::vector<double> time_route_ladder(const ClassifyConfig& cfg, double horizon) {
    std::vector<double> ladder = cfg.abel_ladder;
    if (ladder.empty()) {
        ladder = {0.1, 0.01, 10.0 / horizon};
    }
    std::vector<double> out;
    for (double a : ladder) {
        if (a > 0.0 && a * horizon >= 10.0 * (1.0 - 1e-12) && (out.empty() || a < out.back())) {
            out.push_back(a);
        }
    }
    if (out.empty()) {
        throw ValidationError("classify: no Abel parameter satisfies a * horizon >= 10");
    }
    return out;
}

double time_route_value(const Signal& orbit, double a) {
    const auto& grid = orbit.grid();
    std::vector<double> samples(orbit.size());
    for (std::size_t k = 0; k < orbit.size(); ++k) {
        samples[k] = std::exp(-2.0 * a * grid.time(k)) * std::norm(orbit[k]);
    }
    return a * 2.0 * std::numbers::pi * trapezoid_integral(samples, grid.dt());
}

void fill_orbit_statistics(ObservationReport& rep, const Signal& orbit, const ClassifyConfig& cfg,
                           const std::function<Complex(double)>& probe) {
    const auto& grid = orbit.grid();
    const auto cesaro = cesaro_statistic(orbit);
    rep.cesaro_abs_tail = cesaro.tail;
    rep.cesaro_final = cesaro.final_value;
    const std::size_t k0 = grid.index_at_or_after(grid.t_max() * (1.0 - cfg.trailing_fraction));
    for (std::size_t k = k0; k < orbit.size(); ++k) {
        rep.trailing_sup = std::max(rep.trailing_sup, std::abs(orbit[k]));
    }
    std::vector<double> probes;
    for (double t : cfg.adversarial_probes) {
        if (t > 0.0 && t <= grid.t_max()) {
            probes.push_back(t);
        }
    }
    std::sort(probes.begin(), probes.end());
    const std::size_t first = probes.size() > cfg.probe_count ? probes.size() - cfg.probe_count : 0;
    rep.recurrence = rep.trailing_sup;
    for (std::size_t k = first; k < probes.size(); ++k) {
        const double v = std::abs(probe(probes[k]));
        rep.probe_values.emplace_back(probes[k], v);
        rep.recurrence = std::max(rep.recurrence, v);
    }
    rep.running_mean = cesaro.running_mean;
    rep.orbit = orbit;
}

void fill_time_route(ObservationReport& rep, const Signal& orbit, const ClassifyConfig& cfg) {
    rep.abel_route = "time";
    rep.abel_a = time_route_ladder(cfg, orbit.grid().t_max());
    for (double a : rep.abel_a) {
        rep.abel_values.push_back(time_route_value(orbit, a));
    }
}

StabilityVerdict observation_verdict(const ObservationReport& rep, const ClassifyConfig& cfg) {
    if (rep.abel_bounded_away || rep.pointwise_bounded_away) {
        return StabilityVerdict::not_almost_weak;
    }
    if (rep.recurrence < cfg.weak_tol) {
        return StabilityVerdict::weak_stability_evidence;
    }
    if (rep.cesaro_abs_tail < cfg.cesaro_tol && rep.recurrence >= cfg.recurrence_floor) {
        return StabilityVerdict::almost_weak_only_evidence;
    }
    return StabilityVerdict::inconclusive;
}

void aggregate(StabilityReport& report) {
    bool any_not = report.imaginary_eigen_count > 0;
    bool all_weak = !report.observations.empty();
    bool all_decaying = !report.observations.empty();
    bool any_almost = false;
    for (const auto& rep : report.observations) {
        report.cesaro_abs_tail = std::max(report.cesaro_abs_tail, rep.cesaro_abs_tail);
        report.abel_square_tail = std::max(report.abel_square_tail, rep.abel_limit.last);
        report.pointwise_abel_max = std::max(report.pointwise_abel_max, rep.pointwise_abel_max);
        report.recurrence_floor = std::max(report.recurrence_floor, rep.recurrence);
        any_not = any_not || rep.verdict == StabilityVerdict::not_almost_weak;
        all_weak = all_weak && rep.verdict == StabilityVerdict::weak_stability_evidence;
        any_almost = any_almost || rep.verdict == StabilityVerdict::almost_weak_only_evidence;
        all_decaying = all_decaying && (rep.verdict == StabilityVerdict::weak_stability_evidence ||
                                        rep.verdict == StabilityVerdict::almost_weak_only_evidence);
    }
    if (any_not) {
        report.verdict = StabilityVerdict::not_almost_weak;
    } else if (all_weak) {
        report.verdict = StabilityVerdict::weak_stability_evidence;
    } else if (all_decaying && any_almost) {
        report.verdict = StabilityVerdict::almost_weak_only_evidence;
    } else {
        report.verdict = StabilityVerdict::inconclusive;
    }
}

ComplexVector normalized(const SemigroupEvaluator& backend, const ComplexVector& v,
                         const char* what) {
    const double n = backend.state_norm(v);
    if (!(n > 0.0)) {
        throw ValidationError(std::string("classify: ") + what + " must be nonzero");
    }
    return v / n;
}

} // namespace

StabilityReport classify(const SemigroupEvaluator& backend,
                         const std::vector<std::pair<ComplexVector, ComplexVector>>& observations,
                         const ClassifyConfig& config) {
    if (observations.empty()) {
        throw ValidationError("classify: at least one observation pair is required");
    }
    const auto grid = TimeGrid::from_horizon(config.horizon, config.dt);
    StabilityReport report;
    report.config = config;

    if (const auto* m = dynamic_cast<const MatrixSemigroup*>(&backend)) {
        const auto cert = m->generator().boundedness();
        report.imaginary_eigenvalues = cert.imaginary_eigenvalues;
        report.imaginary_eigen_count = static_cast<int>(cert.imaginary_eigenvalues.size());
    }

    const bool closed_form = backend.capabilities().has_resolvent_closed_form;
    const bool frequency_route = closed_form && backend.dim() <= config.frequency_route_max_dim;
    std::vector<double> frequencies;
    if (closed_form) {
        if (frequency_route) {
            frequencies = backend.frequency_breakpoints();
        }
        const double bound = backend.generator_norm_bound();
        const std::size_t n = config.pointwise_samples;
        for (std::size_t k = 0; k < n; ++k) {
            frequencies.push_back(n == 1 ? 0.0
                                         : -bound + 2.0 * bound * static_cast<double>(k) /
                                                        static_cast<double>(n - 1));
        }
    }

    for (const auto& [x_raw, y_raw] : observations) {
        const ComplexVector x = normalized(backend, x_raw, "x");
        const ComplexVector y = normalized(backend, y_raw, "y");
        ObservationReport rep;
        const Signal orbit = weak_orbit(backend, x, y, grid);
        fill_orbit_statistics(rep, orbit, config,
                              [&](double t) { return backend.orbit_value(t, x, y); });

        if (frequency_route) {
            const ResolventProbe probe(backend, ResolventMode::closed_form);
            rep.abel_route = "frequency";
            rep.abel_a = config.abel_ladder.empty() ? kFrequencyLadder : config.abel_ladder;
            for (double a : rep.abel_a) {
                rep.abel_values.push_back(abel_square_integral(probe, x, y, a).value);
            }
        } else {
            fill_time_route(rep, orbit, config);
        }
        rep.abel_limit = estimate_limit(rep.abel_a, rep.abel_values);
        rep.abel_bounded_away = bounded_away(rep.abel_limit, config.abel_floor, config.abel_slope_max);
        if (frequency_route && rep.abel_limit.last >= config.abel_floor) {
            rep.abel_bounded_away = rep.abel_bounded_away ||
                                    rep.abel_limit.richardson >= 0.5 * rep.abel_limit.last;
        }

        if (closed_form) {
            const ResolventProbe probe(backend, ResolventMode::closed_form);
            const double pointwise_floor =
                frequency_route ? config.abel_floor : config.pointwise_floor;
            for (double s : frequencies) {
                std::vector<double> values;
                for (double a : kFrequencyLadder) {
                    values.push_back(abel_pointwise(probe, x, a, s));
                }
                const auto est = estimate_limit(kFrequencyLadder, values);
                if (est.last > rep.pointwise_abel_max) {
                    rep.pointwise_abel_max = est.last;
                    rep.pointwise_abel_frequency = s;
                }
                if (bounded_away(est, pointwise_floor, config.abel_slope_max)) {
                    rep.pointwise_bounded_away = true;
                }
            }
        }
        rep.verdict = observation_verdict(rep, config);
        report.observations.push_back(std::move(rep));
    }
    aggregate(report);
    return report;
}

StabilityReport classify_koopman(const Flow& flow, const std::vector<KoopmanObservation>& observations,
                                 const ClassifyConfig& config) {
    if (observations.empty()) {
        throw ValidationError("classify_koopman: at least one observation is required");
    }
    const auto grid = TimeGrid::from_horizon(config.horizon, config.dt);
    StabilityReport report;
    report.config = config;
    for (const auto& obs : observations) {
        ObservationReport rep;
        const Signal orbit = weak_orbit(flow, obs.f, obs.x0, grid);
        fill_orbit_statistics(rep, orbit, config,
                              [&](double t) { return koopman_observe(flow, t, obs.f, obs.x0); });
        fill_time_route(rep, orbit, config);
        rep.abel_limit = estimate_limit(rep.abel_a, rep.abel_values);
        rep.abel_bounded_away = bounded_away(rep.abel_limit, config.abel_floor, config.abel_slope_max);
        rep.verdict = observation_verdict(rep, config);
        report.observations.push_back(std::move(rep));
    }
    aggregate(report);
    return report;
}

} // namespace semistab
