#include "semistab/resolvent.hpp"

#include "semistab/multiplication_semigroup.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace semistab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_positive_real(double a, const char* what) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw ValidationError(std::string(what) + ": real part a must be finite and > 0");
    }
}

const MatrixSemigroup* as_matrix(const SemigroupEvaluator& b) {
    return dynamic_cast<const MatrixSemigroup*>(&b);
}

/// s0 for backends where it is known; throws for the rest.
double backend_s0(const SemigroupEvaluator& b, const char* what) {
    if (const auto* m = as_matrix(b)) {
        return s0_estimate(m->generator()).value;
    }
    if (dynamic_cast<const MultiplicationSemigroup*>(&b) != nullptr) {
        return 0.0;
    }
    throw ValidationError(std::string(what) + ": no abscissa estimate for this backend");
}

void require_s0_nonpositive(const SemigroupEvaluator& b, const char* what) {
    const double s0 = backend_s0(b, what);
    double tol = 1e-9;
    if (const auto* m = as_matrix(b)) {
        tol *= m->generator().scale();
    }
    if (s0 > tol) {
        std::ostringstream os;
        os << what << ": abscissa estimate " << s0 << " > 0 violates the hypothesis s0(A) <= 0";
        throw ValidationError(os.str());
    }
}

/// Subinterval endpoints for a frequency integral over [-S, S]: spectral
/// frequencies plus geometric refinements of width scale `w` around each.
std::vector<double> frequency_nodes(const ResolventProbe& probe, double w) {
    const double S = probe.s_max();
    std::vector<double> nodes{-S, S};
    for (double b : probe.breakpoints()) {
        if (std::abs(b) >= S) {
            continue;
        }
        nodes.push_back(b);
        for (double d = w; d < 2.0 * S; d *= 8.0) {
            if (b - d > -S) nodes.push_back(b - d);
            if (b + d < S) nodes.push_back(b + d);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end(),
                            [S](double u, double v) { return std::abs(u - v) <= 1e-14 * S; }),
                nodes.end());
    return nodes;
}

template <class F>
std::pair<double, double> integrate_frequency(const ResolventProbe& probe, double w, F&& f) {
    using boost::math::quadrature::gauss_kronrod;
    const auto nodes = frequency_nodes(probe, w);
    // Relative accuracy of an integrand value is limited by cond(lambda - A) ~ ||A|| / w.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                         (1.0 + probe.backend().generator_norm_bound()) / w;
    const double tol = std::max(probe.quadrature_tol, floor);
    double total = 0.0;
    double err_total = 0.0;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        double err = 0.0;
        total += gauss_kronrod<double, 31>::integrate(f, nodes[k], nodes[k + 1], 15, tol,
                                                      &err);
        err_total += err;
    }
    return {total, err_total};
}

} // namespace

std::string to_string(ResolventMode mode) {
    switch (mode) {
    case ResolventMode::closed_form:
        return "closed_form";
    case ResolventMode::linear_solve:
        return "linear_solve";
    case ResolventMode::laplace_quadrature:
    default:
        return "laplace_quadrature";
    }
}

ResolventProbe::ResolventProbe(const SemigroupEvaluator& backend, ResolventMode mode, double s_max)
    : backend_(&backend), mode_(mode) {
    if (!std::isfinite(s_max)) {
        throw ValidationError("ResolventProbe: s_max must be finite");
    }
    s_max_ = s_max > 0.0 ? s_max : 50.0 * (1.0 + backend.generator_norm_bound());
    if (mode == ResolventMode::closed_form && !backend.capabilities().has_resolvent_closed_form) {
        throw ValidationError("ResolventProbe: backend has no closed-form resolvent");
    }
    if (mode == ResolventMode::linear_solve && as_matrix(backend) == nullptr) {
        throw ValidationError("ResolventProbe: linear_solve mode requires a matrix backend");
    }
}

std::vector<double> ResolventProbe::breakpoints() const { return backend_->frequency_breakpoints(); }

ResolventResult resolvent_apply(const ResolventProbe& probe, Complex lambda, const ComplexVector& x) {
    require_positive_real(lambda.real(), "resolvent_apply");
    if (!std::isfinite(lambda.imag())) {
        throw ValidationError("resolvent_apply: lambda must be finite");
    }
    const auto& b = probe.backend();
    ResolventResult out;
    switch (probe.mode()) {
    case ResolventMode::closed_form:
        out.value = b.resolvent(lambda, x);
        break;
    case ResolventMode::linear_solve: {
        const auto* m = as_matrix(b);
        require_finite(x, "resolvent_apply");
        const auto n = static_cast<Eigen::Index>(m->dim());
        if (x.size() != n) {
            throw ValidationError("resolvent_apply: state dimension mismatch");
        }
        const ComplexMatrix shifted =
            lambda * ComplexMatrix::Identity(n, n) - m->generator().matrix();
        const double cond = m->resolvent_condition(lambda);
        out.condition_number = cond;
        if (!(cond < 1e14)) {
            throw NumericalError("resolvent_apply: lambda I - A is numerically singular");
        }
        out.value = shifted.partialPivLu().solve(x);
        break;
    }
    case ResolventMode::laplace_quadrature:
    default: {
        const auto grid = TimeGrid::from_horizon(probe.laplace_horizon, probe.laplace_dt);
        const double h = grid.dt();
        const std::size_t n = grid.n_steps();
        const double x_norm = b.state_norm(x);
        ComplexVector fine = ComplexVector::Zero(x.size());
        ComplexVector coarse = ComplexVector::Zero(x.size());
        double growth = 1.0;
        for (std::size_t k = 0; k <= n; ++k) {
            const double t = grid.time(k);
            const ComplexVector tx = b.apply(t, x);
            if (x_norm > 0.0) {
                growth = std::max(growth, b.state_norm(tx) / x_norm);
            }
            const Complex w = std::exp(-lambda * t);
            const double end_weight = (k == 0 || k == n) ? 0.5 : 1.0;
            fine += (end_weight * h) * w * tx;
            if (k % 2 == 0) {
                const double ce = (k == 0 || k == n) ? 0.5 : 1.0;
                coarse += (ce * 2.0 * h) * w * tx;
            }
        }
        out.value = fine;
        if (n % 2 == 0) {
            out.quadrature_error = b.state_norm(fine - coarse) / 3.0;
        }
        out.tail_bound = growth * x_norm * std::exp(-lambda.real() * grid.t_max()) / lambda.real();
        if (out.tail_bound > probe.laplace_tail_tol) {
            std::ostringstream os;
            os << "laplace quadrature tail bound " << out.tail_bound << " exceeds "
               << probe.laplace_tail_tol;
            out.warning = os.str();
        }
        break;
    }
    }
    return out;
}

ComplexVector resolvent_squared(const ResolventProbe& probe, Complex lambda, const ComplexVector& x) {
    const ComplexVector r = resolvent_apply(probe, lambda, x).value;
    return resolvent_apply(probe, lambda, r).value;
}

FrequencyIntegral resolvent_square_integral(const ResolventProbe& probe, const ComplexVector& x,
                                            const ComplexVector& y, double a) {
    require_positive_real(a, "resolvent_square_integral");
    const auto& b = probe.backend();
    auto f = [&](double s) {
        return std::norm(b.inner(resolvent_apply(probe, {a, s}, x).value, y));
    };
    FrequencyIntegral out;
    out.s_max = probe.s_max();
    const auto [val, err] = integrate_frequency(probe, a, f);
    out.truncated = val;
    out.error_estimate = err;
    out.tail = 2.0 * std::norm(b.inner(x, y)) / out.s_max;
    out.value = out.truncated + out.tail;
    return out;
}

FrequencyIntegral resolvent_squared_abs_integral(const ResolventProbe& probe,
                                                 const ComplexVector& x, const ComplexVector& y,
                                                 double a) {
    require_positive_real(a, "resolvent_squared_abs_integral");
    const auto& b = probe.backend();
    auto f = [&](double s) { return std::abs(b.inner(resolvent_squared(probe, {a, s}, x), y)); };
    FrequencyIntegral out;
    out.s_max = probe.s_max();
    const auto [val, err] = integrate_frequency(probe, a, f);
    out.truncated = val;
    out.error_estimate = err;
    out.tail = 2.0 * std::abs(b.inner(x, y)) / out.s_max;
    out.value = out.truncated + out.tail;
    return out;
}

AbelSquareResult abel_square_integral(const ResolventProbe& probe, const ComplexVector& x,
                                      const ComplexVector& y, double a) {
    AbelSquareResult out;
    out.a = a;
    out.integral = resolvent_square_integral(probe, x, y, a);
    out.value = a * out.integral.value;
    return out;
}

double abel_pointwise(const ResolventProbe& probe, const ComplexVector& x, double a, double s) {
    require_positive_real(a, "abel_pointwise");
    const ComplexVector r = resolvent_apply(probe, {a, s}, x).value;
    return a * probe.backend().state_norm(r);
}

PlancherelCheck plancherel_check(const ResolventProbe& probe, const ComplexVector& x,
                                 const ComplexVector& y, double a, double horizon, double dt,
                                 QuadratureRule rule) {
    require_positive_real(a, "plancherel_check");
    if (!(horizon * a >= 10.0)) {
        throw ValidationError("plancherel_check: horizon * a must be >= 10");
    }
    const auto& b = probe.backend();
    if (!(dt > 0.0)) {
        dt = 0.005 / (1.0 + b.generator_norm_bound());
    }
    PlancherelCheck out;
    out.a = a;
    out.horizon = horizon;
    out.lhs = resolvent_square_integral(probe, x, y, a).value;

    const auto grid = TimeGrid::from_horizon(horizon, dt);
    out.dt = grid.dt();
    std::vector<Complex> samples(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid.time(k);
        samples[k] = std::exp(-2.0 * a * t) * std::norm(b.orbit_value(t, x, y));
    }
    out.rhs = 2.0 * kPi * integrate(Signal(grid, std::move(samples)), rule).real();
    const double scale = std::max(std::abs(out.lhs), std::abs(out.rhs));
    out.rel_error = scale > 0.0 ? std::abs(out.lhs - out.rhs) / scale : 0.0;
    return out;
}

LimitEstimate estimate_limit(const std::vector<double>& params, const std::vector<double>& values) {
    if (params.size() != values.size() || values.empty()) {
        throw ValidationError("estimate_limit: need matching, nonempty parameter and value lists");
    }
    LimitEstimate out;
    const std::size_t n = values.size();
    out.last = values.back();
    out.richardson = out.last;
    for (std::size_t k = 1; k < n; ++k) {
        if (values[k] > values[k - 1] * (1.0 + 1e-9) + 1e-15) {
            out.monotone = false;
        }
    }
    if (n >= 2) {
        const double p0 = params[n - 2], p1 = params[n - 1];
        const double v0 = values[n - 2], v1 = values[n - 1];
        if (p0 != p1) {
            out.richardson = v1 - p1 * (v0 - v1) / (p0 - p1);
        }
        if (v0 > 0.0 && v1 > 0.0 && p0 > 0.0 && p1 > 0.0 && p0 != p1) {
            out.log_slope = (std::log(v1) - std::log(v0)) / (std::log(p1) - std::log(p0));
        } else if (v1 <= 0.0) {
            out.log_slope = std::numeric_limits<double>::infinity();
        }
    }
    return out;
}

ChillTomilovResult chill_tomilov_integrals(const ResolventProbe& probe, const ComplexVector& x,
                                           const ComplexVector& y,
                                           const ChillTomilovOptions& options) {
    if (!(options.a_min > 0.0) || !(options.a_max > options.a_min) || options.points < 2) {
        throw ValidationError("chill_tomilov_integrals: need 0 < a_min < a_max and >= 2 points");
    }
    const auto& b = probe.backend();
    ChillTomilovResult out;
    out.s0 = backend_s0(b, "chill_tomilov_integrals");
    require_s0_nonpositive(b, "chill_tomilov_integrals");

    const double la = std::log(options.a_max);
    const double lb = std::log(options.a_min);
    const double step = (la - lb) / static_cast<double>(options.points - 1);
    for (std::size_t k = 0; k < options.points; ++k) {
        const double a = std::exp(la - step * static_cast<double>(k));
        const double i = resolvent_squared_abs_integral(probe, x, y, a).value;
        out.a.push_back(a);
        out.integral.push_back(i);
        out.a_times_integral.push_back(a * i);
    }
    const double peak = *std::max_element(out.integral.begin(), out.integral.end());
    for (std::size_t k = 1; k < out.integral.size(); ++k) {
        if (out.integral[k] < out.integral[k - 1] - 1e-8 * peak) {
            out.nonincreasing = false;
        }
    }
    // int_{a_min}^{a_max} I(a) da = int a I(a) d(ln a); the strip below a_min
    // is bounded by a_min I(a_min) since I is nonincreasing.
    out.double_integral =
        trapezoid_integral(out.a_times_integral, step) + out.a_times_integral.back();
    out.limit = estimate_limit(out.a, out.a_times_integral);
    return out;
}

InverseLaplaceResult inverse_laplace_orbit(const ResolventProbe& probe, const ComplexVector& x,
                                           const ComplexVector& y, double t, double a, double ds) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw ValidationError("inverse_laplace_orbit: t must be finite and > 0");
    }
    if (!(a > 0.0)) {
        a = 1.0 / t;
    }
    if (!(ds > 0.0)) {
        ds = 0.05 / t;
    }
    if (!std::isfinite(a) || !std::isfinite(ds)) {
        throw ValidationError("inverse_laplace_orbit: a and ds must be finite");
    }
    if (ds * t > 0.1) {
        std::ostringstream os;
        os << "inverse_laplace_orbit: oscillation unresolved (ds * t = " << ds * t
           << " > 0.1); use ds <= " << 0.1 / t;
        throw ValidationError(os.str());
    }
    const auto& b = probe.backend();
    require_s0_nonpositive(b, "inverse_laplace_orbit");

    // Subtract the leading terms of R^2 at a shift c left of the contour; their
    // inverse transforms are known in closed form.
    const double c = -1.0;
    const Complex xy = b.inner(x, y);
    const Complex axy = b.inner(b.generator_apply(x) - c * x, y);

    const double S = probe.s_max();
    const auto n = static_cast<long>(std::ceil(S / ds));
    Complex sum{0.0, 0.0};
    for (long k = -n; k <= n; ++k) {
        const double s = static_cast<double>(k) * ds;
        const Complex lambda{a, s};
        const Complex shift = lambda - c;
        const Complex r2 = b.inner(resolvent_squared(probe, lambda, x), y);
        const Complex rem = r2 - xy / (shift * shift) - 2.0 * axy / (shift * shift * shift);
        const double w = (k == -n || k == n) ? 0.5 : 1.0;
        sum += w * std::exp(lambda * t) * rem;
    }
    InverseLaplaceResult out;
    out.t = t;
    out.a = a;
    out.ds = ds;
    out.s_max = static_cast<double>(n) * ds;
    out.value = sum * ds / (2.0 * kPi * t) + std::exp(c * t) * xy + t * std::exp(c * t) * axy;
    out.direct = b.orbit_value(t, x, y);
    out.abs_error = std::abs(out.value - *out.direct);
    return out;
}

double inverse_laplace_envelope(const ResolventProbe& probe, const ComplexVector& x,
                                const ComplexVector& y, double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw ValidationError("inverse_laplace_envelope: t must be finite and > 0");
    }
    const double a = 1.0 / t;
    return a * resolvent_squared_abs_integral(probe, x, y, a).value;
}

AbscissaEstimate s0_estimate(const MatrixGenerator& gen) {
    AbscissaEstimate out;
    out.value = -std::numeric_limits<double>::infinity();
    for (const auto& ev : gen.eigenvalues()) {
        out.value = std::max(out.value, ev.real());
    }
    out.matrix_exact = true;
    return out;
}

KoopmanResolvent koopman_resolvent(const Flow& flow, const Observable& f, const FlowPoint& x0,
                                   Complex lambda, double horizon, double dt) {
    if (!(lambda.real() >= 0.1) || !std::isfinite(lambda.imag())) {
        throw ValidationError("koopman_resolvent: requires Re lambda >= 0.1");
    }
    const auto grid = TimeGrid::from_horizon(horizon, dt);
    const auto traj = flow.trajectory(x0, grid);
    std::vector<Complex> samples(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        samples[k] = std::exp(-lambda * grid.time(k)) * f.fn(traj[k]);
    }
    KoopmanResolvent out;
    out.horizon = grid.t_max();
    out.value = trapezoid_integral(samples, grid.dt());
    out.tail_bound = f.sup_bound * std::exp(-lambda.real() * out.horizon) / lambda.real();
    return out;
}

} // namespace semistab
