#include "semistab/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace semistab {

void require_finite(const ComplexVector& v, const char* what) {
    if (v.size() == 0) {
        throw ValidationError(std::string(what) + ": empty vector");
    }
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        if (!std::isfinite(v[j].real()) || !std::isfinite(v[j].imag())) {
            throw ValidationError(std::string(what) + ": non-finite entry at index " +
                                  std::to_string(j));
        }
    }
}

Complex pairing(const ComplexVector& x, const ComplexVector& y) {
    if (x.size() != y.size()) {
        throw ValidationError("pairing: dimension mismatch (" + std::to_string(x.size()) +
                              " vs " + std::to_string(y.size()) + ")");
    }
    Complex sum{0.0, 0.0};
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        sum += x[j] * std::conj(y[j]);
    }
    return sum;
}

double norm(const ComplexVector& x) { return x.norm(); }

TimeGrid::TimeGrid(double t_start, double dt, std::size_t n_steps)
    : t_start_(t_start), dt_(dt), n_steps_(n_steps) {
    if (!(t_start >= 0.0) || !std::isfinite(t_start)) {
        throw ValidationError("TimeGrid: t_start must be finite and >= 0");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("TimeGrid: dt must be finite and > 0");
    }
    if (n_steps == 0) {
        throw ValidationError("TimeGrid: n_steps must be positive");
    }
}

TimeGrid TimeGrid::from_horizon(double horizon, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("TimeGrid: dt must be finite and > 0");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw ValidationError("TimeGrid: horizon must be finite and > 0");
    }
    const double steps = std::round(horizon / dt);
    if (steps < 1.0) {
        throw ValidationError("TimeGrid: horizon shorter than one step");
    }
    return TimeGrid(0.0, horizon / steps, static_cast<std::size_t>(steps));
}

std::size_t TimeGrid::index_at_or_after(double t) const {
    if (t <= t_start_) {
        return 0;
    }
    const double k = std::ceil((t - t_start_) / dt_ - 1e-9);
    return std::min(static_cast<std::size_t>(k), n_steps_);
}

Signal::Signal(TimeGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw ValidationError("Signal: expected " + std::to_string(grid_.size()) +
                              " values, got " + std::to_string(values_.size()));
    }
    for (const auto& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw ValidationError("Signal: non-finite value");
        }
    }
}

Signal Signal::abs() const {
    std::vector<Complex> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(),
                   [](Complex v) { return Complex{std::abs(v), 0.0}; });
    return Signal(grid_, std::move(out));
}

Complex trapezoid_integral(const std::vector<Complex>& values, double dt) {
    if (values.size() < 2) {
        return {0.0, 0.0};
    }
    Complex interior{0.0, 0.0};
    for (std::size_t k = 1; k + 1 < values.size(); ++k) {
        interior += values[k];
    }
    return dt * (0.5 * (values.front() + values.back()) + interior);
}

double trapezoid_integral(const std::vector<double>& values, double dt) {
    if (values.size() < 2) {
        return 0.0;
    }
    double interior = 0.0;
    for (std::size_t k = 1; k + 1 < values.size(); ++k) {
        interior += values[k];
    }
    return dt * (0.5 * (values.front() + values.back()) + interior);
}

Complex trapezoid_integral(const Signal& s) {
    return trapezoid_integral(s.values(), s.grid().dt());
}

namespace {

Complex simpson(const std::vector<Complex>& v, double dt) {
    const std::size_t n = v.size() - 1;
    if (n < 2) {
        return trapezoid_integral(v, dt);
    }
    // Even number of intervals handled by Simpson 1/3; an odd count closes
    // with a 3/8 panel on the last three intervals.
    const std::size_t even_end = (n % 2 == 0) ? n : n - 3;
    Complex sum{0.0, 0.0};
    if (even_end >= 2) {
        sum += v[0] + v[even_end];
        for (std::size_t k = 1; k < even_end; ++k) {
            sum += (k % 2 == 1 ? 4.0 : 2.0) * v[k];
        }
        sum *= dt / 3.0;
    }
    if (even_end != n) {
        const std::size_t j = even_end;
        sum += 3.0 * dt / 8.0 * (v[j] + 3.0 * v[j + 1] + 3.0 * v[j + 2] + v[j + 3]);
    }
    return sum;
}

} // namespace

Complex integrate(const Signal& s, QuadratureRule rule) {
    switch (rule) {
    case QuadratureRule::simpson:
        return simpson(s.values(), s.grid().dt());
    case QuadratureRule::trapezoid:
    default:
        return trapezoid_integral(s);
    }
}

Signal running_mean(const Signal& s, MeanTransform transform) {
    auto f = [transform](Complex v) -> Complex {
        switch (transform) {
        case MeanTransform::abs:
            return {std::abs(v), 0.0};
        case MeanTransform::abs_squared:
            return {std::norm(v), 0.0};
        case MeanTransform::identity:
        default:
            return v;
        }
    };
    const auto& grid = s.grid();
    const double dt = grid.dt();
    std::vector<Complex> out(s.size());
    Complex prev = f(s[0]);
    out[0] = prev;
    Complex cumulative{0.0, 0.0};
    for (std::size_t k = 1; k < s.size(); ++k) {
        const Complex cur = f(s[k]);
        cumulative += 0.5 * dt * (prev + cur);
        out[k] = cumulative / (static_cast<double>(k) * dt);
        prev = cur;
    }
    return Signal(grid, std::move(out));
}

Complex SemigroupEvaluator::inner(const ComplexVector& x, const ComplexVector& y) const {
    return pairing(x, y);
}

double SemigroupEvaluator::state_norm(const ComplexVector& x) const {
    return std::sqrt(std::max(0.0, inner(x, x).real()));
}

Complex SemigroupEvaluator::orbit_value(double t, const ComplexVector& x,
                                        const ComplexVector& y) const {
    return inner(apply(t, x), y);
}

std::vector<ComplexVector> SemigroupEvaluator::orbit(const ComplexVector& x,
                                                     const TimeGrid& grid) const {
    std::vector<ComplexVector> out;
    out.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        out.push_back(apply(grid.time(k), x));
    }
    return out;
}

std::vector<Complex> SemigroupEvaluator::orbit_values(const ComplexVector& x, const ComplexVector& y,
                                                      const TimeGrid& grid) const {
    std::vector<Complex> out(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        out[k] = orbit_value(grid.time(k), x, y);
    }
    return out;
}

ComplexVector SemigroupEvaluator::resolvent(Complex, const ComplexVector&) const {
    throw NumericalError("backend has no closed-form resolvent");
}

ComplexVector SemigroupEvaluator::generator_apply(const ComplexVector&) const {
    throw NumericalError("backend cannot apply its generator");
}

void SemigroupEvaluator::check_state(const ComplexVector& x) const {
    if (static_cast<std::size_t>(x.size()) != dim()) {
        throw ValidationError("state dimension " + std::to_string(x.size()) +
                              " does not match backend dimension " + std::to_string(dim()));
    }
    require_finite(x, "state");
}

} // namespace semistab
