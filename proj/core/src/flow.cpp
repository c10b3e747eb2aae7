#include "semistab/flow.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace semistab {

Flow::Flow(std::string name, std::size_t dim, VectorField field, IntegratorConfig config)
    : name_(std::move(name)), dim_(dim), field_(std::move(field)), config_(config) {
    if (dim_ == 0) {
        throw ValidationError("flow dimension must be positive");
    }
    if (!(config_.step > 0.0) || !std::isfinite(config_.step)) {
        throw ValidationError("integrator step must be finite and > 0");
    }
}

Flow Flow::homoclinic(IntegratorConfig config) {
    Flow f("homoclinic", 2,
           [](const FlowPoint& x) {
               FlowPoint v(2);
               const double r = x[0];
               const double w = x[1];
               v[0] = 1.0 - r;
               v[1] = 1.0 + (r * r - 2.0 * r * std::cos(w));
               return v;
           },
           config);
    f.kind_ = FlowKind::homoclinic;
    return f;
}

Flow Flow::torus_rotation(double alpha, IntegratorConfig config) {
    if (!std::isfinite(alpha)) {
        throw ValidationError("rotation speed must be finite");
    }
    Flow f("torus_rotation", 1,
           [alpha](const FlowPoint&) {
               FlowPoint v(1);
               v[0] = alpha;
               return v;
           },
           config);
    f.kind_ = FlowKind::torus_rotation;
    f.alpha_ = alpha;
    return f;
}

void Flow::check_point(const FlowPoint& x) const {
    if (static_cast<std::size_t>(x.size()) != dim_) {
        throw ValidationError("flow state has dimension " + std::to_string(x.size()) +
                              ", expected " + std::to_string(dim_));
    }
    if (!x.allFinite()) {
        throw ValidationError("flow state must be finite");
    }
}

void Flow::normalize(FlowPoint& x) const {
    if (kind_ == FlowKind::torus_rotation) {
        x[0] -= std::floor(x[0]);
    }
}

FlowPoint Flow::rk4_step(const FlowPoint& x, double h) const {
    const FlowPoint k1 = field_(x);
    const FlowPoint k2 = field_(x + 0.5 * h * k1);
    const FlowPoint k3 = field_(x + 0.5 * h * k2);
    const FlowPoint k4 = field_(x + h * k3);
    FlowPoint next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    normalize(next);
    return next;
}

FlowPoint Flow::integrate(const FlowPoint& x0, double t, double h_max) const {
    FlowPoint x = x0;
    if (t == 0.0) {
        return x;
    }
    const auto n = static_cast<std::size_t>(std::ceil(t / h_max - 1e-9));
    const double h = t / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        x = rk4_step(x, h);
        if (!x.allFinite()) {
            std::ostringstream os;
            os << name_ << ": integrator diverged at t = " << static_cast<double>(k + 1) * h
               << " with step " << h;
            throw NumericalError(os.str());
        }
    }
    return x;
}

Flow::Advance Flow::advance(const FlowPoint& x0, double t) const {
    check_point(x0);
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ValidationError("flow time must be finite and >= 0");
    }
    Advance out{integrate(x0, t, config_.step), 0.0};
    if (config_.estimate_error && t > 0.0) {
        const FlowPoint fine = integrate(x0, t, 0.5 * config_.step);
        FlowPoint diff = out.point - fine;
        if (kind_ == FlowKind::torus_rotation) {
            diff[0] -= std::round(diff[0]);
        }
        out.error_estimate = diff.norm() / 15.0;
        if (out.error_estimate > config_.error_tol) {
            std::ostringstream os;
            os << name_ << ": step-doubling error estimate " << out.error_estimate
               << " exceeds tolerance " << config_.error_tol << " at t = " << t
               << " (step " << config_.step << "); reduce the step";
            throw NumericalError(os.str());
        }
    }
    return out;
}

std::vector<FlowPoint> Flow::trajectory(const FlowPoint& x0, const TimeGrid& grid) const {
    check_point(x0);
    std::vector<FlowPoint> out;
    out.reserve(grid.size());
    FlowPoint x = integrate(x0, grid.t_start(), config_.step);
    FlowPoint x_fine = config_.estimate_error ? integrate(x0, grid.t_start(), 0.5 * config_.step) : x;
    out.push_back(x);
    double worst = 0.0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        x = integrate(x, grid.dt(), config_.step);
        if (config_.estimate_error) {
            x_fine = integrate(x_fine, grid.dt(), 0.5 * config_.step);
            FlowPoint diff = x - x_fine;
            if (kind_ == FlowKind::torus_rotation) {
                diff[0] -= std::round(diff[0]);
            }
            worst = std::max(worst, diff.norm() / 15.0);
            if (worst > config_.error_tol) {
                std::ostringstream os;
                os << name_ << ": step-doubling error estimate " << worst << " exceeds tolerance "
                   << config_.error_tol << " at t = " << grid.time(k) << "; reduce the step";
                throw NumericalError(os.str());
            }
        }
        out.push_back(x);
    }
    return out;
}

namespace {

double smooth_bump(double u) {
    // exp(1 - 1/(1 - u^2)) on |u| < 1, peak 1 at u = 0.
    if (std::abs(u) >= 1.0) {
        return 0.0;
    }
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double wrap_angle(double w) {
    const double two_pi = 2.0 * std::numbers::pi;
    return w - two_pi * std::floor(w / two_pi);
}

} // namespace

Observable homoclinic_bump(double centre, double half_width, double r_bound) {
    if (!(half_width > 0.0)) {
        throw ValidationError("bump half-width must be > 0");
    }
    const double c = wrap_angle(centre);
    if (c - half_width <= 0.0 || c + half_width >= 2.0 * std::numbers::pi) {
        throw ValidationError("bump support must avoid the fixed point at angle 0");
    }
    Observable f;
    f.name = "bump";
    f.sup_bound = r_bound;
    f.fn = [c, half_width](const FlowPoint& x) {
        return Complex{x[0] * smooth_bump((wrap_angle(x[1]) - c) / half_width), 0.0};
    };
    return f;
}

Observable homoclinic_radius(double r_bound) {
    Observable f;
    f.name = "radius";
    f.sup_bound = r_bound;
    f.fn = [](const FlowPoint& x) { return Complex{x[0], 0.0}; };
    return f;
}

Observable torus_character(int k) {
    Observable f;
    f.name = "character";
    f.sup_bound = 1.0;
    f.fn = [k](const FlowPoint& x) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(k) * x[0];
        return Complex{std::cos(phase), std::sin(phase)};
    };
    return f;
}

Complex koopman_observe(const Flow& flow, double t, const Observable& f, const FlowPoint& x0) {
    return f.fn(flow.advance(x0, t).point);
}

} // namespace semistab
