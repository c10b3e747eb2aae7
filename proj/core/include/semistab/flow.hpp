#pragma once

// Koopman backend: flows integrated with fixed-step RK4 and observed through
// point functionals, f -> f(phi_t(x0)).

#include "semistab/core.hpp"

#include <functional>
#include <optional>
#include <string>

namespace semistab {

using FlowPoint = Eigen::VectorXd;

struct IntegratorConfig {
    double step = 1e-3;
    /// Step-doubling estimate above this aborts the integration.
    double error_tol = 1e-6;
    bool estimate_error = true;
};

enum class FlowKind { homoclinic, torus_rotation, custom };

class Flow {
public:
    using VectorField = std::function<FlowPoint(const FlowPoint&)>;

    Flow(std::string name, std::size_t dim, VectorField field, IntegratorConfig config = {});

    /// dr/dt = 1 - r, dw/dt = 1 + r^2 - 2 r cos w on polar coordinates (r, w).
    /// (1, 0) is the only equilibrium on the unit circle.
    static Flow homoclinic(IntegratorConfig config = {});

    /// dx/dt = alpha on R/Z; states are kept in [0, 1).
    static Flow torus_rotation(double alpha, IntegratorConfig config = {});

    const std::string& name() const { return name_; }
    FlowKind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    const IntegratorConfig& config() const { return config_; }
    /// Rotation speed for torus flows.
    std::optional<double> rotation_speed() const { return alpha_; }

    FlowPoint velocity(const FlowPoint& x) const { return field_(x); }

    /// One classical RK4 step.
    FlowPoint rk4_step(const FlowPoint& x, double h) const;

    struct Advance {
        FlowPoint point;
        double error_estimate = 0.0; ///< |x_h - x_{h/2}| / 15, 0 when disabled
    };

    /// phi_t(x0) for t >= 0.
    Advance advance(const FlowPoint& x0, double t) const;

    /// phi_{t_k}(x0) at every grid time.
    std::vector<FlowPoint> trajectory(const FlowPoint& x0, const TimeGrid& grid) const;

private:
    void check_point(const FlowPoint& x) const;
    FlowPoint integrate(const FlowPoint& x0, double t, double h_max) const;
    void normalize(FlowPoint& x) const;

    std::string name_;
    std::size_t dim_;
    VectorField field_;
    IntegratorConfig config_;
    FlowKind kind_ = FlowKind::custom;
    std::optional<double> alpha_;
};

/// Scalar observable on flow states with a known bound on |f|.
struct Observable {
    std::string name;
    std::function<Complex(const FlowPoint&)> fn;
    double sup_bound = 1.0;
};

/// r * b(w) with a smooth compactly supported bump b centred at `centre`
/// (half-width `half_width`, peak 1). Vanishes at the fixed point (1, 0)
/// whenever the bump support avoids w = 0.
Observable homoclinic_bump(double centre = 3.141592653589793, double half_width = 1.5707963267948966,
                           double r_bound = 1.0);

/// The r-coordinate of the homoclinic flow.
Observable homoclinic_radius(double r_bound = 1.0);

/// e^{2 pi i k x} on the torus.
Observable torus_character(int k = 1);

/// f(phi_t(x0)): the weak orbit of f against the point functional at x0.
Complex koopman_observe(const Flow& flow, double t, const Observable& f, const FlowPoint& x0);

} // namespace semistab
