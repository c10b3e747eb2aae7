#pragma once

// Shared domain types: state vectors, time grids, sampled signals, the
// semigroup evaluation contract and the quadrature helpers used by every
// other module.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace semistab {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Bad input: wrong shapes, out-of-range parameters, malformed configs.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation that could not be carried out to the requested accuracy
/// (singular solve, integrator blow-up, defective spectrum, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws ValidationError unless v is nonempty with finite entries.
void require_finite(const ComplexVector& v, const char* what);

/// Hilbert-space pairing with the second slot conjugated: sum_j x_j conj(y_j).
Complex pairing(const ComplexVector& x, const ComplexVector& y);

/// Euclidean norm, sqrt(pairing(x, x)).
double norm(const ComplexVector& x);

class TimeGrid {
public:
    TimeGrid(double t_start, double dt, std::size_t n_steps);

    /// Grid [0, horizon] with n_steps = round(horizon / dt).
    static TimeGrid from_horizon(double horizon, double dt);

    double t_start() const { return t_start_; }
    double dt() const { return dt_; }
    std::size_t n_steps() const { return n_steps_; }
    std::size_t size() const { return n_steps_ + 1; }
    double time(std::size_t k) const { return t_start_ + static_cast<double>(k) * dt_; }
    double t_max() const { return time(n_steps_); }

    /// Index of the first grid point with time >= t (clamped to the grid).
    std::size_t index_at_or_after(double t) const;

private:
    double t_start_;
    double dt_;
    std::size_t n_steps_;
};

class Signal {
public:
    Signal(TimeGrid grid, std::vector<Complex> values);

    const TimeGrid& grid() const { return grid_; }
    const std::vector<Complex>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    Complex operator[](std::size_t k) const { return values_[k]; }

    /// Pointwise modulus as a real-valued signal (stored with zero imaginary part).
    Signal abs() const;

private:
    TimeGrid grid_;
    std::vector<Complex> values_;
};

enum class MeanTransform { identity, abs, abs_squared };

enum class QuadratureRule { trapezoid, simpson };

/// Composite trapezoid (or Simpson, when the step count is even) over the
/// whole grid.
Complex trapezoid_integral(const Signal& s);
Complex integrate(const Signal& s, QuadratureRule rule);

/// Same rule applied to raw samples with spacing dt.
Complex trapezoid_integral(const std::vector<Complex>& values, double dt);
double trapezoid_integral(const std::vector<double>& values, double dt);

/// Value at t_k is the mean of transform(s) over [t_start, t_k]; at k = 0 the
/// point value transform(s(t_0)).
Signal running_mean(const Signal& s, MeanTransform transform);

struct Capabilities {
    bool has_resolvent_closed_form = false;
    bool is_contractive_claimed = false;
    bool adjoint_available = false;
};

/// A strongly continuous semigroup acting on finite state vectors.
///
/// apply(0, x) must return x unchanged. Implementations declare the tolerance
/// within which apply(t + s, x) matches apply(t, apply(s, x)).
class SemigroupEvaluator {
public:
    virtual ~SemigroupEvaluator() = default;

    virtual std::size_t dim() const = 0;
    virtual Capabilities capabilities() const = 0;
    virtual double semigroup_tolerance() const = 0;

    virtual ComplexVector apply(double t, const ComplexVector& x) const = 0;

    /// Pairing of the underlying Hilbert space. Euclidean unless overridden.
    virtual Complex inner(const ComplexVector& x, const ComplexVector& y) const;
    double state_norm(const ComplexVector& x) const;

    /// <T(t)x, y>. Backends override this when a cheaper route exists.
    virtual Complex orbit_value(double t, const ComplexVector& x, const ComplexVector& y) const;

    /// States T(t_k)x for every grid point.
    virtual std::vector<ComplexVector> orbit(const ComplexVector& x, const TimeGrid& grid) const;

    /// <T(t_k)x, y> for every grid point.
    virtual std::vector<Complex> orbit_values(const ComplexVector& x, const ComplexVector& y,
                                              const TimeGrid& grid) const;

    /// R(lambda, A)x when the backend has a closed form; throws otherwise.
    virtual ComplexVector resolvent(Complex lambda, const ComplexVector& x) const;

    /// A x when the generator can be applied directly; throws otherwise.
    virtual ComplexVector generator_apply(const ComplexVector& x) const;

    /// Imaginary parts of generator eigenvalues (or spectral atoms) that a
    /// frequency quadrature should treat as breakpoints. May be empty.
    virtual std::vector<double> frequency_breakpoints() const { return {}; }

    /// Upper bound for ||A|| when known, used to size frequency truncations.
    virtual double generator_norm_bound() const { return 1.0; }

protected:
    void check_state(const ComplexVector& x) const;
};

} // namespace semistab
