#pragma once

// Resolvent evaluation and the resolvent-based stability functionals: Abel
// integrals, the Plancherel identity, the R^2 integrals and inverse-Laplace
// reconstruction of weak orbits.

#include "semistab/core.hpp"
#include "semistab/flow.hpp"
#include "semistab/matrix_semigroup.hpp"

#include <optional>
#include <string>
#include <vector>

namespace semistab {

enum class ResolventMode { closed_form, linear_solve, laplace_quadrature };

std::string to_string(ResolventMode mode);

/// Evaluator of lambda -> R(lambda, A)x, R^2(lambda, A)x for one backend.
///
/// All functionals are evaluated strictly inside Re lambda > 0. Frequency
/// integrals over s are truncated at +-s_max and completed with the analytic
/// tail of the leading 1/s (resp. 1/s^2) decay.
class ResolventProbe {
public:
    /// s_max <= 0 picks 50 (1 + ||A||).
    explicit ResolventProbe(const SemigroupEvaluator& backend,
                            ResolventMode mode = ResolventMode::closed_form, double s_max = 0.0);

    const SemigroupEvaluator& backend() const { return *backend_; }
    ResolventMode mode() const { return mode_; }
    double s_max() const { return s_max_; }

    /// Relative tolerance for adaptive frequency quadrature, raised to
    /// 64 eps (1 + ||A||) / a when the integrand cannot be evaluated that accurately.
    double quadrature_tol = 1e-10;
    /// Time horizon and step for laplace_quadrature mode.
    double laplace_horizon = 50.0;
    double laplace_dt = 1e-3;
    /// Tail bounds above this raise a warning in laplace_quadrature mode.
    double laplace_tail_tol = 1e-8;

    /// Frequencies where the integrands peak (spectral imaginary parts).
    std::vector<double> breakpoints() const;

private:
    const SemigroupEvaluator* backend_;
    ResolventMode mode_;
    double s_max_;
};

struct ResolventResult {
    ComplexVector value;
    std::optional<double> condition_number; ///< linear_solve on matrices
    double tail_bound = 0.0;                ///< laplace_quadrature truncation bound
    double quadrature_error = 0.0;          ///< laplace_quadrature step-halving estimate
    std::optional<std::string> warning;
};

ResolventResult resolvent_apply(const ResolventProbe& probe, Complex lambda, const ComplexVector& x);

/// R^2(lambda)x by two successive resolvent applications.
ComplexVector resolvent_squared(const ResolventProbe& probe, Complex lambda, const ComplexVector& x);

struct FrequencyIntegral {
    double value = 0.0;     ///< truncated integral plus tail correction
    double truncated = 0.0; ///< over [-s_max, s_max]
    double tail = 0.0;
    double s_max = 0.0;
    double error_estimate = 0.0;
};

/// int |<R(a+is)x, y>|^2 ds over the real line.
FrequencyIntegral resolvent_square_integral(const ResolventProbe& probe, const ComplexVector& x,
                                            const ComplexVector& y, double a);

/// int |<R^2(a+is)x, y>| ds over the real line.
FrequencyIntegral resolvent_squared_abs_integral(const ResolventProbe& probe,
                                                 const ComplexVector& x, const ComplexVector& y,
                                                 double a);

struct AbelSquareResult {
    double value = 0.0; ///< a * int |<R(a+is)x,y>|^2 ds
    double a = 0.0;
    FrequencyIntegral integral;
};

AbelSquareResult abel_square_integral(const ResolventProbe& probe, const ComplexVector& x,
                                      const ComplexVector& y, double a);

/// ||a R(a+is)x|| in the backend's norm.
double abel_pointwise(const ResolventProbe& probe, const ComplexVector& x, double a, double s);

struct PlancherelCheck {
    double lhs = 0.0; ///< int |<R(a+is)x,y>|^2 ds
    double rhs = 0.0; ///< 2 pi int_0^horizon e^{-2at} |<T(t)x,y>|^2 dt
    double rel_error = 0.0;
    double a = 0.0;
    double horizon = 0.0;
    double dt = 0.0;
};

/// Both sides of the Plancherel identity for t -> e^{-at}<T(t)x,y>.
/// Requires a * horizon >= 10. dt <= 0 picks 0.005 / (1 + ||A||).
PlancherelCheck plancherel_check(const ResolventProbe& probe, const ComplexVector& x,
                                 const ComplexVector& y, double a, double horizon, double dt = 0.0,
                                 QuadratureRule rule = QuadratureRule::trapezoid);

/// Limit evidence for a quantity sampled along a decreasing parameter ladder.
struct LimitEstimate {
    double last = 0.0;
    double richardson = 0.0;  ///< linear extrapolation to parameter 0 from the last two points
    double log_slope = 0.0;   ///< d log(value) / d log(parameter) over the last two points
    bool monotone = true;     ///< values nonincreasing as the parameter decreases
};

LimitEstimate estimate_limit(const std::vector<double>& params, const std::vector<double>& values);

struct ChillTomilovOptions {
    double a_min = 1e-3;
    double a_max = 1.0;
    std::size_t points = 61; ///< log-spaced a-grid
};

struct ChillTomilovResult {
    std::vector<double> a;          ///< decreasing
    std::vector<double> integral;   ///< I(a) = int |<R^2(a+is)x,y>| ds
    std::vector<double> a_times_integral;
    double double_integral = 0.0;   ///< int_0^1 I(a) da (grid part plus [0, a_min] strip)
    bool nonincreasing = true;      ///< I(a1) >= I(a2) for a1 < a2
    LimitEstimate limit;            ///< of a I(a) as a -> 0
    double s0 = 0.0;
};

/// Requires s0(A) <= 0 (matrices) or a unitary multiplication backend.
ChillTomilovResult chill_tomilov_integrals(const ResolventProbe& probe, const ComplexVector& x,
                                           const ComplexVector& y,
                                           const ChillTomilovOptions& options = {});

struct InverseLaplaceResult {
    Complex value;
    double t = 0.0;
    double a = 0.0;
    double ds = 0.0;
    double s_max = 0.0;
    std::optional<Complex> direct; ///< <T(t)x,y> from the backend, for comparison
    double abs_error = 0.0;        ///< |value - direct| when direct is available
};

/// <T(t)x,y> = (1/(2 pi t)) int e^{(a+is)t} <R^2(a+is)x,y> ds. a <= 0 selects
/// a = 1/t. ds <= 0 picks 0.05/t; ds * t > 0.1 is rejected as unresolved.
InverseLaplaceResult inverse_laplace_orbit(const ResolventProbe& probe, const ComplexVector& x,
                                           const ComplexVector& y, double t, double a = 0.0,
                                           double ds = 0.0);

/// a I(a) at a = 1/t, which bounds |<T(t)x,y>|.
double inverse_laplace_envelope(const ResolventProbe& probe, const ComplexVector& x,
                                const ComplexVector& y, double t);

struct AbscissaEstimate {
    double value = 0.0;        ///< max Re of the spectrum
    bool matrix_exact = true;  ///< finite dimension: s0 equals the spectral bound
};

AbscissaEstimate s0_estimate(const MatrixGenerator& gen);

struct KoopmanResolvent {
    Complex value;
    double tail_bound = 0.0;
    double horizon = 0.0;
};

/// (R(lambda)f)(x0) = int_0^T e^{-lambda t} f(phi_t(x0)) dt for Re lambda >= 0.1,
/// with tail bound sup|f| e^{-Re lambda T} / Re lambda.
KoopmanResolvent koopman_resolvent(const Flow& flow, const Observable& f, const FlowPoint& x0,
                                   Complex lambda, double horizon, double dt = 0.01);

} // namespace semistab
