#pragma once

#include "semistab/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace semistab {

/// Outcome of the eigenvalue scan that decides whether e^{tA} stays bounded.
struct BoundednessCertificate {
    bool bounded = true;
    double max_real_part = 0.0;
    double tolerance = 0.0; ///< absolute threshold on |Re lambda|
    std::vector<Complex> eigenvalues;
    std::vector<Complex> imaginary_eigenvalues; ///< cluster centres with |Re| <= tolerance
    std::string reason;                         ///< empty when bounded
};

/// Dense complex generator A (units 1/time).
class MatrixGenerator {
public:
    explicit MatrixGenerator(ComplexMatrix a);

    const ComplexMatrix& matrix() const { return a_; }
    std::size_t dim() const { return static_cast<std::size_t>(a_.rows()); }
    double norm() const { return norm_; }
    const std::vector<Complex>& eigenvalues() const { return eigenvalues_; }

    /// Scale used by relative tolerances: max(||A||, 1).
    double scale() const { return norm_ > 1.0 ? norm_ : 1.0; }

    /// tol_re is relative to scale(). Eigenvalues with |Re| <= tol are
    /// clustered and must be semisimple.
    BoundednessCertificate boundedness(double tol_re = 1e-9) const;

    /// Largest eigenvalue of (A + A*) / 2.
    double numerical_abscissa() const;

private:
    ComplexMatrix a_;
    double norm_ = 0.0;
    std::vector<Complex> eigenvalues_;
};

struct MatrixSemigroupOptions {
    bool group = false;                 ///< allow negative times
    double eigen_condition_limit = 1e4; ///< above this, fall back to expm
};

/// T(t) = e^{tA}. Uses the eigendecomposition when A is diagonalizable with a
/// well-conditioned eigenbasis, scaling-and-squaring otherwise.
class MatrixSemigroup final : public SemigroupEvaluator {
public:
    explicit MatrixSemigroup(MatrixGenerator gen, MatrixSemigroupOptions opts = {});

    const MatrixGenerator& generator() const { return gen_; }
    bool uses_eigendecomposition() const { return eigen_path_; }
    double eigenbasis_condition() const { return eigen_condition_; }

    std::size_t dim() const override { return gen_.dim(); }
    Capabilities capabilities() const override;
    double semigroup_tolerance() const override { return 1e-9; }

    ComplexVector apply(double t, const ComplexVector& x) const override;
    std::vector<ComplexVector> orbit(const ComplexVector& x, const TimeGrid& grid) const override;
    Complex orbit_value(double t, const ComplexVector& x, const ComplexVector& y) const override;
    std::vector<Complex> orbit_values(const ComplexVector& x, const ComplexVector& y,
                                      const TimeGrid& grid) const override;

    /// The full propagator e^{tA}.
    ComplexMatrix propagator(double t) const;

    /// (lambda I - A)^{-1} x via the Schur form; throws NumericalError when
    /// lambda is (numerically) an eigenvalue.
    ComplexVector resolvent(Complex lambda, const ComplexVector& x) const override;
    /// 2-norm condition number of lambda I - A.
    double resolvent_condition(Complex lambda) const;

    ComplexVector generator_apply(const ComplexVector& x) const override;
    std::vector<double> frequency_breakpoints() const override;
    double generator_norm_bound() const override { return gen_.norm(); }

private:
    void check_time(double t) const;

    MatrixGenerator gen_;
    MatrixSemigroupOptions opts_;
    bool eigen_path_ = false;
    double eigen_condition_ = 0.0;
    ComplexMatrix eigvecs_;
    ComplexMatrix eigvecs_inv_;
    Eigen::VectorXcd eigvals_;
    ComplexMatrix schur_q_;
    ComplexMatrix schur_t_;
    bool contractive_ = false;
};

/// e^{tA}x for a single evaluation.
ComplexVector matrix_apply(const MatrixGenerator& gen, double t, const ComplexVector& x,
                           bool group = false);

struct CheckedApply {
    ComplexVector value;
    std::optional<std::string> warning; ///< set when the boundedness certificate fails
};

/// matrix_apply that also evaluates the boundedness certificate.
CheckedApply matrix_apply_checked(const MatrixGenerator& gen, double t, const ComplexVector& x,
                                  bool group = false);

} // namespace semistab
