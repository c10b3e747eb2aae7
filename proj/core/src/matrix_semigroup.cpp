#include "semistab/matrix_semigroup.hpp"

#include "semistab/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace semistab {

MatrixGenerator::MatrixGenerator(ComplexMatrix a) : a_(std::move(a)) {
    if (a_.rows() == 0 || a_.rows() != a_.cols()) {
        throw ValidationError("generator matrix must be square and nonempty (got " +
                              std::to_string(a_.rows()) + "x" + std::to_string(a_.cols()) + ")");
    }
    for (Eigen::Index i = 0; i < a_.rows(); ++i) {
        for (Eigen::Index j = 0; j < a_.cols(); ++j) {
            if (!std::isfinite(a_(i, j).real()) || !std::isfinite(a_(i, j).imag())) {
                throw ValidationError("generator matrix has a non-finite entry");
            }
        }
    }
    norm_ = linalg::operator_norm(a_);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(a_, false);
    if (es.info() != Eigen::Success) {
        throw NumericalError("eigenvalue computation did not converge");
    }
    const auto& ev = es.eigenvalues();
    eigenvalues_.assign(ev.data(), ev.data() + ev.size());
}

double MatrixGenerator::numerical_abscissa() const {
    const ComplexMatrix h = 0.5 * (a_ + a_.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

BoundednessCertificate MatrixGenerator::boundedness(double tol_re) const {
    BoundednessCertificate cert;
    cert.eigenvalues = eigenvalues_;
    cert.tolerance = tol_re * scale();
    cert.max_real_part = -std::numeric_limits<double>::infinity();
    for (const auto& ev : eigenvalues_) {
        cert.max_real_part = std::max(cert.max_real_part, ev.real());
    }
    if (cert.max_real_part > cert.tolerance) {
        cert.bounded = false;
        std::ostringstream os;
        os << "eigenvalue with real part " << cert.max_real_part << " > " << cert.tolerance;
        cert.reason = os.str();
        return cert;
    }

    std::vector<Complex> imaginary;
    for (const auto& ev : eigenvalues_) {
        if (std::abs(ev.real()) <= cert.tolerance) {
            imaginary.push_back(ev);
        }
    }
    std::sort(imaginary.begin(), imaginary.end(),
              [](Complex a, Complex b) { return a.imag() < b.imag(); });

    const double cluster_tol = 1e-7 * scale();
    const double rank_tol = 1e-8 * scale();
    std::size_t i = 0;
    while (i < imaginary.size()) {
        std::size_t j = i + 1;
        Complex sum = imaginary[i];
        while (j < imaginary.size() && std::abs(imaginary[j] - imaginary[j - 1]) <= cluster_tol) {
            sum += imaginary[j];
            ++j;
        }
        const auto algebraic = static_cast<Eigen::Index>(j - i);
        const Complex centre{0.0, (sum / static_cast<double>(algebraic)).imag()};
        const ComplexMatrix shifted =
            a_ - centre * ComplexMatrix::Identity(a_.rows(), a_.cols());
        const Eigen::Index geometric = linalg::kernel_basis(shifted, rank_tol).cols();
        if (geometric < algebraic) {
            cert.bounded = false;
            std::ostringstream os;
            os << "imaginary eigenvalue " << centre.imag() << "i is defective (algebraic "
               << algebraic << ", geometric " << geometric << ")";
            cert.reason = os.str();
        }
        cert.imaginary_eigenvalues.push_back(centre);
        i = j;
    }
    return cert;
}

MatrixSemigroup::MatrixSemigroup(MatrixGenerator gen, MatrixSemigroupOptions opts)
    : gen_(std::move(gen)), opts_(opts) {
    const ComplexMatrix& a = gen_.matrix();
    Eigen::ComplexEigenSolver<ComplexMatrix> es(a, true);
    if (es.info() == Eigen::Success) {
        Eigen::JacobiSVD<ComplexMatrix> svd(es.eigenvectors());
        const auto& sv = svd.singularValues();
        const double smin = sv[sv.size() - 1];
        eigen_condition_ = smin > 0.0 ? sv[0] / smin : std::numeric_limits<double>::infinity();
        if (eigen_condition_ <= opts_.eigen_condition_limit) {
            eigen_path_ = true;
            eigvecs_ = es.eigenvectors();
            eigvals_ = es.eigenvalues();
            eigvecs_inv_ = eigvecs_.inverse();
        }
    } else {
        eigen_condition_ = std::numeric_limits<double>::infinity();
    }
    Eigen::ComplexSchur<ComplexMatrix> schur(a);
    schur_q_ = schur.matrixU();
    schur_t_ = schur.matrixT();
    contractive_ = gen_.numerical_abscissa() <= 1e-12 * gen_.scale();
}

Capabilities MatrixSemigroup::capabilities() const {
    Capabilities c;
    c.has_resolvent_closed_form = true;
    c.is_contractive_claimed = contractive_;
    c.adjoint_available = true;
    return c;
}

void MatrixSemigroup::check_time(double t) const {
    if (!std::isfinite(t)) {
        throw ValidationError("time must be finite");
    }
    if (t < 0.0 && !opts_.group) {
        throw ValidationError("negative time requires group mode");
    }
}

ComplexMatrix MatrixSemigroup::propagator(double t) const {
    check_time(t);
    const auto n = static_cast<Eigen::Index>(dim());
    if (t == 0.0) {
        return ComplexMatrix::Identity(n, n);
    }
    if (eigen_path_) {
        Eigen::VectorXcd d(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            d[k] = std::exp(t * eigvals_[k]);
        }
        return eigvecs_ * d.asDiagonal() * eigvecs_inv_;
    }
    const ComplexMatrix ta = t * gen_.matrix();
    return ta.exp();
}

ComplexVector MatrixSemigroup::apply(double t, const ComplexVector& x) const {
    check_state(x);
    check_time(t);
    if (t == 0.0) {
        return x;
    }
    if (eigen_path_) {
        Eigen::VectorXcd c = eigvecs_inv_ * x;
        for (Eigen::Index k = 0; k < c.size(); ++k) {
            c[k] *= std::exp(t * eigvals_[k]);
        }
        return eigvecs_ * c;
    }
    return propagator(t) * x;
}

Complex MatrixSemigroup::orbit_value(double t, const ComplexVector& x,
                                     const ComplexVector& y) const {
    return pairing(apply(t, x), y);
}

std::vector<ComplexVector> MatrixSemigroup::orbit(const ComplexVector& x,
                                                  const TimeGrid& grid) const {
    check_state(x);
    std::vector<ComplexVector> out;
    out.reserve(grid.size());
    if (eigen_path_) {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            out.push_back(apply(grid.time(k), x));
        }
        return out;
    }
    const ComplexMatrix step = propagator(grid.dt());
    ComplexVector state = apply(grid.t_start(), x);
    out.push_back(state);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        state = step * state;
        out.push_back(state);
    }
    return out;
}

std::vector<Complex> MatrixSemigroup::orbit_values(const ComplexVector& x, const ComplexVector& y,
                                                   const TimeGrid& grid) const {
    check_state(x);
    check_state(y);
    std::vector<Complex> out(grid.size());
    if (eigen_path_) {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            out[k] = orbit_value(grid.time(k), x, y);
        }
        return out;
    }
    // Stepping with e^{dt A}, re-anchored every kAnchor steps.
    constexpr std::size_t kAnchor = 256;
    const ComplexMatrix step = propagator(grid.dt());
    ComplexVector state;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        state = k % kAnchor == 0 ? apply(grid.time(k), x) : ComplexVector(step * state);
        out[k] = pairing(state, y);
    }
    return out;
}

ComplexVector MatrixSemigroup::resolvent(Complex lambda, const ComplexVector& x) const {
    check_state(x);
    const auto n = schur_t_.rows();
    // (lambda - A) = Q (lambda - T) Q*, T upper triangular.
    ComplexVector rhs = schur_q_.adjoint() * x;
    const double floor = 1e-14 * (std::abs(lambda) + gen_.scale());
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        Complex acc = rhs[i];
        for (Eigen::Index j = i + 1; j < n; ++j) {
            acc += schur_t_(i, j) * rhs[j];
        }
        const Complex diag = lambda - schur_t_(i, i);
        if (std::abs(diag) <= floor) {
            throw NumericalError("resolvent: lambda is numerically an eigenvalue of A");
        }
        rhs[i] = acc / diag;
    }
    return schur_q_ * rhs;
}

double MatrixSemigroup::resolvent_condition(Complex lambda) const {
    const auto n = static_cast<Eigen::Index>(dim());
    const ComplexMatrix m = lambda * ComplexMatrix::Identity(n, n) - gen_.matrix();
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto& sv = svd.singularValues();
    const double smin = sv[sv.size() - 1];
    return smin > 0.0 ? sv[0] / smin : std::numeric_limits<double>::infinity();
}

ComplexVector MatrixSemigroup::generator_apply(const ComplexVector& x) const {
    check_state(x);
    return gen_.matrix() * x;
}

std::vector<double> MatrixSemigroup::frequency_breakpoints() const {
    std::vector<double> out;
    for (const auto& ev : gen_.eigenvalues()) {
        out.push_back(ev.imag());
    }
    return out;
}

ComplexVector matrix_apply(const MatrixGenerator& gen, double t, const ComplexVector& x,
                           bool group) {
    MatrixSemigroupOptions opts;
    opts.group = group;
    if (t < 0.0 && !group) {
        throw ValidationError("matrix_apply: t < 0 requires group mode");
    }
    return MatrixSemigroup(gen, opts).apply(t, x);
}

CheckedApply matrix_apply_checked(const MatrixGenerator& gen, double t, const ComplexVector& x,
                                  bool group) {
    CheckedApply out;
    const auto cert = gen.boundedness();
    if (!cert.bounded) {
        out.warning = "semigroup flagged unbounded: " + cert.reason;
    }
    out.value = matrix_apply(gen, t, x, group);
    return out;
}

} // namespace semistab
