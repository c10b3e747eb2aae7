#include "semistab/decompositions.hpp"

#include "semistab/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace semistab {

namespace {

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

/// Spectral projection for a semisimple eigenvalue mu: onto ker(A - mu)
/// along ran(A - mu).
ComplexMatrix eigen_projection(const ComplexMatrix& a, Complex mu, double rank_tol) {
    const ComplexMatrix shifted = a - mu * identity(a.rows());
    const ComplexMatrix kernel = linalg::kernel_basis(shifted, rank_tol);
    const ComplexMatrix range = linalg::range_basis(shifted, rank_tol);
    return linalg::oblique_projection(kernel, range);
}

} // namespace

JgdlSplit jgdl_split(const MatrixGenerator& gen, double tol_im) {
    const auto cert = gen.boundedness(tol_im);
    if (!cert.bounded) {
        throw NumericalError("jgdl_split: " + cert.reason);
    }
    const ComplexMatrix& a = gen.matrix();
    const Eigen::Index n = a.rows();
    const double rank_tol = 1e-8 * gen.scale();

    JgdlSplit out;
    out.tolerance = cert.tolerance;
    out.imaginary_eigenvalues = cert.imaginary_eigenvalues;
    out.proj_r = ComplexMatrix::Zero(n, n);
    for (const auto& mu : cert.imaginary_eigenvalues) {
        out.proj_r += eigen_projection(a, mu, rank_tol);
    }
    out.proj_s = identity(n) - out.proj_r;
    out.basis_r = linalg::range_basis(out.proj_r, 1e-8);
    out.basis_s = linalg::range_basis(out.proj_s, 1e-8);
    return out;
}

FoguelSplit foguel_split(const MatrixGenerator& gen, const FoguelOptions& options) {
    const ComplexMatrix& a = gen.matrix();
    const Eigen::Index n = a.rows();
    const double scale = gen.scale();
    const double abscissa = gen.numerical_abscissa();
    if (abscissa > options.contractive_tol * scale) {
        throw ValidationError("foguel_split: generator is not dissipative (max eig of (A+A*)/2 = " +
                              std::to_string(abscissa) + ")");
    }
    const double cutoff = options.cutoff * scale;

    FoguelSplit out;
    out.smallest_retained_singular_value = std::numeric_limits<double>::infinity();
    auto track = [&](const ComplexMatrix& m) {
        if (m.rows() == 0 || m.cols() == 0) {
            return;
        }
        Eigen::JacobiSVD<ComplexMatrix> svd(m);
        for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
            const double s = svd.singularValues()[k];
            if (s > cutoff) {
                out.smallest_retained_singular_value =
                    std::min(out.smallest_retained_singular_value, s);
            }
        }
    };

    // K_0 = ker(A + A*), then K_{n+1} = K_n cap A^{-1} K_n cap (A*)^{-1} K_n.
    const ComplexMatrix hermitian = a + a.adjoint();
    track(hermitian);
    ComplexMatrix q = linalg::kernel_basis(hermitian, cutoff);
    const ComplexMatrix a_adj = a.adjoint();
    for (Eigen::Index iter = 0; iter < n && q.cols() > 0; ++iter) {
        ++out.iterations;
        const ComplexMatrix leak = identity(n) - q * q.adjoint();
        ComplexMatrix stacked(2 * n, q.cols());
        stacked << leak * a * q, leak * a_adj * q;
        track(stacked);
        const ComplexMatrix coeffs = linalg::kernel_basis(stacked, cutoff);
        if (coeffs.cols() == q.cols()) {
            break;
        }
        if (coeffs.cols() == 0) {
            q = ComplexMatrix(n, 0);
            break;
        }
        Eigen::HouseholderQR<ComplexMatrix> qr(q * coeffs);
        q = qr.householderQ() * ComplexMatrix::Identity(n, coeffs.cols());
    }
    out.basis_w_perp = q;
    out.basis_w = linalg::orthogonal_complement(q, n);
    if (!std::isfinite(out.smallest_retained_singular_value)) {
        out.smallest_retained_singular_value = 0.0;
    }
    out.near_degenerate = out.smallest_retained_singular_value > 0.0 &&
                          out.smallest_retained_singular_value < options.degenerate_gap * scale;
    return out;
}

MeanErgodicProjection mean_ergodic_projection(const MatrixGenerator& gen, double horizon,
                                              double dt) {
    if (!(horizon > 0.0)) {
        throw ValidationError("mean_ergodic_projection: horizon must be > 0");
    }
    const auto cert = gen.boundedness();
    if (!cert.bounded) {
        throw NumericalError("mean_ergodic_projection: " + cert.reason);
    }
    const ComplexMatrix& a = gen.matrix();
    const Eigen::Index n = a.rows();
    const double rank_tol = 1e-8 * gen.scale();

    MeanErgodicProjection out;
    out.horizon = horizon;
    out.exact = linalg::oblique_projection(linalg::kernel_basis(a, rank_tol),
                                           linalg::range_basis(a, rank_tol));

    if (dt <= 0.0) {
        dt = std::min(0.01, 0.1 / std::max(gen.norm(), 1e-300));
    }
    const TimeGrid grid = TimeGrid::from_horizon(horizon, dt);
    out.dt = grid.dt();
    const MatrixSemigroup sg(gen);
    const ComplexMatrix step = sg.propagator(grid.dt());
    ComplexMatrix current = identity(n);
    ComplexMatrix sum = 0.5 * current;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        current = step * current;
        sum += (k + 1 == grid.size() ? 0.5 : 1.0) * current;
    }
    out.empirical = sum * (grid.dt() / horizon);
    out.deviation = linalg::operator_norm(out.empirical - out.exact);
    return out;
}

double Cogenerator::norm() const { return linalg::operator_norm(matrix); }

std::vector<Complex> Cogenerator::eigenvalues() const {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(matrix, false);
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

ComplexVector Cogenerator::power_apply(std::size_t n, const ComplexVector& x) const {
    if (x.size() != matrix.rows()) {
        throw ValidationError("cogenerator power: dimension mismatch");
    }
    ComplexVector y = x;
    for (std::size_t k = 0; k < n; ++k) {
        y = matrix * y;
    }
    return y;
}

Cogenerator cogenerator_of(const MatrixGenerator& gen) {
    const Eigen::Index n = static_cast<Eigen::Index>(gen.dim());
    const ComplexMatrix shifted = identity(n) - gen.matrix();
    Eigen::JacobiSVD<ComplexMatrix> svd(shifted);
    const auto& sv = svd.singularValues();
    if (sv[sv.size() - 1] <= 1e-13 * sv[0]) {
        throw NumericalError("cogenerator_of: I - A is numerically singular (1 is in the spectrum)");
    }
    const ComplexMatrix inv = Eigen::PartialPivLU<ComplexMatrix>(shifted).inverse();
    return Cogenerator{identity(n) - 2.0 * inv};
}

Complex cayley_image(Complex lambda) { return -(1.0 + lambda) / (1.0 - lambda); }

StrongLimitComparison compare_strong_limits(const MatrixGenerator& gen, const ComplexVector& x,
                                            double plateau_tol) {
    StrongLimitComparison out;
    const double scale = std::max(x.norm(), 1e-300);
    const MatrixSemigroup sg(gen);

    double t = 1.0;
    double prev = sg.apply(t, x).norm();
    for (int k = 0; k < 30; ++k) {
        const double next = sg.apply(2.0 * t, x).norm();
        t *= 2.0;
        if (std::abs(next - prev) <= plateau_tol * scale) {
            out.semigroup_converged = true;
            prev = next;
            break;
        }
        prev = next;
    }
    out.semigroup_limit = prev;
    out.t_star = t;

    const Cogenerator g = cogenerator_of(gen);
    ComplexVector y = g.matrix * x;
    std::size_t n = 1;
    double prev_g = y.norm();
    constexpr std::size_t max_power = std::size_t{1} << 24;
    while (n < max_power) {
        for (std::size_t k = 0; k < n; ++k) {
            y = g.matrix * y;
        }
        n *= 2;
        const double next = y.norm();
        if (std::abs(next - prev_g) <= plateau_tol * scale) {
            out.cogenerator_converged = true;
            prev_g = next;
            break;
        }
        prev_g = next;
    }
    out.cogenerator_limit = prev_g;
    out.n_star = n;
    return out;
}

} // namespace semistab
