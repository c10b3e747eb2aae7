#include "semistab/instances.hpp"

#include <cmath>

namespace semistab::instances {

ComplexVector random_vector(Eigen::Index n, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexVector v(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        v[j] = Complex{g(rng), g(rng)};
    }
    return v;
}

ComplexMatrix random_unitary(Eigen::Index n, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix z(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            z(i, j) = Complex{g(rng), g(rng)};
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const double m = std::abs(r(j, j));
        if (m > 0.0) {
            q.col(j) *= r(j, j) / m;
        }
    }
    return q;
}

PlantedGenerator random_stable_generator(Eigen::Index n, Rng& rng, double max_real,
                                         bool seed_imaginary, double coupling) {
    std::uniform_real_distribution<double> re(-2.0, max_real);
    std::uniform_real_distribution<double> im(-3.0, 3.0);
    std::normal_distribution<double> g(0.0, 1.0);

    PlantedGenerator out;
    ComplexMatrix t = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        t(i, i) = Complex{re(rng), im(rng)};
        for (Eigen::Index j = i + 1; j < n; ++j) {
            t(i, j) = coupling * Complex{g(rng), g(rng)};
        }
    }
    const ComplexMatrix u = random_unitary(n, rng);
    ComplexMatrix basis(n, 0);
    if (seed_imaginary) {
        // Place the imaginary eigenvalue first so its eigenvector is U e_1.
        std::uniform_real_distribution<double> omega(-2.0, 2.0);
        t(0, 0) = Complex{0.0, omega(rng)};
        out.imaginary_eigenvalues.push_back(t(0, 0));
        basis = u.col(0);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        out.eigenvalues.push_back(t(i, i));
    }
    out.a = u * t * u.adjoint();
    out.unitary_basis = basis;
    return out;
}

PlantedGenerator random_contractive_generator(Eigen::Index n, Eigen::Index unitary_dim, Rng& rng,
                                              double gap) {
    if (unitary_dim < 0 || unitary_dim > n) {
        throw ValidationError("unitary block dimension out of range");
    }
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> omega(-3.0, 3.0);
    const Eigen::Index m = n - unitary_dim;

    ComplexMatrix block = ComplexMatrix::Zero(n, n);
    PlantedGenerator out;
    for (Eigen::Index k = 0; k < unitary_dim; ++k) {
        block(k, k) = Complex{0.0, omega(rng)};
        out.imaginary_eigenvalues.push_back(block(k, k));
    }
    if (m > 0) {
        ComplexMatrix k(m, m), c(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) {
                k(i, j) = Complex{g(rng), g(rng)};
                c(i, j) = 0.5 * Complex{g(rng), g(rng)};
            }
        }
        const ComplexMatrix skew = 0.5 * (k - k.adjoint());
        block.bottomRightCorner(m, m) =
            skew - gap * ComplexMatrix::Identity(m, m) - c * c.adjoint();
    }
    const ComplexMatrix u = random_unitary(n, rng);
    out.a = u * block * u.adjoint();
    out.unitary_basis = u.leftCols(unitary_dim);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(out.a, false);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.eigenvalues.push_back(es.eigenvalues()[i]);
    }
    return out;
}

} // namespace semistab::instances
