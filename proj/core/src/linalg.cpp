#include "semistab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace semistab::linalg {

ComplexMatrix kernel_basis(const ComplexMatrix& m, double cutoff) {
    const Eigen::Index cols = m.cols();
    if (cols == 0) {
        return ComplexMatrix(0, 0);
    }
    if (m.rows() == 0) {
        return ComplexMatrix::Identity(cols, cols);
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv[k] > cutoff) {
            ++rank;
        }
    }
    return svd.matrixV().rightCols(cols - rank);
}

ComplexMatrix range_basis(const ComplexMatrix& m, double cutoff) {
    if (m.cols() == 0 || m.rows() == 0) {
        return ComplexMatrix(m.rows(), 0);
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv[k] > cutoff) {
            ++rank;
        }
    }
    return svd.matrixU().leftCols(rank);
}

ComplexMatrix orthogonal_complement(const ComplexMatrix& q, Eigen::Index n) {
    if (q.cols() == 0) {
        return ComplexMatrix::Identity(n, n);
    }
    const ComplexMatrix p = ComplexMatrix::Identity(n, n) - q * q.adjoint();
    return range_basis(p, 0.5);
}

double operator_norm(const ComplexMatrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()[0];
}

double max_principal_angle(const ComplexMatrix& q1, const ComplexMatrix& q2) {
    if (q1.cols() != q2.cols()) {
        return std::numbers::pi / 2.0;
    }
    if (q1.cols() == 0) {
        return 0.0;
    }
    const ComplexMatrix residual = q1 - q2 * (q2.adjoint() * q1);
    const double s = std::min(1.0, operator_norm(residual));
    return std::asin(s);
}

ComplexMatrix oblique_projection(const ComplexMatrix& n, const ComplexMatrix& r) {
    const Eigen::Index dim = n.rows();
    if (n.cols() == 0) {
        return ComplexMatrix::Zero(dim, dim);
    }
    if (n.cols() + r.cols() != dim) {
        throw NumericalError("oblique_projection: complementary bases do not span the space");
    }
    ComplexMatrix basis(dim, dim);
    basis << n, r;
    ComplexMatrix selector = ComplexMatrix::Zero(dim, dim);
    selector.leftCols(n.cols()) = n;
    Eigen::FullPivLU<ComplexMatrix> lu(basis);
    if (!lu.isInvertible()) {
        throw NumericalError("oblique_projection: subspaces are not complementary");
    }
    // P = [n 0] [n r]^{-1}
    return selector * lu.inverse();
}

} // namespace semistab::linalg
