#pragma once

// Small dense helpers shared by the decompositions: rank-revealing
// kernel/range bases and subspace comparison.

#include "semistab/core.hpp"

namespace semistab::linalg {

/// Orthonormal basis (as columns) of ker M, keeping right singular vectors
/// whose singular value is <= cutoff.
ComplexMatrix kernel_basis(const ComplexMatrix& m, double cutoff);

/// Orthonormal basis of ran M from left singular vectors with value > cutoff.
ComplexMatrix range_basis(const ComplexMatrix& m, double cutoff);

/// Orthonormal basis of the orthogonal complement of span(q) (q orthonormal).
ComplexMatrix orthogonal_complement(const ComplexMatrix& q, Eigen::Index n);

double operator_norm(const ComplexMatrix& m);

/// Largest principal angle (radians) between span(q1) and span(q2), both
/// orthonormal. pi/2 when the dimensions differ; 0 for two empty subspaces.
double max_principal_angle(const ComplexMatrix& q1, const ComplexMatrix& q2);

/// Projection onto span(n) along span(r); [n r] must be square and invertible.
ComplexMatrix oblique_projection(const ComplexMatrix& n, const ComplexMatrix& r);

} // namespace semistab::linalg
