#pragma once

// Finite-dimensional structural splittings of a matrix semigroup and the
// cogenerator (negative Cayley transform) of its generator.

#include "semistab/matrix_semigroup.hpp"

#include <vector>

namespace semistab {

/// X = X_r (+) X_s with X_r spanned by eigenvectors of purely imaginary
/// eigenvalues.
struct JgdlSplit {
    ComplexMatrix basis_r; ///< orthonormal columns
    ComplexMatrix basis_s; ///< orthonormal columns
    ComplexMatrix proj_r;  ///< spectral projection onto X_r along X_s
    ComplexMatrix proj_s;  ///< I - proj_r
    std::vector<Complex> imaginary_eigenvalues;
    double tolerance = 0.0; ///< absolute |Re lambda| threshold used
};

/// tol_im is relative to max(||A||, 1). Throws NumericalError for a
/// defective imaginary eigenvalue (unbounded semigroup).
JgdlSplit jgdl_split(const MatrixGenerator& gen, double tol_im = 1e-9);

/// H = W (+) W-perp for a contraction semigroup; W-perp is the largest
/// subspace reducing A on which A + A* = 0.
struct FoguelSplit {
    ComplexMatrix basis_w;
    ComplexMatrix basis_w_perp;
    int iterations = 0;
    /// Smallest singular value kept above the cutoff during the iteration;
    /// tiny values mean the split sits close to a rank decision.
    double smallest_retained_singular_value = 0.0;
    bool near_degenerate = false;
};

struct FoguelOptions {
    double cutoff = 1e-10;           ///< relative singular-value cutoff per step
    double contractive_tol = 1e-10;  ///< relative bound on max eig (A + A*)/2
    double degenerate_gap = 1e-8;
};

FoguelSplit foguel_split(const MatrixGenerator& gen, const FoguelOptions& options = {});

struct MeanErgodicProjection {
    ComplexMatrix exact;     ///< projection onto ker A along ran A
    ComplexMatrix empirical; ///< (1/T) int_0^T e^{sA} ds, trapezoid
    double deviation = 0.0;  ///< operator 2-norm of the difference
    double horizon = 0.0;
    double dt = 0.0;
};

/// dt <= 0 chooses min(0.01, 0.1 / ||A||).
MeanErgodicProjection mean_ergodic_projection(const MatrixGenerator& gen, double horizon,
                                              double dt = 0.0);

/// G = -(I + A)(I - A)^{-1} = I - 2 R(1, A).
struct Cogenerator {
    ComplexMatrix matrix;

    std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
    double norm() const;
    std::vector<Complex> eigenvalues() const;
    /// G^n x by repeated multiplication.
    ComplexVector power_apply(std::size_t n, const ComplexVector& x) const;
};

Cogenerator cogenerator_of(const MatrixGenerator& gen);

/// The Mobius map lambda -> -(1 + lambda) / (1 - lambda).
Complex cayley_image(Complex lambda);

/// Limits of ||T(t)x|| and ||G^n x|| located by doubling until successive
/// values agree to plateau_tol.
struct StrongLimitComparison {
    double semigroup_limit = 0.0;
    double t_star = 0.0;
    double cogenerator_limit = 0.0;
    std::size_t n_star = 0;
    bool semigroup_converged = false;
    bool cogenerator_converged = false;
};

StrongLimitComparison compare_strong_limits(const MatrixGenerator& gen, const ComplexVector& x,
                                            double plateau_tol = 1e-6);

} // namespace semistab
