#pragma once

// Seeded random instance families used by the acceptance suite, the CLI
// presets and the property tests.

#include "semistab/core.hpp"

#include <random>
#include <vector>

namespace semistab::instances {

using Rng = std::mt19937_64;

ComplexVector random_vector(Eigen::Index n, Rng& rng);

/// Haar-distributed unitary (QR of a complex Gaussian with phase fix).
ComplexMatrix random_unitary(Eigen::Index n, Rng& rng);

struct PlantedGenerator {
    ComplexMatrix a;
    std::vector<Complex> eigenvalues;
    /// Orthonormal basis of the planted unitary (imaginary-axis) subspace.
    ComplexMatrix unitary_basis;
    /// Imaginary eigenvalues that were planted (empty when none).
    std::vector<Complex> imaginary_eigenvalues;
};

/// U T U* with T upper triangular: distinct eigenvalues with real parts in
/// [-2, max_real] and imaginary parts in [-3, 3]; off-diagonal coupling of
/// size `coupling`. When `seed_imaginary` is set one eigenvalue is replaced
/// by i*omega (kept semisimple because the spectrum stays simple).
PlantedGenerator random_stable_generator(Eigen::Index n, Rng& rng, double max_real = -0.1,
                                         bool seed_imaginary = false, double coupling = 0.5);

/// U blockdiag(i diag(omega), B) U* with B + B* <= -2 gap I: a contraction
/// semigroup whose unitary part is exactly the planted block.
PlantedGenerator random_contractive_generator(Eigen::Index n, Eigen::Index unitary_dim, Rng& rng,
                                              double gap = 0.5);

} // namespace semistab::instances
