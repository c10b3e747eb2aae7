#pragma once

#include <cstddef>
#include <vector>

namespace semistab {

struct Atom {
    double location = 0.0;
    double weight = 0.0;
};

/// Finite positive measure on the real line given by weighted atoms.
///
/// A measure may additionally remember that it is the convolution of a few
/// small factor measures (the Cantor family is built that way); its Fourier
/// transform is then the product of the factor transforms.
class DiscreteMeasure {
public:
    /// Weights must be > 0 and locations finite.
    explicit DiscreteMeasure(std::vector<Atom> atoms);

    static DiscreteMeasure dirac(double location);
    /// n midpoint atoms of weight 1/n on [a, b].
    static DiscreteMeasure lebesgue(double a, double b, std::size_t n);
    /// 2^depth atoms of weight 2^{-depth} at sum_{k<=depth} 2 e_k 3^{-k}.
    static DiscreteMeasure cantor(unsigned depth);
    /// Atom list of alpha * mu + beta * nu (alpha, beta > 0).
    static DiscreteMeasure combine(const DiscreteMeasure& mu, double alpha,
                                   const DiscreteMeasure& nu, double beta);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double total_mass() const;
    bool is_probability(double tol = 1e-12) const;

    /// Sorted by location with exactly coinciding locations merged. Factor
    /// structure survives only when nothing was merged.
    DiscreteMeasure canonicalize() const;
    bool is_canonical() const { return canonical_; }

    /// Sum over distinct locations of (merged weight)^2.
    double atom_mass_square_sum() const;

    const std::vector<std::vector<Atom>>& convolution_factors() const { return factors_; }
    bool has_factor_structure() const { return !factors_.empty(); }

    double min_location() const;
    double max_location() const;

private:
    DiscreteMeasure() = default;

    std::vector<Atom> atoms_;
    std::vector<std::vector<Atom>> factors_;
    bool canonical_ = false;
};

} // namespace semistab
