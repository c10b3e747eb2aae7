#pragma once

#include "semistab/core.hpp"
#include "semistab/discrete_measure.hpp"

namespace semistab {

/// The unitary group (T(t)f)(r) = e^{itr} f(r) on L^2(mu) for an atomic mu.
/// States are indexed by the atoms of the canonicalized measure.
class MultiplicationSemigroup final : public SemigroupEvaluator {
public:
    explicit MultiplicationSemigroup(DiscreteMeasure mu);

    const DiscreteMeasure& measure() const { return mu_; }

    std::size_t dim() const override { return mu_.size(); }
    Capabilities capabilities() const override;
    double semigroup_tolerance() const override { return 1e-12; }

    ComplexVector apply(double t, const ComplexVector& f) const override;

    /// mu-weighted pairing sum_j w_j f_j conj(g_j).
    Complex inner(const ComplexVector& f, const ComplexVector& g) const override;

    /// For constant f and g this is c conj(d) F mu(t), evaluated by the
    /// same routine as fourier_transform.
    Complex orbit_value(double t, const ComplexVector& f, const ComplexVector& g) const override;

    std::vector<Complex> orbit_values(const ComplexVector& f, const ComplexVector& g,
                                      const TimeGrid& grid) const override;
    ComplexVector resolvent(Complex lambda, const ComplexVector& f) const override;
    ComplexVector generator_apply(const ComplexVector& f) const override;
    std::vector<double> frequency_breakpoints() const override;
    double generator_norm_bound() const override;

    ComplexVector ones() const;

private:
    DiscreteMeasure mu_;
};

/// Entrywise f_j -> e^{i t r_j} f_j.
ComplexVector multiplication_apply(const DiscreteMeasure& mu, double t, const ComplexVector& f);

} // namespace semistab
