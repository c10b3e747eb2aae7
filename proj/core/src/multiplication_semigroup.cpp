#include "semistab/multiplication_semigroup.hpp"

#include "semistab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace semistab {

namespace {

std::optional<Complex> constant_value(const ComplexVector& v) {
    for (Eigen::Index j = 1; j < v.size(); ++j) {
        if (v[j] != v[0]) {
            return std::nullopt;
        }
    }
    return v[0];
}

void check_length(const DiscreteMeasure& mu, const ComplexVector& f) {
    if (static_cast<std::size_t>(f.size()) != mu.size()) {
        throw ValidationError("function length " + std::to_string(f.size()) +
                              " does not match the " + std::to_string(mu.size()) + " atoms");
    }
}

} // namespace

MultiplicationSemigroup::MultiplicationSemigroup(DiscreteMeasure mu) : mu_(mu.canonicalize()) {}

Capabilities MultiplicationSemigroup::capabilities() const {
    Capabilities c;
    c.has_resolvent_closed_form = true;
    c.is_contractive_claimed = true;
    c.adjoint_available = true;
    return c;
}

ComplexVector multiplication_apply(const DiscreteMeasure& mu, double t, const ComplexVector& f) {
    check_length(mu, f);
    require_finite(f, "multiplication_apply");
    if (t == 0.0) {
        return f;
    }
    ComplexVector out(f.size());
    const auto& atoms = mu.atoms();
    for (Eigen::Index j = 0; j < f.size(); ++j) {
        const double phase = t * atoms[static_cast<std::size_t>(j)].location;
        out[j] = f[j] * Complex{std::cos(phase), std::sin(phase)};
    }
    return out;
}

ComplexVector MultiplicationSemigroup::apply(double t, const ComplexVector& f) const {
    return multiplication_apply(mu_, t, f);
}

Complex MultiplicationSemigroup::inner(const ComplexVector& f, const ComplexVector& g) const {
    check_length(mu_, f);
    check_length(mu_, g);
    const auto& atoms = mu_.atoms();
    Complex sum{0.0, 0.0};
    for (Eigen::Index j = 0; j < f.size(); ++j) {
        sum += atoms[static_cast<std::size_t>(j)].weight * (f[j] * std::conj(g[j]));
    }
    return sum;
}

Complex MultiplicationSemigroup::orbit_value(double t, const ComplexVector& f,
                                             const ComplexVector& g) const {
    check_length(mu_, f);
    check_length(mu_, g);
    const auto cf = constant_value(f);
    const auto cg = constant_value(g);
    if (cf && cg) {
        return (*cf * std::conj(*cg)) * fourier_transform(mu_, t);
    }
    const auto& atoms = mu_.atoms();
    Complex sum{0.0, 0.0};
    for (Eigen::Index j = 0; j < f.size(); ++j) {
        const auto& a = atoms[static_cast<std::size_t>(j)];
        const double phase = t * a.location;
        sum += a.weight * (f[j] * std::conj(g[j])) * Complex{std::cos(phase), std::sin(phase)};
    }
    return sum;
}

std::vector<Complex> MultiplicationSemigroup::orbit_values(const ComplexVector& f,
                                                           const ComplexVector& g,
                                                           const TimeGrid& grid) const {
    check_length(mu_, f);
    check_length(mu_, g);
    std::vector<Complex> out(grid.size());
    const auto cf = constant_value(f);
    const auto cg = constant_value(g);
    if (cf && cg) {
        const Complex c = *cf * std::conj(*cg);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            out[k] = c * fourier_transform(mu_, grid.time(k));
        }
        return out;
    }
    const auto& atoms = mu_.atoms();
    std::vector<Complex> coeff(atoms.size());
    for (std::size_t j = 0; j < atoms.size(); ++j) {
        const auto i = static_cast<Eigen::Index>(j);
        coeff[j] = atoms[j].weight * (f[i] * std::conj(g[i]));
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid.time(k);
        Complex sum{0.0, 0.0};
        for (std::size_t j = 0; j < atoms.size(); ++j) {
            const double phase = t * atoms[j].location;
            sum += coeff[j] * Complex{std::cos(phase), std::sin(phase)};
        }
        out[k] = sum;
    }
    return out;
}

ComplexVector MultiplicationSemigroup::resolvent(Complex lambda, const ComplexVector& f) const {
    check_length(mu_, f);
    ComplexVector out(f.size());
    const auto& atoms = mu_.atoms();
    for (Eigen::Index j = 0; j < f.size(); ++j) {
        const Complex d = lambda - Complex{0.0, atoms[static_cast<std::size_t>(j)].location};
        if (d == Complex{0.0, 0.0}) {
            throw NumericalError("resolvent: lambda coincides with an atom i r_j");
        }
        out[j] = f[j] / d;
    }
    return out;
}

ComplexVector MultiplicationSemigroup::generator_apply(const ComplexVector& f) const {
    check_length(mu_, f);
    ComplexVector out(f.size());
    const auto& atoms = mu_.atoms();
    for (Eigen::Index j = 0; j < f.size(); ++j) {
        out[j] = Complex{0.0, atoms[static_cast<std::size_t>(j)].location} * f[j];
    }
    return out;
}

std::vector<double> MultiplicationSemigroup::frequency_breakpoints() const {
    std::vector<double> out;
    if (mu_.size() > 256) {
        return out;
    }
    for (const auto& a : mu_.atoms()) {
        out.push_back(a.location);
    }
    return out;
}

double MultiplicationSemigroup::generator_norm_bound() const {
    return std::max(std::abs(mu_.min_location()), std::abs(mu_.max_location()));
}

ComplexVector MultiplicationSemigroup::ones() const {
    return ComplexVector::Ones(static_cast<Eigen::Index>(mu_.size()));
}

} // namespace semistab
