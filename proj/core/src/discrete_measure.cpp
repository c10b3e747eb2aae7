#include "semistab/discrete_measure.hpp"

#include "semistab/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace semistab {

namespace {

void validate_atoms(const std::vector<Atom>& atoms) {
    if (atoms.empty()) {
        throw ValidationError("measure needs at least one atom");
    }
    for (const auto& a : atoms) {
        if (!std::isfinite(a.location)) {
            throw ValidationError("measure atom location must be finite");
        }
        if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
            throw ValidationError("measure atom weight must be finite and > 0");
        }
    }
}

} // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    validate_atoms(atoms_);
}

DiscreteMeasure DiscreteMeasure::dirac(double location) {
    return DiscreteMeasure({Atom{location, 1.0}});
}

DiscreteMeasure DiscreteMeasure::lebesgue(double a, double b, std::size_t n) {
    if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
        throw ValidationError("lebesgue measure needs finite a < b");
    }
    if (n == 0) {
        throw ValidationError("lebesgue measure needs n >= 1 atoms");
    }
    std::vector<Atom> atoms(n);
    const double h = (b - a) / static_cast<double>(n);
    const double w = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        atoms[j] = Atom{a + (static_cast<double>(j) + 0.5) * h, w};
    }
    DiscreteMeasure m(std::move(atoms));
    m.canonical_ = true;
    return m;
}

DiscreteMeasure DiscreteMeasure::cantor(unsigned depth) {
    if (depth > 24) {
        throw ValidationError("cantor depth above 24 is not supported (2^depth atoms)");
    }
    // Build from the finest scale outwards so the list stays sorted: every
    // partial sum over scales > k is below 3^{-k} < 2 * 3^{-k}.
    std::vector<double> locations{0.0};
    locations.reserve(std::size_t{1} << depth);
    for (unsigned k = depth; k >= 1; --k) {
        const double shift = 2.0 * std::pow(3.0, -static_cast<double>(k));
        const std::size_t n = locations.size();
        for (std::size_t j = 0; j < n; ++j) {
            locations.push_back(locations[j] + shift);
        }
    }
    const double w = std::ldexp(1.0, -static_cast<int>(depth));
    std::vector<Atom> atoms(locations.size());
    for (std::size_t j = 0; j < locations.size(); ++j) {
        atoms[j] = Atom{locations[j], w};
    }
    DiscreteMeasure m(std::move(atoms));
    m.canonical_ = true;
    for (unsigned k = 1; k <= depth; ++k) {
        const double shift = 2.0 * std::pow(3.0, -static_cast<double>(k));
        m.factors_.push_back({Atom{0.0, 0.5}, Atom{shift, 0.5}});
    }
    return m;
}

DiscreteMeasure DiscreteMeasure::combine(const DiscreteMeasure& mu, double alpha,
                                         const DiscreteMeasure& nu, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
        throw ValidationError("combine: coefficients must be > 0");
    }
    std::vector<Atom> atoms;
    atoms.reserve(mu.size() + nu.size());
    for (const auto& a : mu.atoms_) {
        atoms.push_back(Atom{a.location, alpha * a.weight});
    }
    for (const auto& a : nu.atoms_) {
        atoms.push_back(Atom{a.location, beta * a.weight});
    }
    return DiscreteMeasure(std::move(atoms));
}

double DiscreteMeasure::total_mass() const {
    double s = 0.0;
    for (const auto& a : atoms_) {
        s += a.weight;
    }
    return s;
}

bool DiscreteMeasure::is_probability(double tol) const {
    return std::abs(total_mass() - 1.0) <= tol;
}

DiscreteMeasure DiscreteMeasure::canonicalize() const {
    if (canonical_) {
        return *this;
    }
    std::vector<Atom> sorted = atoms_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Atom& a, const Atom& b) { return a.location < b.location; });
    std::vector<Atom> merged;
    merged.reserve(sorted.size());
    for (const auto& a : sorted) {
        if (!merged.empty() && merged.back().location == a.location) {
            merged.back().weight += a.weight;
        } else {
            merged.push_back(a);
        }
    }
    DiscreteMeasure out;
    const bool nothing_merged = merged.size() == atoms_.size();
    out.atoms_ = std::move(merged);
    out.canonical_ = true;
    if (nothing_merged) {
        out.factors_ = factors_;
    }
    return out;
}

double DiscreteMeasure::atom_mass_square_sum() const {
    const DiscreteMeasure c = canonicalize();
    double s = 0.0;
    for (const auto& a : c.atoms_) {
        s += a.weight * a.weight;
    }
    return s;
}

double DiscreteMeasure::min_location() const {
    return std::min_element(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) {
               return a.location < b.location;
           })->location;
}

double DiscreteMeasure::max_location() const {
    return std::max_element(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) {
               return a.location < b.location;
           })->location;
}

} // namespace semistab
