#include <doctest.h>

#include <semistab/semistab.hpp>

#include <cmath>
#include <numbers>

using namespace semistab;

namespace {

constexpr double kPi = std::numbers::pi;

// |prod_{m >= 1} cos(2 pi / 3^m)|, truncated at m = 60.
double cantor_probe_oracle() {
    double p = 1.0;
    for (int m = 1; m <= 60; ++m) {
        p *= std::cos(2.0 * kPi / std::pow(3.0, m));
    }
    return std::abs(p);
}

} // namespace

TEST_CASE("transform of a Dirac mass at the origin is 1") {
    const auto d = DiscreteMeasure::dirac(0.0);
    for (double t : {0.0, 1.0, -7.0, 1e5}) {
        CHECK(fourier_transform(d, t) == Complex(1.0, 0.0));
    }
}

TEST_CASE("discretized Lebesgue transform against the continuous closed form") {
    const auto mu = DiscreteMeasure::lebesgue(0.0, 1.0, 10000);
    const double t = kPi;
    const Complex exact = (std::exp(Complex{0.0, t}) - 1.0) / Complex{0.0, t};
    CHECK(std::abs(fourier_transform(mu, t) - exact) < 1e-4);
    CHECK(std::abs(std::abs(fourier_transform(mu, t)) - 2.0 / kPi) < 1e-4);
}

TEST_CASE("Cantor transform at 2 pi 3^n against the infinite product") {
    const auto mu = DiscreteMeasure::cantor(20);
    const double oracle = cantor_probe_oracle();
    CHECK(std::abs(oracle - 0.37120) < 2e-3);
    for (int n = 1; n <= 6; ++n) {
        const double t = 2.0 * kPi * std::pow(3.0, n);
        CHECK(std::abs(std::abs(fourier_transform(mu, t)) - oracle) < 2e-3);
        CHECK(std::abs(std::abs(cantor_fourier_limit(t)) - oracle) < 1e-12);
    }
}

TEST_CASE("factorized and direct Cantor transforms agree") {
    const auto mu = DiscreteMeasure::cantor(12);
    for (double t : {0.0, 0.5, 13.0, 2.0 * kPi * 81.0, 4321.0}) {
        CHECK(std::abs(fourier_transform(mu, t) - fourier_transform_direct(mu, t)) < 1e-11);
    }
}

TEST_CASE("transform invariants") {
    instances::Rng rng(11);
    std::uniform_real_distribution<double> loc(-5.0, 5.0), w(0.1, 1.0), tt(-50.0, 50.0);
    std::vector<Atom> a, b;
    for (int k = 0; k < 7; ++k) a.push_back({loc(rng), w(rng)});
    for (int k = 0; k < 4; ++k) b.push_back({loc(rng), w(rng)});
    const DiscreteMeasure mu(a), nu(b);
    CHECK(fourier_transform(mu, 0.0).real() == doctest::Approx(mu.total_mass()).epsilon(1e-15));
    const auto combo = DiscreteMeasure::combine(mu, 0.3, nu, 1.7);
    for (int k = 0; k < 20; ++k) {
        const double t = tt(rng);
        const Complex f = fourier_transform(mu, t);
        CHECK(std::abs(f) <= mu.total_mass() + 1e-12);
        CHECK(std::abs(fourier_transform(mu, -t) - std::conj(f)) < 1e-12);
        CHECK(std::abs(fourier_transform(combo, t) - (0.3 * f + 1.7 * fourier_transform(nu, t))) <
              1e-12);
    }
}

TEST_CASE("Cantor self-similarity") {
    // mu = (delta_0 + delta_{2/3})/2 * mu(./3), so F mu(3t) = e^{i t} cos(t) F mu(t) at infinite depth.
    const auto deep = DiscreteMeasure::cantor(20);
    const auto shallow = DiscreteMeasure::cantor(19);
    for (double t : {0.3, 2.0, 17.0, 100.0}) {
        const Complex lhs = fourier_transform(deep, 3.0 * t);
        const Complex rhs = std::exp(Complex{0.0, t}) * std::cos(t) * fourier_transform(shallow, t);
        CHECK(std::abs(lhs - rhs) < 1e-6);
    }
}

TEST_CASE("rajchman diagnostic") {
    const auto grid = TimeGrid::from_horizon(2000.0, 0.05);
    SUBCASE("Lebesgue decays") {
        const auto r = rajchman_diagnostic(DiscreteMeasure::lebesgue(0.0, 1.0, 10000), grid, 200.0);
        CHECK(r.verdict == DecayVerdict::decaying_evidence);
        CHECK(r.trend_slope < -0.5);
    }
    SUBCASE("two atoms do not") {
        const auto r = rajchman_diagnostic(DiscreteMeasure({{1.0, 0.5}, {-1.0, 0.5}}), grid, 200.0);
        CHECK(r.verdict == DecayVerdict::non_decaying_evidence);
        for (const auto& w : r.windows) CHECK(w.sup > 0.999);
    }
    SUBCASE("Cantor with adversarial probes does not") {
        RajchmanOptions opt;
        for (int n = 1; n <= 6; ++n) opt.adversarial_probes.push_back(2.0 * kPi * std::pow(3.0, n));
        const auto r = rajchman_diagnostic(DiscreteMeasure::cantor(20), grid, 200.0, opt);
        CHECK(r.verdict == DecayVerdict::non_decaying_evidence);
        CHECK(std::abs(r.probe_max - 0.371) < 2e-3);
    }
}

TEST_CASE("wiener average") {
    CHECK(wiener_average(DiscreteMeasure::dirac(0.0), 10.0).value == doctest::Approx(1.0));
    const auto two = wiener_average(DiscreteMeasure({{1.0, 0.5}, {-1.0, 0.5}}), 1000.0);
    CHECK(std::abs(two.value - 0.5) < 1e-2);
    CHECK(two.limit == doctest::Approx(0.5));

    const auto leb = DiscreteMeasure::lebesgue(0.0, 1.0, 10000);
    const double w100 = wiener_average(leb, 100.0).value;
    const double w1000 = wiener_average(leb, 1000.0).value;
    CHECK(w1000 <= 0.01);
    CHECK(w1000 < w100);
}

TEST_CASE("wiener average approaches the atom mass square sum") {
    instances::Rng rng(12);
    std::uniform_real_distribution<double> loc(-3.0, 3.0), w(0.2, 1.0);
    for (int n = 1; n <= 4; ++n) {
        std::vector<Atom> atoms;
        for (int k = 0; k < n; ++k) atoms.push_back({loc(rng), w(rng)});
        const DiscreteMeasure mu(atoms);
        const auto avg = wiener_average(mu, 1000.0);
        CHECK(std::abs(avg.value - mu.atom_mass_square_sum()) <= 0.1 * mu.atom_mass_square_sum());
    }
}
