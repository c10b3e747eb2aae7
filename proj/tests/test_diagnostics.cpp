#include <doctest.h>

#include <semistab/semistab.hpp>

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>

using namespace semistab;

namespace {

const Complex I{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

ComplexMatrix diag(std::initializer_list<Complex> d) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()),
                                          static_cast<Eigen::Index>(d.size()));
    Eigen::Index k = 0;
    for (auto z : d) {
        m(k, k) = z;
        ++k;
    }
    return m;
}

MatrixSemigroup sg(const ComplexMatrix& a) { return MatrixSemigroup(MatrixGenerator(a)); }

ComplexVector basis(Eigen::Index n, Eigen::Index k) {
    ComplexVector v = ComplexVector::Zero(n);
    v[k] = 1.0;
    return v;
}

Signal sample(double horizon, double dt, const std::function<double(double)>& f) {
    const auto grid = TimeGrid::from_horizon(horizon, dt);
    std::vector<Complex> v(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        v[k] = f(grid.time(k));
    }
    return Signal(grid, std::move(v));
}

double bumps_3k(double t) {
    for (int k = 0; k <= 8; ++k) {
        const double s = std::pow(3.0, k);
        if (t >= s && t <= s + 1.0) return 1.0;
    }
    return 0.0;
}

} // namespace

TEST_CASE("weak orbit of a rotation") {
    const auto backend = sg(diag({I, -1.0}));
    const auto grid = TimeGrid::from_horizon(20.0, 0.1);
    const auto orbit = weak_orbit(backend, basis(2, 0), basis(2, 0), grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(std::abs(orbit[k] - std::polar(1.0, grid.time(k))) < 1e-12);
    }
}

TEST_CASE("weak orbit of the constant pair is the Fourier transform, bit for bit") {
    const auto mu = DiscreteMeasure::cantor(20);
    const MultiplicationSemigroup backend(mu);
    const auto grid = TimeGrid::from_horizon(500.0, 0.37);
    const auto orbit = weak_orbit(backend, backend.ones(), backend.ones(), grid);
    const auto profile = fourier_profile(mu, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(orbit[k] == fourier_transform(mu, grid.time(k)));
        CHECK(orbit[k] == profile.samples[k]);
        CHECK(orbit[k] == backend.orbit_value(grid.time(k), backend.ones(), backend.ones()));
    }
}

TEST_CASE("weak orbit of a Koopman observable") {
    const Flow flow = Flow::homoclinic();
    FlowPoint x0(2);
    x0 << 0.5, 0.0;
    const auto grid = TimeGrid::from_horizon(5.0, 0.5);
    const auto orbit = weak_orbit(flow, homoclinic_radius(), x0, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(std::abs(orbit[k].real() - (1.0 - 0.5 * std::exp(-grid.time(k)))) < 1e-9);
    }
}

TEST_CASE("density-one extraction examples") {
    SUBCASE("zero signal") {
        const auto r = density_one_extract(sample(100.0, 0.01, [](double) { return 0.0; }));
        CHECK(r.m_density == 1.0);
        CHECK(r.excised.empty());
        for (const auto& l : r.levels) CHECK(l.density == 0.0);
        CHECK(r.verdict == DensityVerdict::density_one_convergence_evidence);
    }
    SUBCASE("sparse bumps") {
        const auto r = density_one_extract(sample(1e4, 0.01, bumps_3k));
        CHECK(r.levels.front().epsilon == 0.5);
        CHECK(r.levels.front().density <= 9.5e-4);
        CHECK(r.verdict == DensityVerdict::density_one_convergence_evidence);
    }
    SUBCASE("|cos|") {
        const auto r =
            density_one_extract(sample(1e4, 0.01, [](double t) { return std::abs(std::cos(t)); }));
        CHECK(std::abs(r.levels.front().density - 2.0 / 3.0) < 1e-3);
        CHECK(r.verdict == DensityVerdict::fails);
    }
}

TEST_CASE("density-one extraction validates its input") {
    CHECK_THROWS_AS(density_one_extract(sample(10.0, 0.1, [](double) { return -0.1; })),
                    ValidationError);
    CHECK_THROWS_AS(density_one_extract(sample(10.0, 0.1, [](double) { return 0.1; }), {0.1, 0.2}),
                    ValidationError);
}

TEST_CASE("excised densities stay in [0, 1] and decrease for decaying signals") {
    const auto r = density_one_extract(sample(2000.0, 0.01, [](double t) {
        return std::abs(std::cos(t)) / std::sqrt(1.0 + t);
    }));
    for (const auto& l : r.levels) {
        double prev = 2.0;
        for (const auto& [t, d] : l.cumulative) {
            CHECK(d >= 0.0);
            CHECK(d <= 1.0);
            CHECK(d <= prev + 1e-12);
            prev = d;
        }
    }
}

TEST_CASE("density-one verdict agrees with the Cesaro tail on a signal library") {
    const double tol = 0.05;
    const std::vector<std::pair<const char*, std::function<double(double)>>> library{
        {"zero", [](double) { return 0.0; }},
        {"exp(-t)", [](double t) { return std::exp(-t); }},
        {"bumps at 3^k", bumps_3k},
        {"|cos t|", [](double t) { return std::abs(std::cos(t)); }},
        {"one", [](double) { return 1.0; }},
        {"exp(-t)|cos t|", [](double t) { return std::exp(-t) * std::abs(std::cos(t)); }},
        {"|cos t|/sqrt(1+t)", [](double t) { return std::abs(std::cos(t)) / std::sqrt(1.0 + t); }},
        {"|cos t| bumps", [](double t) { return std::abs(std::cos(t)) * bumps_3k(t); }},
        {"(1+sin t)/2", [](double t) { return 0.5 + 0.5 * std::sin(t); }},
        {"width-2 bumps every 10", [](double t) { return std::fmod(t, 10.0) < 2.0 ? 1.0 : 0.0; }},
        {"(1+t)^(-1/4)", [](double t) { return std::pow(1.0 + t, -0.25); }},
        {"1/(1+t)", [](double t) { return 1.0 / (1.0 + t); }},
        {"width-1 bumps every 100", [](double t) { return std::fmod(t, 100.0) < 1.0 ? 1.0 : 0.0; }},
        {"1/log(e+t)", [](double t) { return 1.0 / std::log(std::exp(1.0) + t); }},
    };
    int positives = 0, negatives = 0;
    for (const auto& [name, f] : library) {
        CAPTURE(name);
        const auto s = sample(2000.0, 0.01, f);
        const bool dense = density_one_extract(s).verdict == DensityVerdict::density_one_convergence_evidence;
        const bool small = cesaro_statistic(s).tail < tol;
        CHECK(dense == small);
        (dense ? positives : negatives) += 1;
    }
    CHECK(positives >= 3);
    CHECK(negatives >= 3);
}

TEST_CASE("cesaro stability statistic") {
    const ComplexVector one = ComplexVector::Ones(1);
    const auto grid = TimeGrid::from_horizon(100.0, 0.01);
    const auto stable = cesaro_stability_statistic(sg(diag({-1.0})), one, one, grid);
    // mean of (1 - e^{-t})/t over [90, 100]
    CHECK(std::abs(stable.final_value - (1.0 - std::exp(-100.0)) / 100.0) < 1e-6);
    CHECK(std::abs(stable.tail - std::log(100.0 / 90.0) / 10.0) < 1e-4);
    const auto rot = cesaro_stability_statistic(sg(diag({I})), one, one, grid);
    CHECK(rot.tail == doctest::Approx(1.0));
}

TEST_CASE("cesaro statistic of the Cantor orbit") {
    const MultiplicationSemigroup backend(DiscreteMeasure::cantor(20));
    const auto grid = TimeGrid::from_horizon(1e4, 0.01);
    const auto c = cesaro_stability_statistic(backend, backend.ones(), backend.ones(), grid);
    CHECK(c.tail <= 0.05);
    CHECK(c.final_value <= c.running_mean[grid.index_at_or_after(5e3)].real());
}

TEST_CASE("plancherel chain: Cesaro mean of |orbit|^2 against the Abel integral at a = 1/T") {
    instances::Rng rng(31);
    int checked = 0;
    for (int k = 0; k < 10; ++k) {
        const auto p = instances::random_stable_generator(4, rng, -0.1, true);
        const auto backend = sg(p.a);
        Eigen::ComplexEigenSolver<ComplexMatrix> es(p.a);
        Eigen::Index idx = 0;
        es.eigenvalues().real().cwiseAbs().minCoeff(&idx);
        const ComplexVector x = es.eigenvectors().col(idx).normalized() + 0.5 * instances::random_vector(4, rng);
        const double horizon = 2000.0;
        const auto grid = TimeGrid::from_horizon(horizon, 0.01);
        const auto sq = running_mean(weak_orbit(backend, x, x, grid), MeanTransform::abs_squared);
        const double cesaro = kPi * sq[sq.size() - 1].real();
        const double abel = abel_square_integral(ResolventProbe(backend), x, x, 1.0 / horizon).value;
        CHECK(std::abs(cesaro - abel) <= 0.1 * std::max(cesaro, abel));
        ++checked;
    }
    CHECK(checked == 10);
}

TEST_CASE("relatively dense sequences") {
    const ComplexVector x = ComplexVector::Ones(2);
    std::vector<double> ts;
    for (int n = 1; n <= 60; ++n) ts.push_back(n);
    SUBCASE("stable generator") {
        const auto r = relatively_dense_check(sg(diag({-0.5, -1.0})), x, x, ts, 1.0, {45.0, 50.0});
        CHECK(r.hypothesis_holds);
        CHECK(r.conclusion_holds);
        CHECK(r.orbit_max <= r.state_bound);
        CHECK(r.envelope == doctest::Approx(1.0));
    }
    SUBCASE("rotation") {
        const ComplexVector one = ComplexVector::Ones(1);
        const auto r = relatively_dense_check(sg(diag({I})), one, one, ts, 1.0, {45.0, 50.0});
        CHECK_FALSE(r.hypothesis_holds);
        CHECK(r.message.rfind("hypothesis fails", 0) == 0);
    }
    SUBCASE("sparse sequence") {
        std::vector<double> powers;
        for (int k = 0; k <= 5; ++k) powers.push_back(std::pow(3.0, k));
        try {
            relatively_dense_check(sg(diag({-0.5, -1.0})), x, x, powers, 1.0, {200.0, 243.0});
            FAIL("expected a validation error");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("gap 2") != std::string::npos);
        }
    }
}

TEST_CASE("mixing correlation on the torus") {
    const Flow flow = Flow::torus_rotation(1.0);
    const IntervalSet half{{{0.0, 0.5}}};
    CHECK(mixing_correlation(flow, half, half, 0.0).value == doctest::Approx(0.25));
    CHECK(mixing_correlation(flow, half, half, 0.5).value == doctest::Approx(-0.25));
    CHECK(mixing_correlation(flow, half, half, 0.5).exact);

    instances::Rng rng(32);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    for (int k = 0; k < 200; ++k) {
        const double t = u(rng);
        const double tri = 0.25 - std::abs(t - std::round(t));
        CHECK(std::abs(mixing_correlation(flow, half, half, t).value - tri) < 1e-10);
    }
    const auto c = mixing_cesaro(flow, half, half, TimeGrid::from_horizon(100.0, 0.01));
    CHECK(std::abs(c.cesaro_abs_mean - 0.125) < 1e-3);
    CHECK_FALSE(c.weakly_mixing_evidence);
}

TEST_CASE("Monte-Carlo mixing correlation agrees with the exact path") {
    const Flow flow = Flow::torus_rotation(1.0);
    const IntervalSet a{{{0.1, 0.4}}};
    const IntervalSet b{{{0.0, 0.5}}};
    const PointSampler draw = [](std::mt19937_64& g) {
        FlowPoint p(1);
        p << std::uniform_real_distribution<double>(0.0, 1.0)(g);
        return p;
    };
    const Indicator ia = [&](const FlowPoint& p) { return a.contains(p[0]); };
    const Indicator ib = [&](const FlowPoint& p) { return b.contains(p[0]); };
    for (double t : {0.0, 0.3, 1.7}) {
        const auto exact = mixing_correlation(flow, a, b, t);
        const auto mc = mixing_correlation(flow, ia, ib, t, draw, MonteCarloSampler{7, 20000});
        CHECK_FALSE(mc.exact);
        CHECK(std::abs(mc.value - exact.value) <= 5.0 * mc.std_error + 1e-12);
    }
    const auto again = mixing_correlation(flow, ia, ib, 0.3, draw, MonteCarloSampler{7, 20000});
    CHECK(again.value == mixing_correlation(flow, ia, ib, 0.3, draw, MonteCarloSampler{7, 20000}).value);
    CHECK_THROWS_AS(mixing_correlation(flow, ia, ib, 0.3, draw, MonteCarloSampler{7, 0}), ValidationError);
}

TEST_CASE("classify examples") {
    const ComplexVector e1 = basis(2, 0);
    ClassifyConfig cfg;
    cfg.horizon = 200.0;
    CHECK(classify(sg(diag({-1.0, -1.0})), {{e1, e1}}, cfg).verdict ==
          StabilityVerdict::weak_stability_evidence);
    const auto rot = classify(sg(diag({I, -1.0})), {{e1, e1}}, cfg);
    CHECK(rot.verdict == StabilityVerdict::not_almost_weak);
    CHECK(rot.imaginary_eigen_count == 1);
    CHECK_THROWS_AS(classify(sg(diag({-1.0, -1.0})), {{ComplexVector::Zero(2), e1}}, cfg),
                    ValidationError);
}

TEST_CASE("classify separates the Cantor orbit's two behaviours") {
    const MultiplicationSemigroup backend(DiscreteMeasure::cantor(20));
    ClassifyConfig cfg;
    cfg.horizon = 1e4;
    for (int n = 1; n <= 6; ++n) cfg.adversarial_probes.push_back(2.0 * kPi * std::pow(3.0, n));
    const auto r = classify(backend, {{backend.ones(), backend.ones()}}, cfg);
    CHECK(r.verdict == StabilityVerdict::almost_weak_only_evidence);
    CHECK(r.cesaro_abs_tail <= cfg.cesaro_tol);
    CHECK(r.recurrence_floor >= cfg.recurrence_floor);
}

TEST_CASE("classify never claims weak stability when a probe exceeds the recurrence floor") {
    instances::Rng rng(33);
    std::uniform_real_distribution<double> pt(50.0, 200.0);
    std::vector<std::unique_ptr<SemigroupEvaluator>> backends;
    backends.push_back(std::make_unique<MatrixSemigroup>(MatrixGenerator(diag({-1.0, -0.3}))));
    backends.push_back(std::make_unique<MatrixSemigroup>(MatrixGenerator(diag({I, -1.0}))));
    backends.push_back(std::make_unique<MultiplicationSemigroup>(DiscreteMeasure({{1.0, 0.5}, {-1.0, 0.5}})));
    backends.push_back(std::make_unique<MultiplicationSemigroup>(DiscreteMeasure::lebesgue(0.0, 1.0, 512)));
    for (const auto& b : backends) {
        for (int trial = 0; trial < 3; ++trial) {
            const auto n = static_cast<Eigen::Index>(b->dim());
            ClassifyConfig cfg;
            cfg.horizon = 200.0;
            for (int k = 0; k < 5; ++k) cfg.adversarial_probes.push_back(pt(rng));
            const ComplexVector x = instances::random_vector(n, rng);
            const auto r = classify(*b, {{x, x}}, cfg);
            bool probe_high = false;
            for (const auto& o : r.observations) {
                for (const auto& [t, v] : o.probe_values) probe_high = probe_high || v >= cfg.recurrence_floor;
            }
            if (probe_high) CHECK(r.verdict != StabilityVerdict::weak_stability_evidence);
        }
    }
}

TEST_CASE("classify on the homoclinic flow uses the time route") {
    const Flow flow = Flow::homoclinic();
    FlowPoint x0(2);
    x0 << 0.5, 0.0;
    ClassifyConfig cfg;
    cfg.horizon = 500.0;
    const auto r = classify_koopman(flow, {{homoclinic_bump(), x0}}, cfg);
    REQUIRE(r.observations.size() == 1);
    CHECK(r.observations[0].abel_route == "time");
    CHECK(r.cesaro_abs_tail < 0.05);
}
