#include <doctest.h>

#include <semistab/semistab.hpp>

#include <cmath>
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

const ComplexVector one = ComplexVector::Ones(1);

} // namespace

TEST_CASE("resolvent closed forms in every mode") {
    const auto stable = sg(diag({-1.0}));
    const auto rot = sg(diag({I, -1.0}));
    for (auto mode : {ResolventMode::closed_form, ResolventMode::linear_solve,
                      ResolventMode::laplace_quadrature}) {
        CAPTURE(to_string(mode));
        const double tol = mode == ResolventMode::laplace_quadrature ? 1e-6 : 1e-14;
        CHECK(std::abs(resolvent_apply(ResolventProbe(stable, mode), 1.0, one).value[0] - 0.5) < tol);
        const auto r = resolvent_apply(ResolventProbe(rot, mode), 1.0, ComplexVector::Ones(2)).value;
        CHECK(std::abs(r[0] - Complex(0.5, 0.5)) < tol);
        CHECK(std::abs(r[1] - 0.5) < tol);
    }
    const auto lin = resolvent_apply(ResolventProbe(stable, ResolventMode::linear_solve), 1.0, one);
    REQUIRE(lin.condition_number.has_value());
    CHECK(*lin.condition_number == doctest::Approx(1.0));
}

TEST_CASE("resolvent requires Re lambda > 0") {
    const auto stable = sg(diag({-1.0}));
    CHECK_THROWS_AS(resolvent_apply(ResolventProbe(stable), Complex{0.0, 1.0}, one), ValidationError);
    CHECK_THROWS_AS(abel_square_integral(ResolventProbe(stable), one, one, 0.0), ValidationError);
}

TEST_CASE("resolvent identity on random stable generators") {
    instances::Rng rng(21);
    std::uniform_real_distribution<double> re(0.05, 3.0), im(-4.0, 4.0);
    for (int k = 0; k < 10; ++k) {
        const auto p = instances::random_stable_generator(5, rng);
        const auto backend = sg(p.a);
        const ResolventProbe probe(backend);
        const ComplexVector x = instances::random_vector(5, rng);
        const Complex l{re(rng), im(rng)}, m{re(rng), im(rng)};
        const ComplexVector rl = resolvent_apply(probe, l, x).value;
        const ComplexVector rm = resolvent_apply(probe, m, x).value;
        const ComplexVector rlrm = resolvent_apply(probe, l, rm).value;
        CHECK((rl - rm - (m - l) * rlrm).norm() < 1e-10);
        const ComplexVector sq = resolvent_squared(probe, l, x);
        CHECK((sq - resolvent_apply(probe, l, rl).value).norm() < 1e-12);
    }
}

TEST_CASE("laplace consistency") {
    instances::Rng rng(22);
    for (int k = 0; k < 5; ++k) {
        const auto p = instances::random_stable_generator(4, rng);
        const auto backend = sg(p.a);
        const ComplexVector x = instances::random_vector(4, rng);
        double max_re = -1e9;
        for (auto e : p.eigenvalues) max_re = std::max(max_re, e.real());
        const Complex lambda{1.0 + max_re + 0.2, 0.7};
        const auto quad =
            resolvent_apply(ResolventProbe(backend, ResolventMode::laplace_quadrature), lambda, x);
        const ComplexVector exact = resolvent_apply(ResolventProbe(backend), lambda, x).value;
        CHECK((quad.value - exact).norm() <= quad.tail_bound + quad.quadrature_error + 1e-9);
    }
}

TEST_CASE("abel square integral closed forms") {
    const auto stable = sg(diag({-1.0}));
    const auto rot = sg(diag({I}));
    CHECK(std::abs(abel_square_integral(ResolventProbe(stable), one, one, 1.0).value - kPi / 2.0) < 1e-3);
    for (double a : {0.1, 0.01, 0.001}) {
        CHECK(std::abs(abel_square_integral(ResolventProbe(stable), one, one, a).value -
                       kPi * a / (a + 1.0)) < 1e-3);
        CHECK(std::abs(abel_square_integral(ResolventProbe(rot), one, one, a).value - kPi) < 1e-3);
    }
}

TEST_CASE("abel pointwise") {
    const auto rot = sg(diag({I}));
    for (double a : {1.0, 0.1, 1e-3}) {
        CHECK(abel_pointwise(ResolventProbe(rot), one, a, 1.0) == doctest::Approx(1.0));
    }
    CHECK(abel_pointwise(ResolventProbe(rot), one, 0.01, 0.0) == doctest::Approx(0.01).epsilon(1e-3));
    const auto stable = sg(diag({-1.0}));
    for (double s : {-3.0, 0.0, 0.5, 10.0}) {
        CHECK(abel_pointwise(ResolventProbe(stable), one, 0.01, s) <= 0.01);
    }
}

TEST_CASE("plancherel identity") {
    SUBCASE("scalar") {
        const auto stable = sg(diag({-1.0}));
        const auto p = plancherel_check(ResolventProbe(stable), one, one, 1.0, 15.0);
        CHECK(p.lhs == doctest::Approx(kPi / 2.0).epsilon(1e-4));
        CHECK(p.rel_error <= 1e-4);
    }
    SUBCASE("diag(i, -1)") {
        instances::Rng rng(23);
        const auto rot = sg(diag({I, -1.0}));
        const auto p = plancherel_check(ResolventProbe(rot), instances::random_vector(2, rng),
                                        instances::random_vector(2, rng), 0.5, 30.0);
        CHECK(p.rel_error <= 1e-3);
    }
    SUBCASE("zero vector") {
        const auto stable = sg(diag({-1.0}));
        const auto p = plancherel_check(ResolventProbe(stable), ComplexVector::Zero(1), one, 1.0, 15.0);
        CHECK(p.lhs == 0.0);
        CHECK(p.rhs == 0.0);
    }
    SUBCASE("20 random stable generators") {
        instances::Rng rng(24);
        for (int k = 0; k < 20; ++k) {
            const auto p = instances::random_stable_generator(5, rng);
            const auto backend = sg(p.a);
            const auto r = plancherel_check(ResolventProbe(backend), instances::random_vector(5, rng),
                                            instances::random_vector(5, rng), 0.5, 30.0);
            CHECK(r.rel_error <= 1e-3);
        }
    }
    SUBCASE("short horizons are rejected") {
        const auto stable = sg(diag({-1.0}));
        CHECK_THROWS_AS(plancherel_check(ResolventProbe(stable), one, one, 0.1, 50.0), ValidationError);
    }
}

TEST_CASE("chill-tomilov integrals") {
    const auto stable = sg(diag({-1.0}));
    const auto r = chill_tomilov_integrals(ResolventProbe(stable), one, one);
    for (std::size_t k = 0; k < r.a.size(); ++k) {
        CHECK(r.integral[k] == doctest::Approx(kPi / (r.a[k] + 1.0)).epsilon(1e-5));
    }
    CHECK(std::abs(r.double_integral - kPi * std::log(2.0)) < 1e-2);
    CHECK(r.nonincreasing);
    CHECK(r.limit.last < 0.01);

    const auto rot = sg(diag({I}));
    const auto q = chill_tomilov_integrals(ResolventProbe(rot), one, one);
    CHECK(q.nonincreasing);
    CHECK(std::abs(q.limit.last - kPi) < 1e-3);

    CHECK_THROWS_AS(chill_tomilov_integrals(ResolventProbe(sg(diag({0.5}))), one, one), ValidationError);
}

TEST_CASE("inverse laplace reconstruction") {
    const auto stable = sg(diag({-1.0}));
    const auto r = inverse_laplace_orbit(ResolventProbe(stable), one, one, 1.0, 0.5);
    CHECK(std::abs(r.value - std::exp(-1.0)) < 1e-4);

    const ComplexVector h = ComplexVector::Ones(2) / std::sqrt(2.0);
    const auto rot = sg(diag({I, -1.0}));
    const auto q = inverse_laplace_orbit(ResolventProbe(rot), h, h, 2.0);
    const Complex direct = pairing(matrix_apply(MatrixGenerator(diag({I, -1.0})), 2.0, h), h);
    CHECK(std::abs(q.value - direct) < 1e-4);

    // |<T(5)x, y>| <= a I(a) with a = 1/t
    const auto five = inverse_laplace_orbit(ResolventProbe(stable), one, one, 5.0);
    const double bound = 0.2 * kPi / 1.2;
    CHECK(std::abs(five.value) <= bound);
    CHECK(std::abs(five.value - std::exp(-5.0)) < 1e-4);
    CHECK(inverse_laplace_envelope(ResolventProbe(stable), one, one, 5.0) ==
          doctest::Approx(bound).epsilon(1e-3));
}

TEST_CASE("abscissa estimate") {
    CHECK(s0_estimate(MatrixGenerator(diag({I, -1.0}))).value == doctest::Approx(0.0));
    CHECK(s0_estimate(MatrixGenerator(diag({-1.0, -1.0}))).value == doctest::Approx(-1.0));
    ComplexMatrix a(2, 2);
    a << -1.0, 10.0, 0.0, -2.0;
    CHECK(s0_estimate(MatrixGenerator(a)).value == doctest::Approx(-1.0));
}

TEST_CASE("abel limit vanishes iff there is no imaginary eigenvalue") {
    instances::Rng rng(25);
    for (int k = 0; k < 20; ++k) {
        const bool seed = k % 2 == 0;
        const auto p = instances::random_stable_generator(5, rng, -0.1, seed);
        const MatrixGenerator gen(p.a);
        const auto backend = sg(p.a);
        const ComplexVector x = instances::random_vector(5, rng);
        const auto split = jgdl_split(gen);
        CHECK((split.basis_r.cols() > 0) == seed);

        // limit pi |<P x, x>|^2 with P the oblique eigenprojection of the imaginary eigenvalue
        double oracle = 0.0;
        Eigen::ComplexEigenSolver<ComplexMatrix> es(p.a);
        const ComplexMatrix v = es.eigenvectors();
        const ComplexMatrix w = v.inverse();
        for (Eigen::Index j = 0; j < v.cols(); ++j) {
            if (std::abs(es.eigenvalues()[j].real()) < 1e-9) {
                const Complex c = (w.row(j) * x)(0) * pairing(v.col(j), x);
                oracle += kPi * std::norm(c);
            }
        }
        const ResolventProbe probe(backend);
        const double v3 = abel_square_integral(probe, x, x, 1e-3).value;
        const double v4 = abel_square_integral(probe, x, x, 1e-4).value;
        const auto est = estimate_limit({1e-3, 1e-4}, {v3, v4});
        CAPTURE(k);
        if (seed) {
            CHECK(oracle > 0.0);
            CHECK(std::abs(est.richardson - oracle) <= 0.02 * oracle);
        } else {
            CHECK(oracle == 0.0);
            CHECK(std::abs(est.richardson) <= 0.01 * v4);
            CHECK(est.log_slope > 0.9);
        }
    }
}

TEST_CASE("koopman resolvent on the torus") {
    const Flow flow = Flow::torus_rotation(1.0);
    FlowPoint x0(1);
    x0 << 0.0;
    const Complex lambda{1.0, 0.0};
    const auto r = koopman_resolvent(flow, torus_character(1), x0, lambda, 40.0, 1e-3);
    // int_0^inf e^{-lambda t} e^{2 pi i t} dt
    const Complex exact = 1.0 / (lambda - Complex{0.0, 2.0 * kPi});
    CHECK(std::abs(r.value - exact) <= r.tail_bound + 1e-6);
    CHECK(r.tail_bound < 1e-15);
    CHECK_THROWS_AS(koopman_resolvent(flow, torus_character(1), x0, Complex{0.05, 0.0}, 40.0),
                    ValidationError);
}
