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

ComplexVector ones(Eigen::Index n) { return ComplexVector::Ones(n); }

// Taylor series for e^{tA}, adequate for small ||tA||.
ComplexMatrix taylor_exp(const ComplexMatrix& a, double t) {
    ComplexMatrix term = ComplexMatrix::Identity(a.rows(), a.cols());
    ComplexMatrix sum = term;
    for (int k = 1; k < 60; ++k) {
        term = term * a * (t / k);
        sum += term;
    }
    return sum;
}

} // namespace

TEST_CASE("matrix_apply closed forms") {
    const MatrixGenerator scalar(diag({-1.0}));
    CHECK(std::abs(matrix_apply(scalar, 1.0, ones(1))[0] - std::exp(-1.0)) < 1e-14);

    const MatrixGenerator rot(diag({I, -1.0}));
    const auto v = matrix_apply(rot, kPi, ones(2));
    CHECK(std::abs(v[0] - Complex(-1.0, 0.0)) < 1e-14);
    CHECK(std::abs(v[1] - std::exp(-kPi)) < 1e-14);
    CHECK(std::abs(v[1].real() - 0.0432139) < 1e-7);
}

TEST_CASE("matrix_apply at t = 0 is the identity") {
    instances::Rng rng(1);
    const auto p = instances::random_stable_generator(6, rng);
    const MatrixGenerator gen(p.a);
    const ComplexVector x = instances::random_vector(6, rng);
    CHECK((matrix_apply(gen, 0.0, x) - x).norm() == 0.0);
}

TEST_CASE("matrix semigroup matches a Taylor oracle and the semigroup law") {
    instances::Rng rng(2);
    for (int k = 0; k < 5; ++k) {
        const auto p = instances::random_stable_generator(5, rng, -0.1, k % 2 == 0);
        const MatrixSemigroup sg{MatrixGenerator(p.a)};
        const ComplexVector x = instances::random_vector(5, rng);
        const double t = 0.7;
        CHECK((sg.apply(t, x) - taylor_exp(p.a, t) * x).norm() < 1e-10);
        const ComplexVector lhs = sg.apply(1.9, x);
        const ComplexVector rhs = sg.apply(1.2, sg.apply(0.7, x));
        CHECK((lhs - rhs).norm() <= sg.semigroup_tolerance() * (1.0 + x.norm()));
    }
}

TEST_CASE("scaling-and-squaring fallback agrees on a defective generator") {
    ComplexMatrix a(2, 2);
    a << -1.0, 1.0, 0.0, -1.0;
    const MatrixSemigroup sg{MatrixGenerator(a)};
    const auto v = sg.apply(2.0, ones(2));
    // e^{-t}(1 + t, 1)
    CHECK(std::abs(v[0] - 3.0 * std::exp(-2.0)) < 1e-12);
    CHECK(std::abs(v[1] - std::exp(-2.0)) < 1e-12);
}

TEST_CASE("group mode inverts on purely imaginary spectra") {
    instances::Rng rng(3);
    const ComplexMatrix u = instances::random_unitary(4, rng);
    const ComplexMatrix a = u * diag({I, -2.0 * I, 0.5 * I, 0.0}) * u.adjoint();
    const MatrixSemigroup sg{MatrixGenerator(a), MatrixSemigroupOptions{true}};
    const ComplexMatrix prod = sg.propagator(1.3) * sg.propagator(-1.3);
    CHECK((prod - ComplexMatrix::Identity(4, 4)).norm() < 1e-9);
    CHECK_THROWS_AS(matrix_apply(MatrixGenerator(a), -1.0, ones(4)), ValidationError);
}

TEST_CASE("boundedness certificate") {
    CHECK(MatrixGenerator(diag({I, -1.0})).boundedness().bounded);
    CHECK(MatrixGenerator(diag({I, -1.0})).boundedness().imaginary_eigenvalues.size() == 1);
    CHECK_FALSE(MatrixGenerator(diag({0.5, -1.0})).boundedness().bounded);
    ComplexMatrix jordan(2, 2);
    jordan << I, 1.0, 0.0, I;
    CHECK_FALSE(MatrixGenerator(jordan).boundedness().bounded);
    CHECK(matrix_apply_checked(MatrixGenerator(jordan), 1.0, ones(2)).warning.has_value());
}

TEST_CASE("non-square or non-finite generators are rejected") {
    CHECK_THROWS_AS(MatrixGenerator(ComplexMatrix::Zero(2, 3)), ValidationError);
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(MatrixGenerator{bad}, ValidationError);
}

TEST_CASE("multiplication backend") {
    const DiscreteMeasure origin({{0.0, 1.0}});
    const MultiplicationSemigroup fixed(origin);
    CHECK(fixed.apply(3.7, ones(1))[0] == Complex(1.0, 0.0));

    const DiscreteMeasure pm({{1.0, 0.5}, {-1.0, 0.5}});
    const MultiplicationSemigroup sg(pm);
    for (double t : {0.0, 0.3, 2.0, 11.0}) {
        CHECK(std::abs(sg.orbit_value(t, sg.ones(), sg.ones()) - std::cos(t)) < 1e-14);
    }
    const ComplexVector f = sg.ones();
    CHECK((sg.apply(0.0, f) - f).norm() == 0.0);
}

TEST_CASE("multiplication backend is an isometry for the weighted norm") {
    instances::Rng rng(4);
    const auto mu = DiscreteMeasure::lebesgue(-2.0, 3.0, 200);
    const MultiplicationSemigroup sg(mu);
    const ComplexVector f = instances::random_vector(200, rng);
    for (double t : {0.1, 5.0, 123.4}) {
        CHECK(sg.state_norm(sg.apply(t, f)) == doctest::Approx(sg.state_norm(f)).epsilon(1e-13));
    }
}

TEST_CASE("measures canonicalize and validate") {
    const DiscreteMeasure mu({{1.0, 0.25}, {0.0, 0.5}, {1.0, 0.25}});
    const auto c = mu.canonicalize();
    REQUIRE(c.size() == 2);
    CHECK(c.atoms()[0].location == 0.0);
    CHECK(c.atoms()[1].weight == doctest::Approx(0.5));
    CHECK(mu.is_probability());
    CHECK_THROWS_AS(DiscreteMeasure({{0.0, -1.0}}), ValidationError);
    CHECK_THROWS_AS(DiscreteMeasure({{INFINITY, 1.0}}), ValidationError);
    CHECK(DiscreteMeasure::cantor(10).size() == 1024);
    CHECK(DiscreteMeasure::cantor(10).is_probability());
}

TEST_CASE("homoclinic flow") {
    const Flow flow = Flow::homoclinic();
    FlowPoint x0(2);
    x0 << 0.5, 0.0;
    const auto r = koopman_observe(flow, 2.0, homoclinic_radius(), x0);
    CHECK(std::abs(r.real() - (1.0 - 0.5 * std::exp(-2.0))) < 1e-9);
    CHECK(std::abs(r.real() - 0.93233) < 1e-5);

    FlowPoint fixed(2);
    fixed << 1.0, 0.0;
    const auto at = flow.advance(fixed, 17.0).point;
    CHECK(std::abs(at[0] - 1.0) < 1e-14);
    CHECK(std::abs(at[1]) < 1e-14);
}

TEST_CASE("RK4 converges at fourth order") {
    FlowPoint x0(2);
    x0 << 0.5, 0.0;
    auto err = [&](double h) {
        IntegratorConfig c;
        c.step = h;
        return std::abs(Flow::homoclinic(c).advance(x0, 3.0).point[0] - (1.0 - 0.5 * std::exp(-3.0)));
    };
    const double ratio = err(0.1) / err(0.05);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("torus rotation") {
    const Flow flow = Flow::torus_rotation(1.0);
    FlowPoint x0(1);
    x0 << 0.0;
    CHECK(std::abs(koopman_observe(flow, 0.25, torus_character(1), x0) - I) < 1e-12);
    CHECK(std::abs(koopman_observe(flow, 3.5, torus_character(1), x0) + 1.0) < 1e-12);
}

TEST_CASE("cogenerator closed forms") {
    CHECK(cogenerator_of(MatrixGenerator(diag({-1.0}))).matrix.norm() < 1e-15);
    const auto g = cogenerator_of(MatrixGenerator(diag({I})));
    CHECK(std::abs(g.matrix(0, 0) + I) < 1e-15);
    CHECK(g.norm() == doctest::Approx(1.0));
    const auto g2 = cogenerator_of(MatrixGenerator(diag({I, -1.0})));
    CHECK((g2.matrix - diag({-I, 0.0})).norm() < 1e-15);
}

TEST_CASE("cogenerator of a contraction semigroup is a contraction with the Cayley spectrum") {
    instances::Rng rng(5);
    for (int k = 0; k < 10; ++k) {
        const auto p = instances::random_contractive_generator(5, k % 3, rng);
        const MatrixGenerator gen(p.a);
        const auto g = cogenerator_of(gen);
        CHECK(g.norm() <= 1.0 + 1e-10);
        const auto ev = g.eigenvalues();
        for (auto lambda : gen.eigenvalues()) {
            const Complex target = -(1.0 + lambda) / (1.0 - lambda);
            double best = 1e9;
            for (auto mu : ev) best = std::min(best, std::abs(mu - target));
            CHECK(best < 1e-8);
            CHECK((std::abs(lambda.real()) < 1e-8) == (std::abs(std::abs(target) - 1.0) < 1e-8));
        }
    }
}

TEST_CASE("jgdl split") {
    SUBCASE("diagonal") {
        const auto s = jgdl_split(MatrixGenerator(diag({I, -1.0})));
        REQUIRE(s.basis_r.cols() == 1);
        CHECK(std::abs(std::abs(s.basis_r(0, 0)) - 1.0) < 1e-12);
        CHECK(s.basis_s.cols() == 1);
    }
    SUBCASE("stable") {
        const auto s = jgdl_split(MatrixGenerator(diag({-1.0, -2.0})));
        CHECK(s.basis_r.cols() == 0);
        CHECK(s.basis_s.cols() == 2);
    }
    SUBCASE("conjugated") {
        instances::Rng rng(6);
        const ComplexMatrix u = instances::random_unitary(3, rng);
        const ComplexMatrix a = u * diag({I, 2.0 * I, -1.0}) * u.adjoint();
        const auto s = jgdl_split(MatrixGenerator(a));
        REQUIRE(s.basis_r.cols() == 2);
        CHECK(linalg::max_principal_angle(s.basis_r, u.leftCols(2)) < 1e-8);
        CHECK(linalg::max_principal_angle(s.basis_s, u.rightCols(1)) < 1e-8);
        const MatrixSemigroup sg{MatrixGenerator(a)};
        for (double t : {0.5, 3.0, 10.0}) {
            const ComplexVector v = s.basis_r * instances::random_vector(2, rng);
            CHECK(sg.apply(t, v).norm() == doctest::Approx(v.norm()).epsilon(1e-10));
        }
        CHECK((s.proj_r + s.proj_s - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);
    }
}

TEST_CASE("foguel split") {
    SUBCASE("diagonal") {
        const auto s = foguel_split(MatrixGenerator(diag({I, -1.0})));
        REQUIRE(s.basis_w_perp.cols() == 1);
        CHECK(std::abs(std::abs(s.basis_w_perp(0, 0)) - 1.0) < 1e-12);
    }
    SUBCASE("strictly dissipative") {
        const auto s = foguel_split(MatrixGenerator(diag({-1.0, -1.0})));
        CHECK(s.basis_w.cols() == 2);
        CHECK(s.basis_w_perp.cols() == 0);
    }
    SUBCASE("conjugated") {
        instances::Rng rng(7);
        const ComplexMatrix u = instances::random_unitary(2, rng);
        const ComplexMatrix a = u * diag({0.8 * I, Complex{-1.0, 1.0}}) * u.adjoint();
        const auto s = foguel_split(MatrixGenerator(a));
        CHECK(linalg::max_principal_angle(s.basis_w_perp, u.leftCols(1)) < 1e-8);
    }
    SUBCASE("non-contractive generators are rejected") {
        CHECK_THROWS_AS(foguel_split(MatrixGenerator(diag({0.5, -1.0}))), ValidationError);
    }
}

TEST_CASE("foguel split on random block generators") {
    instances::Rng rng(8);
    for (int k = 0; k < 20; ++k) {
        const double gap = 0.5;
        const auto p = instances::random_contractive_generator(5, 1 + k % 2, rng, gap);
        const MatrixGenerator gen(p.a);
        const auto s = foguel_split(gen);
        const MatrixSemigroup sg(gen);
        const ComplexVector v = s.basis_w_perp * instances::random_vector(s.basis_w_perp.cols(), rng);
        for (double t : {1.0, 7.5, 20.0}) {
            CHECK(sg.apply(t, v).norm() == doctest::Approx(v.norm()).epsilon(1e-8));
        }
        const ComplexVector w = s.basis_w * instances::random_vector(s.basis_w.cols(), rng);
        const ComplexVector wu = w / w.norm();
        CHECK(std::abs(pairing(sg.apply(20.0, wu), wu)) < 10.0 * std::exp(-gap * 20.0));
    }
}

TEST_CASE("mean ergodic projection") {
    SUBCASE("diag(0, -1)") {
        const auto p = mean_ergodic_projection(MatrixGenerator(diag({0.0, -1.0})), 100.0);
        CHECK((p.exact - diag({1.0, 0.0})).norm() < 1e-12);
        CHECK(p.deviation <= 0.02);
    }
    SUBCASE("diag(i, -1)") {
        const auto p = mean_ergodic_projection(MatrixGenerator(diag({I, -1.0})), 100.0);
        CHECK(p.exact.norm() < 1e-12);
        CHECK(p.deviation <= 2.0 / 100.0);
    }
    SUBCASE("zero generator") {
        const auto p = mean_ergodic_projection(MatrixGenerator(ComplexMatrix::Zero(2, 2)), 10.0);
        CHECK((p.exact - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);
        CHECK(p.deviation < 1e-12);
    }
}

TEST_CASE("batched weak orbit matches pointwise evaluation on both matrix paths") {
    ComplexMatrix jordan(3, 3);
    jordan << -0.5, 4.0, 0.0, 0.0, -0.5, 4.0, 0.0, 0.0, -0.5;
    instances::Rng rng(9);
    const auto p = instances::random_stable_generator(4, rng);
    for (const ComplexMatrix& a : {jordan, p.a}) {
        const MatrixSemigroup sg{MatrixGenerator(a)};
        const auto n = a.rows();
        const ComplexVector x = instances::random_vector(n, rng);
        const ComplexVector y = instances::random_vector(n, rng);
        const auto grid = TimeGrid::from_horizon(30.0, 0.01);
        const auto batch = sg.orbit_values(x, y, grid);
        for (std::size_t k = 0; k < grid.size(); k += 37) {
            CHECK(std::abs(batch[k] - sg.orbit_value(grid.time(k), x, y)) < 1e-10);
        }
    }
}
