#include "semistab_app/acceptance.hpp"

#include <semistab/semistab.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <memory>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace semistab::app {

namespace {

constexpr double kPi = std::numbers::pi;

class Recorder {
public:
    explicit Recorder(CriterionResult& r) : r_(r) {}

    void at_most(const std::string& name, double value, double threshold) {
        add(name, value, "<=", threshold, value <= threshold);
    }
    void at_least(const std::string& name, double value, double threshold) {
        add(name, value, ">=", threshold, value >= threshold);
    }
    void below(const std::string& name, double value, double threshold) {
        add(name, value, "<", threshold, value < threshold);
    }
    void count(const std::string& name, double value, double expected) {
        add(name, value, "==", expected, value == expected);
    }
    void note(const std::string& text) { r_.notes.push_back(text); }

private:
    void add(const std::string& name, double value, const char* rel, double threshold, bool ok) {
        r_.measurements.push_back({name, value, rel, threshold, ok});
    }
    CriterionResult& r_;
};

ComplexVector unit(const ComplexVector& v) { return v / v.norm(); }

std::size_t instance_count(Suite suite) { return suite == Suite::full ? 50 : 20; }

MatrixSemigroup semigroup_of(const ComplexMatrix& a) { return MatrixSemigroup(MatrixGenerator(a)); }

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

ComplexMatrix scalar(Complex z) { return diag({z}); }

// 1 ------------------------------------------------------------------------
void cantor_dichotomy(Recorder& rec, Suite) {
    const auto start = std::chrono::steady_clock::now();
    const auto mu = DiscreteMeasure::cantor(20);
    const MultiplicationSemigroup backend(mu);
    const ComplexVector one = backend.ones();
    const double horizon = 1e4;
    const auto grid = TimeGrid::from_horizon(horizon, 0.01);
    const auto orbit = weak_orbit(backend, one, one, grid);
    const auto mean = running_mean(orbit, MeanTransform::abs);
    auto mean_at = [&](double t) { return mean[grid.index_at_or_after(t)].real(); };
    const double m4 = mean_at(horizon / 4.0);
    const double m2 = mean_at(horizon / 2.0);
    const double m1 = mean_at(horizon);
    rec.at_most("running mean of |orbit| at T", m1, 0.05);
    rec.at_most("running mean at T/2 minus at T/4 (nonincreasing)", m2 - m4, 0.0);
    rec.at_most("running mean at T minus at T/2 (nonincreasing)", m1 - m2, 0.0);

    double oracle = 1.0;
    for (int m = 1; m <= 60; ++m) {
        oracle *= std::cos(2.0 * kPi / std::pow(3.0, m));
    }
    oracle = std::abs(oracle);
    std::vector<double> probes;
    double worst_probe = 1.0;
    double oracle_gap = 0.0;
    for (int n = 1; n <= 6; ++n) {
        const double t = 2.0 * kPi * std::pow(3.0, n);
        probes.push_back(t);
        const double v = std::abs(fourier_transform(mu, t));
        worst_probe = std::min(worst_probe, v);
        oracle_gap = std::max(oracle_gap, std::abs(v - oracle));
    }
    rec.at_least("min_n |F mu(2 pi 3^n)|, n = 1..6", worst_probe, 0.2);
    rec.at_most("max_n | |F mu(2 pi 3^n)| - |prod_m cos(2 pi / 3^m)| |", oracle_gap, 2e-3);
    rec.note("product oracle " + std::to_string(oracle));

    ClassifyConfig cfg;
    cfg.horizon = horizon;
    cfg.dt = 0.01;
    cfg.adversarial_probes = probes;
    const auto report = classify(backend, {{one, one}}, cfg);
    rec.count("verdict is almost-weak-only-evidence",
              report.verdict == StabilityVerdict::almost_weak_only_evidence ? 1.0 : 0.0, 1.0);
    rec.note("verdict: " + to_string(report.verdict));
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec.at_most("runtime [s]", seconds, 60.0);
}

// 2 ------------------------------------------------------------------------
void plancherel(Recorder& rec, Suite suite) {
    const auto start = std::chrono::steady_clock::now();
    instances::Rng rng(2024);
    double worst = 0.0;
    const std::size_t n = instance_count(suite);
    for (std::size_t k = 0; k < n; ++k) {
        const auto planted = instances::random_stable_generator(5, rng, -0.1);
        const auto backend = semigroup_of(planted.a);
        const ComplexVector x = instances::random_vector(5, rng);
        const ComplexVector y = instances::random_vector(5, rng);
        const ResolventProbe probe(backend);
        for (double a : {1.0, 0.1}) {
            const auto p = plancherel_check(probe, x, y, a, 15.0 / a);
            worst = std::max(worst, p.rel_error);
        }
    }
    rec.at_most("max relative error over instances and a in {1, 0.1}", worst, 1e-3);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec.at_most("runtime [s]", seconds, suite == Suite::full ? 75.0 : 30.0);
}

// 3 ------------------------------------------------------------------------
void eigenvalue_chain(Recorder& rec, Suite suite) {
    instances::Rng rng(31337);
    const std::size_t n = instance_count(suite);
    std::size_t agree_ladder = 0, agree_pointwise = 0, agree_verdict = 0, seeded = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const bool seed = k % 2 == 0;
        const auto planted = instances::random_stable_generator(5, rng, -0.1, seed);
        const MatrixGenerator gen(planted.a);
        const bool scan = !gen.boundedness().imaginary_eigenvalues.empty();
        seeded += seed ? 1 : 0;
        const MatrixSemigroup backend(gen);
        const ComplexVector x = instances::random_vector(5, rng);
        const ComplexVector y = instances::random_vector(5, rng);
        ClassifyConfig cfg;
        cfg.horizon = 50.0;
        const auto report = classify(backend, {{x, y}}, cfg);
        const auto& obs = report.observations.front();
        agree_ladder += obs.abel_bounded_away == scan ? 1 : 0;
        agree_pointwise += obs.pointwise_bounded_away == scan ? 1 : 0;
        agree_verdict += (report.verdict == StabilityVerdict::not_almost_weak) == scan ? 1 : 0;
        if (seed != scan) {
            rec.note("instance " + std::to_string(k) + ": eigenvalue scan disagrees with the plant");
        }
    }
    rec.count("instances where the Abel ladder agrees with the eigenvalue scan",
              static_cast<double>(agree_ladder), static_cast<double>(n));
    rec.count("instances where pointwise a R(a+is)x agrees with the eigenvalue scan",
              static_cast<double>(agree_pointwise), static_cast<double>(n));
    rec.count("instances where the classify verdict agrees with the eigenvalue scan",
              static_cast<double>(agree_verdict), static_cast<double>(n));
    rec.note(std::to_string(seeded) + " of " + std::to_string(n) +
             " instances seeded with an imaginary eigenvalue");

    const auto stable = semigroup_of(scalar(-1.0));
    const auto rotation = semigroup_of(scalar({0.0, 1.0}));
    const ComplexVector one = ComplexVector::Ones(1);
    double err_stable = 0.0, err_rotation = 0.0;
    for (double a : {1.0, 0.1, 0.01, 0.001}) {
        const double vs = abel_square_integral(ResolventProbe(stable), one, one, a).value;
        const double vr = abel_square_integral(ResolventProbe(rotation), one, one, a).value;
        err_stable = std::max(err_stable, std::abs(vs - kPi * a / (a + 1.0)));
        err_rotation = std::max(err_rotation, std::abs(vr - kPi));
    }
    rec.at_most("A=[[-1]]: max |a I(a) - pi a/(a+1)|", err_stable, 1e-3);
    rec.at_most("A=[[i]]: max |a I(a) - pi|", err_rotation, 1e-3);
}

// 4 ------------------------------------------------------------------------
void chill_tomilov(Recorder& rec, Suite suite) {
    const ComplexVector one = ComplexVector::Ones(1);
    {
        const auto backend = semigroup_of(scalar(-1.0));
        const auto r = chill_tomilov_integrals(ResolventProbe(backend), one, one);
        rec.at_most("A=[[-1]]: |double integral - pi ln 2|",
                    std::abs(r.double_integral - kPi * std::log(2.0)), 1e-2);
    }

    struct Instance {
        ComplexMatrix a;
        ComplexVector x, y;
    };
    std::vector<Instance> list;
    const ComplexVector half = ComplexVector::Ones(2) / std::sqrt(2.0);
    list.push_back({scalar(-1.0), one, one});
    list.push_back({scalar({0.0, 1.0}), one, one});
    list.push_back({diag({Complex{0.0, 1.0}, -1.0}), half, half});
    instances::Rng rng(4096);
    const std::size_t randoms = suite == Suite::full ? 12 : 5;
    for (std::size_t k = 0; k < randoms; ++k) {
        const auto planted = instances::random_stable_generator(4, rng, -0.1, k % 3 == 0);
        list.push_back({planted.a, unit(instances::random_vector(4, rng)),
                        unit(instances::random_vector(4, rng))});
    }

    std::size_t monotone = 0;
    double worst_il = 0.0;
    for (const auto& inst : list) {
        const auto backend = semigroup_of(inst.a);
        const ResolventProbe probe(backend);
        const auto r = chill_tomilov_integrals(probe, inst.x, inst.y);
        monotone += r.nonincreasing ? 1 : 0;
        for (double t : {1.0, 2.0, 5.0}) {
            const auto il = inverse_laplace_orbit(probe, inst.x, inst.y, t);
            worst_il = std::max(worst_il, il.abs_error);
        }
    }
    rec.count("instances with I(a) nonincreasing in a", static_cast<double>(monotone),
              static_cast<double>(list.size()));
    rec.at_most("max |inverse Laplace - direct orbit| at t in {1,2,5}", worst_il, 1e-4);

    const auto stable = semigroup_of(scalar(-1.0));
    const auto fixed_a = inverse_laplace_orbit(ResolventProbe(stable), one, one, 1.0, 0.5);
    rec.at_most("A=[[-1]], t=1, a=0.5: |value - e^{-1}|",
                std::abs(fixed_a.value - std::exp(-1.0)), 1e-4);
}

// 5 ------------------------------------------------------------------------
void foguel(Recorder& rec, Suite suite) {
    instances::Rng rng(55);
    const std::size_t n = instance_count(suite);
    double worst_angle = 0.0, worst_norm = 0.0, worst_decay = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const Eigen::Index udim = 1 + static_cast<Eigen::Index>(k % 2);
        const auto planted = instances::random_contractive_generator(5, udim, rng, 0.5);
        const MatrixGenerator gen(planted.a);
        const auto split = foguel_split(gen);
        worst_angle = std::max(worst_angle,
                               linalg::max_principal_angle(split.basis_w_perp, planted.unitary_basis));
        const MatrixSemigroup sg(gen);
        for (int j = 0; j <= 40; ++j) {
            const double t = 0.5 * j;
            const ComplexMatrix restricted = sg.propagator(t) * split.basis_w_perp;
            Eigen::JacobiSVD<ComplexMatrix> svd(restricted);
            const auto& sv = svd.singularValues();
            for (Eigen::Index i = 0; i < sv.size(); ++i) {
                worst_norm = std::max(worst_norm, std::abs(sv[i] - 1.0));
            }
        }
        const ComplexMatrix w = linalg::orthogonal_complement(planted.unitary_basis, 5);
        const ComplexVector x = unit(w * instances::random_vector(w.cols(), rng));
        worst_decay = std::max(worst_decay, std::abs(pairing(sg.apply(20.0, x), x)));
    }
    rec.at_most("max principal angle between recovered W-perp and the planted block", worst_angle,
                1e-7);
    rec.at_most("max |sigma(T(t)|W-perp) - 1| over t in [0, 20]", worst_norm, 1e-8);
    rec.at_most("max |<T(20)x, x>| for unit x in the planted W", worst_decay, 1e-3);
}

// 6 ------------------------------------------------------------------------
void homoclinic(Recorder& rec, Suite) {
    IntegratorConfig ic;
    ic.step = 1e-3;
    const Flow flow = Flow::homoclinic(ic);
    FlowPoint x0(2);
    x0 << 0.5, 0.0;
    {
        const auto grid = TimeGrid::from_horizon(20.0, 0.01);
        const auto traj = flow.trajectory(x0, grid);
        double worst = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double exact = 1.0 + (x0[0] - 1.0) * std::exp(-grid.time(k));
            worst = std::max(worst, std::abs(traj[k][0] - exact));
        }
        rec.at_most("max |r(t) - (1 + (r0 - 1) e^{-t})| on [0, 20]", worst, 1e-6);
    }

    const double horizon = 2000.0;
    const auto grid = TimeGrid::from_horizon(horizon, 0.01);
    const auto f = homoclinic_bump();
    const auto orbit = weak_orbit(flow, f, x0, grid);
    const auto mean = running_mean(orbit, MeanTransform::abs);
    auto mean_at = [&](double t) { return mean[grid.index_at_or_after(t)].real(); };
    rec.below("(a) running mean of |orbit| at T = 2000", mean_at(horizon), 0.1);
    rec.at_most("(a) running mean at T/2 minus at T/4", mean_at(horizon / 2) - mean_at(horizon / 4),
                0.0);
    rec.at_most("(a) running mean at T minus at T/2", mean_at(horizon) - mean_at(horizon / 2), 0.0);

    std::vector<double> peaks;
    for (std::size_t k = 1; k + 1 < orbit.size(); ++k) {
        const double v = std::abs(orbit[k]);
        if (v >= 0.5 && v >= std::abs(orbit[k - 1]) && v > std::abs(orbit[k + 1])) {
            peaks.push_back(grid.time(k));
        }
    }
    std::ostringstream os;
    os << peaks.size() << " peak(s) >= 0.5 on [0, " << horizon << "]";
    if (!peaks.empty()) {
        os << ", first at t = " << peaks.front() << ", last at t = " << peaks.back();
    }
    rec.note(os.str());
    if (peaks.size() < 2) {
        rec.note("(b) return period not measurable: the orbit does not come back to the bump");
        rec.at_least("(b) peaks >= 0.5 in [T/2, T]",
                     static_cast<double>(std::count_if(peaks.begin(), peaks.end(),
                                                       [&](double t) { return t >= horizon / 2; })),
                     1.0);
        return;
    }
    std::vector<double> gaps;
    for (std::size_t k = 1; k < peaks.size(); ++k) {
        gaps.push_back(peaks[k] - peaks[k - 1]);
    }
    std::nth_element(gaps.begin(), gaps.begin() + static_cast<long>(gaps.size() / 2), gaps.end());
    const double period = gaps[gaps.size() / 2];
    double prev = horizon / 2;
    double worst_gap = 0.0;
    for (double t : peaks) {
        if (t >= horizon / 2) {
            worst_gap = std::max(worst_gap, t - prev);
            prev = t;
        }
    }
    worst_gap = std::max(worst_gap, horizon - prev);
    rec.note("(b) measured return period " + std::to_string(period));
    rec.at_most("(b) longest stretch of [T/2, T] without a peak / return period",
                worst_gap / period, 1.0);
}

// 7 ------------------------------------------------------------------------
void cogenerator(Recorder& rec, Suite suite) {
    instances::Rng rng(777);
    const std::size_t n = instance_count(suite);
    double worst_diff = 0.0, worst_map = 0.0;
    std::size_t unconverged = 0, mismatched = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const Eigen::Index udim = static_cast<Eigen::Index>(k % 3);
        const auto planted = instances::random_contractive_generator(4, udim, rng, 0.5);
        const MatrixGenerator gen(planted.a);
        const ComplexVector x = unit(instances::random_vector(4, rng));
        const auto cmp = compare_strong_limits(gen, x);
        worst_diff = std::max(worst_diff, std::abs(cmp.semigroup_limit - cmp.cogenerator_limit));
        unconverged += (cmp.semigroup_converged && cmp.cogenerator_converged) ? 0 : 1;

        const auto g = cogenerator_of(gen);
        const auto geig = g.eigenvalues();
        for (auto lambda : gen.eigenvalues()) {
            const Complex image = cayley_image(lambda);
            Complex nearest = geig.front();
            for (auto mu : geig) {
                if (std::abs(mu - image) < std::abs(nearest - image)) {
                    nearest = mu;
                }
            }
            worst_map = std::max(worst_map, std::abs(nearest - image));
            const bool on_circle = std::abs(std::abs(nearest) - 1.0) <= 1e-8;
            const bool imaginary = std::abs(lambda.real()) <= 1e-8;
            mismatched += on_circle == imaginary ? 0 : 1;
        }
    }
    rec.at_most("max | ||T(t*)x|| - ||G^{n*}x|| |", worst_diff, 0.02);
    rec.count("instances without a detected plateau", static_cast<double>(unconverged), 0.0);
    rec.at_most("max distance between eig(G) and the Cayley image of eig(A)", worst_map, 1e-8);
    rec.count("eigenvalues violating |mu| = 1 <=> Re lambda = 0", static_cast<double>(mismatched),
              0.0);
}

// 8 ------------------------------------------------------------------------
void mixing(Recorder& rec, Suite) {
    const Flow flow = Flow::torus_rotation(1.0);
    const IntervalSet half{{{0.0, 0.5}}};
    auto triangle = [](double t) {
        const double d = std::abs(t - std::round(t));
        return 0.25 - d;
    };
    double worst = 0.0;
    const auto grid = TimeGrid::from_horizon(100.0, 0.01);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid.time(k);
        worst = std::max(worst, std::abs(mixing_correlation(flow, half, half, t).value - triangle(t)));
    }
    instances::Rng rng(8);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (int k = 0; k < 1000; ++k) {
        const double t = u(rng);
        worst = std::max(worst, std::abs(mixing_correlation(flow, half, half, t).value - triangle(t)));
    }
    rec.at_most("max |C(t) - (1/4 - dist(t, Z))|", worst, 1e-10);
    const auto ces = mixing_cesaro(flow, half, half, grid);
    rec.at_most("|Cesaro mean of |C| over [0, 100] - 1/8|", std::abs(ces.cesaro_abs_mean - 0.125),
                1e-3);
    rec.count("reports not weakly mixing", ces.weakly_mixing_evidence ? 0.0 : 1.0, 1.0);
}

// 9 ------------------------------------------------------------------------
void mean_ergodic(Recorder& rec, Suite) {
    const MatrixGenerator gen(diag({0.0, Complex{0.0, 1.0}, -1.0}));
    for (double horizon : {50.0, 100.0, 200.0}) {
        const auto p = mean_ergodic_projection(gen, horizon);
        rec.at_most("T = " + std::to_string(static_cast<int>(horizon)) +
                        ": ||(1/T) int e^{sA} ds - diag(1,0,0)|| * T",
                    linalg::operator_norm(p.empirical - diag({1.0, 0.0, 0.0})) * horizon, 3.0);
    }
    const auto p = mean_ergodic_projection(gen, 50.0);
    rec.at_most("||exact projection - diag(1,0,0)||",
                linalg::operator_norm(p.exact - diag({1.0, 0.0, 0.0})), 1e-12);
}

// 10 -----------------------------------------------------------------------
void coherence(Recorder& rec, Suite suite) {
    double worst = 0.0;
    const auto grid = TimeGrid::from_horizon(suite == Suite::full ? 1e4 : 1000.0, 0.01);
    for (const auto& mu : {DiscreteMeasure::cantor(20), DiscreteMeasure::cantor(10),
                           DiscreteMeasure::lebesgue(0.0, 1.0, 512)}) {
        const MultiplicationSemigroup backend(mu);
        const ComplexVector one = backend.ones();
        const auto orbit = weak_orbit(backend, one, one, grid);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            worst = std::max(worst, std::abs(orbit[k] - fourier_transform(mu, grid.time(k))));
        }
    }
    rec.at_most("max |weak_orbit - F mu| with x = y = 1", worst, 1e-12);

    struct Case {
        std::string name;
        std::function<std::unique_ptr<SemigroupEvaluator>()> make;
    };
    instances::Rng rng(1010);
    const auto seeded = instances::random_stable_generator(4, rng, -0.1, true).a;
    const auto plain = instances::random_stable_generator(4, rng, -0.1, false).a;
    std::vector<Case> cases{
        {"A=-I", [] { return std::make_unique<MatrixSemigroup>(MatrixGenerator(diag({-1.0, -1.0}))); }},
        {"A=diag(i,-1)",
         [] { return std::make_unique<MatrixSemigroup>(MatrixGenerator(diag({Complex{0, 1}, -1.0}))); }},
        {"random seeded", [&] { return std::make_unique<MatrixSemigroup>(MatrixGenerator(seeded)); }},
        {"random stable", [&] { return std::make_unique<MatrixSemigroup>(MatrixGenerator(plain)); }},
        {"two atoms",
         [] {
             return std::make_unique<MultiplicationSemigroup>(
                 DiscreteMeasure({{0.0, 0.5}, {1.0, 0.5}}));
         }},
        {"cantor depth 12",
         [] { return std::make_unique<MultiplicationSemigroup>(DiscreteMeasure::cantor(12)); }},
    };
    const Complex c1{3.7, 0.0};
    const Complex c2{-0.25, 1.3};
    std::size_t invariant = 0;
    for (const auto& c : cases) {
        const auto backend = c.make();
        const auto n = static_cast<Eigen::Index>(backend->dim());
        const ComplexVector x = instances::random_vector(n, rng);
        const ComplexVector y = instances::random_vector(n, rng);
        ClassifyConfig cfg;
        cfg.horizon = 200.0;
        for (int k = 1; k <= 4; ++k) {
            cfg.adversarial_probes.push_back(2.0 * kPi * std::pow(3.0, k));
        }
        const auto base = classify(*backend, {{x, y}}, cfg);
        const auto scaled = classify(*backend, {{c1 * x, c2 * y}}, cfg);
        const bool same = base.verdict == scaled.verdict;
        invariant += same ? 1 : 0;
        rec.note(c.name + ": " + to_string(base.verdict) + (same ? "" : " vs " + to_string(scaled.verdict)));
    }
    rec.count("backends whose classify verdict is invariant under x -> 3.7x, y -> (-0.25+1.3i)y",
              static_cast<double>(invariant), static_cast<double>(cases.size()));
}

struct Entry {
    const char* name;
    void (*run)(Recorder&, Suite);
};

const Entry kEntries[kCriterionCount] = {
    {"cantor-dichotomy", cantor_dichotomy},
    {"plancherel-identity", plancherel},
    {"eigenvalue-detection-chain", eigenvalue_chain},
    {"resolvent-square-integrals", chill_tomilov},
    {"foguel-splitting", foguel},
    {"homoclinic-flow", homoclinic},
    {"cogenerator-transfer", cogenerator},
    {"mixing-diagnostics", mixing},
    {"mean-ergodic-projection", mean_ergodic},
    {"cross-module-coherence", coherence},
};

} // namespace

Suite parse_suite(const std::string& name) {
    if (name == "fast") {
        return Suite::fast;
    }
    if (name == "full") {
        return Suite::full;
    }
    throw ValidationError("unknown suite '" + name + "' (expected fast or full)");
}

CriterionResult run_criterion(int id, Suite suite) {
    if (id < 1 || id > kCriterionCount) {
        throw ValidationError("criterion id must lie in [1, " + std::to_string(kCriterionCount) + "]");
    }
    CriterionResult r;
    r.id = id;
    r.name = kEntries[id - 1].name;
    Recorder rec(r);
    const auto start = std::chrono::steady_clock::now();
    bool threw = false;
    try {
        kEntries[id - 1].run(rec, suite);
    } catch (const std::exception& e) {
        threw = true;
        r.notes.push_back(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.passed = !threw && !r.measurements.empty() &&
               std::all_of(r.measurements.begin(), r.measurements.end(),
                           [](const Measurement& m) { return m.passed; });
    return r;
}

void print_result(const CriterionResult& r, std::ostream& out) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << " " << r.name << " ("
        << std::fixed << std::setprecision(1) << r.seconds << " s)\n";
    out.unsetf(std::ios::floatfield);
    for (const auto& m : r.measurements) {
        out << "       " << (m.passed ? "ok   " : "FAIL ") << m.name << " = " << std::setprecision(6)
            << m.value << " " << m.relation << " " << m.threshold << "\n";
    }
    for (const auto& n : r.notes) {
        out << "       note: " << n << "\n";
    }
}

int run_check(Suite suite, std::ostream& out, const std::vector<int>& only) {
    std::vector<int> ids = only;
    if (ids.empty()) {
        for (int k = 1; k <= kCriterionCount; ++k) {
            ids.push_back(k);
        }
    }
    int failed = 0;
    for (int id : ids) {
        const auto r = run_criterion(id, suite);
        print_result(r, out);
        out.flush();
        failed += r.passed ? 0 : 1;
    }
    out << (failed == 0 ? "all " + std::to_string(ids.size()) + " criteria passed"
                        : std::to_string(failed) + " of " + std::to_string(ids.size()) +
                              " criteria failed")
        << "\n";
    return failed == 0 ? 0 : 1;
}

} // namespace semistab::app
