#include "semistab_app/analyze.hpp"

#include <semistab/semistab.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

namespace semistab::app {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Json limit_to_json(const LimitEstimate& e) {
    return Json{{"last", e.last},
                {"richardson", e.richardson},
                {"log_slope", std::isfinite(e.log_slope) ? Json(e.log_slope) : Json("inf")},
                {"monotone", e.monotone}};
}

Json complex_list(const std::vector<Complex>& zs) {
    Json out = Json::array();
    for (auto z : zs) {
        out.push_back(complex_to_json(z));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Presets

Json matrix_scenario(const ComplexMatrix& a) {
    return Json{{"kind", "matrix"}, {"matrix", matrix_to_json(a)}};
}

ComplexMatrix diagonal(std::initializer_list<Complex> d) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()),
                                          static_cast<Eigen::Index>(d.size()));
    Eigen::Index k = 0;
    for (auto z : d) {
        m(k, k) = z;
        ++k;
    }
    return m;
}

Json base_config(Json scenario, double horizon, double dt, std::uint64_t seed) {
    Json c;
    c["scenario"] = std::move(scenario);
    c["grid"] = Json{{"horizon", horizon}, {"dt", dt}};
    c["seed"] = seed;
    return c;
}

} // namespace

const std::vector<PresetInfo>& presets() {
    static const std::vector<PresetInfo> list{
        {"cantor", "multiplication",
         "unitary multiplication group on L2 of the middle-thirds Cantor measure (2^20 atoms)",
         "depth=20 horizon=1e4 dt=0.01 probes=2pi*3^n"},
        {"lebesgue", "multiplication",
         "multiplication group on a midpoint discretisation of Lebesgue measure on [0,1]",
         "n=4096 horizon=1000 dt=0.01"},
        {"two-atom", "multiplication", "multiplication group on (delta_0 + delta_1)/2",
         "horizon=1000 dt=0.01"},
        {"stable-matrix", "matrix", "e^{tA} with A = -I (2x2)", "horizon=100 dt=0.01"},
        {"rotation-matrix", "matrix", "e^{tA} with A = diag(i, -1)", "horizon=100 dt=0.01"},
        {"homoclinic", "koopman",
         "planar flow dr/dt = 1-r, dw/dt = 1+r^2-2r cos w observed through a bump on the circle",
         "x0=(0.5,0) horizon=2000 dt=0.01"},
        {"torus-rotation", "koopman", "rotation x -> x + t on R/Z with the character e^{2 pi i x}",
         "alpha=1 horizon=100 dt=0.01 A=B=[0,1/2]"},
        {"foguel-demo", "matrix",
         "random 5x5 contraction generator with a planted 2-dimensional unitary block",
         "seed=7 horizon=200 dt=0.01"},
        {"cogenerator-demo", "matrix",
         "random 4x4 contraction generator with one imaginary eigenvalue, compared with its "
         "Cayley cogenerator",
         "seed=11 horizon=200 dt=0.01"},
        {"mean-ergodic-demo", "matrix", "e^{tA} with A = diag(0, i, -1) and its Cesaro means",
         "horizon=200 dt=0.01"},
    };
    return list;
}

std::string list_presets() {
    std::ostringstream os;
    std::size_t w_name = 4, w_backend = 7;
    for (const auto& p : presets()) {
        w_name = std::max(w_name, p.name.size());
        w_backend = std::max(w_backend, p.backend.size());
    }
    os << std::left << std::setw(static_cast<int>(w_name) + 2) << "name"
       << std::setw(static_cast<int>(w_backend) + 2) << "backend"
       << "construction / defaults\n";
    for (const auto& p : presets()) {
        os << std::left << std::setw(static_cast<int>(w_name) + 2) << p.name
           << std::setw(static_cast<int>(w_backend) + 2) << p.backend << p.construction << "\n"
           << std::string(w_name + w_backend + 4, ' ') << "[" << p.defaults << "]\n";
    }
    return os.str();
}

Json preset_config(const std::string& name, std::optional<std::uint64_t> seed,
                   std::optional<double> horizon) {
    Json c;
    if (name == "cantor") {
        c = base_config({{"kind", "multiplication"}, {"measure", {{"type", "cantor"}, {"depth", 20}}}},
                        1e4, 0.01, seed.value_or(0));
        Json probes = Json::array();
        for (int n = 1; n <= 6; ++n) {
            probes.push_back(kTwoPi * std::pow(3.0, n));
        }
        c["adversarial_probes"] = probes;
        c["observations"] = Json::array({{{"x", "ones"}, {"y", "ones"}}});
        c["analyses"] = {"rajchman", "wiener", "density"};
    } else if (name == "lebesgue") {
        c = base_config({{"kind", "multiplication"},
                         {"measure", {{"type", "lebesgue"}, {"a", 0.0}, {"b", 1.0}, {"n", 4096}}}},
                        1000.0, 0.01, seed.value_or(0));
        c["observations"] = Json::array({{{"x", "ones"}, {"y", "ones"}}});
        c["analyses"] = {"rajchman", "wiener", "density"};
    } else if (name == "two-atom") {
        c = base_config({{"kind", "multiplication"},
                         {"measure", {{"type", "atoms"}, {"atoms", {{0.0, 0.5}, {1.0, 0.5}}}}}},
                        1000.0, 0.01, seed.value_or(0));
        c["observations"] = Json::array({{{"x", "ones"}, {"y", "ones"}}});
        c["analyses"] = {"rajchman", "wiener", "plancherel", "density"};
    } else if (name == "stable-matrix") {
        c = base_config(matrix_scenario(diagonal({-1.0, -1.0})), 100.0, 0.01, seed.value_or(0));
        c["observations"] = Json::array({{{"x", {{"basis", 0}}}, {"y", {{"basis", 0}}}},
                                         {{"x", "random"}, {"y", "random"}}});
        c["analyses"] = {"jgdl", "plancherel", "chill_tomilov", "inverse_laplace", "mean_ergodic",
                         "relatively_dense", "density"};
    } else if (name == "rotation-matrix") {
        c = base_config(matrix_scenario(diagonal({Complex{0.0, 1.0}, -1.0})), 100.0, 0.01,
                        seed.value_or(0));
        c["observations"] = Json::array({{{"x", {{"basis", 0}}}, {"y", {{"basis", 0}}}},
                                         {{"x", "random"}, {"y", "random"}}});
        c["analyses"] = {"jgdl", "plancherel", "chill_tomilov", "inverse_laplace",
                         "relatively_dense", "density"};
    } else if (name == "homoclinic") {
        c = base_config({{"kind", "koopman"},
                         {"flow", "homoclinic"},
                         {"observable", {{"type", "bump"}, {"centre", std::numbers::pi},
                                         {"half_width", std::numbers::pi / 2.0}}},
                         {"x0", {0.5, 0.0}}},
                        2000.0, 0.01, seed.value_or(0));
        c["analyses"] = {"density"};
    } else if (name == "torus-rotation") {
        c = base_config({{"kind", "koopman"},
                         {"flow", "torus-rotation"},
                         {"alpha", 1.0},
                         {"observable", {{"type", "character"}, {"k", 1}}},
                         {"x0", {0.0}}},
                        100.0, 0.01, seed.value_or(0));
        const Json half = Json::array({Json::array({0.0, 0.5})});
        c["mixing"] = Json{{"A", half}, {"B", half}, {"tol", 0.01}};
        c["analyses"] = {"mixing"};
    } else if (name == "foguel-demo") {
        const auto s = seed.value_or(7);
        instances::Rng rng(s);
        const auto planted = instances::random_contractive_generator(5, 2, rng, 0.5);
        c = base_config(matrix_scenario(planted.a), 200.0, 0.01, s);
        c["observations"] = Json::array({{{"x", "random"}, {"y", "random"}}});
        c["analyses"] = {"foguel", "jgdl", "cogenerator"};
    } else if (name == "cogenerator-demo") {
        const auto s = seed.value_or(11);
        instances::Rng rng(s);
        const auto planted = instances::random_contractive_generator(4, 1, rng, 0.5);
        c = base_config(matrix_scenario(planted.a), 200.0, 0.01, s);
        c["observations"] = Json::array({{{"x", "random"}, {"y", "random"}}});
        c["analyses"] = {"cogenerator", "foguel"};
    } else if (name == "mean-ergodic-demo") {
        c = base_config(matrix_scenario(diagonal({0.0, Complex{0.0, 1.0}, -1.0})), 200.0, 0.01,
                        seed.value_or(0));
        c["observations"] = Json::array({{{"x", "ones"}, {"y", "ones"}}});
        c["mean_ergodic_horizons"] = {50.0, 100.0, 200.0};
        c["analyses"] = {"mean_ergodic", "jgdl"};
    } else {
        throw ValidationError("unknown preset '" + name + "' (see `semistab presets`)");
    }
    c["preset"] = name;
    if (horizon) {
        c["grid"]["horizon"] = *horizon;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Analysis

namespace {

struct Scenario {
    std::string kind;
    std::optional<MatrixGenerator> generator;
    std::optional<DiscreteMeasure> measure;
    std::unique_ptr<SemigroupEvaluator> backend;
    std::optional<Flow> flow;
    std::optional<Observable> observable;
    FlowPoint x0;
};

Scenario build_scenario(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw ValidationError("config: scenario must be an object with a string 'kind'");
    }
    Scenario s;
    s.kind = j["kind"].get<std::string>();
    if (s.kind == "matrix") {
        if (!j.contains("matrix")) {
            throw ValidationError("config: matrix scenario needs 'matrix'");
        }
        s.generator.emplace(matrix_from_json(j["matrix"]));
        MatrixSemigroupOptions opts;
        opts.group = j.value("group", false);
        s.backend = std::make_unique<MatrixSemigroup>(*s.generator, opts);
    } else if (s.kind == "multiplication") {
        if (!j.contains("measure")) {
            throw ValidationError("config: multiplication scenario needs 'measure'");
        }
        s.measure.emplace(measure_from_json(j["measure"]));
        s.backend = std::make_unique<MultiplicationSemigroup>(*s.measure);
    } else if (s.kind == "koopman") {
        const std::string flow = j.value("flow", std::string());
        if (flow == "homoclinic") {
            s.flow.emplace(Flow::homoclinic());
        } else if (flow == "torus-rotation") {
            s.flow.emplace(Flow::torus_rotation(number_field(j, "alpha", 1.0)));
        } else {
            throw ValidationError("config: unknown flow '" + flow + "'");
        }
        const Json obs = j.value("observable", Json::object());
        const std::string type = obs.value("type", std::string());
        if (type == "bump") {
            s.observable = homoclinic_bump(number_field(obs, "centre", std::numbers::pi),
                                           number_field(obs, "half_width", std::numbers::pi / 2.0),
                                           number_field(obs, "r_bound", 1.0));
        } else if (type == "radius") {
            s.observable = homoclinic_radius(number_field(obs, "r_bound", 1.0));
        } else if (type == "character") {
            s.observable = torus_character(static_cast<int>(number_field(obs, "k", 1.0)));
        } else {
            throw ValidationError("config: unknown observable '" + type + "'");
        }
        if (!j.contains("x0") || !j["x0"].is_array() || j["x0"].size() != s.flow->dim()) {
            throw ValidationError("config: x0 must be a list of " + std::to_string(s.flow->dim()) +
                                  " numbers");
        }
        s.x0 = FlowPoint(static_cast<Eigen::Index>(s.flow->dim()));
        for (std::size_t k = 0; k < s.flow->dim(); ++k) {
            s.x0[static_cast<Eigen::Index>(k)] = number_field(Json{{"v", j["x0"][k]}}, "v");
        }
    } else {
        throw ValidationError("config: unknown scenario kind '" + s.kind + "'");
    }
    return s;
}

ClassifyConfig classify_config(const Json& c) {
    ClassifyConfig cfg;
    const Json grid = c.value("grid", Json::object());
    cfg.horizon = number_field(grid, "horizon", cfg.horizon);
    cfg.dt = number_field(grid, "dt", cfg.dt);
    if (!(cfg.dt > 0.0)) {
        throw ValidationError("config: grid.dt must be > 0");
    }
    if (!(cfg.horizon > 0.0)) {
        throw ValidationError("config: grid.horizon must be > 0");
    }
    const Json tol = c.value("tolerances", Json::object());
    cfg.cesaro_tol = number_field(tol, "cesaro_tol", cfg.cesaro_tol);
    cfg.weak_tol = number_field(tol, "weak_tol", cfg.weak_tol);
    cfg.recurrence_floor = number_field(tol, "recurrence_floor", cfg.recurrence_floor);
    cfg.trailing_fraction = number_field(tol, "trailing_fraction", cfg.trailing_fraction);
    cfg.abel_floor = number_field(tol, "abel_floor", cfg.abel_floor);
    cfg.abel_slope_max = number_field(tol, "abel_slope_max", cfg.abel_slope_max);
    cfg.pointwise_floor = number_field(tol, "pointwise_floor", cfg.pointwise_floor);
    if (!(cfg.trailing_fraction > 0.0 && cfg.trailing_fraction <= 1.0)) {
        throw ValidationError("config: trailing_fraction must lie in (0, 1]");
    }
    if (c.contains("adversarial_probes")) {
        for (const auto& p : c["adversarial_probes"]) {
            cfg.adversarial_probes.push_back(number_field(Json{{"t", p}}, "t"));
        }
    }
    return cfg;
}

Json classify_config_to_json(const ClassifyConfig& cfg) {
    return Json{{"horizon", cfg.horizon},
                {"dt", cfg.dt},
                {"cesaro_tol", cfg.cesaro_tol},
                {"weak_tol", cfg.weak_tol},
                {"recurrence_floor", cfg.recurrence_floor},
                {"trailing_fraction", cfg.trailing_fraction},
                {"probe_count", cfg.probe_count},
                {"adversarial_probes", cfg.adversarial_probes},
                {"abel_floor", cfg.abel_floor},
                {"abel_slope_max", cfg.abel_slope_max},
                {"pointwise_floor", cfg.pointwise_floor},
                {"pointwise_samples", cfg.pointwise_samples},
                {"frequency_route_max_dim", cfg.frequency_route_max_dim}};
}

Json observation_to_json(const ObservationReport& r) {
    Json probes = Json::array();
    for (const auto& [t, v] : r.probe_values) {
        probes.push_back(Json{{"t", t}, {"abs", v}});
    }
    return Json{{"verdict", to_string(r.verdict)},
                {"cesaro_abs_tail", r.cesaro_abs_tail},
                {"cesaro_final", r.cesaro_final},
                {"trailing_sup", r.trailing_sup},
                {"probe_values", probes},
                {"recurrence", r.recurrence},
                {"abel",
                 {{"route", r.abel_route},
                  {"a", r.abel_a},
                  {"values", r.abel_values},
                  {"limit", limit_to_json(r.abel_limit)},
                  {"bounded_away", r.abel_bounded_away}}},
                {"pointwise_abel",
                 {{"max", r.pointwise_abel_max},
                  {"frequency", r.pointwise_abel_frequency},
                  {"bounded_away", r.pointwise_bounded_away}}}};
}

struct Context {
    const Json& config;
    Scenario& scenario;
    const ClassifyConfig& cfg;
    std::vector<std::pair<ComplexVector, ComplexVector>> observations;
    std::optional<Signal> first_orbit;
    AnalysisArtifacts& artifacts;
};

void require_kind(const Context& ctx, const std::string& kind, const std::string& analysis) {
    if (ctx.scenario.kind != kind) {
        throw ValidationError("analysis '" + analysis + "' needs a " + kind + " scenario");
    }
}

Json analysis_density(Context& ctx) {
    if (!ctx.first_orbit) {
        throw ValidationError("analysis 'density' needs at least one observation");
    }
    const auto rep = density_one_extract(ctx.first_orbit->abs());
    Json levels = Json::array();
    for (const auto& l : rep.levels) {
        Json cumulative = Json::array();
        for (const auto& [t, d] : l.cumulative) {
            cumulative.push_back({t, d});
        }
        levels.push_back(Json{{"epsilon", l.epsilon},
                              {"density", l.density},
                              {"trailing_density", l.trailing_density},
                              {"cumulative", cumulative}});
    }
    Json blocks = Json::array();
    for (const auto& b : rep.blocks) {
        blocks.push_back(Json{{"start", b.start},
                              {"end", b.end},
                              {"epsilon", b.epsilon},
                              {"excised_fraction", b.excised_fraction}});
    }
    Json excised = Json::array();
    constexpr std::size_t kMaxIntervals = 200;
    for (std::size_t k = 0; k < rep.excised.size() && k < kMaxIntervals; ++k) {
        excised.push_back({rep.excised[k].lo, rep.excised[k].hi});
    }
    return Json{{"verdict", to_string(rep.verdict)},
                {"m_density", rep.m_density},
                {"levels", levels},
                {"blocks", blocks},
                {"excised_interval_count", rep.excised.size()},
                {"excised_intervals", excised},
                {"provenance",
                 {{"observation", 0},
                  {"epsilon_ladder", rep.epsilon_ladder},
                  {"density_tol", rep.density_tol},
                  {"horizon", rep.horizon},
                  {"dt", ctx.cfg.dt},
                  {"excised_intervals_listed", std::min(rep.excised.size(), kMaxIntervals)}}}};
}

Json analysis_rajchman(Context& ctx) {
    require_kind(ctx, "multiplication", "rajchman");
    const auto grid = TimeGrid::from_horizon(ctx.cfg.horizon, ctx.cfg.dt);
    RajchmanOptions opts;
    opts.adversarial_probes = ctx.cfg.adversarial_probes;
    const double window = ctx.cfg.horizon / 20.0;
    const auto rep = rajchman_diagnostic(*ctx.scenario.measure, grid, window, opts);
    Json windows = Json::array();
    for (const auto& w : rep.windows) {
        windows.push_back(Json{{"start", w.start}, {"end", w.end}, {"sup", w.sup}});
    }
    Json probes = Json::array();
    for (const auto& [t, v] : rep.probe_values) {
        probes.push_back(Json{{"t", t}, {"abs", v}});
    }
    return Json{{"verdict", to_string(rep.verdict)},
                {"trailing_sup", rep.trailing_sup},
                {"probe_max", rep.probe_max},
                {"trend_slope", rep.trend_slope},
                {"windows", windows},
                {"probe_values", probes},
                {"provenance",
                 {{"horizon", rep.horizon},
                  {"dt", grid.dt()},
                  {"window", window},
                  {"vanish_tol", opts.vanish_tol},
                  {"trailing_fraction", opts.trailing_fraction}}}};
}

Json analysis_wiener(Context& ctx) {
    require_kind(ctx, "multiplication", "wiener");
    const auto w = wiener_average(*ctx.scenario.measure, ctx.cfg.horizon);
    return Json{{"value", w.value},
                {"atom_mass_square_sum", w.limit},
                {"provenance", {{"horizon", w.horizon}, {"dt", w.dt}}}};
}

Json analysis_jgdl(Context& ctx) {
    require_kind(ctx, "matrix", "jgdl");
    const auto split = jgdl_split(*ctx.scenario.generator);
    return Json{{"dim_reversible", split.basis_r.cols()},
                {"dim_stable", split.basis_s.cols()},
                {"imaginary_eigenvalues", complex_list(split.imaginary_eigenvalues)},
                {"projection_idempotence_error",
                 linalg::operator_norm(split.proj_r * split.proj_r - split.proj_r)},
                {"provenance", {{"tolerance", split.tolerance}}}};
}

Json analysis_foguel(Context& ctx) {
    require_kind(ctx, "matrix", "foguel");
    const auto split = foguel_split(*ctx.scenario.generator);
    const FoguelOptions opts;
    return Json{{"dim_w", split.basis_w.cols()},
                {"dim_w_perp", split.basis_w_perp.cols()},
                {"iterations", split.iterations},
                {"smallest_retained_singular_value", split.smallest_retained_singular_value},
                {"near_degenerate", split.near_degenerate},
                {"provenance",
                 {{"cutoff", opts.cutoff},
                  {"contractive_tol", opts.contractive_tol},
                  {"degenerate_gap", opts.degenerate_gap}}}};
}

Json analysis_mean_ergodic(Context& ctx) {
    require_kind(ctx, "matrix", "mean_ergodic");
    std::vector<double> horizons{50.0, 100.0, 200.0};
    if (ctx.config.contains("mean_ergodic_horizons")) {
        horizons.clear();
        for (const auto& h : ctx.config["mean_ergodic_horizons"]) {
            horizons.push_back(number_field(Json{{"h", h}}, "h"));
        }
    }
    Json runs = Json::array();
    for (double h : horizons) {
        const auto p = mean_ergodic_projection(*ctx.scenario.generator, h);
        runs.push_back(Json{{"horizon", p.horizon},
                            {"dt", p.dt},
                            {"deviation", p.deviation},
                            {"deviation_times_horizon", p.deviation * p.horizon}});
    }
    const auto p = mean_ergodic_projection(*ctx.scenario.generator, horizons.back());
    return Json{{"projection", matrix_to_json(p.exact)},
                {"runs", runs},
                {"provenance", {{"horizons", horizons}, {"quadrature", "trapezoid"}}}};
}

Json analysis_cogenerator(Context& ctx) {
    require_kind(ctx, "matrix", "cogenerator");
    const auto& gen = *ctx.scenario.generator;
    const auto g = cogenerator_of(gen);
    std::vector<Complex> mapped;
    double mapping_error = 0.0;
    auto geig = g.eigenvalues();
    for (auto lambda : gen.eigenvalues()) {
        const Complex m = cayley_image(lambda);
        mapped.push_back(m);
        double best = std::numeric_limits<double>::infinity();
        for (auto mu : geig) {
            best = std::min(best, std::abs(mu - m));
        }
        mapping_error = std::max(mapping_error, best);
    }
    Json out{{"norm", g.norm()},
             {"eigenvalues", complex_list(geig)},
             {"cayley_images", complex_list(mapped)},
             {"spectral_mapping_error", mapping_error}};
    if (!ctx.observations.empty()) {
        const auto cmp = compare_strong_limits(gen, ctx.observations.front().first);
        out["strong_limits"] = Json{{"semigroup_limit", cmp.semigroup_limit},
                                    {"t_star", cmp.t_star},
                                    {"cogenerator_limit", cmp.cogenerator_limit},
                                    {"n_star", cmp.n_star},
                                    {"semigroup_converged", cmp.semigroup_converged},
                                    {"cogenerator_converged", cmp.cogenerator_converged},
                                    {"difference", std::abs(cmp.semigroup_limit -
                                                            cmp.cogenerator_limit)}};
    }
    out["provenance"] = Json{{"plateau_tol", 1e-6}, {"observation", 0}};
    return out;
}

Json analysis_plancherel(Context& ctx) {
    if (!ctx.scenario.backend) {
        throw ValidationError("analysis 'plancherel' needs a matrix or multiplication scenario");
    }
    const ResolventProbe probe(*ctx.scenario.backend);
    Json runs = Json::array();
    for (const auto& [x, y] : ctx.observations) {
        for (double a : {1.0, 0.1}) {
            const auto p = plancherel_check(probe, x, y, a, 15.0 / a);
            runs.push_back(Json{{"a", a},
                                {"lhs", p.lhs},
                                {"rhs", p.rhs},
                                {"rel_error", p.rel_error},
                                {"horizon", p.horizon},
                                {"dt", p.dt}});
        }
    }
    return Json{{"runs", runs},
                {"provenance",
                 {{"s_max", probe.s_max()},
                  {"quadrature_tol", probe.quadrature_tol},
                  {"time_rule", "trapezoid"},
                  {"observations", "normalized pairs, in order"}}}};
}

Json analysis_chill_tomilov(Context& ctx) {
    if (!ctx.scenario.backend) {
        throw ValidationError("analysis 'chill_tomilov' needs a matrix or multiplication scenario");
    }
    const ResolventProbe probe(*ctx.scenario.backend);
    const auto& [x, y] = ctx.observations.front();
    const ChillTomilovOptions opts;
    const auto r = chill_tomilov_integrals(probe, x, y, opts);
    std::ostringstream csv;
    csv << "a,integral,a_times_integral\n" << std::setprecision(12);
    for (std::size_t k = 0; k < r.a.size(); ++k) {
        csv << r.a[k] << ',' << r.integral[k] << ',' << r.a_times_integral[k] << '\n';
    }
    ctx.artifacts.tables.emplace_back("chill_tomilov.csv", csv.str());
    return Json{{"double_integral", r.double_integral},
                {"nonincreasing", r.nonincreasing},
                {"a_times_integral_limit", limit_to_json(r.limit)},
                {"s0", r.s0},
                {"curve_file", "signals/chill_tomilov.csv"},
                {"provenance",
                 {{"a_min", opts.a_min},
                  {"a_max", opts.a_max},
                  {"points", opts.points},
                  {"s_max", probe.s_max()},
                  {"observation", 0}}}};
}

Json analysis_inverse_laplace(Context& ctx) {
    if (!ctx.scenario.backend) {
        throw ValidationError("analysis 'inverse_laplace' needs a matrix or multiplication scenario");
    }
    const ResolventProbe probe(*ctx.scenario.backend);
    const auto& [x, y] = ctx.observations.front();
    Json runs = Json::array();
    for (double t : {1.0, 2.0, 5.0}) {
        const auto r = inverse_laplace_orbit(probe, x, y, t);
        runs.push_back(Json{{"t", t},
                            {"value", complex_to_json(r.value)},
                            {"direct", complex_to_json(*r.direct)},
                            {"abs_error", r.abs_error},
                            {"envelope", inverse_laplace_envelope(probe, x, y, t)},
                            {"a", r.a},
                            {"ds", r.ds},
                            {"s_max", r.s_max}});
    }
    return Json{{"runs", runs}, {"provenance", {{"a_choice", "1/t"}, {"observation", 0}}}};
}

Json analysis_relatively_dense(Context& ctx) {
    if (!ctx.scenario.backend) {
        throw ValidationError("analysis 'relatively_dense' needs a matrix or multiplication scenario");
    }
    const auto& [x, y] = ctx.observations.front();
    std::vector<double> seq;
    for (double t = 1.0; t <= ctx.cfg.horizon + 1.0; t += 1.0) {
        seq.push_back(t);
    }
    const Interval window{0.9 * ctx.cfg.horizon, ctx.cfg.horizon};
    const auto r = relatively_dense_check(*ctx.scenario.backend, x, y, seq, 1.0, window, ctx.cfg.dt);
    return Json{{"sequence_max", r.sequence_max},
                {"orbit_max", r.orbit_max},
                {"envelope", r.envelope},
                {"state_bound", r.state_bound},
                {"hypothesis_holds", r.hypothesis_holds},
                {"conclusion_holds", r.conclusion_holds},
                {"message", r.message},
                {"provenance",
                 {{"sequence", "t_n = n"},
                  {"ell", r.ell},
                  {"window", {window.lo, window.hi}},
                  {"tol", r.tol},
                  {"observation", 0}}}};
}

IntervalSet interval_set_from_json(const Json& j, const char* name) {
    IntervalSet s;
    if (!j.is_array()) {
        throw ValidationError(std::string("mixing: ") + name + " must be a list of [lo, hi]");
    }
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2) {
            throw ValidationError(std::string("mixing: ") + name + " must be a list of [lo, hi]");
        }
        s.parts.push_back({number_field(Json{{"v", p[0]}}, "v"), number_field(Json{{"v", p[1]}}, "v")});
    }
    return s;
}

Json analysis_mixing(Context& ctx) {
    require_kind(ctx, "koopman", "mixing");
    const Json m = ctx.config.value("mixing", Json::object());
    const auto a_set = interval_set_from_json(m.value("A", Json::array({Json::array({0.0, 0.5})})), "A");
    const auto b_set = interval_set_from_json(m.value("B", Json::array({Json::array({0.0, 0.5})})), "B");
    const double tol = number_field(m, "tol", 0.01);
    MonteCarloSampler sampler;
    sampler.seed = ctx.config.value("seed", std::uint64_t{0});
    sampler.budget = static_cast<std::size_t>(number_field(m, "budget", 100000.0));
    const auto grid = TimeGrid::from_horizon(ctx.cfg.horizon, ctx.cfg.dt);
    auto res = mixing_cesaro(*ctx.scenario.flow, a_set, b_set, grid, sampler, tol);
    const bool exact = mixing_correlation(*ctx.scenario.flow, a_set, b_set, 0.0, sampler).exact;
    Json out{{"cesaro_abs_mean", res.cesaro_abs_mean},
             {"weakly_mixing_evidence", res.weakly_mixing_evidence},
             {"statement", res.weakly_mixing_evidence ? "weakly mixing evidence" : "not weakly mixing"},
             {"exact_path", exact},
             {"signal_file", "signals/mixing.csv"},
             {"provenance",
              {{"horizon", grid.t_max()},
               {"dt", grid.dt()},
               {"tol", tol},
               {"A", m.value("A", Json::array({Json::array({0.0, 0.5})}))},
               {"B", m.value("B", Json::array({Json::array({0.0, 0.5})}))},
               {"seed", sampler.seed},
               {"budget", sampler.budget}}}};
    ctx.artifacts.signals.push_back(
        {"mixing", "mixing correlation", std::move(res.correlation), std::move(res.running_abs_mean)});
    return out;
}

} // namespace

AnalysisArtifacts analyze(const Json& config) {
    if (!config.is_object()) {
        throw ValidationError("config: expected a JSON object");
    }
    if (!config.contains("scenario")) {
        throw ValidationError("config: missing 'scenario'");
    }
    const std::uint64_t seed = config.value("seed", std::uint64_t{0});
    Scenario scenario = build_scenario(config["scenario"]);
    const ClassifyConfig cfg = classify_config(config);

    AnalysisArtifacts artifacts;
    Json& report = artifacts.report;
    report["schema_version"] = kSchemaVersion;
    report["tool"] = "semistab";
    report["config"] = config;
    report["config"].erase("output_dir");

    Context ctx{config, scenario, cfg, {}, std::nullopt, artifacts};
    StabilityReport stab;
    if (scenario.kind == "koopman") {
        stab = classify_koopman(*scenario.flow, {{*scenario.observable, scenario.x0}}, cfg);
    } else {
        const auto dim = scenario.backend->dim();
        Json obs = config.value("observations", Json::array());
        if (obs.empty()) {
            obs = Json::array({{{"x", scenario.kind == "matrix" ? "random" : "ones"},
                                {"y", scenario.kind == "matrix" ? "random" : "ones"}}});
        }
        std::size_t idx = 0;
        for (const auto& o : obs) {
            if (!o.is_object() || !o.contains("x") || !o.contains("y")) {
                throw ValidationError("config: each observation needs 'x' and 'y'");
            }
            const ComplexVector x = vector_from_json(o["x"], dim, seed * 1000 + 2 * idx);
            const ComplexVector y = vector_from_json(o["y"], dim, seed * 1000 + 2 * idx + 1);
            const double nx = scenario.backend->state_norm(x);
            const double ny = scenario.backend->state_norm(y);
            if (!(nx > 0.0) || !(ny > 0.0)) {
                throw ValidationError("config: observation vectors must be nonzero");
            }
            ctx.observations.emplace_back(x / nx, y / ny);
            ++idx;
        }
        stab = classify(*scenario.backend, ctx.observations, cfg);
    }

    Json obs_json = Json::array();
    for (std::size_t k = 0; k < stab.observations.size(); ++k) {
        const auto& o = stab.observations[k];
        Json oj = observation_to_json(o);
        oj["signal_file"] = "signals/obs" + std::to_string(k) + ".csv";
        obs_json.push_back(std::move(oj));
        artifacts.signals.push_back({"obs" + std::to_string(k), "observation " + std::to_string(k),
                                     *o.orbit, *o.running_mean});
    }
    if (!stab.observations.empty()) {
        ctx.first_orbit = *stab.observations.front().orbit;
    }
    report["stability"] = Json{
        {"verdict", to_string(stab.verdict)},
        {"criteria",
         {{"cesaro_abs_tail", stab.cesaro_abs_tail},
          {"abel_square_tail", stab.abel_square_tail},
          {"pointwise_abel_max", stab.pointwise_abel_max},
          {"imaginary_eigen_count", stab.imaginary_eigen_count},
          {"imaginary_eigenvalues", complex_list(stab.imaginary_eigenvalues)},
          {"recurrence_floor", stab.recurrence_floor}}},
        {"observations", obs_json},
        {"provenance", classify_config_to_json(cfg)}};

    Json analyses = Json::object();
    for (const auto& a : config.value("analyses", Json::array())) {
        if (!a.is_string()) {
            throw ValidationError("config: analyses must be strings");
        }
        const auto name = a.get<std::string>();
        if (name == "density") {
            analyses[name] = analysis_density(ctx);
        } else if (name == "rajchman") {
            analyses[name] = analysis_rajchman(ctx);
        } else if (name == "wiener") {
            analyses[name] = analysis_wiener(ctx);
        } else if (name == "jgdl") {
            analyses[name] = analysis_jgdl(ctx);
        } else if (name == "foguel") {
            analyses[name] = analysis_foguel(ctx);
        } else if (name == "mean_ergodic") {
            analyses[name] = analysis_mean_ergodic(ctx);
        } else if (name == "cogenerator") {
            analyses[name] = analysis_cogenerator(ctx);
        } else if (name == "plancherel") {
            analyses[name] = analysis_plancherel(ctx);
        } else if (name == "chill_tomilov") {
            analyses[name] = analysis_chill_tomilov(ctx);
        } else if (name == "inverse_laplace") {
            analyses[name] = analysis_inverse_laplace(ctx);
        } else if (name == "relatively_dense") {
            analyses[name] = analysis_relatively_dense(ctx);
        } else if (name == "mixing") {
            analyses[name] = analysis_mixing(ctx);
        } else {
            throw ValidationError("config: unknown analysis '" + name + "'");
        }
    }
    report["analyses"] = analyses;
    return artifacts;
}

void write_artifacts(const AnalysisArtifacts& artifacts, const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir / "signals");
    fs::create_directories(out_dir / "plots");
    Json report = artifacts.report;
    Json files = Json::array();
    for (const auto& s : artifacts.signals) {
        const auto info = write_signal_csv(out_dir / "signals" / (s.stem + ".csv"), s.values, s.running);
        write_plot_script(out_dir / "plots" / (s.stem + ".gp"), "signals/" + info.file, s.title);
        files.push_back(Json{{"csv", "signals/" + info.file},
                             {"plot", "plots/" + s.stem + ".gp"},
                             {"stride", info.stride},
                             {"rows", info.rows},
                             {"columns", {"t", "re", "im", "abs", "running_mean"}}});
    }
    for (const auto& [name, contents] : artifacts.tables) {
        std::ofstream out(out_dir / "signals" / name);
        out << contents;
        files.push_back(Json{{"csv", "signals/" + name}});
    }
    report["files"] = files;
    std::ofstream out(out_dir / "report.json");
    if (!out) {
        throw ValidationError("cannot write " + (out_dir / "report.json").string());
    }
    out << std::setprecision(17) << report.dump(2) << '\n';
}

int run_analyze(const Json& config, const std::filesystem::path& out_dir, std::ostream& out,
                std::ostream& err) {
    try {
        const auto artifacts = analyze(config);
        write_artifacts(artifacts, out_dir);
        out << "verdict: " << artifacts.report["stability"]["verdict"].get<std::string>() << "\n"
            << "report:  " << (out_dir / "report.json").string() << "\n";
        return 0;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        err << "error: malformed config: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace semistab::app
