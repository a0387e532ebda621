#include "uq2/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "uq2/checks.hpp"
#include "uq2/commutant.hpp"
#include "uq2/dirac.hpp"
#include "uq2/ncindex.hpp"
#include "uq2/report.hpp"
#include "uq2/rewrite.hpp"

namespace uq2 {

namespace {

// Thrown for configuration values that parse but make no sense; maps to the
// usage exit code like a malformed flag.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    double q_modulus = 0.5;
    double q_theta = 0.41421356237309503;
    int n_cut = 40;
    int z_cut = 40;
    int margin = 2;
    double tol = 1e-10;
    std::uint64_t seed = 20240601;
    std::string format = "json";
    std::string output;
    bool timings = false;
};

Json monomial_json(const BasisMonomial& b) { return Json::array({b.n, b.m, b.k, b.l}); }

Json complex_json(cplx c) { return Json::array({c.real(), c.imag()}); }

Json element_json(const AlgebraElement& x) {
    Json terms = Json::array();
    for (const auto& [b, c] : x.terms())
        terms.push_back(Json{{"monomial", monomial_json(b)}, {"coefficient", complex_json(c)}});
    return terms;
}

Json site_json(const Site& s) { return Json::array({s.i, s.j, s.k}); }

Json grid_json(const TruncGrid& g) {
    return Json{{"n_cut", g.n_cut}, {"z_cut", g.z_cut}, {"interior_margin", g.interior_margin}};
}

BasisMonomial parse_monomial(const std::string& text) {
    std::stringstream ss(text);
    std::string part;
    std::vector<int> v;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoi(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ConfigError("monomial must be four integers n,m,k,l");
        }
    }
    if (v.size() != 4) throw ConfigError("monomial must be four integers n,m,k,l");
    if (v[1] < 0 || v[2] < 0) throw ConfigError("monomial b-degrees m and k must be non-negative");
    return {v[0], v[1], v[2], v[3]};
}

Character parse_character(const std::string& s) { return s == "phi" ? Character::phi : Character::psi; }

TruncGrid make_grid(int n, int z, int margin) {
    try {
        return TruncGrid(n, z, margin);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

// Seeded points on the torus T^3, as phases exp(2 pi i u).
std::vector<std::array<cplx, 3>> torus_points(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::array<cplx, 3>> pts;
    for (int t = 0; t < count; ++t) {
        const double a = u(rng), b = u(rng), c = u(rng);
        pts.push_back({unit_phase(a), unit_phase(b), unit_phase(c)});
    }
    return pts;
}

struct Context {
    RunConfig cfg;
    QParam q;
    Report report;
    bool pass = true;
    CLI::App* root = nullptr;
    CLI::App* sub = nullptr;

    bool given(const std::string& flag) const;
    void check(bool ok) { pass = pass && ok; }
};

bool Context::given(const std::string& flag) const {
    if (sub) {
        if (auto* o = sub->get_option_no_throw(flag); o && o->count() > 0) return true;
    }
    if (root) {
        if (auto* o = root->get_option_no_throw(flag); o && o->count() > 0) return true;
    }
    return false;
}

void cmd_relations(Context& ctx, int samples) {
    const TruncGrid grid = make_grid(ctx.cfg.n_cut, ctx.cfg.z_cut, ctx.cfg.margin);
    const GeneratorSet gens = build_generators(ctx.q, grid);
    Json rel = Json::object();
    double worst = 0;
    for (const auto& r : relation_residuals(gens)) {
        rel[r.name] = r.residual;
        worst = std::max(worst, r.residual);
    }
    const DiracSpec spec = build_dirac(grid);
    double cov = 0, eq = 0;
    for (const auto& z : torus_points(ctx.cfg.seed, samples)) {
        cov = std::max(cov, covariance_residual(z[0], z[1], z[2], gens));
        eq = std::max(eq, equivariance_check(spec, z[0], z[1], z[2]));
    }
    Json dropped = Json::object();
    for (Generator g : kAllGenerators)
        dropped[generator_name(g)] = gens.dropped[static_cast<std::size_t>(g)];
    auto& res = ctx.report.results;
    res["grid"] = grid_json(grid);
    res["relations"] = rel;
    res["relation_max"] = worst;
    res["covariance_max"] = cov;
    res["equivariance_max"] = eq;
    res["torus_points"] = samples;
    res["dropped_images"] = dropped;
    const bool ok = worst <= ctx.cfg.tol && cov <= 1e-12 && eq <= 1e-12;
    res["pass"] = ok;
    ctx.check(ok);
}

void cmd_hopf(Context& ctx, int samples, int degree) {
    const HopfSuite s = hopf_suite(ctx.q, ctx.cfg.seed, static_cast<std::size_t>(samples), degree);
    auto residual_json = [](const HopfResiduals& r) {
        return Json{{"coassociativity", r.coassociativity}, {"counit_left", r.counit_left},
                    {"counit_right", r.counit_right},       {"antipode_left", r.antipode_left},
                    {"antipode_right", r.antipode_right},   {"star_coproduct", r.star_coproduct},
                    {"star_product_relative", r.star_product}, {"associativity_relative", r.associativity},
                    {"involution", r.involution}};
    };
    Json gens = Json::object();
    const char* names[] = {"a", "a*", "b", "b*", "D", "D*"};
    for (std::size_t g = 0; g < s.generators.size(); ++g) gens[names[g]] = residual_json(s.generators[g]);

    // the letter rewriter is an independent route to the same products
    std::mt19937_64 rng(ctx.cfg.seed ^ 0x5bd1e995ULL);
    double rewrite_gap = 0;
    bool terminated = true;
    for (int t = 0; t < samples; ++t) {
        const BasisMonomial x = random_monomial(rng, degree), y = random_monomial(rng, degree);
        Word w = word_of(x);
        const Word wy = word_of(y);
        w.insert(w.end(), wy.begin(), wy.end());
        const RewriteResult r = normal_order(ctx.q, w);
        const AlgebraElement direct = multiply_monomials(ctx.q, x, y);
        rewrite_gap = std::max(rewrite_gap, (r.value - direct).norm1() / std::max(1.0, direct.norm1()));
        terminated = terminated && r.measure_decreased && r.steps < rewrite_step_bound(w);
    }

    auto& res = ctx.report.results;
    res["samples"] = samples;
    res["max_degree"] = degree;
    res["worst"] = residual_json(s.worst);
    res["generators"] = gens;
    res["rewrite_vs_closed_form_relative"] = rewrite_gap;
    res["rewrite_terminated_within_bound"] = terminated;
    const bool ok = s.worst.max() <= ctx.cfg.tol && rewrite_gap <= ctx.cfg.tol && terminated;
    res["pass"] = ok;
    ctx.check(ok);
}

void cmd_haar(Context& ctx, int box, int i_max, int samples, int degree, const std::string& monomial) {
    auto& res = ctx.report.results;
    if (!monomial.empty()) {
        const AlgebraElement x(parse_monomial(monomial));
        const HaarNumeric num = haar_numeric(ctx.q, x, i_max);
        const cplx closed = haar(ctx.q, x);
        res["monomial"] = monomial_json(x.terms().begin()->first);
        res["closed_form"] = complex_json(closed);
        res["series"] = complex_json(num.value);
        res["series_tail_bound"] = num.tail_bound;
        res["difference"] = std::abs(closed - num.value);
    }
    const HaarSuite s = haar_suite(ctx.q, box, i_max, ctx.cfg.seed, static_cast<std::size_t>(samples), degree);
    res["box"] = box;
    res["i_max"] = i_max;
    res["monomials_compared"] = s.monomials;
    res["closed_vs_series_max"] = s.closed_vs_numeric;
    res["series_tail_bound_max"] = s.tail_bound;
    res["invariance_samples"] = s.samples;
    res["invariance_max"] = s.invariance;
    res["positivity_min"] = s.min_positivity;
    const bool ok = s.closed_vs_numeric <= ctx.cfg.tol && s.invariance <= ctx.cfg.tol && s.min_positivity > 0 &&
                    (!res.contains("difference") || res["difference"].get<double>() <= ctx.cfg.tol);
    res["pass"] = ok;
    ctx.check(ok);
}

void cmd_expect(Context& ctx, const std::string& which_s, const std::string& monomial, int samples, int degree) {
    const Character which = parse_character(which_s);
    const AlgebraElement x(parse_monomial(monomial));
    const ExpectationResult e = expectation(ctx.q, x, which);
    const ExpectationSuite s = expectation_suite(ctx.q, which, ctx.cfg.seed, static_cast<std::size_t>(samples), degree);
    auto& res = ctx.report.results;
    res["which"] = which_s;
    res["input"] = monomial_json(x.terms().begin()->first);
    res["coproduct_route"] = element_json(e.value);
    res["closed_form"] = element_json(e.closed_form);
    res["discrepancy"] = e.discrepancy;
    res["suite"] = Json{{"samples", s.samples},
                        {"route_discrepancy_max", s.route_discrepancy},
                        {"idempotence_max", s.idempotence},
                        {"bimodule_max", s.bimodule}};
    const bool ok = e.discrepancy <= kExpectationRouteTolerance && s.route_discrepancy <= kExpectationRouteTolerance &&
                    s.idempotence <= ctx.cfg.tol && s.bimodule <= ctx.cfg.tol;
    if (e.discrepancy > kExpectationRouteTolerance)
        ctx.report.warnings.push_back("expectation routes disagree on the input monomial");
    res["pass"] = ok;
    ctx.check(ok);
}

Json probe_json(const ProbeReport& p) {
    const double rel = std::abs(p.rayleigh_value - p.closed_form_value) / std::max(1e-300, std::abs(p.closed_form_value));
    return Json{{"n", p.n},
                {"rayleigh_value", p.rayleigh_value},
                {"closed_form_value", p.closed_form_value},
                {"relative_error", p.closed_form_value == 0.0 ? std::abs(p.rayleigh_value) : rel},
                {"bound_c", p.bound_c},
                {"bound_numeric", p.bound_numeric},
                {"grid", grid_json(p.grid)}};
}

void cmd_watatani(Context& ctx, const std::string& which_s, int n, bool sweep) {
    if (n < 1) throw ConfigError("--n must be at least 1");
    const Character which = parse_character(which_s);
    auto& res = ctx.report.results;
    res["which"] = which_s;
    bool ok = true;
    auto check_one = [&](const ProbeReport& p) {
        const Json j = probe_json(p);
        ok = ok && j["relative_error"].get<double>() <= 1e-9 && p.bound_c == watatani_bound_formula(p.n, which);
        return j;
    };
    const ProbeReport p = watatani_probe(ctx.q, n, which);
    res["probe"] = check_one(p);
    if (sweep) {
        Json rows = Json::array();
        double prev = 2.0;
        bool decreasing = true;
        for (int k = 1; k <= n; ++k) {
            const ProbeReport pk = watatani_probe(ctx.q, k, which);
            decreasing = decreasing && pk.bound_c < prev;
            prev = pk.bound_c;
            rows.push_back(check_one(pk));
        }
        res["sweep"] = rows;
        res["bound_strictly_decreasing"] = decreasing;
        ok = ok && decreasing;
    }
    res["pass"] = ok;
    ctx.check(ok);
}

void cmd_spectrum(Context& ctx, double lambda_max) {
    if (!(lambda_max > 1.0)) throw ConfigError("--lambda-max must exceed 1");
    const int need = static_cast<int>(std::ceil(2.0 * lambda_max));
    int n = ctx.cfg.n_cut, z = ctx.cfg.z_cut;
    if (!ctx.given("--n-cut") && !ctx.given("--z-cut")) {
        n = z = need;
        ctx.report.warnings.push_back("grid chosen automatically as (" + std::to_string(n) + "," + std::to_string(z) +
                                      ") so the counting ball fits");
    }
    const TruncGrid grid = make_grid(n, z, std::min(ctx.cfg.margin, std::min(n, z) - 1));
    SummabilityReport s;
    try {
        s = summability_report(lambda_max, grid);
    } catch (const std::out_of_range& e) {
        throw ConfigError(e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    auto& res = ctx.report.results;
    res["grid"] = grid_json(grid);
    res["lambda_max"] = s.lambda_max;
    res["eigenvalues_counted"] = s.n_values;
    res["counting_slope"] = s.counting_slope;
    res["volume_ratio"] = s.volume_ratio;
    res["s_final"] = s.s_final;
    res["s_variation_last_decade"] = s.s_variation;
    Json controls = Json::array();
    bool controls_ok = true;
    for (const auto& c : s.controls) {
        controls.push_back(Json{{"exponent", c.exponent},
                                {"s_start", c.s_start},
                                {"s_end", c.s_end},
                                {"variation", c.variation}});
        if (c.exponent < 3.0) controls_ok = controls_ok && c.variation > 0.05 && c.s_end > c.s_start;
        if (c.exponent > 3.0) controls_ok = controls_ok && c.variation > 0.05 && c.s_end < c.s_start;
    }
    res["controls"] = controls;
    res["counting_samples"] = Json{{"0.5", counting_function(0.5, grid)}, {"1", counting_function(1.0, grid)}};
    const bool ok = s.counting_slope >= 2.9 && s.counting_slope <= 3.1 && std::abs(s.volume_ratio - 1.0) <= 0.1 &&
                    s.s_variation < 0.05 && controls_ok;
    res["controls_behave"] = controls_ok;
    res["pass"] = ok;
    ctx.check(ok);
}

void cmd_commutators(Context& ctx) {
    const TruncGrid grid = make_grid(ctx.cfg.n_cut, ctx.cfg.z_cut, ctx.cfg.margin);
    const GeneratorSet gens = build_generators(ctx.q, grid);
    const DiracSpec spec = build_dirac(grid);
    Json per = Json::object();
    double worst = 0;
    for (Generator g : kAllGenerators) {
        const double r = commutator_check(generator_element(g), gens, spec);
        per[generator_name(g)] = r;
        worst = std::max(worst, r);
    }
    const double leibniz = commutator_check(AlgebraElement(BasisMonomial{1, 1, 0, 0}), gens, spec);
    const BoundednessWitness w = commutator_b_sup(gens);
    auto& res = ctx.report.results;
    res["grid"] = grid_json(grid);
    res["generator_closed_form_gap"] = per;
    res["generator_gap_max"] = worst;
    res["leibniz_gap_<1,1,0,0>"] = leibniz;
    res["b_commutator_sup"] = Json{{"grid", w.grid_sup}, {"predicted", w.predicted_sup}};
    res["grading_anticommutator"] = grading_anticommutator_residual(spec);
    res["grading_commutator_b"] = grading_commutator_residual(gens.op(Generator::b));
    const bool ok = worst <= 1e-12 && leibniz <= 1e-10 && std::abs(w.grid_sup - w.predicted_sup) <= 1e-12 &&
                    res["grading_anticommutator"].get<double>() == 0.0;
    res["pass"] = ok;
    ctx.check(ok);
}

void cmd_kernel_scan(Context& ctx, int max_degree) {
    if (max_degree < 0 || max_degree > 4) throw ConfigError("--max-degree must lie in [0, 4]");
    const TruncGrid grid = make_grid(ctx.cfg.n_cut, ctx.cfg.z_cut, ctx.cfg.margin);
    const GeneratorSet gens = build_generators(ctx.q, grid);
    const DiracSpec spec = build_dirac(grid);
    const KernelScan scan = derivation_kernel_scan(max_degree, gens, spec);
    Json kernel = Json::array();
    for (const auto& b : scan.kernel) kernel.push_back(monomial_json(b));
    std::vector<BasisMonomial> expected;
    for (int j = 0; j <= max_degree; ++j) expected.push_back({0, j, j, 0});
    auto& res = ctx.report.results;
    res["grid"] = grid_json(grid);
    res["max_degree"] = max_degree;
    res["scanned"] = scan.all.size();
    res["kernel"] = kernel;
    res["min_norm_outside_kernel"] = scan.min_outside;
    res["argmin_outside_kernel"] = monomial_json(scan.argmin_outside);
    // diagnostic only: the pass criterion uses the absolute norm
    res["min_relative_norm_outside_kernel"] = scan.min_relative_outside;
    const bool exact = scan.kernel == expected;
    res["matches_b_bstar_family"] = exact;
    const bool ok = exact && scan.min_outside > 0.05;
    if (scan.min_outside <= 0.05)
        ctx.report.warnings.push_back("a monomial outside the kernel has commutator norm below 0.05; its weight decays "
                                      "like a power of |q| on the N leg");
    res["pass"] = ok;
    ctx.check(ok);
}

Json index_result_json(const IndexResult& r) {
    return Json{{"index", r.index},
                {"kernel", r.kernel},
                {"cokernel", r.cokernel},
                {"window", r.window},
                {"columns", r.columns},
                {"smallest_singular_values_A", r.kernel_singular_values},
                {"smallest_singular_values_A_adjoint", r.cokernel_singular_values},
                {"largest_counted_singular_value", r.gap_below},
                {"smallest_uncounted_singular_value", r.gap_above},
                {"idempotency_on_window", r.idempotency},
                {"indeterminate", r.indeterminate}};
}

void cmd_index(Context& ctx, const ProjectionSpec& base, double torus_theta, double sv_tol, int window, bool pairing) {
    ProjectionSpec spec = base;
    spec.theta = torus_theta >= 0 ? torus_theta : ctx.q.theta - std::floor(ctx.q.theta);
    if (!(spec.theta > 0.0 && spec.theta < 1.0) || spec.theta == 0.5)
        throw ConfigError("torus theta must lie in (0,1) and differ from 1/2");
    const int z = ctx.given("--z-cut") ? ctx.cfg.z_cut : 48;
    if (z < 8) throw ConfigError("index needs --z-cut >= 8");
    IndexOptions opts;
    opts.tol = sv_tol;
    opts.window = window;
    IndexReport rep;
    try {
        rep = index_report(spec, z, opts);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const TorusPair pair = build_torus(spec.theta, std::max(8, std::min(z, 16)));

    auto& res = ctx.report.results;
    res["theta"] = spec.theta;
    res["z_cut"] = z;
    res["theta_reduced"] = rep.theta_reduced;
    res["ramp_width"] = rep.eps;
    res["ramp_shape"] = spec.shape == RampShape::smooth ? "smooth" : "linear";
    res["reflected"] = rep.reflected;
    res["chern"] = Json{{"raw", rep.chern.raw},
                        {"orientation", rep.chern.orientation},
                        {"value", rep.chern.value},
                        {"rounded", rep.chern.rounded},
                        {"integer_distance", rep.chern.distance}};
    res["fredholm"] = index_result_json(rep.fredholm);
    res["fredholm_origin_minus_one"] = index_result_json(rep.fredholm_origin_flipped);
    res["origin_convention"] = rep.origin_convention;
    res["trace_fourier"] = rep.defects.trace;
    res["trace_matrix_window"] = rep.matrix_trace;
    res["trace_target"] = rep.theta_reduced;
    res["projection_defects"] = Json{{"idempotency_fourier_l1", rep.defects.idempotency},
                                     {"selfadjointness_fourier_l1", rep.defects.selfadjointness},
                                     {"identity_f", rep.defects.identity_f},
                                     {"identity_g", rep.defects.identity_g},
                                     {"identity_gg", rep.defects.identity_gg}};
    res["commutation_residual_u2u1_eq_exp_minus"] = rep.commutation_residual;
    res["commutation_residual_u2u1_eq_exp_plus"] = commutation_residual(pair, +1);
    bool ok = rep.consistent && std::abs(rep.defects.trace - rep.theta_reduced) <= 1e-3 &&
              std::abs(rep.matrix_trace - rep.theta_reduced) <= 1e-3;
    if (pairing) {
        const PairingCheck pc = pairing_operator_check(spec);
        res["pairing_operator"] = Json{{"grid", grid_json(pc.grid)},
                                       {"result", index_result_json(pc.result)},
                                       {"slice_deviation", pc.slice_deviation}};
        ok = ok && !pc.result.indeterminate && pc.result.index == rep.fredholm.index && pc.slice_deviation <= 1e-12;
    }
    if (rep.reflected)
        ctx.report.warnings.push_back("theta > 1/2: projection built from (u1, u2*) with trace 1 - theta");
    if (rep.fredholm.indeterminate) ctx.report.warnings.push_back("singular values cluster near the index tolerance");
    res["consistent"] = rep.consistent;
    res["pass"] = ok;
    ctx.check(ok);
}

void cmd_center(Context& ctx, int M, bool with_commutant) {
    if (M < 0) throw ConfigError("--M must be non-negative");
    const int n = ctx.given("--n-cut") ? ctx.cfg.n_cut : 10;
    const int z = ctx.given("--z-cut") ? ctx.cfg.z_cut : 10;
    const TruncGrid grid = make_grid(n, z, std::min(ctx.cfg.margin, std::min(n, z) - 1));
    const CenterReport rep = center_probe(ctx.q, grid, M);
    Json blocks = Json::array();
    for (const auto& b : rep.blocks) {
        if (b.kernel == 0) continue;
        blocks.push_back(Json{{"shift", site_json(b.shift)},
                              {"monomials", b.monomials},
                              {"kernel", b.kernel},
                              {"singular_values", b.singular_values}});
    }
    Json support = Json::array();
    for (const auto& b : rep.central_support) support.push_back(monomial_json(b));
    auto& res = ctx.report.results;
    res["grid"] = grid_json(grid);
    res["M"] = M;
    res["dimension"] = rep.dimension;
    res["blocks_examined"] = rep.blocks.size();
    res["blocks_with_kernel"] = blocks;
    res["central_support"] = support;
    res["rank_threshold"] = kCenterRankThreshold;
    bool ok = rep.dimension >= 1;
    if (with_commutant) {
        const TruncGrid small = make_grid(3, 2, 0);
        const GeneratorSet gens = build_generators(ctx.q, small);
        const auto basis = commutant_solve(gens);
        double worst = 0;
        for (const auto& sol : basis) worst = std::max(worst, structure_residuals(sol, ctx.q).max());
        res["commutant"] = Json{{"grid", grid_json(small)},
                                {"dimension", basis.size()},
                                {"structure_residual_max", worst}};
        ok = ok && worst <= 1e-8;
    }
    res["pass"] = ok;
    ctx.check(ok);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    Context ctx;
    RunConfig& cfg = ctx.cfg;

    CLI::App app{"Computations on the quantum group U_q(2): Hopf algebra, representation, Dirac operator, index pairing",
                 "uq2"};
    ctx.root = &app;
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--q-modulus", cfg.q_modulus, "|q|, in (0,1)");
    app.add_option("--q-theta", cfg.q_theta, "arg(q)/pi");
    app.add_option("--n-cut", cfg.n_cut, "sites 0..n_cut-1 on the N leg");
    app.add_option("--z-cut", cfg.z_cut, "sites -z_cut..z_cut on each Z leg");
    app.add_option("--margin", cfg.margin, "interior margin");
    app.add_option("--tol", cfg.tol, "pass tolerance for residuals");
    app.add_option("--seed", cfg.seed, "seed for every random sample");
    app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", cfg.output, "write the report here instead of stdout");
    app.add_flag("--timings", cfg.timings, "add wall-clock timings (breaks byte-for-byte determinism)");

    int samples_rel = 20;
    auto* s_rel = app.add_subcommand("relations", "defining relations, covariance and equivariance on the grid");
    s_rel->add_option("--samples", samples_rel, "random torus points");

    int hopf_samples = 200, hopf_degree = 3;
    auto* s_hopf = app.add_subcommand("hopf-check", "Hopf *-algebra axioms on seeded random elements");
    s_hopf->add_option("--samples", hopf_samples);
    s_hopf->add_option("--degree", hopf_degree);

    int haar_box = 4, haar_imax = 80, haar_samples = 50, haar_degree = 3;
    std::string haar_monomial;
    auto* s_haar = app.add_subcommand("haar", "Haar state closed form against the truncated series");
    s_haar->add_option("--box", haar_box);
    s_haar->add_option("--i-max", haar_imax);
    s_haar->add_option("--samples", haar_samples);
    s_haar->add_option("--degree", haar_degree);
    s_haar->add_option("--monomial", haar_monomial, "n,m,k,l");

    std::string exp_which = "phi", exp_monomial = "2,1,3,0";
    int exp_samples = 30, exp_degree = 3;
    auto* s_exp = app.add_subcommand("expect", "conditional expectation through the coproduct and in closed form");
    s_exp->add_option("--which", exp_which)->check(CLI::IsMember({"phi", "psi"}));
    s_exp->add_option("--monomial", exp_monomial, "n,m,k,l");
    s_exp->add_option("--samples", exp_samples);
    s_exp->add_option("--degree", exp_degree);

    std::string wat_which = "phi";
    int wat_n = 10;
    bool wat_sweep = false;
    auto* s_wat = app.add_subcommand("watatani", "Rayleigh-quotient probe of the Pimsner-Popa constant");
    s_wat->add_option("--which", wat_which)->check(CLI::IsMember({"phi", "psi"}));
    s_wat->add_option("--n", wat_n);
    s_wat->add_flag("--sweep", wat_sweep, "also report n = 1..n");

    double lambda_max = 60.0;
    auto* s_spec = app.add_subcommand("spectrum", "eigenvalue counting and partial-sum summability diagnostics");
    s_spec->add_option("--lambda-max", lambda_max);

    app.add_subcommand("commutators", "[T, pi(g)] against closed forms");

    int scan_degree = 3;
    auto* s_scan = app.add_subcommand("kernel-scan", "monomials whose commutator with T vanishes");
    s_scan->add_option("--max-degree", scan_degree);

    ProjectionSpec pspec;
    double torus_theta = -1.0, sv_tol = 0.1;
    int window = -1;
    bool no_pairing = false;
    std::string shape = "smooth";
    auto* s_idx = app.add_subcommand("index", "Chern number and Fredholm index of the torus pairing");
    s_idx->add_option("--torus-theta", torus_theta, "defaults to q-theta mod 1");
    s_idx->add_option("--ramp-width", pspec.ramp_width, "0 selects half the reduced theta");
    s_idx->add_option("--quadrature-points", pspec.quadrature_points);
    s_idx->add_option("--fourier-cutoff", pspec.fourier_cutoff);
    s_idx->add_option("--shape", shape)->check(CLI::IsMember({"smooth", "linear"}));
    s_idx->add_option("--sv-tol", sv_tol, "singular values below this count as zero");
    s_idx->add_option("--window", window, "column window radius, -1 for automatic");
    s_idx->add_flag("--no-pairing", no_pairing, "skip the pairing operator on the three-leg grid");

    int center_M = 2;
    bool with_commutant = false;
    auto* s_center = app.add_subcommand("center-probe", "commutant intersected with represented monomials");
    s_center->add_option("--M", center_M);
    s_center->add_flag("--commutant", with_commutant, "also solve the full commutant on grid (3,2)");

    std::vector<std::string> argv_store{"uq2"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "uq2: " << e.what() << "\n" << "run 'uq2 --help' for usage\n";
        return kExitUsage;
    }

    int code = kExitPass;
    try {
        try {
            ctx.q = make_qparam(cfg.q_modulus, cfg.q_theta);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        for (const auto& w : ctx.q.warnings()) ctx.report.warnings.push_back(w);
        ctx.sub = app.get_subcommands().front();
        ctx.report.subcommand = ctx.sub->get_name();
        if (cfg.margin < 0) throw ConfigError("--margin must be non-negative");

        Json& c = ctx.report.config;
        c["q_modulus"] = ctx.q.modulus;
        c["q_theta"] = ctx.q.theta;
        c["n_cut"] = cfg.n_cut;
        c["z_cut"] = cfg.z_cut;
        c["interior_margin"] = cfg.margin;
        c["tol"] = cfg.tol;
        c["seed"] = cfg.seed;
        c["output_format"] = cfg.format;

        const std::string& name = ctx.report.subcommand;
        if (name == "relations") {
            c["samples"] = samples_rel;
            cmd_relations(ctx, samples_rel);
        } else if (name == "hopf-check") {
            c["samples"] = hopf_samples;
            c["degree"] = hopf_degree;
            cmd_hopf(ctx, hopf_samples, hopf_degree);
        } else if (name == "haar") {
            c["box"] = haar_box;
            c["i_max"] = haar_imax;
            c["samples"] = haar_samples;
            c["degree"] = haar_degree;
            cmd_haar(ctx, haar_box, haar_imax, haar_samples, haar_degree, haar_monomial);
        } else if (name == "expect") {
            c["which"] = exp_which;
            c["monomial"] = exp_monomial;
            cmd_expect(ctx, exp_which, exp_monomial, exp_samples, exp_degree);
        } else if (name == "watatani") {
            c["which"] = wat_which;
            c["n"] = wat_n;
            c["sweep"] = wat_sweep;
            cmd_watatani(ctx, wat_which, wat_n, wat_sweep);
        } else if (name == "spectrum") {
            c["lambda_max"] = lambda_max;
            cmd_spectrum(ctx, lambda_max);
        } else if (name == "commutators") {
            cmd_commutators(ctx);
        } else if (name == "kernel-scan") {
            c["max_degree"] = scan_degree;
            cmd_kernel_scan(ctx, scan_degree);
        } else if (name == "index") {
            pspec.shape = shape == "linear" ? RampShape::linear : RampShape::smooth;
            c["torus_theta"] = torus_theta;
            c["ramp_width"] = pspec.ramp_width;
            c["quadrature_points"] = pspec.quadrature_points;
            c["fourier_cutoff"] = pspec.fourier_cutoff;
            c["shape"] = shape;
            c["sv_tol"] = sv_tol;
            c["window"] = window;
            c["pairing"] = !no_pairing;
            cmd_index(ctx, pspec, torus_theta, sv_tol, window, !no_pairing);
        } else if (name == "center-probe") {
            c["M"] = center_M;
            c["commutant"] = with_commutant;
            cmd_center(ctx, center_M, with_commutant);
        }
        code = ctx.pass ? kExitPass : kExitAssertion;
    } catch (const ConfigError& e) {
        err << "uq2: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        // a numerical routine refused to produce an answer; record it in the report
        ctx.report.warnings.push_back(std::string("aborted: ") + e.what());
        ctx.report.results["pass"] = false;
        code = kExitAssertion;
    }

    if (cfg.timings)
        ctx.report.timings["total_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::string text;
    try {
        text = emit_report(ctx.report, cfg.format == "csv" ? OutputFormat::csv : OutputFormat::json);
    } catch (const std::domain_error& e) {
        err << "uq2: " << e.what() << "\n";
        return kExitAssertion;
    }
    if (cfg.output.empty()) {
        out << text;
    } else {
        std::ofstream f(cfg.output, std::ios::binary);
        if (!f) {
            err << "uq2: cannot write " << cfg.output << "\n";
            return kExitUsage;
        }
        f << text;
    }
    return code;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace uq2
