// One verdict line per acceptance criterion.  Exit status is 0 only when
// every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "uq2/checks.hpp"
#include "uq2/cli.hpp"
#include "uq2/commutant.hpp"
#include "uq2/dirac.hpp"
#include "uq2/ncindex.hpp"

using namespace uq2;

namespace {

const double kSilver = std::sqrt(2.0) - 1.0;
const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;
const std::uint64_t kSeed = 20240601;

struct Verdict {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double time_limit, const std::function<Verdict()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit > 0 && secs >= time_limit) {
        v.pass = false;
        v.detail += "; over the time limit";
    }
    if (!v.pass) ++failures;
    std::printf("%s %d %s: %s [%.2f s]\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

double rayleigh_oracle(int terms) {
    double s = 0;
    for (int j = 1; j < terms; ++j) s += double(terms - j) * double(terms - j);
    return 2.0 * s / terms;
}

std::string cli_bytes(const std::vector<std::string>& args, int* code) {
    std::ostringstream out, err;
    *code = run(args, out, err);
    return out.str();
}

}  // namespace

int main() {
    const QParam q = make_qparam(0.5, kSilver);

    criterion(1, "Hopf axioms on 200 random elements", 10.0, [&] {
        const HopfSuite s = hopf_suite(q, kSeed, 200, 3);
        const HopfResiduals& w = s.worst;
        const bool ok = w.max() <= 1e-10;
        return Verdict{ok, "coassoc " + fmt("%.1e", w.coassociativity) + ", counit " +
                               fmt("%.1e", std::max(w.counit_left, w.counit_right)) + ", antipode " +
                               fmt("%.1e", std::max(w.antipode_left, w.antipode_right)) + ", star " +
                               fmt("%.1e", std::max({w.star_coproduct, w.star_product, w.involution}))};
    });

    criterion(2, "relations, covariance, equivariance on grid (40,40,2)", 30.0, [&] {
        const TruncGrid grid(40, 40, 2);
        const GeneratorSet gens = build_generators(q, grid);
        double rel = 0;
        const auto rr = relation_residuals(gens);
        for (const auto& r : rr) rel = std::max(rel, r.residual);
        const DiracSpec spec = build_dirac(grid);
        std::mt19937_64 rng(kSeed);
        std::uniform_real_distribution<double> u(0, 1);
        double cov = 0, eq = 0;
        for (int t = 0; t < 20; ++t) {
            const cplx z1 = unit_phase(u(rng)), z2 = unit_phase(u(rng)), z3 = unit_phase(u(rng));
            cov = std::max(cov, covariance_residual(z1, z2, z3, gens));
            eq = std::max(eq, equivariance_check(spec, z1, z2, z3));
        }
        const bool ok = rr.size() == 8 && rel <= 1e-10 && cov <= 1e-12 && eq <= 1e-12;
        return Verdict{ok, std::to_string(rr.size()) + " relations max " + fmt("%.1e", rel) + ", covariance " +
                               fmt("%.1e", cov) + ", equivariance " + fmt("%.1e", eq)};
    });

    criterion(3, "Haar closed form vs series, invariance", 0, [&] {
        const HaarSuite s = haar_suite(q, 4, 80, kSeed, 50, 3);
        const bool ok = s.closed_vs_numeric <= 1e-10 && s.invariance <= 1e-10 && s.samples == 50;
        return Verdict{ok, std::to_string(s.monomials) + " monomials max gap " + fmt("%.1e", s.closed_vs_numeric) +
                               ", invariance " + fmt("%.1e", s.invariance)};
    });

    criterion(4, "Watatani probe for n <= 50", 0, [&] {
        double worst_rel = 0, worst_bound = 0;
        bool ok = true;
        for (int n = 1; n <= 50; ++n) {
            const ProbeReport phi = watatani_probe(q, n, Character::phi);
            const ProbeReport psi = watatani_probe(q, n, Character::psi);
            const double o_phi = rayleigh_oracle(n), o_psi = rayleigh_oracle(n + 1);
            if (o_phi > 0) worst_rel = std::max(worst_rel, std::abs(phi.rayleigh_value - o_phi) / o_phi);
            worst_rel = std::max(worst_rel, std::abs(psi.rayleigh_value - o_psi) / o_psi);
            const double b_phi = 3.0 * n / (2.0 * n * n + 1);
            const double b_psi = 3.0 * (n + 1) / (2.0 * n * n + 4.0 * n + 3);
            worst_bound = std::max({worst_bound, std::abs(phi.bound_c - b_phi), std::abs(psi.bound_c - b_psi),
                                    std::abs(phi.bound_numeric - b_phi), std::abs(psi.bound_numeric - b_psi)});
            if (n == 50) ok = ok && phi.bound_c < 0.03 && psi.bound_c < 0.03;
        }
        ok = ok && worst_rel <= 1e-9 && worst_bound <= 1e-12;
        return Verdict{ok, "Rayleigh rel err " + fmt("%.1e", worst_rel) + ", bound err " + fmt("%.1e", worst_bound) +
                               ", bound_c(50) " + fmt("%.5f", watatani_bound_formula(50, Character::phi))};
    });

    criterion(5, "summability diagnostics at lambda 60", 60.0, [&] {
        const SummabilityReport s = summability_report(60.0, TruncGrid(120, 120, 2));
        bool controls = s.controls.size() >= 3;
        for (const auto& c : s.controls) {
            if (c.exponent < 3) controls = controls && c.s_end > c.s_start && c.variation > 0.05;
            if (c.exponent > 3) controls = controls && c.s_end < c.s_start && c.variation > 0.05;
        }
        const bool ok = s.counting_slope >= 2.9 && s.counting_slope <= 3.1 && std::abs(s.volume_ratio - 1) <= 0.1 &&
                        s.s_variation < 0.05 && controls;
        return Verdict{ok, "slope " + fmt("%.3f", s.counting_slope) + ", N/(8/3 l^3) " + fmt("%.3f", s.volume_ratio) +
                               ", S variation " + fmt("%.3f", s.s_variation) +
                               (controls ? ", controls 2.5/3.5 fail" : ", controls did not fail")};
    });

    criterion(6, "derivation kernel scan at max degree 3", 0, [&] {
        const TruncGrid grid(40, 40, 2);
        const GeneratorSet gens = build_generators(q, grid);
        const KernelScan scan = derivation_kernel_scan(3, gens, build_dirac(grid));
        std::vector<BasisMonomial> expected;
        for (int j = 0; j <= 3; ++j) expected.push_back({0, j, j, 0});
        const bool exact = scan.kernel == expected;
        const bool ok = exact && scan.min_outside > 0.05;
        return Verdict{ok, std::string(exact ? "kernel is exactly {<0,j,j,0>}" : "kernel differs") +
                               ", min norm outside " + fmt("%.2e", scan.min_outside) + " at " +
                               to_string(scan.argmin_outside) + " (threshold 0.05)"};
    });

    criterion(7, "index pairing for theta = sqrt2-1 and golden, z_cut 48", 60.0, [&] {
        bool ok = true;
        std::string detail;
        for (double theta : {kSilver, kGolden}) {
            ProjectionSpec spec;
            spec.theta = theta;
            const IndexReport r = index_report(spec, 48);
            const bool one = r.consistent && r.chern.rounded == r.fredholm.index && std::abs(r.fredholm.index) == 1 &&
                             r.chern.distance <= 1e-3 && std::abs(r.defects.trace - r.theta_reduced) <= 1e-3 &&
                             std::abs(r.matrix_trace - r.theta_reduced) <= 1e-3;
            ok = ok && one;
            if (!detail.empty()) detail += "; ";
            detail += "theta " + fmt("%.4f", theta) + ": chern " + std::to_string(r.chern.rounded) + " (dist " +
                      fmt("%.1e", r.chern.distance) + "), fredholm " + std::to_string(r.fredholm.index) +
                      ", trace " + fmt("%.6f", r.matrix_trace) + (r.reflected ? " vs 1-theta" : " vs theta");
        }
        return Verdict{ok, detail};
    });

    criterion(8, "center probe on grid (10,10), M = 2", 0, [&] {
        const TruncGrid grid(10, 10, 2);
        const int irr = center_dimension(q, grid, 2);
        const int real = center_dimension(make_qparam(0.5, 0.0), grid, 2);
        return Verdict{irr == 1 && real >= 5,
                       "dimension " + std::to_string(irr) + " at irrational theta, " + std::to_string(real) +
                           " at theta 0"};
    });

    criterion(9, "byte-identical reports on repeated runs", 0, [&] {
        const std::vector<std::vector<std::string>> cmds = {
            {"relations", "--n-cut", "12", "--z-cut", "12"},
            {"hopf-check", "--samples", "40"},
            {"watatani", "--which", "psi", "--n", "12", "--sweep"},
            {"--format", "csv", "spectrum", "--lambda-max", "30"},
            {"kernel-scan", "--max-degree", "2", "--n-cut", "20", "--z-cut", "20"},
            {"center-probe", "--M", "1"},
            {"index", "--z-cut", "32", "--no-pairing"},
        };
        int same = 0;
        for (const auto& c : cmds) {
            int c1 = 0, c2 = 0;
            const std::string a = cli_bytes(c, &c1), b = cli_bytes(c, &c2);
            if (a == b && c1 == c2 && !a.empty()) ++same;
        }
        // thread count must not change the bytes either
        ::setenv("UQ2_THREADS", "1", 1);
        int t1 = 0, t3 = 0;
        const std::string one = cli_bytes({"center-probe", "--M", "2"}, &t1);
        ::setenv("UQ2_THREADS", "3", 1);
        const std::string three = cli_bytes({"center-probe", "--M", "2"}, &t3);
        ::unsetenv("UQ2_THREADS");
        const bool threads_ok = one == three && t1 == t3;
        const bool ok = same == static_cast<int>(cmds.size()) && threads_ok;
        return Verdict{ok, std::to_string(same) + "/" + std::to_string(cmds.size()) + " subcommands identical" +
                               (threads_ok ? ", UQ2_THREADS 1 vs 3 identical" : ", thread count changed output")};
    });

    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
