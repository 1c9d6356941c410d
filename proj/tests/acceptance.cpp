// Acceptance gate: one criterion per invocation (argv[1] = 1..12), each
// printing a single PASS/FAIL line. argv[2] is the path to the CLI binary
// (used by the reproducibility criterion). All tolerances are pinned here.
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "fucik/checks.hpp"
#include "fucik/limits.hpp"
#include "fucik/nonres.hpp"
#include "fucik/spectrum.hpp"

namespace fs = std::filesystem;
using namespace fucik;

namespace {

struct Problem {
    Mesh mesh;
    NonlocalEnergy E;
    Problem(double p, double alpha, int res, double eps = 0.25,
            bool store_pairs = true) {
        DomainSpec spec;
        spec.p = p;
        spec.alpha = alpha;
        spec.epsilon = eps;
        mesh = build_mesh(spec, res);
        E = NonlocalEnergy::assemble(mesh, KernelParams::from(spec), store_pairs);
    }
};

std::ostringstream why;

bool expect(bool ok, const std::string& what) {
    if (!ok) why << (why.str().empty() ? "" : "; ") << what;
    return ok;
}

bool near(double value, double target, double rel, const std::string& what) {
    std::ostringstream os;
    os << what << " = " << value << " vs " << target << " (rel tol " << rel << ")";
    return expect(std::abs(value - target) <= rel * std::abs(target), os.str());
}

// ---- criterion 1: normalization constants --------------------------------
bool criterion1() {
    return expect(std::abs(lambda_np(1, 2.0) - 1.0) <= 1e-12, "lambda(1,2)") &
           expect(std::abs(lambda_np(2, 2.0) - 2.0 / M_PI) <= 1e-12, "lambda(2,2)");
}

// ---- criterion 2: gradients vs central differences -----------------------
bool criterion2() {
    bool ok = true;
    std::mt19937 rng(2024);
    std::normal_distribution<double> g(0.0, 1.0);
    auto fill = [&](Vector& u) {
        for (int i = 0; i < u.size(); ++i) u[i] = g(rng);
    };
    const double h = 1e-5;
    for (double p : {2.0, 3.0}) {
        Problem pb(p, 0.3, 25);
        for (int k = 0; k < 10; ++k) { // 10 pairs per p: 20 in total
            Vector u(pb.E.size()), v(pb.E.size());
            fill(u);
            fill(v);
            const double s = 0.5;
            const double fd = (J_s(u + h * v, s, pb.E) - J_s(u - h * v, s, pb.E)) / (2 * h);
            const double an = grad_J_s(u, s, pb.E).dot(v);
            ok &= expect(std::abs(fd - an) <= 1e-5 * (1.0 + std::abs(fd)),
                         "grad_J_s mismatch p=" + std::to_string(p));
        }
    }
    Problem pb(2.0, 0.3, 25);
    const Nonlinearity f = Nonlinearity::linear_arctan(1.0, 0.1);
    for (int k = 0; k < 20; ++k) {
        Vector u(pb.E.size()), v(pb.E.size());
        fill(u);
        fill(v);
        const double fd = (psi(u + h * v, f, pb.E) - psi(u - h * v, f, pb.E)) / (2 * h);
        const double an = grad_psi(u, f, pb.E).dot(v);
        ok &= expect(std::abs(fd - an) <= 1e-5 * (1.0 + std::abs(fd)), "grad_psi mismatch");
    }
    return ok;
}

// ---- criterion 3: scaled-energy limit for u = x --------------------------
bool criterion3() {
    DomainSpec spec;
    spec.alpha = 0.9;
    Mesh mesh = build_mesh(spec, 400);
    Vector u(mesh.node_count());
    for (int i = 0; i < mesh.node_count(); ++i) u[i] = mesh.nodes[i][0];

    const std::vector<double> alphas = {0.9, 0.95, 0.999};
    const auto scaled = bbm_sequence(mesh, u, 2.0, alphas);

    bool ok = near(scaled[2], 2.0, 0.02, "scaled energy at alpha=0.999");
    for (int i = 0; i < 2; ++i) {
        const double beta = 1.0 - 2.0 * alphas[i];
        const double closed = (1.0 - alphas[i]) * lambda_np(1, 2.0) * 2.0 *
                              std::pow(2.0, beta + 2.0) / ((beta + 1.0) * (beta + 2.0));
        ok &= near(scaled[i], closed, 0.005, "closed form at alpha=" + std::to_string(alphas[i]));
    }
    return ok;
}

// ---- criterion 4: boundary-weighted limit --------------------------------
bool criterion4() {
    DomainSpec base; // (-1,1), p = 2
    // resolutions scale as 1/(1-alpha): 201, 402, 2010
    const auto table = eigen_limit_study({0.9, 0.95, 0.99}, base, 201);
    const LimitRow& r = table[1]; // alpha = 0.95, eps = 0.05, resolution 402

    bool ok = near(r.lambda1, std::tanh(1.0), 0.05, "lambda1 vs tanh(1)");
    // The converged continuum value at eps = 0.05, alpha = 0.95 sits 6.5%
    // above coth(1): about 4.5% from the finite collar width (see the exact
    // finite-collar oracle below) plus about 0.53*(1-alpha) from the
    // fractional order. 7% leaves headroom for discretization only.
    ok &= near(r.lambda2, 1.0 / std::tanh(1.0), 0.07, "lambda2 vs coth(1)");

    // sharper check against the exact eigenvalues at collar width 0.05
    const auto [c1, c2] = steklov_collar_1d(0.05);
    ok &= near(r.lambda1, c1, 0.025, "lambda1 vs finite-collar value");
    ok &= near(r.lambda2, c2, 0.025, "lambda2 vs finite-collar value");

    for (int i = 0; i + 1 < static_cast<int>(table.size()); ++i) {
        ok &= expect(table[i + 1].rel_err1 < table[i].rel_err1,
                     "lambda1 error not decreasing in alpha");
        ok &= expect(table[i + 1].rel_err2 < table[i].rel_err2,
                     "lambda2 error not decreasing in alpha");
    }
    return ok;
}

// ---- criterion 5: minimax at s = 0 recovers the second eigenvalue --------
bool criterion5() {
    Problem pb(2.0, 0.4, 400, 0.25, false);
    const double l2 = lambda2_dense(pb.E).value;
    const Vector phi1 = lambda1(pb.E).function;
    Vector witness(pb.E.size());
    for (int i = 0; i < pb.E.size(); ++i) witness[i] = pb.mesh.nodes[i][0];

    MinimaxResult a = deform(initial_path(pb.E, phi1, witness, 41), 0.0, pb.E);
    MinimaxResult b = deform(initial_path(pb.E, phi1, witness, 82), 0.0, pb.E);
    bool ok = expect(a.converged && b.converged, "minimax did not converge");
    ok &= near(a.c_value, l2, 0.01, "c(0) vs lambda2");
    ok &= expect(std::abs(a.c_value - b.c_value) <= 1e-4 * std::abs(a.c_value),
                 "c(0) not stable under doubling the path samples: " +
                     std::to_string(a.c_value) + " vs " + std::to_string(b.c_value));
    return ok;
}

// ---- criterion 6: curve properties over the full s grid ------------------
bool criterion6() {
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(0.1 * i);
    grid.insert(grid.end(), {2.0, 4.0, 8.0});

    bool ok = true;
    for (auto [p, alpha, res] : {std::tuple{2.0, 0.4, 201}, std::tuple{3.0, 0.3, 201}}) {
        Problem pb(p, alpha, res);
        FucikCurve curve = sweep(grid, pb.E);
        for (const auto& pt : curve.points)
            ok &= expect(pt.converged, "non-converged point at s=" + std::to_string(pt.s) +
                                           ", p=" + std::to_string(p));
        CurveCheck check = check_properties(curve);
        ok &= expect(check.above_lambda1, "c(s) <= lambda1 (p=" + std::to_string(p) + ")");
        ok &= expect(check.decreasing, "c not strictly decreasing");
        ok &= expect(check.shifted_increasing, "s + c not strictly increasing");
        ok &= expect(check.lipschitz, "Lipschitz bound violated");
        const double l1 = curve.lambda1;
        const double c1 = curve.points[10].c, c8 = curve.points.back().c;
        ok &= expect(c8 - l1 < c1 - l1, "c(8) - lambda1 >= c(1) - lambda1");
        if (!check.detail.empty()) why << "; " << check.detail;
    }
    return ok;
}

// ---- criterion 7: endpoint identities ------------------------------------
bool criterion7() {
    bool ok = true;
    for (auto [p, alpha] : {std::pair{2.0, 0.4}, std::pair{3.0, 0.3}}) {
        Problem pb(p, alpha, 101);
        EigenResult r = lambda1(pb.E);
        for (double s : {0.0, 0.5, 1.0}) {
            ok &= expect(std::abs(J_s(r.function, s, pb.E) - (r.value - s)) <= 1e-8,
                         "J_s(phi1) != lambda1 - s");
            ok &= expect(std::abs(J_s(Vector(-r.function), s, pb.E) - r.value) <= 1e-8,
                         "J_s(-phi1) != lambda1");
        }
    }
    return ok;
}

// ---- criterion 8: level bounds along the canonical deformations ----------
bool criterion8() {
    Problem pb(2.0, 0.4, 201);
    const Vector phi1 = lambda1(pb.E).function;
    Vector witness(pb.E.size());
    for (int i = 0; i < pb.E.size(); ++i) witness[i] = pb.mesh.nodes[i][0];

    bool ok = true;
    for (double s : {0.0, 0.5}) {
        MinimaxResult r = deform(initial_path(pb.E, phi1, witness, 41), s, pb.E);
        ok &= expect(r.converged, "minimax did not converge at s=" + std::to_string(s));
        const Vector u = r.critical.converged ? r.critical.u : r.argmax_state.u;
        PathLevelReport rep = verify_path_levels(pb.E, u, s, 101, 1e-6);
        std::ostringstream os;
        os << "path level above mu at s=" << s << ": max " << rep.max_level[0] << "/"
           << rep.max_level[1] << "/" << rep.max_level[2] << " vs mu=" << rep.mu;
        ok &= expect(rep.ok, os.str());
    }
    return ok;
}

// ---- criterion 9: inequality battery --------------------------------------
bool criterion9() {
    Problem pb(3.0, 0.3, 25);
    BatteryReport rep = inequality_battery(pb.E, 10000, 7);
    std::ostringstream os;
    os << "worst slacks: " << rep.worst_monotone << ", " << rep.worst_g << ", "
       << rep.worst_convexity << ", " << rep.worst_split;
    return expect(rep.ok(1e-12), os.str());
}

// ---- criterion 10: domain monotonicity on the collar ----------------------
bool criterion10() {
    bool ok = true;
    for (auto [p, alpha] : {std::pair{2.0, 0.4}, std::pair{3.0, 0.3}}) {
        Problem pb(p, alpha, 101);
        std::vector<int> half;
        for (int ei : pb.mesh.collar_elements()) {
            const auto& e = pb.mesh.elements[ei];
            if (pb.mesh.nodes[e.v[0]][0] + pb.mesh.nodes[e.v[1]][0] > 0.0)
                half.push_back(ei);
        }
        const double full = lambda1(pb.E).value;
        const double sub = lambda1_subset(pb.E, half).value;
        std::ostringstream os;
        os << "half-collar value " << sub << " not above " << full << " (p=" << p << ")";
        ok &= expect(sub > full + 1e-6, os.str());
    }
    return ok;
}

// ---- criterion 11: perturbed resonant problem ------------------------------
bool criterion11() {
    Problem pb(2.0, 0.4, 201, 0.25, false);
    const double l1 = lambda1(pb.E).value;
    const double w = weighted_lambda1(Vector(Vector::Constant(pb.E.size(), l1)), pb.E);
    bool ok = expect(std::abs(w - 1.0) <= 1e-8,
                     "weighted value at the first eigenvalue: " + std::to_string(w));
    NonresSolution sol = solve_041(Nonlinearity::linear_arctan(l1, 0.1), pb.E);
    std::ostringstream os;
    os << "residual " << sol.residual;
    ok &= expect(sol.converged && sol.residual < 1e-6, os.str());
    return ok;
}

// ---- criterion 12: byte-identical reruns -----------------------------------
bool criterion12(const std::string& cli) {
    const fs::path base = fs::temp_directory_path() / "fucik_accept12";
    fs::remove_all(base);
    auto run = [&](const std::string& sub, const std::string& extra, const fs::path& dir) {
        std::ostringstream cmd;
        cmd << '"' << cli << "\" " << sub << " -D resolution=101 -D alpha=0.4 " << extra
            << " -D output_dir=\"" << dir.string() << "\" > /dev/null 2>&1";
        return std::system(cmd.str().c_str());
    };
    bool ok = true;
    for (auto [sub, extra, file] :
         {std::tuple{"lambda1", "", "lambda1.txt"},
          std::tuple{"bbm", "-D alpha_list=0.9,0.95", "bbm.csv"},
          std::tuple{"selftest", "-D seed=3", "selftest.txt"}}) {
        const fs::path d1 = base / (std::string(sub) + "_a"), d2 = base / (std::string(sub) + "_b");
        ok &= expect(run(sub, extra, d1) == 0 && run(sub, extra, d2) == 0,
                     std::string("subcommand ") + sub + " failed");
        std::ifstream f1(d1 / file, std::ios::binary), f2(d2 / file, std::ios::binary);
        std::stringstream s1, s2;
        s1 << f1.rdbuf();
        s2 << f2.rdbuf();
        ok &= expect(f1 && f2 && !s1.str().empty() && s1.str() == s2.str(),
                     std::string("rerun of ") + sub + " not byte-identical");
    }
    fs::remove_all(base);
    return ok;
}

const char* kLabel[13] = {
    "",
    "normalization constants exact",
    "gradients match central differences",
    "scaled energy reaches the local limit",
    "boundary-weighted eigenvalue limit",
    "minimax at s=0 equals the second eigenvalue",
    "curve properties on the full s grid",
    "endpoint identities",
    "canonical path level bounds",
    "inequality battery",
    "collar domain monotonicity",
    "non-resonance demo",
    "byte-identical reruns",
};

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <criterion 1..12> [cli-path]\n";
        return 2;
    }
    const int n = std::atoi(argv[1]);
    bool ok = false;
    try {
        switch (n) {
            case 1: ok = criterion1(); break;
            case 2: ok = criterion2(); break;
            case 3: ok = criterion3(); break;
            case 4: ok = criterion4(); break;
            case 5: ok = criterion5(); break;
            case 6: ok = criterion6(); break;
            case 7: ok = criterion7(); break;
            case 8: ok = criterion8(); break;
            case 9: ok = criterion9(); break;
            case 10: ok = criterion10(); break;
            case 11: ok = criterion11(); break;
            case 12:
                if (argc < 3) {
                    std::cerr << "criterion 12 needs the CLI path\n";
                    return 2;
                }
                ok = criterion12(argv[2]);
                break;
            default:
                std::cerr << "unknown criterion " << n << "\n";
                return 2;
        }
    } catch (const std::exception& e) {
        why << (why.str().empty() ? "" : "; ") << "exception: " << e.what();
    }
    if (ok) {
        std::cout << "PASS criterion " << n << ": " << kLabel[n] << "\n";
        return 0;
    }
    std::cout << "FAIL criterion " << n << ": " << kLabel[n] << " (" << why.str() << ")\n";
    return 1;
}
