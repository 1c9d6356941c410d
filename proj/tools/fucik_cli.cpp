// Command-line driver: reproducible eigenvalue, curve, limit and
// non-resonance runs from a plain-text configuration file.
#include <CLI11.hpp>

#include <Eigen/Core>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>

#include "fucik/checks.hpp"
#include "fucik/config.hpp"
#include "fucik/limits.hpp"
#include "fucik/nonres.hpp"
#include "fucik/output.hpp"

namespace fs = std::filesystem;
using namespace fucik;

namespace {

struct Cli {
    std::string config_path;
    std::vector<std::string> overrides; // key=value, applied after the file
};

RunConfig load_config(const Cli& cli) {
    RunConfig cfg = cli.config_path.empty() ? RunConfig{}
                                            : parse_config_file(cli.config_path);
    for (const std::string& kv : cli.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override must be key=value: " + kv);
        apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    cfg.normalize();
    Eigen::setNbThreads(cfg.threads);
    return cfg;
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.output_dir);
    const fs::path p = fs::path(cfg.output_dir) / name;
    std::ofstream os(p);
    if (!os) throw ConfigError("cannot write output file: " + p.string());
    os.precision(12);
    return os;
}

// The energy keeps a reference to its mesh, so the mesh must outlive it.
NonlocalEnergy assemble(const RunConfig& cfg, std::unique_ptr<Mesh>& keep,
                        bool store_pairs = true) {
    keep = std::make_unique<Mesh>(build_mesh(cfg.domain, cfg.resolution));
    return NonlocalEnergy::assemble(*keep, KernelParams::from(cfg.domain),
                                    store_pairs || cfg.domain.p != 2.0);
}

int run_lambda1(const RunConfig& cfg) {
    std::unique_ptr<Mesh> mesh;
    NonlocalEnergy E = assemble(cfg, mesh, false);
    EigenResult r = lambda1(E);
    auto os = open_out(cfg, "lambda1.txt");
    write_header(os, config_hash(cfg));
    os << "lambda1 = " << r.value << "\n"
       << "residual = " << r.residual << "\n"
       << "gap = " << r.gap << "\n";
    return 0;
}

int run_curve(const RunConfig& cfg) {
    std::unique_ptr<Mesh> mesh;
    NonlocalEnergy E = assemble(cfg, mesh);
    SweepOptions opts;
    opts.path_samples = cfg.path_samples;
    opts.deform.rel_tol = cfg.rel_tol;
    opts.deform.grad_tol = cfg.grad_tol;
    opts.deform.max_sweeps = cfg.max_sweeps;
    FucikCurve curve = sweep(cfg.s_grid, E, opts);

    const std::uint64_t hash = config_hash(cfg);
    {
        auto os = open_out(cfg, "curve.csv");
        write_curve_csv(os, curve, hash);
    }
    {
        auto os = open_out(cfg, "curve.svg");
        write_curve_svg(os, curve, hash);
    }
    CurveCheck check = check_properties(curve);
    TrivialLineReport lines = trivial_lines_check(E);
    auto os = open_out(cfg, "curve_report.txt");
    write_header(os, hash);
    os << "lambda1 = " << curve.lambda1 << "\n"
       << "above_lambda1 = " << check.above_lambda1 << "\n"
       << "decreasing = " << check.decreasing << "\n"
       << "shifted_increasing = " << check.shifted_increasing << "\n"
       << "lipschitz = " << check.lipschitz << "\n"
       << "tail = " << check.tail << "\n"
       << "trivial_lines_ok = " << lines.ok << "\n";
    if (!check.detail.empty()) os << "detail: " << check.detail << "\n";
    int bad = 0;
    for (const auto& pt : curve.points) bad += !pt.converged;
    return bad == 0 && check.all() ? 0 : 2;
}

int run_bbm(const RunConfig& cfg) {
    Mesh mesh = build_mesh(cfg.domain, cfg.resolution);
    Vector u(mesh.node_count());
    for (int i = 0; i < mesh.node_count(); ++i) u[i] = mesh.nodes[i][0];
    const double target = local_gradient_energy(mesh, u, cfg.domain.p);
    const std::vector<double>& alphas = cfg.alpha_list;
    const std::vector<double> scaled = bbm_sequence(mesh, u, cfg.domain.p, alphas);
    auto os = open_out(cfg, "bbm.csv");
    write_header(os, config_hash(cfg));
    os << "alpha, scaled_energy, target, rel_err\n";
    for (std::size_t i = 0; i < alphas.size(); ++i)
        os << alphas[i] << ", " << scaled[i] << ", " << target << ", "
           << std::abs(scaled[i] - target) / target << "\n";
    return 0;
}

int run_steklov(const RunConfig& cfg) {
    const auto table = eigen_limit_study(cfg.alpha_list, cfg.domain, cfg.resolution);
    auto os = open_out(cfg, "steklov.csv");
    write_limit_csv(os, table, config_hash(cfg));
    return 0;
}

int run_nonres(const RunConfig& cfg) {
    std::unique_ptr<Mesh> mesh;
    NonlocalEnergy E = assemble(cfg, mesh, false);
    const double l1 = lambda1(E).value;
    Nonlinearity f;
    if (cfg.nonlinearity == "linear")
        f = Nonlinearity::linear(cfg.nl_c != 0.0 ? cfg.nl_c : l1);
    else if (cfg.nonlinearity == "linear_arctan")
        f = Nonlinearity::linear_arctan(cfg.nl_c != 0.0 ? cfg.nl_c : l1, cfg.nl_amp);
    else if (cfg.nonlinearity == "piecewise_linear")
        f = Nonlinearity::piecewise_linear(cfg.nl_a, cfg.nl_b);
    else
        throw ConfigError("unknown nonlinearity: " + cfg.nonlinearity);

    const Vector m_const = Vector::Constant(E.size(), l1);
    const double w1 = weighted_lambda1(m_const, E);
    NonresSolution sol = solve_041(f, E, cfg.path_samples);
    auto os = open_out(cfg, "nonres.txt");
    write_header(os, config_hash(cfg));
    os << "lambda1 = " << l1 << "\n"
       << "weighted_lambda1_at_lambda1 = " << w1 << "\n"
       << "psi_value = " << sol.psi_value << "\n"
       << "residual = " << sol.residual << "\n"
       << "endpoint_scale = " << sol.endpoint_scale << "\n"
       << "norm = " << sol.u.norm() << "\n";
    return sol.converged ? 0 : 2;
}

int run_selftest(const RunConfig& cfg) {
    int failures = 0;
    auto expect = [&](bool ok, const char* what) {
        if (!ok) {
            ++failures;
            std::cerr << "selftest failure: " << what << "\n";
        }
    };

    // small mesh keeps the 4 x draws battery at seconds
    DomainSpec small = cfg.domain;
    small.alpha = 0.3;
    small.p = 3.0;
    small.epsilon = 0.25;
    Mesh mesh = build_mesh(small, 25);
    NonlocalEnergy E = NonlocalEnergy::assemble(mesh, KernelParams::from(small));
    BatteryReport battery = inequality_battery(E, 2000, cfg.seed);
    expect(battery.ok(), "inequality battery");

    // gradient of J_s against central differences
    std::mt19937 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < 5; ++k) {
        Vector u(mesh.node_count()), v(mesh.node_count());
        for (int i = 0; i < mesh.node_count(); ++i) {
            u[i] = gauss(rng);
            v[i] = gauss(rng);
        }
        const double s = 0.5, h = 1e-5;
        const double fd = (J_s(u + h * v, s, E) - J_s(u - h * v, s, E)) / (2 * h);
        const double an = grad_J_s(u, s, E).dot(v);
        expect(std::abs(fd - an) <= 1e-5 * (1.0 + std::abs(fd)), "grad_J_s check");
    }
    expect(std::abs(lambda_np(1, 2.0) - 1.0) < 1e-12, "lambda constant (1,2)");
    expect(std::abs(lambda_np(2, 2.0) - 2.0 / M_PI) < 1e-12, "lambda constant (2,2)");

    auto os = open_out(cfg, "selftest.txt");
    write_header(os, config_hash(cfg));
    os << "failures = " << failures << "\n";
    std::cout << "selftest failures: " << failures << "\n";
    return failures == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlocal eigenvalue and spectral-curve toolkit"};
    app.require_subcommand(1);

    Cli cli;
    app.add_option("-c,--config", cli.config_path, "configuration file (key = value)");
    app.add_option("-D,--define", cli.overrides,
                   "override a configuration key, e.g. -D alpha=0.5");

    int (*runner)(const RunConfig&) = nullptr;
    for (auto [name, fn, help] :
         {std::tuple{"lambda1", &run_lambda1, "first eigenpair record"},
          std::tuple{"curve", &run_curve, "sweep the first nontrivial curve"},
          std::tuple{"bbm", &run_bbm, "scaled-energy table as alpha -> 1"},
          std::tuple{"steklov", &run_steklov, "boundary-limit eigenvalue table"},
          std::tuple{"nonres", &run_nonres, "non-resonance existence demo"},
          std::tuple{"selftest", &run_selftest, "inequality battery and gradient checks"}}) {
        app.add_subcommand(name, help)
            ->fallthrough() // let -c/-D appear after the subcommand name
            ->callback([&runner, fn = fn] { runner = fn; });
    }

    CLI11_PARSE(app, argc, argv);
    try {
        const RunConfig cfg = load_config(cli);
        return runner(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
