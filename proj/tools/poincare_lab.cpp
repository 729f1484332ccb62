// poincare-lab: batch front end over the poincare headers.
#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include <poincare/cli.hpp>

int main(int argc, char **argv)
{
    using namespace poincare;
    cli::RunConfig cfg;
    CLI::App app{"Poincare functions of polynomials: series, Boettcher data, harmonic measure, zeros, zeta"};
    app.add_option("command", cfg.command, "analyze|series|eval|measure|fourier|zeros|zeta|bridge|all")->required();
    app.add_option("--poly", cfg.poly, "coefficients c_d,...,c_1 (constant term 0), rationals like 1/20")->required();
    app.add_option("--fixed-point", cfg.fixed_point, "repelling fixed point to normalize at, or auto");
    app.add_option("--order", cfg.order, "Taylor order");
    app.add_option("--atoms", cfg.atoms, "harmonic-measure sample size");
    app.add_option("--seed", cfg.seed, "sampler seed");
    app.add_option("--out", cfg.out, "output directory");
    app.add_option("--tol", cfg.tol, "evaluation tolerance");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    cli::RunReport rep;
    try {
        rep = cli::run(cfg);
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NormalizationError &e) {
        std::cerr << "normalization error: " << e.what() << "\n";
        return 2;
    } catch (const error &e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return 2;
    }
    if (!cfg.out.empty()) {
        cli::write_outputs(rep, cfg.out);
    } else {
        std::cout << rep.report.dump(2) << "\n";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "status " << rep.report["status"].get<std::string>() << ", " << secs << " s\n";
    for (const auto &w : rep.report["warnings"]) {
        std::cerr << "warning: " << w.get<std::string>() << "\n";
    }
    return rep.exit_code;
}
