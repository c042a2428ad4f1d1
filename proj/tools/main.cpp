#include <CLI11.hpp>

#include "zs/cli.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"zspect: periodic/Dirichlet spectra of Zakharov-Shabat operators and "
                 "verification of their large-index asymptotics"};
    app.require_subcommand(1);

    zs::cli::RunConfig cfg;
    double a_re = 1.0, a_im = 0.0, b_re = 1.0, b_im = 0.0;
    int grid = 0;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--potential", cfg.potential_path, "potential JSON file");
        sub->add_option("--preset", cfg.preset, "zero | constant | single_mode");
        sub->add_option("--a", a_re, "preset parameter a (real part)");
        sub->add_option("--a-im", a_im, "preset parameter a (imaginary part)");
        sub->add_option("--b", b_re, "preset parameter b (real part)");
        sub->add_option("--b-im", b_im, "preset parameter b (imaginary part)");
        sub->add_option("--grid", grid, "grid size (power of two)");
        sub->add_option("--tol", cfg.tol, "solver tolerance (default 1e-12)");
        sub->add_option("--out", cfg.out_path, "output path (stdout when omitted)");
        sub->add_option("--format", cfg.format, "csv | json");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "locate mu_n, lam_n+-, lam_dot_n; emit table");
    add_common(spectrum);
    spectrum->add_option("--nmin", cfg.n_min, "lowest index n");
    spectrum->add_option("--nmax", cfg.n_max, "highest index n");
    spectrum->add_option("--n-floor", cfg.n_floor, "contract floor on |n| (default 4)");

    CLI::App* coeffs = app.add_subcommand("coeffs", "wkb coefficient functions, integrals, c_k");
    add_common(coeffs);
    coeffs->add_option("--N", cfg.order, "expansion order (default 1)");

    CLI::App* predict = app.add_subcommand("predict", "closed-form predicted spectral values");
    add_common(predict);
    predict->add_option("--N", cfg.order, "expansion order");
    predict->add_option("--theorem", cfg.theorems, "claim tag(s), e.g. 1.1 1.4i, or 'all'");
    predict->add_option("--n", cfg.predict_n, "single index (otherwise nmin..nmax)");
    predict->add_option("--nmin", cfg.n_min, "lowest index");
    predict->add_option("--nmax", cfg.n_max, "highest index");

    CLI::App* verify = app.add_subcommand("verify", "residual decay reports; exit 0 iff all pass");
    add_common(verify);
    verify->add_option("--N", cfg.order, "expansion order");
    verify->add_option("--theorem", cfg.theorems, "claim tag(s) or 'all'");
    verify->add_option("--nmin", cfg.n_min, "lowest index");
    verify->add_option("--nmax", cfg.n_max, "highest index");
    verify->add_option("--n-floor", cfg.n_floor, "contract floor on |n|");
    verify->add_option("--slack", cfg.slack, "slope slack (default 0.3)");

    CLI::App* a1 = app.add_subcommand("a1check", "large-lambda approximant error, weighted by |lambda|^2");
    add_common(a1);
    a1->add_option("--lams", cfg.lambda_re, "sample |lambda| values (default 50..800)");
    a1->add_option("--ims", cfg.lambda_im, "imaginary offsets (default 0)");

    CLI11_PARSE(app, argc, argv);

    cfg.command = app.get_subcommands().front()->get_name();
    cfg.a = {a_re, a_im};
    cfg.b = {b_re, b_im};
    if (grid > 0)
        cfg.grid_size = grid;
    return zs::cli::run(cfg);
}
