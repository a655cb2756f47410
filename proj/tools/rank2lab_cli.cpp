// rank2lab: build representations, check identities, solve and verify the
// integrable systems. Exit status 0 iff every check passed.

#include "rank2lab/harness.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    using namespace rank2lab;
    CLI::App app{"Exact and high-precision verification of the rank-2 integrable systems"};
    app.require_subcommand(1);

    RunConfig rc;
    std::string mode = "exact";
    std::string algebra, system, coeffs, out, tol;
    int fundamental = 0, sets = 0;

    auto add_out = [&](CLI::App* c) {
        c->add_option("--out", out, "report path ('-' for stdout; default under $" + std::string(kOutDirEnv) + ")");
    };
    auto add_system = [&](CLI::App* c) {
        c->add_option("--system", system, "A2-10, B2-10, B2-01, G2-01 or G2-10");
        c->add_option("--coeffs", coeffs, "coefficient file (JSON object or array)")->check(CLI::ExistingFile);
        c->add_option("--sets", sets, "number of random constant coefficient sets")->check(CLI::PositiveNumber);
        c->add_option("--mode", mode, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));
        c->add_option("--seed", rc.seed, "random seed");
        c->add_option("--precision", rc.precision, "working precision in decimal digits (numeric)");
        c->add_option("--step", rc.step, "integration step on [0, 1] (numeric)");
        c->add_option("--tol", tol, "residual tolerance (numeric)");
        add_out(c);
    };

    CLI::App* build = app.add_subcommand("build-rep", "write one fundamental representation");
    build->add_option("--algebra", algebra, "A2, B2, C2 or G2")->required();
    build->add_option("--fundamental", fundamental, "1 or 2")->required()->check(CLI::Range(1, 2));
    add_out(build);

    CLI::App* ident = app.add_subcommand("check-identities", "run the determinant identity suite");
    ident->add_option("--algebra", algebra, "A2, B2, C2 or G2 (default: all)");
    ident->add_option("--trials", rc.trials, "random group elements per algebra")->check(CLI::NonNegativeNumber);
    ident->add_option("--seed", rc.seed, "random seed");
    add_out(ident);

    CLI::App* solve = app.add_subcommand("solve", "dump the general solution K = M+ M-");
    add_system(solve);

    CLI::App* verify = app.add_subcommand("verify", "check every equation of a system on sampled points");
    add_system(verify);
    verify->add_option("--points", rc.points, "sample points per coefficient set")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    rc.command = app.get_subcommands().front()->get_name();
    if (!algebra.empty()) rc.algebra = algebra;
    if (!system.empty()) rc.system = system;
    if (!coeffs.empty()) rc.coeffs = coeffs;
    if (!out.empty()) rc.out = out;
    if (!tol.empty()) rc.tolerance = tol;
    if (fundamental) rc.fundamental = fundamental;
    if (sets) rc.sets = sets;
    rc.mode = parse_mode(mode);
    return execute(rc, std::cout, std::cerr);
}
