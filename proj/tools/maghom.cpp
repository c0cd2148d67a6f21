#include "maghom/io.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Magnitude homology of finite metric spaces"};
    app.require_subcommand(1);

    maghom::RunConfig cfg;
    std::string format;
    std::size_t degree = 0;
    std::string grading;
    std::string lmax;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "input file")->required();
        sub->add_option("--format", format, "matrix | graph | points | poset | facets (default: from the file extension)")
            ->check(CLI::IsMember({"matrix", "graph", "points", "poset", "facets"}));
        sub->add_option("--eps", cfg.eps, "distance tolerance for point clouds")->check(CLI::PositiveNumber);
        sub->add_flag("--json", cfg.json, "emit JSON instead of a table");
        sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(std::size_t{1}, std::size_t{256}));
    };

    auto* validate = app.add_subcommand("validate", "check the metric axioms and print space invariants");
    common(validate);
    validate->add_option("--lmax", lmax, "bound for the listed achievable gradings");

    auto* homology = app.add_subcommand("homology", "magnitude homology groups");
    common(homology);
    homology->add_option("--n", degree, "degree (maximum degree with --scan)");
    homology->add_option("--ell", grading, "grading, e.g. 3/2");
    homology->add_flag("--scan", cfg.scan, "all achievable gradings up to --lmax");
    homology->add_option("--lmax", lmax, "grading bound for --scan");

    auto* decompose = app.add_subcommand("decompose", "per-frame decomposition");
    common(decompose);
    decompose->add_option("--n", degree, "degree")->required();
    decompose->add_option("--ell", grading, "grading")->required();

    auto* poset = app.add_subcommand("poset", "order homology against magnitude homology of the bounded poset");
    common(poset);
    poset->add_option("--n", cfg.degrees, "degrees to report")->expected(1, -1);

    auto* cross = app.add_subcommand("crossvalidate", "compare the direct and frame-wise computations");
    common(cross);
    cross->add_option("--n", degree, "maximum degree");
    cross->add_option("--lmax", lmax, "grading bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : maghom::exit_io;
    }

    auto* chosen = app.get_subcommands().front();
    cfg.command = chosen->get_name();
    try {
        cfg.format = format.empty() ? maghom::guess_input_format(cfg.input) : maghom::parse_input_format(format);
    } catch (const maghom::FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return maghom::exit_io;
    }
    if (auto* n = chosen->get_option_no_throw("--n"); n && chosen != poset && n->count() > 0)
        cfg.degree = degree;
    if (!grading.empty())
        cfg.grading = grading;
    if (!lmax.empty())
        cfg.lmax = lmax;
    return maghom::run_command(cfg, std::cout, std::cerr);
}
