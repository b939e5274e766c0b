#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "knotpos/cli.hpp"

int main(int argc, char** argv) {
    using namespace knotpos;
    CLI::App app{"knotpos: link diagram invariants, positivity classes and obstruction batteries"};
    app.require_subcommand(1);

    CliOptions opt;
    std::string target = "wsap", omegas, budget;
    auto add_input = [&](CLI::App* c) {
        c->add_option("--pd", opt.pd, "PD code, e.g. PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]");
        c->add_option("--gauss", opt.gauss, "signed Gauss code, e.g. O1+U2+O3+U1+O2+U3+");
        c->add_option("--table", opt.table, "JSON-lines knot table");
        c->add_option("--out", opt.out, "write the report to this file");
        c->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
        c->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
        c->add_option("--budget", budget, "skein node budget per polynomial");
    };
    auto add_cache = [&](CLI::App* c) {
        c->add_option("--cache", opt.cache, "JSON-lines invariant cache");
        c->add_option("--omega", omegas, "Levine-Tristram roots as n/k pairs, e.g. 2/1,5/2");
    };

    auto* inv = app.add_subcommand("invariants", "compute invariants of a diagram or table");
    add_input(inv);
    add_cache(inv);
    std::vector<std::pair<std::string, bool>> flags;
    for (const auto& n : invariant_names()) flags.push_back({n, false});
    for (auto& [n, v] : flags) inv->add_flag("--" + n, v, "print " + n);
    bool all = false;
    inv->add_flag("--all", all, "print every invariant");

    auto* cls = app.add_subcommand("classify", "positivity class with witness");
    add_input(cls);

    auto* obs = app.add_subcommand("obstruct", "run the obstruction battery");
    add_input(obs);
    add_cache(obs);
    obs->add_option("--target", target, "wsap|sap|positive|almost-positive");
    obs->add_flag("--dubrovnik", opt.dubrovnik, "also compute the Dubrovnik polynomial");

    auto* sk = app.add_subcommand("skein-tree", "standard skein triples and unknotting sequence");
    add_input(sk);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    try {
        if (!budget.empty()) opt.budget = std::stoull(budget);
        if (!omegas.empty()) opt.omegas = parse_omegas(omegas);
        opt.target = parse_target(target);
        for (const auto& [n, v] : flags)
            if (v || all) opt.invariants.insert(n);
        if (inv->parsed()) return cmd_invariants(opt, std::cout, std::cerr);
        if (cls->parsed()) return cmd_classify(opt, std::cout, std::cerr);
        if (obs->parsed()) return cmd_obstruct(opt, std::cout, std::cerr);
        if (sk->parsed()) return cmd_skein_tree(opt, std::cout, std::cerr);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "Internal: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInput;
}
