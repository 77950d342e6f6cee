// queenswalls: solver, gadget verifier and SAT-to-board reduction compiler
// for the queens-with-walls puzzle.
//
// Exit codes: 0 yes/pass, 1 no/fail, 2 usage error, 3 search inconclusive.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qw/acceptance.hpp"
#include "qw/board.hpp"
#include "qw/gadgets.hpp"
#include "qw/reduce.hpp"
#include "qw/render.hpp"
#include "qw/solver.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

qw::PieceRules rules_from_flag(const std::string& r) {
    if (r.empty()) return qw::PieceRules::queen();
    if (r == "inf") return qw::PieceRules::queen();
    return qw::PieceRules::ranged(std::stoi(r));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"queens-with-walls solver and reduction compiler"};
    app.require_subcommand(1);
    int jobs = 1;
    std::uint64_t seed = 0;
    app.add_option("--jobs", jobs, "parallel workers for verification");
    app.add_option("--seed", seed, "seed for randomized helpers");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "maximum or fixed-tariff decision");
    std::string solve_board, solve_range, solve_sidecar;
    int solve_m = -1;
    std::uint64_t budget = qw::kDefaultBudget;
    solve_cmd->add_option("board", solve_board, "board file")->required();
    solve_cmd->add_option("-m,--tariff", solve_m, "decide exactly m pieces");
    solve_cmd->add_option("--range", solve_range, "piece range (1, 2, ... or inf)");
    solve_cmd->add_option("--budget", budget, "search node budget");
    solve_cmd->add_option("--sidecar", solve_sidecar,
                          "reduction sidecar: solve tile by tile");

    // reduce
    auto* reduce_cmd = app.add_subcommand("reduce", "compile a CNF formula to a board");
    std::string cnf_path, out_board = "out.board", out_sidecar, reduce_range;
    reduce_cmd->add_option("cnf", cnf_path, "DIMACS CNF file")->required();
    reduce_cmd->add_option("-o,--output", out_board, "board output path");
    reduce_cmd->add_option("--sidecar", out_sidecar, "sidecar output path");
    reduce_cmd->add_option("--range", reduce_range, "range header for the board file");

    // verify-gadget
    auto* verify_cmd = app.add_subcommand("verify-gadget", "verify a gadget manifest");
    std::string manifest_path, verify_range;
    verify_cmd->add_option("manifest", manifest_path, "gadget manifest file")->required();
    verify_cmd->add_option("--range", verify_range, "piece range (default inf)");

    // synth-gadget
    auto* synth_cmd = app.add_subcommand("synth-gadget", "synthesize a gadget to contract");
    std::string synth_kind = "TwoState", synth_ports = "W:F,E:F", synth_out;
    int synth_size = 16;
    synth_cmd->add_option("--kind", synth_kind, "TwoState, Clause or Blank");
    synth_cmd->add_option("--size", synth_size, "tile size");
    synth_cmd->add_option("--ports", synth_ports, "comma list like W:F,E:M");
    synth_cmd->add_option("-o,--output", synth_out, "manifest output path");

    // render
    auto* render_cmd = app.add_subcommand("render", "render a board");
    std::string render_board, render_out;
    bool render_svg_flag = false, render_ascii_flag = false;
    render_cmd->add_option("board", render_board, "board file")->required();
    render_cmd->add_flag("--svg", render_svg_flag, "emit SVG");
    render_cmd->add_flag("--ascii", render_ascii_flag, "emit ASCII");
    render_cmd->add_option("-o,--output", render_out, "output path (default stdout)");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force SAT check");
    std::string oracle_cnf;
    oracle_cmd->add_option("cnf", oracle_cnf, "DIMACS CNF file")->required();

    // export-gadgets
    auto* export_cmd = app.add_subcommand("export-gadgets", "write the shipped manifests");
    std::string export_dir = "data/gadgets";
    export_cmd->add_option("dir", export_dir, "output directory");

    // selftest
    app.add_subcommand("selftest", "run the acceptance suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) {
            qw::ParsedBoard pb = qw::parse_board(slurp(solve_board));
            qw::PieceRules rules =
                solve_range.empty() ? pb.rules : rules_from_flag(solve_range);
            if (!solve_sidecar.empty()) {
                const qw::TileSet tiles = qw::build_tile_set(16);
                qw::ReductionOutput red = qw::load_sidecar(slurp(solve_sidecar), tiles);
                auto placement = qw::solve_tiled(red, tiles, rules);
                if (!placement) {
                    std::cout << "no\n";
                    return 1;
                }
                std::cout << "yes " << placement->size() << "\n"
                          << qw::emit_board(red.board, &*placement);
                return 0;
            }
            if (solve_m >= 0) {
                qw::DecideResult r = qw::decide(pb.grid, rules, solve_m, budget);
                if (r.status == qw::SolveStatus::Inconclusive) {
                    std::cerr << "search budget exhausted\n";
                    return 3;
                }
                if (!r.placement) {
                    std::cout << "no\n";
                    return 1;
                }
                std::cout << "yes " << solve_m << "\n"
                          << qw::emit_board(pb.grid, &*r.placement);
                return 0;
            }
            qw::SolveResult r = qw::max_placement(pb.grid, rules, budget);
            if (r.status == qw::SolveStatus::Inconclusive) {
                std::cerr << "search budget exhausted\n";
                return 3;
            }
            std::cout << "max " << r.max_count << "\n"
                      << qw::emit_board(pb.grid, &r.witness);
            return 0;
        }
        if (reduce_cmd->parsed()) {
            const qw::TileSet tiles = qw::build_tile_set(16);
            qw::Formula f = qw::parse_dimacs(slurp(cnf_path));
            qw::ReductionOutput red = qw::reduce(f, tiles);
            std::optional<qw::PieceRules> header;
            if (!reduce_range.empty()) header = rules_from_flag(reduce_range);
            spit(out_board, qw::emit_board(red.board, nullptr, header));
            if (out_sidecar.empty()) out_sidecar = out_board + ".sidecar";
            spit(out_sidecar, qw::save_sidecar(red));
            std::cout << "board " << out_board << " (" << red.board.width() << "x"
                      << red.board.height() << ")\nsidecar " << out_sidecar << "\ntariff "
                      << red.tariff << "\n";
            return 0;
        }
        if (verify_cmd->parsed()) {
            qw::GadgetManifest g = qw::load_manifest(slurp(manifest_path));
            qw::VerifyReport rep = qw::verify_manifest(g, rules_from_flag(verify_range));
            for (const auto& note : rep.notes) std::cerr << note << "\n";
            if (rep.inconclusive) {
                std::cerr << "verification inconclusive\n";
                return 3;
            }
            std::cout << g.name << ": " << (rep.ok ? "pass" : "FAIL") << "\n";
            return rep.ok ? 0 : 1;
        }
        if (synth_cmd->parsed()) {
            qw::ContractSpec contract;
            if (synth_kind == "TwoState") contract.kind = qw::GadgetKind::TwoState;
            else if (synth_kind == "Clause") contract.kind = qw::GadgetKind::Clause;
            else if (synth_kind == "Blank") contract.kind = qw::GadgetKind::Blank;
            else {
                std::cerr << "unknown kind " << synth_kind << "\n";
                return 2;
            }
            std::vector<qw::PortSpec> ports;
            std::istringstream ps(synth_ports);
            std::string item;
            while (std::getline(ps, item, ',')) {
                if (item.empty()) continue;
                if (item.size() < 3 || item[1] != ':') {
                    std::cerr << "bad port spec '" << item << "'\n";
                    return 2;
                }
                qw::PortSpec p;
                p.edge = item[0] == 'N'   ? qw::Edge::N
                         : item[0] == 'S' ? qw::Edge::S
                         : item[0] == 'E' ? qw::Edge::E
                                          : qw::Edge::W;
                p.gender = item[2] == 'M' ? qw::Gender::Male : qw::Gender::Female;
                p.offset = qw::GadgetManifest::lane_a(synth_size);
                ports.push_back(p);
            }
            qw::GadgetManifest g = qw::synthesize_gadget(contract, synth_size, ports);
            const std::string text = qw::save_manifest(g);
            if (synth_out.empty()) std::cout << text;
            else spit(synth_out, text);
            std::cerr << "synthesized " << g.name << " tariff " << g.tariff << "\n";
            return 0;
        }
        if (render_cmd->parsed()) {
            if (render_svg_flag == render_ascii_flag) {
                std::cerr << "choose exactly one of --svg / --ascii\n";
                return 2;
            }
            qw::ParsedBoard pb = qw::parse_board(slurp(render_board));
            const qw::Placement* pl = pb.placement ? &*pb.placement : nullptr;
            const std::string text = render_svg_flag ? qw::render_svg(pb.grid, pl)
                                                     : qw::render_ascii(pb.grid, pl);
            if (render_out.empty()) std::cout << text;
            else spit(render_out, text);
            return 0;
        }
        if (oracle_cmd->parsed()) {
            qw::Formula f = qw::parse_dimacs(slurp(oracle_cnf));
            std::vector<bool> model;
            if (qw::sat_oracle(f, &model)) {
                std::cout << "sat";
                for (int i = 0; i < f.variable_count; ++i)
                    std::cout << " " << (model[i] ? i + 1 : -(i + 1));
                std::cout << "\n";
                return 0;
            }
            std::cout << "unsat\n";
            return 1;
        }
        if (export_cmd->parsed()) {
            const qw::TileSet tiles = qw::build_tile_set(16);
            for (const qw::GadgetManifest* g : tiles.all())
                spit(export_dir + "/" + g->name + ".gadget", qw::save_manifest(*g));
            std::cout << "wrote " << tiles.all().size() << " manifests to " << export_dir
                      << "\n";
            return 0;
        }
        // selftest
        return qw::run_acceptance(std::cout, jobs) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
