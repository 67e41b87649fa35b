#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wlcc/census.hpp"
#include "wlcc/closure.hpp"
#include "wlcc/generators.hpp"
#include "wlcc/irredundant.hpp"
#include "wlcc/oracle.hpp"
#include "wlcc/reduction.hpp"
#include "wlcc/selftest.hpp"
#include "wlcc/structure.hpp"

namespace {

using namespace wlcc;

ColoredSquareMatrix load_ccm(const std::string& path) {
    if (path == "-") return read_ccm(std::cin);
    return read_ccm_file(path);
}

void emit_ccm(const std::string& path, const ColoredSquareMatrix& m) {
    if (path.empty() || path == "-")
        write_ccm(std::cout, m);
    else
        write_ccm_file(path, m);
}

CoherentConfiguration load_config(const std::string& path) {
    ColoredSquareMatrix m = load_ccm(path);
    auto diags = validate_colored_graph(m);
    if (!diags.empty()) throw InputError("input: " + diags.front().what);
    auto res = verify_coherence(Rainbow::from_matrix(m));
    if (auto* w = std::get_if<FailureWitness>(&res)) {
        std::ostringstream os;
        os << "input is not coherent: p^T_RS differs on (" << w->pair1.first << ","
           << w->pair1.second << ") and (" << w->pair2.first << "," << w->pair2.second
           << ") for T=" << w->T << " R=" << w->R << " S=" << w->S;
        throw InputError(os.str());
    }
    return std::get<CoherentConfiguration>(std::move(res));
}

int env_threads() {
    if (const char* env = std::getenv("WLCC_THREADS")) return std::atoi(env);
    return 0;
}

int cmd_close(const std::string& in, const std::string& out) {
    ColoredSquareMatrix m = load_ccm(in);
    auto diags = validate_colored_graph(m);
    if (!diags.empty()) throw InputError("input: " + diags.front().what);
    ClosureResult res = coherent_closure(Rainbow::from_matrix(normalize_transpose(m)));
    std::cout << "rounds " << res.rounds << "\n";
    std::cout << "fibers";
    for (const auto& f : res.config.fibers()) std::cout << ' ' << f.size();
    std::cout << "\n";
    if (!out.empty()) emit_ccm(out, res.config.matrix());
    return 0;
}

int cmd_classify(const std::string& in) {
    CoherentConfiguration c = load_config(in);
    for (int f = 0; f < c.num_fibers(); ++f)
        std::cout << "cell " << f << " size " << c.fiber_size(f) << " type "
                  << to_string(classify_cell(c, f)) << "\n";
    for (int fx = 0; fx < c.num_fibers(); ++fx)
        for (int fy = fx + 1; fy < c.num_fibers(); ++fy) {
            auto info = classify_interspace(c, fx, fy);
            std::cout << "interspace " << fx << ' ' << fy << " type " << to_string(info.tag)
                      << (info.contains_matching ? " matching" : "") << "\n";
        }
    return 0;
}

int cmd_separable(const std::string& in) {
    CoherentConfiguration c = load_config(in);
    SeparabilityResult res = decide_separable(c);
    if (res.separable) {
        std::cout << "SEPARABLE\n";
    } else {
        std::cout << "NON-SEPARABLE witness fiber@" << res.witness->generator_fiber
                  << " hyperedge";
        for (int f : res.witness->generator_hyperedge) std::cout << " @" << f;
        std::cout << "\n";
    }
    std::cout << to_string(res.trace);
    return 0;
}

int cmd_amenable(const std::string& in, const std::string& companion_out) {
    ColoredSquareMatrix g = load_ccm(in);
    AmenabilityResult res = decide_amenable(g);
    if (res.amenable) {
        std::cout << "AMENABLE\n";
    } else {
        std::cout << "NON-AMENABLE\n";
        if (!companion_out.empty()) emit_ccm(companion_out, *res.companion);
    }
    return 0;
}

int cmd_equiv(const std::string& a, const std::string& b) {
    auto res = wl2_equivalent(load_ccm(a), load_ccm(b));
    std::cout << (res.equivalent ? "EQUIVALENT" : "NOT-EQUIVALENT") << " rounds " << res.rounds
              << "\n";
    return 0;
}

int cmd_iso(const std::string& a, const std::string& b, bool ignore_vertex_colors) {
    auto iso = oracle::graph_iso(load_ccm(a), load_ccm(b), !ignore_vertex_colors);
    if (iso) {
        std::cout << "ISOMORPHIC";
        for (int v : *iso) std::cout << ' ' << v;
        std::cout << "\n";
    } else {
        std::cout << "NON-ISOMORPHIC\n";
    }
    return 0;
}

int cmd_gen(const std::string& family, const std::vector<std::string>& args,
            const std::string& out) {
    auto need_args = [&](size_t k) {
        if (args.size() != k)
            throw InputError("gen " + family + ": expected " + std::to_string(k) + " argument(s)");
    };
    if (family == "cfi") {
        need_args(1);
        emit_ccm(out, skew_config(read_edge_list_file(args[0])).matrix());
    } else if (family == "cyclic") {
        need_args(1);
        emit_ccm(out, pls_to_config(cyclic_pls(std::stoi(args[0]))).matrix());
    } else if (family == "fano") {
        need_args(0);
        emit_ccm(out, pls_to_config(fano()).matrix());
    } else if (family == "mk") {
        need_args(0);
        emit_ccm(out, pls_to_config(mobius_kantor()).matrix());
    } else if (family == "pappus") {
        need_args(0);
        emit_ccm(out, pls_to_config(pappus()).matrix());
    } else if (family == "t16") {
        need_args(0);
        emit_ccm(out, t16().matrix());
    } else if (family == "pls") {
        need_args(1);
        emit_ccm(out, pls_to_config(read_pls_file(args[0])).matrix());
    } else if (family == "shrikhande-rook") {
        need_args(0);
        auto pair = census::shrikhande_rook_pair();
        if (out.empty() || out == "-") {
            write_ccm(std::cout, pair.shrikhande);
            write_ccm(std::cout, pair.rook);
        } else {
            write_ccm_file(out + "_a.ccm", pair.shrikhande);
            write_ccm_file(out + "_b.ccm", pair.rook);
        }
    } else {
        throw InputError("gen: unknown family '" + family + "'");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decides 2-WL identifiability of colored graphs with color multiplicity <= 4"};
    app.require_subcommand(1);

    std::string in, out, in_b;
    bool ignore_vertex_colors = false;
    std::string family, census_dir;
    std::vector<std::string> gen_args;

    auto* close = app.add_subcommand("close", "coherent closure of a colored graph");
    close->add_option("input", in, ".ccm file or -")->required();
    close->add_option("-o,--output", out, "write the closure as .ccm");

    auto* classify = app.add_subcommand("classify", "cell and interspace taxonomy");
    classify->add_option("input", in)->required();

    auto* separable = app.add_subcommand("separable", "separability of a coherent configuration");
    separable->add_option("input", in)->required();

    auto* amenable = app.add_subcommand("amenable", "2-WL identifiability of a colored graph");
    amenable->add_option("input", in)->required();
    amenable->add_option("--companion", out, "write the WL2-equivalent companion on NON-AMENABLE");

    auto* equiv = app.add_subcommand("equiv", "2-WL equivalence of two colored graphs");
    equiv->add_option("a", in)->required();
    equiv->add_option("b", in_b)->required();

    auto* iso = app.add_subcommand("iso", "exact isomorphism of two colored graphs");
    iso->add_option("a", in)->required();
    iso->add_option("b", in_b)->required();
    iso->add_flag("--ignore-vertex-colors", ignore_vertex_colors);

    auto* gen = app.add_subcommand("gen", "generate an instance family");
    gen->add_option("family", family, "cfi|cyclic|fano|mk|pappus|t16|pls|shrikhande-rook")
        ->required();
    gen->add_option("args", gen_args, "family arguments");
    gen->add_option("-o,--output", out, "output file (default stdout)");

    auto* census_cmd = app.add_subcommand("census16", "materialize the 16-vertex census");
    census_cmd->add_option("--out", census_dir, "output directory")->required();

    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (close->parsed()) return cmd_close(in, out);
        if (classify->parsed()) return cmd_classify(in);
        if (separable->parsed()) return cmd_separable(in);
        if (amenable->parsed()) return cmd_amenable(in, out);
        if (equiv->parsed()) return cmd_equiv(in, in_b);
        if (iso->parsed()) return cmd_iso(in, in_b, ignore_vertex_colors);
        if (gen->parsed()) return cmd_gen(family, gen_args, out);
        if (census_cmd->parsed()) {
            auto report = wlcc::census::census16(census_dir, env_threads());
            std::cout << "classes " << report.classes << "\ngraphs " << report.graphs << "\n";
            return report.all_passed ? 0 : 3;
        }
        if (selftest->parsed()) {
            auto results = wlcc::selftest::run_all(std::cout, env_threads());
            return wlcc::selftest::all_passed(results) ? 0 : 1;
        }
    } catch (const wlcc::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const wlcc::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
