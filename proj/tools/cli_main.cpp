// Command-line front end: construct and validate sets, emit matrices, run
// the identity and path-algebra suites, analyze weight-2 blocks, render
// tilings.  Exit codes: 0 pass, 1 check failure, 2 usage or input error.

#include <CLI11.hpp>

#include <cubist/blocks.hpp>
#include <cubist/flips.hpp>
#include <cubist/json_io.hpp>
#include <cubist/oracle.hpp>
#include <cubist/qmatrix.hpp>
#include <cubist/render.hpp>
#include <cubist/set.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cubist;

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

std::vector<long long> parse_longs(const std::string& s) {
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoll(item));
    return out;
}

std::vector<Point> parse_points(const std::string& s) {
    std::vector<Point> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (!item.empty()) out.push_back(parse_ints(item));
    return out;
}

CubistSet load_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j = json::parse(in);
    return set_from_json(j);
}

/// --window lo1,..:hi1,..  or  --radius R (cube around the origin).
Box resolve_window(int rank, const std::string& window, int radius) {
    if (!window.empty()) {
        auto sep = window.find(':');
        if (sep == std::string::npos)
            throw std::runtime_error("window must look like lo1,lo2:hi1,hi2");
        return Box(parse_ints(window.substr(0, sep)), parse_ints(window.substr(sep + 1)));
    }
    return Box::cube(rank, radius);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

struct CommonOpts {
    std::string set_path;
    std::string window;
    int radius = 3;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for Cubist subsets of Z^r and their graded matrices"};
    app.require_subcommand(1);

    CommonOpts opt;
    int cutoff = 10;
    int max_degree = 4;
    std::string kind = "cu";
    std::string at;
    int exit_code = 0;

    auto add_set_window = [&](CLI::App* cmd, bool needs_window = true) {
        cmd->add_option("set", opt.set_path, "Cubist set JSON file")->required();
        if (needs_window) {
            cmd->add_option("--window", opt.window, "box lo1,lo2,..:hi1,hi2,..");
            cmd->add_option("--radius", opt.radius, "cube window radius (default 3)");
        }
    };

    // validate
    auto* c_validate = app.add_subcommand("validate", "check the removal list");
    add_set_window(c_validate, false);
    c_validate->callback([&] {
        CubistSet set = load_set(opt.set_path);
        ValidationResult res = set.validate();
        emit(json{{"ok", res.ok}, {"index", res.index}, {"reason", res.reason}});
        if (!res.ok) exit_code = 1;
    });

    // matrix
    auto* c_matrix = app.add_subcommand("matrix", "emit a graded matrix over a window");
    add_set_window(c_matrix);
    c_matrix->add_option("--kind", kind, "du | dv | cu | cv")->required();
    c_matrix->add_option("--cutoff", cutoff, "series cutoff for cv");
    c_matrix->callback([&] {
        CubistSet set = load_set(opt.set_path);
        Box window = resolve_window(set.rank(), opt.window, opt.radius);
        if (kind == "du") emit(to_json(d_u(set, window)));
        else if (kind == "dv") emit(to_json(d_v(set, window)));
        else if (kind == "cu") emit(to_json(c_u_brauer(set, window)));
        else if (kind == "cv") emit(to_json(c_v(set, window, cutoff)));
        else throw CLI::ValidationError("--kind must be du, dv, cu or cv");
    });

    // verify
    auto* c_verify = app.add_subcommand("verify", "run the matrix identity checks");
    add_set_window(c_verify);
    c_verify->add_option("--cutoff", cutoff, "series cutoff (>= 2r)");
    c_verify->callback([&] {
        CubistSet set = load_set(opt.set_path);
        Box window = resolve_window(set.rank(), opt.window, opt.radius);
        VerifyReport rep = verify_identities(set, window, cutoff);
        emit(to_json(rep));
        if (!rep.all_pass()) exit_code = 1;
    });

    // oracle
    auto* c_oracle = app.add_subcommand(
        "oracle", "compare path-algebra dimensions against closed forms");
    add_set_window(c_oracle);
    c_oracle->add_option("--kind", kind, "u | v | vfull")->required();
    auto* degree_opt =
        c_oracle->add_option("--max-degree", max_degree,
                             "largest degree checked (default: 2r-2 for u, 4 else)");
    c_oracle->callback([&] {
        CubistSet set = load_set(opt.set_path);
        Box window = resolve_window(set.rank(), opt.window, opt.radius);
        QuiverPresentation pres =
            kind == "u"       ? QuiverPresentation::u_of(set)
            : kind == "v"     ? QuiverPresentation::v_of(set)
            : kind == "vfull" ? QuiverPresentation::v_full(set.rank())
                              : throw CLI::ValidationError("--kind must be u, v or vfull");
        int degree = max_degree;
        if (degree_opt->count() == 0) degree = kind == "u" ? 2 * set.rank() - 2 : 4;
        OracleReport rep = oracle_check(pres, window, degree);
        emit(to_json(rep));
        if (!rep.pass()) exit_code = 1;
    });

    // flip
    auto* c_flip = app.add_subcommand("flip", "flip at a maximal vertex");
    add_set_window(c_flip, false);
    c_flip->add_option("--at", at, "vertex x1,x2,..")->required();
    c_flip->callback([&] {
        CubistSet set = load_set(opt.set_path);
        emit(to_json(flip(set, parse_ints(at))));
    });

    // flipcheck
    auto* c_flipcheck =
        app.add_subcommand("flipcheck", "compare the flipped Cartan matrix "
                                        "against its prediction");
    add_set_window(c_flipcheck);
    c_flipcheck->add_option("--at", at, "vertex x1,x2,..")->required();
    c_flipcheck->callback([&] {
        CubistSet set = load_set(opt.set_path);
        Box window = resolve_window(set.rank(), opt.window, opt.radius);
        FlipCheckReport rep = check_flip_cartan(set, parse_ints(at), window);
        emit(to_json(rep));
        if (!rep.pass) exit_code = 1;
    });

    // block
    std::string core_str, gaps_str, set_out;
    int prime = 7;
    auto* c_block = app.add_subcommand(
        "block", "weight-2 block combinatorics from a core or a gap vector");
    c_block->add_option("--p", prime, "odd prime")->required();
    c_block->add_option("--core", core_str, "core partition a,b,c,..");
    c_block->add_option("--gaps", gaps_str, "gap vector q0,q1,..");
    c_block->add_option("--emit-set", set_out, "also write the Cubist set JSON here");
    c_block->callback([&] {
        BlockDescriptor b =
            gaps_str.empty()
                ? make_block(prime, Partition(parse_longs(core_str)))
                : make_block_from_gaps(prime, parse_longs(gaps_str));
        emit(to_json(b));
        if (!set_out.empty()) {
            std::ofstream out(set_out);
            out << to_json(cubist_from_block(b)).dump(2) << "\n";
        }
    });

    // block-cartan
    auto* c_block_cartan = app.add_subcommand(
        "block-cartan", "Cartan matrix of the block truncation");
    c_block_cartan->add_option("--p", prime, "odd prime")->required();
    c_block_cartan->add_option("--core", core_str, "core partition a,b,c,..");
    c_block_cartan->add_option("--gaps", gaps_str, "gap vector q0,q1,..");
    c_block_cartan->callback([&] {
        BlockDescriptor b =
            gaps_str.empty()
                ? make_block(prime, Partition(parse_longs(core_str)))
                : make_block_from_gaps(prime, parse_longs(gaps_str));
        emit(to_json(block_truncated_cartan(b)));
    });

    // render
    std::string out_path, discs, squares, rings;
    bool ring_flippable = false;
    auto* c_render = app.add_subcommand("render", "emit an SVG tiling");
    add_set_window(c_render);
    c_render->add_option("--out", out_path, "output file (default <hash>-<window>.svg)");
    c_render->add_option("--mark-disc", discs, "vertices x1,y1,..;x2,y2,..");
    c_render->add_option("--mark-square", squares, "vertices");
    c_render->add_option("--mark-ring", rings, "vertices");
    c_render->add_flag("--ring-flippable", ring_flippable, "ring all flippable vertices");
    c_render->callback([&] {
        CubistSet set = load_set(opt.set_path);
        Box window = resolve_window(set.rank(), opt.window, opt.radius);
        Highlights h;
        h.discs = parse_points(discs);
        h.squares = parse_points(squares);
        h.rings = parse_points(rings);
        h.ring_flippable = ring_flippable;
        std::string svg = svg_tiling(set, window, h);
        std::string path = out_path;
        if (path.empty()) {
            std::ostringstream name;
            std::string wstr = window.to_string();
            for (char& c : wstr)
                if (c == '(' || c == ')' || c == ',' || c == '.') c = '_';
            name << std::hex << fnv1a64(to_json(set).dump()) << "-" << wstr << ".svg";
            path = name.str();
        }
        if (path == "-") {
            std::cout << svg;
        } else {
            std::ofstream out(path);
            if (!out) throw std::runtime_error("cannot write " + path);
            out << svg;
            std::cout << json{{"written", path}}.dump(2) << "\n";
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }
    return exit_code;
}
