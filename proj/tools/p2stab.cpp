// Batch front-end: parse inputs, dispatch to the analysis layer, emit reports.
// Exit codes: 0 completed (verdicts may be inconclusive), 2 input error,
// 3 internal invariant violation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "p2stab/analysis.hpp"

using p2stab::json;

namespace {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw p2stab::input_error("cannot open file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw p2stab::input_error("cannot parse '" + path + "': " + e.what());
    }
}

json parse_triple(const std::string& text, const char* what) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 3)
        throw p2stab::input_error(std::string(what) + " must be three comma-separated values");
    json arr = json::array();
    for (std::string& p : parts) {
        const auto b = p.find_first_not_of(" \t");
        const auto e = p.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw p2stab::input_error(std::string(what) + " has an empty component");
        arr.push_back(p2stab::rational_to_json(p2stab::parse_rational(p.substr(b, e - b + 1))));
    }
    return arr;
}

struct CommonOpts {
    std::string in;
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 0;
    bool timing = false;
};

void add_common(CLI::App* sub, CommonOpts& c, bool in_required) {
    auto* o = sub->add_option("--in", c.in, "input file (JSON)");
    if (in_required) o->required();
    sub->add_option("--out", c.out, "write the report to this file instead of stdout");
    sub->add_option("--seed", c.seed, "seed for sampled candidate generation");
    sub->add_option("--format", c.format, "output format (json)");
    sub->add_flag("--timing", c.timing, "report wall-clock timing instead of zero");
}

int emit(const json& report, const CommonOpts& c) {
    if (c.format != "json")
        throw p2stab::input_error("unsupported output format '" + c.format + "'");
    const std::string text = report.dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(c.out);
        if (!f) throw p2stab::input_error("cannot open output file '" + c.out + "'");
        f << text;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GIT stability toolkit for plane curves and sheaves on the projective plane"};
    app.require_subcommand(1);

    CommonOpts curve_c;
    std::string curve_point;
    CLI::App* curve = app.add_subcommand("curve", "instability of a plane curve");
    add_common(curve, curve_c, true);
    curve->add_option("--point", curve_point,
                      "test this point x,y,z; omitted: scan rational singular points");

    CommonOpts chern_c;
    std::int64_t chern_r = 0, chern_c1 = 0, chern_c2 = 0;
    CLI::App* chern = app.add_subcommand("chern", "Chern-class arithmetic");
    add_common(chern, chern_c, false);
    auto* ropt = chern->add_option("--r", chern_r, "rank");
    chern->add_option("--c1", chern_c1, "first Chern class");
    chern->add_option("--c2", chern_c2, "second Chern class");

    CommonOpts hul_c;
    bool hul_jump = false, hul_check = false, hul_split = false, hul_equi = false;
    std::string hul_line, hul_matrix;
    CLI::App* hul = app.add_subcommand("hulsbergen", "point-configuration sheaf analysis");
    add_common(hul, hul_c, true);
    hul->add_flag("--jump-curve", hul_jump, "emit the jump curve");
    hul->add_flag("--splitting", hul_split, "splitting type on the line given by --line");
    hul->add_option("--line", hul_line, "line coefficients a0,a1,a2");
    hul->add_flag("--check-unstable", hul_check, "decide (in)stability over all secants");
    hul->add_flag("--equivariance", hul_equi, "check equivariance under --matrix");
    hul->add_option("--matrix", hul_matrix, "matrix file for --equivariance");

    CommonOpts monad_c;
    bool mon_cond = false, mon_div = false, mon_phi = false, mon_inst = false, mon_lemmas = false;
    std::string mon_line, mon_vprime;
    CLI::App* monad = app.add_subcommand("monad", "Kronecker-pair sheaf analysis");
    add_common(monad, monad_c, true);
    monad->add_flag("--check-condition", mon_cond, "validate rank and composition conditions");
    monad->add_flag("--jump-divisor", mon_div, "emit the pencil determinant");
    monad->add_flag("--phi", mon_phi, "pencil matrix on the line given by --line");
    monad->add_option("--line", mon_line, "line coefficients l1,l2,l3");
    monad->add_flag("--instability", mon_inst, "run the subspace criterion against --vprime");
    monad->add_option("--vprime", mon_vprime,
                      "V' as a covector l1,l2,l3 (annihilator plane) or a basis-matrix file");
    monad->add_flag("--validate-lemmas", mon_lemmas, "sample the structure lemmas");

    CommonOpts replay_c;
    CLI::App* replay = app.add_subcommand("replay", "re-verify a previously emitted report");
    add_common(replay, replay_c, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        p2stab::AnalysisRequest req;
        CommonOpts* common = nullptr;

        if (curve->parsed()) {
            common = &curve_c;
            req.command = "curve";
            req.input = load_json_file(curve_c.in);
            if (!curve_point.empty())
                req.options["point"] = parse_triple(curve_point, "--point");
        } else if (chern->parsed()) {
            common = &chern_c;
            req.command = "chern";
            if (!chern_c.in.empty()) {
                req.input = load_json_file(chern_c.in);
            } else {
                if (ropt->count() == 0)
                    throw p2stab::input_error("chern: provide --in or --r/--c1/--c2");
                req.input = json{{"rank", chern_r}, {"c1", chern_c1}, {"c2", chern_c2}};
            }
        } else if (hul->parsed()) {
            common = &hul_c;
            req.command = "hulsbergen";
            req.input = load_json_file(hul_c.in);
            if (hul_jump) req.options["jump_curve"] = true;
            if (hul_check) req.options["check_unstable"] = true;
            if (hul_split) {
                if (hul_line.empty())
                    throw p2stab::input_error("hulsbergen: --splitting needs --line a0,a1,a2");
                req.options["splitting"] = parse_triple(hul_line, "--line");
            }
            if (hul_equi) {
                if (hul_matrix.empty())
                    throw p2stab::input_error("hulsbergen: --equivariance needs --matrix <file>");
                req.options["equivariance"] = load_json_file(hul_matrix);
            }
        } else if (monad->parsed()) {
            common = &monad_c;
            req.command = "monad";
            req.input = load_json_file(monad_c.in);
            if (mon_cond) req.options["check_condition"] = true;
            if (mon_div) req.options["jump_divisor"] = true;
            if (mon_phi) {
                if (mon_line.empty())
                    throw p2stab::input_error("monad: --phi needs --line l1,l2,l3");
                req.options["phi"] = parse_triple(mon_line, "--line");
            }
            if (mon_inst) {
                if (mon_vprime.empty())
                    throw p2stab::input_error("monad: --instability needs --vprime");
                if (mon_vprime.find(',') != std::string::npos)
                    req.options["vprime"] = parse_triple(mon_vprime, "--vprime");
                else
                    req.options["vprime"] = load_json_file(mon_vprime);
            }
            if (mon_lemmas) req.options["validate_lemmas"] = true;
        } else if (replay->parsed()) {
            const json report = load_json_file(replay_c.in);
            std::vector<std::string> warnings;
            const bool ok = p2stab::replay(report, &warnings);
            json out;
            out["replay_ok"] = ok;
            out["warnings"] = warnings;
            return emit(out, replay_c);
        }

        req.seed = common->seed;
        req.timing = common->timing;
        return emit(p2stab::run(req), *common);
    } catch (const p2stab::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const p2stab::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
