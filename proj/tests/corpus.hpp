#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "p2stab/analysis.hpp"

namespace corpus {

inline p2stab::json load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw p2stab::input_error("corpus: cannot open '" + path + "'");
    return p2stab::json::parse(in);
}

// The regression corpus: one request per CLI usage pattern, drawing inputs
// from the sample files shipped with the repository.
inline std::vector<p2stab::AnalysisRequest> regression_requests() {
    const std::string dir = P2STAB_DATA_DIR;
    using p2stab::json;
    std::vector<p2stab::AnalysisRequest> reqs;

    {
        p2stab::AnalysisRequest r;
        r.command = "curve";
        r.input = load(dir + "/cusp_quartic.json");
        r.options["point"] = json::array({0, 0, 1});
        reqs.push_back(std::move(r));
    }
    {
        p2stab::AnalysisRequest r;
        r.command = "curve";
        r.input = load(dir + "/cusp_quartic.json");
        reqs.push_back(std::move(r));
    }
    {
        p2stab::AnalysisRequest r;
        r.command = "curve";
        r.input = load(dir + "/fermat_cubic.json");
        reqs.push_back(std::move(r));
    }
    {
        p2stab::AnalysisRequest r;
        r.command = "curve";
        r.input = load(dir + "/nodal_cubic.json");
        reqs.push_back(std::move(r));
    }
    {
        p2stab::AnalysisRequest r;
        r.command = "chern";
        r.input = load(dir + "/chern_rank2_c5.json");
        reqs.push_back(std::move(r));
    }
    {
        p2stab::AnalysisRequest r;
        r.command = "chern";
        r.input = json{{"rank", 3}, {"c1", -1}, {"c2", 2}};
        reqs.push_back(std::move(r));
    }
    {
        p2stab::AnalysisRequest r;
        r.command = "hulsbergen";
        r.input = load(dir + "/triangle_config.json");
        reqs.push_back(std::move(r));
    }
    {
        p2stab::AnalysisRequest r;
        r.command = "hulsbergen";
        r.input = load(dir + "/triangle_config.json");
        r.options["jump_curve"] = true;
        r.options["splitting"] = json::array({0, 0, 1});
        reqs.push_back(std::move(r));
    }
    {
        p2stab::AnalysisRequest r;
        r.command = "hulsbergen";
        r.input = load(dir + "/collinear_seven.json");
        r.options["check_unstable"] = true;
        reqs.push_back(std::move(r));
    }
    {
        p2stab::AnalysisRequest r;
        r.command = "hulsbergen";
        r.input = load(dir + "/general_five.json");
        r.options["check_unstable"] = true;
        r.options["jump_curve"] = true;
        r.options["equivariance"] = load(dir + "/shear_matrix.json");
        reqs.push_back(std::move(r));
    }
    {
        p2stab::AnalysisRequest r;
        r.command = "monad";
        r.input = load(dir + "/conic_pencil.json");
        reqs.push_back(std::move(r));
    }
    {
        p2stab::AnalysisRequest r;
        r.command = "monad";
        r.input = load(dir + "/conic_pencil.json");
        r.options["jump_divisor"] = true;
        r.options["phi"] = json::array({1, 0, 0});
        reqs.push_back(std::move(r));
    }
    {
        p2stab::AnalysisRequest r;
        r.command = "monad";
        r.input = load(dir + "/planted_diag_monad.json");
        r.options["vprime"] = json::array({0, 0, 1});
        reqs.push_back(std::move(r));
    }
    {
        p2stab::AnalysisRequest r;
        r.command = "monad";
        r.input = load(dir + "/bside_pair.json");
        r.options["validate_lemmas"] = true;
        r.options["vprime"] = json::array({0, 1, 0});
        r.seed = 7;
        reqs.push_back(std::move(r));
    }
    return reqs;
}

} // namespace corpus
