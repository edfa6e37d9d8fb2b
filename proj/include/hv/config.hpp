#pragma once
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "hv/errors.hpp"

namespace hv {

struct RunConfig {
    std::size_t order = 4096;  // default truncation for norm experiments
    int J = 12;                // radius-ladder depth
    int L = 10;                // Carleson box depth
    int gauss_points = 128;
    std::optional<std::size_t> angles;  // nullopt: sized per use ("auto")
    double tol_converge = 1e-6;
    double tol_identity = 1e-12;
    std::uint64_t seed = 20240917;
    int threads = 1;

    static int env_threads() {
        const char* s = std::getenv("HVLAB_THREADS");
        if (!s) return 1;
        int t = std::atoi(s);
        if (t < 1) t = 1;
        if (t > 64) t = 64;
        return t;
    }

    static RunConfig from_json(const nlohmann::json& j) {
        RunConfig c;
        c.threads = env_threads();
        if (j.contains("order")) c.order = j.at("order").get<std::size_t>();
        if (j.contains("J")) c.J = j.at("J").get<int>();
        if (j.contains("L")) c.L = j.at("L").get<int>();
        if (j.contains("gauss_points")) c.gauss_points = j.at("gauss_points").get<int>();
        if (j.contains("angles")) {
            const auto& a = j.at("angles");
            if (a.is_string()) {
                if (a.get<std::string>() != "auto")
                    throw invalid_spec("config angles must be a number or \"auto\"");
            } else {
                c.angles = a.get<std::size_t>();
            }
        }
        if (j.contains("tol")) c.tol_converge = j.at("tol").get<double>();
        if (j.contains("tol_converge")) c.tol_converge = j.at("tol_converge").get<double>();
        if (j.contains("tol_identity")) c.tol_identity = j.at("tol_identity").get<double>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (c.J < 1 || c.J > 40) throw invalid_spec("config J out of range");
        if (c.L < 0 || c.L > 24) throw invalid_spec("config L out of range");
        if (c.gauss_points < 2 || c.gauss_points > 2048)
            throw invalid_spec("config gauss_points out of range");
        return c;
    }

    static RunConfig load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw invalid_spec("cannot open config file: " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw invalid_spec(std::string("config parse error: ") + e.what());
        }
        return from_json(j);
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["order"] = order;
        j["J"] = J;
        j["L"] = L;
        j["gauss_points"] = gauss_points;
        if (angles)
            j["angles"] = *angles;
        else
            j["angles"] = "auto";
        j["tol_converge"] = tol_converge;
        j["tol_identity"] = tol_identity;
        j["seed"] = seed;
        return j;
    }
};

} // namespace hv
