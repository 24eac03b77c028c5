#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crw/errors.hpp"
#include "crw/model.hpp"
#include "crw/spectral.hpp"

namespace crw {

using nlohmann::json;

/// Parses a model config document:
///   {"n": 2, "coins": [{"p_L": 0.7, "p_R": 0.2}, ...]}
/// or the homogeneous shorthand
///   {"n": 2, "coin": {"p_L": 0.7, "p_R": 0.2}}
/// which is expanded to n+1 copies before validation.
inline PathCRWModel model_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("config must be a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw ParseError("config needs an integer field \"n\"");
    const long long n_raw = doc["n"].get<long long>();
    if (n_raw < 0) throw ParseError("\"n\" must be nonnegative");
    const std::size_t n = static_cast<std::size_t>(n_raw);

    const auto read_coin = [](const json& c, const char* where) {
        if (!c.is_object() || !c.contains("p_L") || !c.contains("p_R") ||
            !c["p_L"].is_number() || !c["p_R"].is_number())
            throw ParseError(std::string(where) + " must be {\"p_L\": <float>, \"p_R\": <float>}");
        return CoinParams{c["p_L"].get<double>(), c["p_R"].get<double>()};
    };

    std::vector<CoinParams> coins;
    if (doc.contains("coin")) {
        coins.assign(n + 1, read_coin(doc["coin"], "\"coin\""));
    } else if (doc.contains("coins")) {
        if (!doc["coins"].is_array()) throw ParseError("\"coins\" must be an array");
        for (const json& c : doc["coins"]) coins.push_back(read_coin(c, "\"coins\" entry"));
    } else {
        throw ParseError("config needs either \"coin\" or \"coins\"");
    }
    return validate_model(coins, n);
}

inline PathCRWModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return model_from_json(doc);
}

inline json model_to_json(const PathCRWModel& model) {
    json coins = json::array();
    for (const CoinParams& c : model.family.coins)
        coins.push_back({{"p_L", c.p_L}, {"p_R", c.p_R}});
    return {{"n", model.n}, {"coins", coins}};
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json decomposition_to_json(const SpectralDecomposition& decomp) {
    json pairs = json::array();
    for (const EigenPairU& p : decomp.pairs)
        pairs.push_back({{"mu", p.mu},
                         {"tag", to_string(p.tag)},
                         {"source_index", p.source_index},
                         {"u", p.u},
                         {"q", p.q}});
    return {{"nu2", decomp.nu2}, {"pairs", std::move(pairs)}};
}

inline std::string distribution_to_csv(const Distribution& dist) {
    std::ostringstream out;
    out.precision(15);
    out << "vertex,probability\n";
    for (std::size_t x = 0; x < dist.size(); ++x) out << x << "," << dist[x] << "\n";
    return out.str();
}

/// FNV-1a over the coin parameter bytes; pins a model identity in reports.
inline std::string coin_digest(const PathCRWModel& model) {
    std::uint64_t h = 1469598103934665603ULL;
    const auto mix = [&h](double v) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        std::memcpy(&bits, &v, sizeof(bits));
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xffULL;
            h *= 1099511628211ULL;
        }
    };
    for (const CoinParams& c : model.family.coins) {
        mix(c.p_L);
        mix(c.p_R);
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

/// Machine-readable command summary; save/load round-trips exactly.
struct RunReport {
    std::string command;
    std::size_t n = 0;
    double nu2 = 0.0;
    std::string digest;
    json results;
    bool passed = true;
    double wall_time_ms = 0.0;

    json to_json() const {
        return {{"command", command},
                {"model", {{"n", n}, {"nu2", nu2}, {"coins_hash", digest}}},
                {"results", results},
                {"passed", passed},
                {"wall_time_ms", wall_time_ms}};
    }

    static RunReport from_json(const json& doc) {
        RunReport r;
        r.command = doc.at("command").get<std::string>();
        r.n = doc.at("model").at("n").get<std::size_t>();
        r.nu2 = doc.at("model").at("nu2").get<double>();
        r.digest = doc.at("model").at("coins_hash").get<std::string>();
        r.results = doc.at("results");
        r.passed = doc.at("passed").get<bool>();
        r.wall_time_ms = doc.at("wall_time_ms").get<double>();
        return r;
    }

    friend bool operator==(const RunReport& a, const RunReport& b) {
        return a.to_json() == b.to_json();
    }
};

} // namespace crw
