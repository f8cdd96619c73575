#pragma once

#include "rat/rational.hpp"

#include <json.hpp>

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rat {

struct DatasetError : std::runtime_error {
    enum class Kind { syntax, schema, dimension, negative, zero_price };
    Kind kind;
    std::size_t pos = 0;  // byte offset for syntax errors
    DatasetError(Kind k, const std::string& what, std::size_t p = 0)
        : std::runtime_error(what), kind(k), pos(p) {}
};

struct Observation {
    Vec price;
    Vec bundle;
    friend bool operator==(const Observation&, const Observation&) = default;
};

struct ConsumerDataset {
    int commodities = 1;
    std::vector<Observation> observations;

    std::size_t size() const { return observations.size(); }
    const Vec& p(std::size_t i) const { return observations[i].price; }
    const Vec& x(std::size_t i) const { return observations[i].bundle; }
    friend bool operator==(const ConsumerDataset&, const ConsumerDataset&) = default;
};

enum class TiePolicy { reject, keep };

// Structural checks shared by the parser and the generators.
inline void check_structure(const ConsumerDataset& ds) {
    using K = DatasetError::Kind;
    if (ds.commodities < 1) throw DatasetError(K::schema, "commodities must be positive");
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto& o = ds.observations[i];
        const std::string at = "observation " + std::to_string(i + 1);
        if (o.price.size() != std::size_t(ds.commodities) || o.bundle.size() != std::size_t(ds.commodities))
            throw DatasetError(K::dimension, at + ": dimension mismatch");
        bool pos = false;
        for (const auto& v : o.price) {
            if (v.sign() < 0) throw DatasetError(K::negative, at + ": negative price coordinate");
            pos |= v.sign() > 0;
        }
        for (const auto& v : o.bundle)
            if (v.sign() < 0) throw DatasetError(K::negative, at + ": negative bundle coordinate");
        if (!pos) throw DatasetError(K::zero_price, at + ": all-zero price vector");
    }
}

namespace detail {
inline Vec parse_vec(const nlohmann::json& j, const std::string& where) {
    using K = DatasetError::Kind;
    if (!j.is_array()) throw DatasetError(K::schema, where + ": expected array");
    Vec v;
    for (const auto& e : j) {
        if (!e.is_string()) throw DatasetError(K::schema, where + ": coordinates must be strings");
        try {
            v.push_back(Rational::parse(e.get<std::string>()));
        } catch (const ParseError& pe) {
            throw DatasetError(K::syntax, where + ": bad number '" + e.get<std::string>() + "' (" + pe.what() + ")");
        }
    }
    return v;
}
} // namespace detail

inline ConsumerDataset dataset_from_json(const nlohmann::json& j) {
    using K = DatasetError::Kind;
    if (!j.is_object() || !j.contains("commodities") || !j.contains("observations"))
        throw DatasetError(K::schema, "expected object with 'commodities' and 'observations'");
    if (!j["commodities"].is_number_integer()) throw DatasetError(K::schema, "'commodities' must be an integer");
    ConsumerDataset ds;
    ds.commodities = j["commodities"].get<int>();
    if (!j["observations"].is_array()) throw DatasetError(K::schema, "'observations' must be an array");
    std::size_t i = 0;
    for (const auto& o : j["observations"]) {
        ++i;
        if (!o.is_object() || !o.contains("price") || !o.contains("bundle"))
            throw DatasetError(K::schema, "observation " + std::to_string(i) + ": needs 'price' and 'bundle'");
        ds.observations.push_back({detail::parse_vec(o["price"], "observation " + std::to_string(i) + " price"),
                                   detail::parse_vec(o["bundle"], "observation " + std::to_string(i) + " bundle")});
    }
    check_structure(ds);
    return ds;
}

inline ConsumerDataset parse_dataset(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DatasetError(DatasetError::Kind::syntax, e.what(), e.byte);
    }
    return dataset_from_json(j);
}

inline nlohmann::json to_json(const ConsumerDataset& ds) {
    nlohmann::json obs = nlohmann::json::array();
    for (const auto& o : ds.observations) {
        nlohmann::json p = nlohmann::json::array(), x = nlohmann::json::array();
        for (const auto& v : o.price) p.push_back(v.str());
        for (const auto& v : o.bundle) x.push_back(v.str());
        obs.push_back({{"price", p}, {"bundle", x}});
    }
    return {{"commodities", ds.commodities}, {"observations", obs}};
}

inline std::string serialize(const ConsumerDataset& ds, int indent = -1) { return to_json(ds).dump(indent); }

struct Finding {
    enum class Kind { duplicate, tie };
    Kind kind;
    bool fatal;
    std::size_t i, j;  // 0-based; for ties: p_i.x_i == p_i.x_j
};

struct ValidationReport {
    std::vector<Finding> findings;
    bool ok() const {
        for (const auto& f : findings)
            if (f.fatal) return false;
        return true;
    }
    std::size_t count(Finding::Kind k) const {
        std::size_t c = 0;
        for (const auto& f : findings) c += f.kind == k;
        return c;
    }
};

inline ValidationReport validate(const ConsumerDataset& ds, TiePolicy policy = TiePolicy::reject) {
    ValidationReport r;
    std::map<Vec, std::size_t> seen;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        auto [it, fresh] = seen.emplace(ds.x(i), i);
        if (!fresh) r.findings.push_back({Finding::Kind::duplicate, true, it->second, i});
    }
    for (std::size_t i = 0; i < ds.size(); ++i) {
        Rational own = dot(ds.p(i), ds.x(i));
        for (std::size_t j = 0; j < ds.size(); ++j) {
            if (i == j || ds.x(i) == ds.x(j)) continue;
            if (dot(ds.p(i), ds.x(j)) == own)
                r.findings.push_back({Finding::Kind::tie, policy == TiePolicy::reject, i, j});
        }
    }
    return r;
}

inline std::string describe(const Finding& f) {
    if (f.kind == Finding::Kind::duplicate)
        return "duplicate bundle: observations " + std::to_string(f.i + 1) + " and " + std::to_string(f.j + 1);
    return "tie: p" + std::to_string(f.i + 1) + ".x" + std::to_string(f.i + 1) + " = p" + std::to_string(f.i + 1) +
           ".x" + std::to_string(f.j + 1);
}

} // namespace rat
