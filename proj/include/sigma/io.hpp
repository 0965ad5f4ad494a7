#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sigma/group.hpp"
#include "sigma/partition.hpp"

namespace sigma {

namespace detail {

inline nlohmann::json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, path + ": cannot open file");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, path + ": " + e.what());
    }
    return j;
}

} // namespace detail

// Group file: {"name": str, "kind": "cayley"|"permgens",
//              "table": [[int]]            (kind = cayley)
//              "degree": int, "generators": [[int]]   (kind = permgens)}
inline Group load_group_json(const nlohmann::json& j, const std::string& where, int order_cap = 2000) {
    try {
        if (!j.is_object()) throw Error(Errc::ValidationError, where + ": expected an object");
        std::string kind = j.value("kind", "");
        std::string name = j.value("name", "G");
        if (kind == "cayley") {
            if (!j.contains("table"))
                throw Error(Errc::ValidationError, where + ": cayley group needs a \"table\"");
            auto table = j.at("table").get<std::vector<std::vector<int>>>();
            return build_from_cayley(table, name);
        }
        if (kind == "permgens") {
            if (!j.contains("degree"))
                throw Error(Errc::ValidationError, where + ": permgens group needs a \"degree\"");
            int degree = j.at("degree").get<int>();
            std::vector<Permutation> gens;
            if (j.contains("generators")) gens = j.at("generators").get<std::vector<Permutation>>();
            return generate_from_permutations(degree, gens, name, order_cap);
        }
        throw Error(Errc::ValidationError, where + ": unknown kind \"" + kind + "\"");
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ValidationError, where + ": " + e.what());
    }
}

inline Group load_group_file(const std::string& path, int order_cap = 2000) {
    return load_group_json(detail::parse_json_file(path), path, order_cap);
}

inline nlohmann::json group_to_cayley_json(const Group& g) {
    std::vector<std::vector<int>> table(g.n, std::vector<int>(g.n));
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) table[a][b] = g.at(a, b);
    return nlohmann::json{{"name", g.name}, {"kind", "cayley"}, {"table", table}};
}

inline void save_group_file(const Group& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::ParseError, path + ": cannot open file for writing");
    out << group_to_cayley_json(g).dump(1) << "\n";
}

// Partition file: {"blocks": [[int,...],...]}; unlisted primes are singletons
inline SigmaPartition load_partition_json(const nlohmann::json& j, const std::string& where) {
    try {
        if (!j.is_object() || !j.contains("blocks"))
            throw Error(Errc::ValidationError, where + ": expected {\"blocks\": [[...]]}");
        auto blocks = j.at("blocks").get<std::vector<std::vector<int64_t>>>();
        return SigmaPartition::from_blocks(std::move(blocks));
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ValidationError, where + ": " + e.what());
    }
}

inline SigmaPartition load_partition_file(const std::string& path) {
    return load_partition_json(detail::parse_json_file(path), path);
}

} // namespace sigma
