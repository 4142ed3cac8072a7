#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "qbs/cartan.hpp"

namespace qbs {

// Datum file schema: { "index": [...], "A": [[...]], "s": [...], "m": [...],
// "theta": [[...]] }. Serialization is canonical so parse -> serialize -> parse
// is the identity.
inline Datum datumFromJson(const nlohmann::json& j) {
    try {
        return Datum(j.at("index").get<std::vector<std::string>>(),
                     j.at("A").get<std::vector<std::vector<long>>>(),
                     j.at("s").get<std::vector<long>>(),
                     j.at("m").get<std::vector<long>>(),
                     j.at("theta").get<std::vector<std::vector<int>>>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad datum document: ") + e.what());
    }
}

inline nlohmann::json datumToJson(const Datum& d) {
    return nlohmann::json{{"index", d.index()},
                          {"A", d.cartanMatrix()},
                          {"s", d.symmetrizer()},
                          {"m", d.charge()},
                          {"theta", d.coloring()}};
}

inline Datum datumFromFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open datum file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad JSON in ") + path + ": " + e.what());
    }
    return datumFromJson(j);
}

}  // namespace qbs
