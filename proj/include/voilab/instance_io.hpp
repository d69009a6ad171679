/**
 * @file instance_io.hpp
 * @brief JSON instance files.
 *
 * Layout:
 *
 *     {
 *       "states":   ["s1", "s2", "s3"],
 *       "actions":  ["a1", "a2", "a3"],
 *       "rewards":  [["12", "0", "3"], ...],          // rows = actions
 *       "channels": {"i": [["3/4", "1/4", "1/4"], ...]} // rows = outcomes
 *     }
 *
 * Numbers are strings so that no precision is lost. Bare JSON integers are
 * tolerated; JSON floats are rejected.
 */
#pragma once

#include <map>
#include <string>
#include <string_view>

#include "json.hpp"
#include "voilab/model.hpp"

namespace voilab {

namespace detail {

inline Rational rational_from_json(const nlohmann::json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (v.is_number_integer()) {
        if (v.is_number_unsigned()) return Rational(Integer(std::to_string(v.get<unsigned long long>())));
        return Rational(Integer(std::to_string(v.get<long long>())));
    }
    if (v.is_number_float())
        throw ParseError(where + ": floating-point number; write it as a string such as \"3/4\"");
    throw ParseError(where + ": expected a rational string");
}

inline Matrix matrix_from_json(const nlohmann::json& v, const std::string& where) {
    if (!v.is_array()) throw ParseError(where + ": expected an array of rows");
    Matrix m;
    for (std::size_t r = 0; r < v.size(); ++r) {
        const auto& row = v[r];
        const std::string rw = where + "[" + std::to_string(r) + "]";
        if (!row.is_array()) throw ParseError(rw + ": expected an array");
        std::vector<Rational> out;
        for (std::size_t c = 0; c < row.size(); ++c)
            out.push_back(rational_from_json(row[c], rw + "[" + std::to_string(c) + "]"));
        m.push_back(std::move(out));
    }
    return m;
}

inline std::vector<std::string> names_from_json(const nlohmann::json& v, const std::string& where) {
    if (!v.is_array()) throw ParseError(where + ": expected an array of names");
    std::vector<std::string> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_string())
            throw ParseError(where + "[" + std::to_string(k) + "]: expected a string");
        out.push_back(v[k].get<std::string>());
    }
    return out;
}

inline nlohmann::ordered_json matrix_to_json(const Matrix& m) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& row : m) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& x : row) r.push_back(to_string(x));
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace detail

inline ProblemInstance instance_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ParseError("instance: top level must be an object");
    for (const char* key : {"states", "actions", "rewards", "channels"})
        if (!doc.contains(key)) throw ParseError(std::string("instance: missing field '") + key + "'");

    auto states = detail::names_from_json(doc["states"], "states");
    auto actions = detail::names_from_json(doc["actions"], "actions");
    auto rewards = detail::matrix_from_json(doc["rewards"], "rewards");
    DecisionProblem problem(std::move(states), std::move(actions), std::move(rewards));

    const auto& chans = doc["channels"];
    if (!chans.is_object()) throw ParseError("channels: expected an object keyed by channel name");
    std::map<std::string, Channel> channels;
    for (const auto& [name, kernel] : chans.items()) {
        Channel ch(name, detail::matrix_from_json(kernel, "channels." + name));
        channels.emplace(name, std::move(ch));
    }
    return ProblemInstance(std::move(problem), std::move(channels));
}

/// Parses and validates an instance document. Throws ParseError or ValidationError.
inline ProblemInstance parse_instance(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("instance: malformed JSON: ") + e.what());
    }
    return instance_from_json(doc);
}

inline nlohmann::ordered_json instance_to_json(const ProblemInstance& inst) {
    nlohmann::ordered_json doc;
    doc["states"] = inst.problem().state_names();
    doc["actions"] = inst.problem().action_names();
    doc["rewards"] = detail::matrix_to_json(inst.problem().rewards());
    auto chans = nlohmann::ordered_json::object();
    for (const auto& [name, ch] : inst.channels()) chans[name] = detail::matrix_to_json(ch.kernel());
    doc["channels"] = std::move(chans);
    return doc;
}

inline std::string serialize_instance(const ProblemInstance& inst, int indent = 2) {
    return instance_to_json(inst).dump(indent);
}

/// Instance holding `prob` and the two channels, keyed by their names (or
/// "i"/"j" when the names collide). Used for reproducers.
inline ProblemInstance make_pair_instance(const DecisionProblem& prob, const Channel& ch_i,
                                          const Channel& ch_j) {
    std::map<std::string, Channel> chans;
    if (ch_i.name() != ch_j.name()) {
        chans.emplace(ch_i.name(), ch_i);
        chans.emplace(ch_j.name(), ch_j);
    } else {
        chans.emplace("i", Channel("i", ch_i.kernel()));
        chans.emplace("j", Channel("j", ch_j.kernel()));
    }
    return ProblemInstance(prob, std::move(chans));
}

} // namespace voilab
