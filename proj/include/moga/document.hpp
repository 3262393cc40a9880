#pragma once

// JSON document format for automata, shared by the CLI and the test suite.
// serialize_document and parse_document are exact inverses on the documents
// this library produces, and serialization is deterministic: object keys are
// emitted sorted, rationals as canonical "p/q" strings, floats as shortest
// round-trip numbers.

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moga/automaton.hpp"
#include "moga/boolean.hpp"
#include "moga/monoid.hpp"
#include "moga/scalar.hpp"

namespace moga {

enum class DocKind { generalized, stochastic, boolean_kind };
enum class DocBackend { rational, floating };

inline std::string doc_kind_name(DocKind k) {
    switch (k) {
        case DocKind::generalized: return "generalized";
        case DocKind::stochastic: return "stochastic";
        case DocKind::boolean_kind: return "boolean";
    }
    throw value_error("unknown document kind");
}

inline DocKind doc_kind_from_name(const std::string& s) {
    if (s == "generalized") return DocKind::generalized;
    if (s == "stochastic") return DocKind::stochastic;
    if (s == "boolean") return DocKind::boolean_kind;
    throw parse_error("kind: expected generalized, stochastic or boolean, got \"" + s + "\"");
}

inline std::string doc_backend_name(DocBackend b) {
    return b == DocBackend::rational ? "rational" : "float";
}

inline DocBackend doc_backend_from_name(const std::string& s) {
    if (s == "rational") return DocBackend::rational;
    if (s == "float") return DocBackend::floating;
    throw parse_error("backend: expected rational or float, got \"" + s + "\"");
}

// One automaton plus its cut point and a free-form provenance map. Exactly
// one of the three payloads is set, matching kind and backend.
struct Document {
    DocKind kind = DocKind::generalized;
    DocBackend backend = DocBackend::rational;
    std::optional<GeneralizedAutomaton<Rational>> rational_automaton;
    std::optional<GeneralizedAutomaton<Approx>> float_automaton;
    std::optional<BooleanMonoidalAutomaton> boolean_automaton;
    std::optional<Rational> rational_cut;
    std::optional<Approx> float_cut;
    std::map<std::string, std::string> provenance;
};

inline Document make_document(GeneralizedAutomaton<Rational> a, std::optional<Rational> cut,
                              DocKind kind = DocKind::generalized,
                              std::map<std::string, std::string> provenance = {}) {
    Document d;
    d.kind = kind;
    d.backend = DocBackend::rational;
    d.rational_automaton = std::move(a);
    d.rational_cut = std::move(cut);
    d.provenance = std::move(provenance);
    return d;
}

inline Document make_document(GeneralizedAutomaton<Approx> a, std::optional<Approx> cut,
                              DocKind kind = DocKind::generalized,
                              std::map<std::string, std::string> provenance = {}) {
    Document d;
    d.kind = kind;
    d.backend = DocBackend::floating;
    d.float_automaton = std::move(a);
    d.float_cut = cut;
    d.provenance = std::move(provenance);
    return d;
}

inline Document make_document(BooleanMonoidalAutomaton a,
                              std::map<std::string, std::string> provenance = {}) {
    Document d;
    d.kind = DocKind::boolean_kind;
    d.backend = DocBackend::rational;
    d.boolean_automaton = std::move(a);
    d.provenance = std::move(provenance);
    return d;
}

namespace detail {

inline nlohmann::json word_to_json(const MonoidSpec& spec, const Word& w) {
    nlohmann::json out = nlohmann::json::array();
    for (Gen g : w.syms) out.push_back(spec.generator_name(g));
    return out;
}

inline nlohmann::json monoid_to_json(const MonoidSpec& spec) {
    nlohmann::json j;
    switch (spec.kind()) {
        case MonoidSpec::Kind::free:
            j["variant"] = "free";
            j["generators"] = spec.generator_names();
            break;
        case MonoidSpec::Kind::presented:
            if (is_free_commutative(spec)) {
                j["variant"] = "free_commutative";
                j["generators"] = spec.generator_names();
            } else {
                j["variant"] = "presented";
                j["generators"] = spec.generator_names();
                nlohmann::json rels = nlohmann::json::array();
                for (const Relation& rel : spec.relations())
                    rels.push_back({word_to_json(spec, rel.lhs), word_to_json(spec, rel.rhs)});
                j["relations"] = rels;
            }
            break;
        case MonoidSpec::Kind::product:
            j["variant"] = "product";
            j["left"] = monoid_to_json(spec.left());
            j["right"] = monoid_to_json(spec.right());
            break;
    }
    return j;
}

inline const nlohmann::json& field(const nlohmann::json& j, const std::string& name,
                                   const std::string& where) {
    auto it = j.find(name);
    if (it == j.end()) throw parse_error(where + ": missing field \"" + name + "\"");
    return *it;
}

inline std::string string_field(const nlohmann::json& j, const std::string& name,
                                const std::string& where) {
    const nlohmann::json& v = field(j, name, where);
    if (!v.is_string()) throw parse_error(where + "." + name + ": expected a string");
    return v.get<std::string>();
}

inline std::vector<std::string> name_list(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array()) throw parse_error(where + ": expected an array of generator names");
    std::vector<std::string> out;
    for (const auto& g : j) {
        if (!g.is_string()) throw parse_error(where + ": generator names must be strings");
        out.push_back(g.get<std::string>());
    }
    return out;
}

inline Word word_from_json(const MonoidSpec& spec, const nlohmann::json& j,
                           const std::string& where) {
    if (!j.is_array()) throw parse_error(where + ": expected an array of generator names");
    Word w;
    for (const auto& g : j) {
        if (!g.is_string()) throw parse_error(where + ": generator names must be strings");
        auto gen = spec.find_generator(g.get<std::string>());
        if (!gen) throw parse_error(where + ": unknown generator \"" + g.get<std::string>() + "\"");
        w.syms.push_back(*gen);
    }
    return w;
}

inline MonoidSpec monoid_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object()) throw parse_error(where + ": expected an object");
    const std::string variant = string_field(j, "variant", where);
    try {
        if (variant == "free")
            return MonoidSpec::free_monoid(name_list(field(j, "generators", where), where + ".generators"));
        if (variant == "free_commutative")
            return MonoidSpec::free_commutative(
                name_list(field(j, "generators", where), where + ".generators"));
        if (variant == "presented") {
            MonoidSpec base = MonoidSpec::free_monoid(
                name_list(field(j, "generators", where), where + ".generators"));
            const nlohmann::json& rels = field(j, "relations", where);
            if (!rels.is_array()) throw parse_error(where + ".relations: expected an array");
            std::vector<Relation> out;
            for (const auto& rel : rels) {
                if (!rel.is_array() || rel.size() != 2)
                    throw parse_error(where + ".relations: each relation is a [lhs, rhs] pair");
                out.push_back({word_from_json(base, rel[0], where + ".relations"),
                               word_from_json(base, rel[1], where + ".relations")});
            }
            return MonoidSpec::presented(base.generator_names(), std::move(out));
        }
        if (variant == "product")
            return MonoidSpec::product(monoid_from_json(field(j, "left", where), where + ".left"),
                                       monoid_from_json(field(j, "right", where), where + ".right"));
    } catch (const monoid_error& e) {
        throw parse_error(where + ": " + e.what());
    }
    throw parse_error(where + ".variant: unknown variant \"" + variant + "\"");
}

inline nlohmann::json scalar_to_json(const Rational& r) { return r.str(); }
inline nlohmann::json scalar_to_json(const Approx& a) { return a.value; }

inline Rational rational_from_json(const nlohmann::json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const parse_error& e) {
            throw parse_error(where + ": " + e.what());
        }
    }
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw parse_error(where + ": expected a rational as a \"p/q\" string");
}

inline Approx float_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number()) throw parse_error(where + ": expected a number");
    return Approx(j.get<double>());
}

template <ScalarBackend S>
S scalar_from_json(const nlohmann::json& j, const std::string& where) {
    if constexpr (std::is_same_v<S, Rational>)
        return rational_from_json(j, where);
    else
        return float_from_json(j, where);
}

template <ScalarBackend S>
nlohmann::json matrix_payload(const GeneralizedAutomaton<S>& a) {
    nlohmann::json j;
    nlohmann::json mats;
    const MonoidSpec& spec = a.monoid();
    for (Gen g = 0; g < spec.generator_count(); ++g) {
        const Matrix<S>& m = a.matrix(g);
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_to_json(m(i, k)));
            rows.push_back(std::move(row));
        }
        mats[spec.generator_name(g)] = std::move(rows);
    }
    j["matrices"] = std::move(mats);
    nlohmann::json pi = nlohmann::json::array(), f = nlohmann::json::array();
    for (std::size_t i = 0; i < a.states(); ++i) {
        pi.push_back(scalar_to_json(a.initial()[i]));
        f.push_back(scalar_to_json(a.final_vector()[i]));
    }
    j["pi"] = std::move(pi);
    j["f"] = std::move(f);
    return j;
}

template <ScalarBackend S>
GeneralizedAutomaton<S> matrix_payload_from_json(const nlohmann::json& j, const MonoidSpec& spec,
                                                 std::size_t n) {
    const nlohmann::json& mats = field(j, "matrices", "document");
    if (!mats.is_object()) throw parse_error("matrices: expected an object keyed by generator name");
    for (auto it = mats.begin(); it != mats.end(); ++it)
        if (!spec.find_generator(it.key()))
            throw parse_error("matrices: \"" + it.key() + "\" is not a generator of the monoid");
    std::vector<Matrix<S>> out;
    for (Gen g = 0; g < spec.generator_count(); ++g) {
        const std::string name = spec.generator_name(g);
        auto it = mats.find(name);
        if (it == mats.end()) throw parse_error("matrices: missing generator \"" + name + "\"");
        const nlohmann::json& rows = *it;
        if (!rows.is_array() || rows.size() != n)
            throw parse_error("matrices." + name + ": expected " + std::to_string(n) + " rows");
        Matrix<S> m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const nlohmann::json& row = rows[i];
            if (!row.is_array() || row.size() != n)
                throw parse_error("matrices." + name + ": row " + std::to_string(i) + " must have " +
                                  std::to_string(n) + " entries");
            for (std::size_t k = 0; k < n; ++k)
                m(i, k) = scalar_from_json<S>(row[k], "matrices." + name);
        }
        out.push_back(std::move(m));
    }
    auto vec_from = [&](const char* name) {
        const nlohmann::json& v = field(j, name, "document");
        if (!v.is_array() || v.size() != n)
            throw parse_error(std::string(name) + ": expected " + std::to_string(n) + " entries");
        std::vector<S> entries;
        for (std::size_t i = 0; i < n; ++i) entries.push_back(scalar_from_json<S>(v[i], name));
        return entries;
    };
    RowVec<S> pi(vec_from("pi"));
    ColVec<S> f(vec_from("f"));
    try {
        return GeneralizedAutomaton<S>(spec, std::move(out), std::move(pi), std::move(f));
    } catch (const error& e) {
        throw parse_error(std::string("document: ") + e.what());
    }
}

inline nlohmann::json boolean_payload(const BooleanMonoidalAutomaton& a) {
    nlohmann::json j;
    j["initial"] = a.initial();
    j["final"] = a.final_states();
    nlohmann::json delta = nlohmann::json::array();
    for (const BoolTransition& t : a.delta()) {
        const std::string label = t.label ? a.monoid().generator_name(*t.label) : "";
        delta.push_back({t.from, label, t.to});
    }
    j["delta"] = std::move(delta);
    return j;
}

inline BooleanMonoidalAutomaton boolean_payload_from_json(const nlohmann::json& j,
                                                          const MonoidSpec& spec, std::size_t n) {
    auto states_from = [&](const char* name) {
        const nlohmann::json& v = field(j, name, "document");
        if (!v.is_array()) throw parse_error(std::string(name) + ": expected an array of states");
        std::vector<std::size_t> out;
        for (const auto& s : v) {
            if (!s.is_number_unsigned())
                throw parse_error(std::string(name) + ": states are unsigned integers");
            out.push_back(s.get<std::size_t>());
        }
        return out;
    };
    const nlohmann::json& dj = field(j, "delta", "document");
    if (!dj.is_array()) throw parse_error("delta: expected an array of [from, label, to] triples");
    std::vector<BoolTransition> delta;
    for (const auto& t : dj) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_unsigned() || !t[1].is_string() ||
            !t[2].is_number_unsigned())
            throw parse_error("delta: each transition is a [from, label, to] triple");
        const std::string label = t[1].get<std::string>();
        std::optional<Gen> g;
        if (!label.empty()) {
            g = spec.find_generator(label);
            if (!g) throw parse_error("delta: unknown generator \"" + label + "\"");
        }
        delta.push_back({t[0].get<std::size_t>(), g, t[2].get<std::size_t>()});
    }
    try {
        return BooleanMonoidalAutomaton(spec, n, states_from("initial"), states_from("final"),
                                        std::move(delta));
    } catch (const error& e) {
        throw parse_error(std::string("document: ") + e.what());
    }
}

}  // namespace detail

inline std::string serialize_document(const Document& doc) {
    nlohmann::json j;
    j["format_version"] = "1";
    j["kind"] = doc_kind_name(doc.kind);
    j["backend"] = doc_backend_name(doc.backend);
    if (doc.kind == DocKind::boolean_kind) {
        if (!doc.boolean_automaton) throw value_error("boolean document without an automaton");
        const BooleanMonoidalAutomaton& a = *doc.boolean_automaton;
        j["monoid"] = detail::monoid_to_json(a.monoid());
        j["states"] = a.states();
        j.update(detail::boolean_payload(a));
    } else if (doc.backend == DocBackend::rational) {
        if (!doc.rational_automaton) throw value_error("rational document without an automaton");
        j["monoid"] = detail::monoid_to_json(doc.rational_automaton->monoid());
        j["states"] = doc.rational_automaton->states();
        j.update(detail::matrix_payload(*doc.rational_automaton));
        if (doc.rational_cut) j["cut"] = detail::scalar_to_json(*doc.rational_cut);
    } else {
        if (!doc.float_automaton) throw value_error("float document without an automaton");
        j["monoid"] = detail::monoid_to_json(doc.float_automaton->monoid());
        j["states"] = doc.float_automaton->states();
        j.update(detail::matrix_payload(*doc.float_automaton));
        if (doc.float_cut) j["cut"] = detail::scalar_to_json(*doc.float_cut);
    }
    if (!doc.provenance.empty()) j["provenance"] = doc.provenance;
    return j.dump(2) + "\n";
}

inline Document parse_document(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw parse_error("document: expected a JSON object");

    static const std::vector<std::string> known = {
        "format_version", "kind",  "backend", "monoid",  "states",    "matrices",
        "pi",             "f",     "cut",     "initial", "final",     "delta",
        "provenance"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw parse_error("document: unknown field \"" + it.key() + "\"");

    const std::string version = detail::string_field(j, "format_version", "document");
    if (version != "1") throw parse_error("format_version: unsupported version \"" + version + "\"");

    Document doc;
    doc.kind = doc_kind_from_name(detail::string_field(j, "kind", "document"));
    doc.backend = doc_backend_from_name(detail::string_field(j, "backend", "document"));
    MonoidSpec spec = detail::monoid_from_json(detail::field(j, "monoid", "document"), "monoid");
    const nlohmann::json& sj = detail::field(j, "states", "document");
    if (!sj.is_number_unsigned()) throw parse_error("states: expected an unsigned integer");
    const std::size_t n = sj.get<std::size_t>();

    if (doc.kind == DocKind::boolean_kind) {
        if (doc.backend != DocBackend::rational)
            throw parse_error("backend: boolean documents use the rational backend");
        if (j.contains("cut")) throw parse_error("cut: boolean documents carry no cut point");
        doc.boolean_automaton = detail::boolean_payload_from_json(j, spec, n);
    } else if (doc.backend == DocBackend::rational) {
        doc.rational_automaton = detail::matrix_payload_from_json<Rational>(j, spec, n);
        if (j.contains("cut")) doc.rational_cut = detail::rational_from_json(j["cut"], "cut");
    } else {
        doc.float_automaton = detail::matrix_payload_from_json<Approx>(j, spec, n);
        if (j.contains("cut")) doc.float_cut = detail::float_from_json(j["cut"], "cut");
    }

    if (j.contains("provenance")) {
        const nlohmann::json& p = j["provenance"];
        if (!p.is_object()) throw parse_error("provenance: expected an object of strings");
        for (auto it = p.begin(); it != p.end(); ++it) {
            if (!it->is_string()) throw parse_error("provenance: values must be strings");
            doc.provenance[it.key()] = it->get<std::string>();
        }
    }
    return doc;
}

}  // namespace moga
