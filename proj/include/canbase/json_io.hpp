#pragma once

// JSON forms of the library objects, used by the CLI and the on-disk cache.
// Keys keep insertion order so byte-identical reruns stay byte-identical.

#include <json.hpp>

#include "canbase/hecke.hpp"
#include "canbase/positivity.hpp"
#include "canbase/tensor.hpp"

namespace canbase {

using Json = nlohmann::ordered_json;

// array of [exponent, coefficient] pairs sorted by exponent
inline Json to_json(const LaurentPoly& p) {
    Json out = Json::array();
    for (const auto& [e, c] : p.terms()) {
        if (c >= Int("-9007199254740992") && c <= Int("9007199254740992"))
            out.push_back({e, c.convert_to<long long>()});
        else
            out.push_back({e, c.str()});
    }
    return out;
}

inline LaurentPoly laurent_from_json(const Json& j) {
    LaurentPoly p;
    for (const auto& pair : j) {
        const int e = pair.at(0).get<int>();
        Int c = pair.at(1).is_string() ? Int(pair.at(1).get<std::string>())
                                       : Int(pair.at(1).get<long long>());
        p.add_term(e, c);
    }
    return p;
}

inline Json column_to_json(const Column& col) {
    Json out = Json::array();
    for (const auto& [i, c] : col) out.push_back({i, to_json(c)});
    return out;
}

inline Column column_from_json(const Json& j) {
    Column out;
    for (const auto& pair : j) out[pair.at(0).get<int>()] = laurent_from_json(pair.at(1));
    return out;
}

// {"basis": ..., "index": window, "terms": [[window, poly-pairs], ...]}
inline Json hecke_element_json(const WeylGroup& W, const std::string& basis, const std::string& index,
                               const HVec& v) {
    Json terms = Json::array();
    for (const auto& [w, c] : v) terms.push_back({W.element(w).to_string(), to_json(c)});
    return Json{{"basis", basis}, {"index", index}, {"terms", terms}};
}

inline Json descriptor_json(const ModuleDescriptor& d) {
    return Json{{"n", d.n}, {"factors", d.factors_string()}, {"variant", to_string(d.variant)}};
}

// {"space": descriptor, "basis": ..., "elements": [{"index": word, "terms": [[word, poly-pairs], ...]}]}
inline Json tensor_basis_json(const Space& S, const ModuleDescriptor& desc, const std::string& basis,
                              const std::vector<Column>& cols) {
    Json elements = Json::array();
    for (int b = 0; b < S.dim(); ++b) {
        Json terms = Json::array();
        for (const auto& [i, c] : cols[b]) terms.push_back({word_string(S.word(i)), to_json(c)});
        elements.push_back(Json{{"index", word_string(S.word(b))}, {"terms", terms}});
    }
    return Json{{"space", descriptor_json(desc)}, {"basis", basis}, {"elements", elements}};
}

inline Json report_json(const PositivityReport& r) {
    Json rows = Json::array();
    for (const auto& e : r.matrix.entries) {
        Json row;
        row["b"] = word_string(r.matrix.whole->word(e.b));
        row["b_alpha"] = word_string(r.matrix.alpha->word(e.b_alpha));
        row["b_beta"] = (r.matrix.beta && e.b_beta >= 0)
                            ? Json(word_string(r.matrix.beta->word(e.b_beta)))
                            : Json(nullptr);
        row["t"] = e.t.to_string();
        row["verdict"] = e.nonneg ? "nonneg" : "NEGATIVE";
        rows.push_back(std::move(row));
    }
    Json failures = Json::array();
    for (const auto* e : r.matrix.failures()) {
        failures.push_back(Json{{"b", word_string(r.matrix.whole->word(e->b))},
                                {"b_alpha", word_string(r.matrix.alpha->word(e->b_alpha))},
                                {"t", e->t.to_string()}});
    }
    return Json{{"command", r.command},
                {"total", r.total},
                {"negative", r.negative},
                {"positive", r.positive()},
                {"entries", rows},
                {"failures", failures}};
}

}  // namespace canbase
