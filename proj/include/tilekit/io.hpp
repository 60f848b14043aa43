#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tilekit/bounds.hpp"
#include "tilekit/multiset.hpp"
#include "tilekit/polynomial.hpp"
#include "tilekit/tiling.hpp"

namespace tilekit::io {

using nlohmann::json;

/// Parse failures in any of the file formats.
class format_error : public std::runtime_error {
public:
    explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::int64_t parse_int64(const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw format_error("not an integer: \"" + s + "\"");
    }
    if (used != s.size()) throw format_error("not an integer: \"" + s + "\"");
    return v;
}

inline std::uint64_t positive_weight(const json& j) {
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > 0) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() > 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
    if (j.is_string()) {
        auto v = parse_int64(j.get<std::string>());
        if (v > 0) return static_cast<std::uint64_t>(v);
    }
    throw format_error("weights must be positive integers, got " + j.dump());
}

inline std::int64_t integer(const json& j, const char* what) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    throw format_error(std::string(what) + " must be an integer, got " + j.dump());
}

}  // namespace detail

// ---- multisets -------------------------------------------------------------

/// {"weights": {"0": 1, "2": 1}}
inline IntegerMultiset multiset_from_json(const json& j) {
    if (!j.is_object() || !j.contains("weights") || !j["weights"].is_object())
        throw format_error("expected an object with a \"weights\" map");
    IntegerMultiset::Weights w;
    for (const auto& [key, value] : j["weights"].items()) {
        auto [it, fresh] = w.emplace(detail::parse_int64(key), detail::positive_weight(value));
        if (!fresh) throw format_error("duplicate support point " + key);
    }
    if (w.empty()) throw format_error("multiset is empty");
    return IntegerMultiset(std::move(w));
}

inline json multiset_to_json(const IntegerMultiset& a) {
    json w = json::object();
    for (auto [point, weight] : a.weights()) w[std::to_string(point)] = weight;
    return json{{"weights", w}};
}

/// "0:1;2:1", the compact form used inside CSV cells.
inline std::string multiset_to_compact(const IntegerMultiset& a) {
    std::string s;
    for (auto [point, weight] : a.weights()) {
        if (!s.empty()) s += ';';
        s += std::to_string(point) + ':' + std::to_string(weight);
    }
    return s;
}

struct LinearFormInput {
    std::vector<std::vector<std::int64_t>> sets;
    LinearForm form;
};

/// {"u": [1,1], "v": 2, "sets": [[0,1],[0,1]]}
inline LinearFormInput linear_form_from_json(const json& j) {
    if (!j.is_object() || !j.contains("u") || !j.contains("v") || !j.contains("sets"))
        throw format_error("linear form needs \"u\", \"v\" and \"sets\"");
    LinearFormInput in;
    if (!j["u"].is_array() || !j["sets"].is_array()) throw format_error("\"u\" and \"sets\" must be arrays");
    for (const auto& c : j["u"]) in.form.u.push_back(detail::integer(c, "u entry"));
    in.form.v = detail::integer(j["v"], "v");
    for (const auto& s : j["sets"]) {
        if (!s.is_array()) throw format_error("each set must be an array of integers");
        std::vector<std::int64_t> elems;
        for (const auto& e : s) elems.push_back(detail::integer(e, "set element"));
        in.sets.push_back(std::move(elems));
    }
    return in;
}

// ---- polynomials -----------------------------------------------------------

/// ["1","0","-1"] is 1 - x^2. Plain JSON integers are accepted as well.
inline Polynomial polynomial_from_json(const json& j) {
    if (!j.is_array()) throw format_error("polynomial must be a JSON array of coefficients, lowest degree first");
    std::vector<BigInt> c;
    for (const auto& e : j) {
        if (e.is_string()) {
            try {
                c.push_back(parse_bigint(e.get<std::string>()));
            } catch (const std::invalid_argument& ex) {
                throw format_error(ex.what());
            }
        } else if (e.is_number_integer()) {
            c.emplace_back(e.get<std::int64_t>());
        } else {
            throw format_error("polynomial coefficient must be a decimal string, got " + e.dump());
        }
    }
    return Polynomial(std::move(c));
}

inline json polynomial_to_json(const Polynomial& p) {
    json arr = json::array();
    for (const auto& c : p.coefficients()) arr.push_back(c.str());
    return arr;
}

inline json factorization_to_json(const CyclotomicFactorization& fac) {
    json m = json::object();
    for (auto [d, v] : fac.multiplicities) m[std::to_string(d)] = v;
    return json{{"content", fac.content.str()}, {"multiplicities", m}, {"cofactor", polynomial_to_json(fac.cofactor)}};
}

// ---- sequences and reports -------------------------------------------------

inline json sequence_to_json(const PeriodicWeightSequence& b) {
    return json{{"offset", b.offset()}, {"preperiod", b.preperiod()}, {"period", b.period()}, {"twoSided", b.two_sided()}};
}

inline PeriodicWeightSequence sequence_from_json(const json& j) {
    try {
        return PeriodicWeightSequence(j.value("offset", std::int64_t{0}),
                                      j.value("preperiod", std::vector<std::uint64_t>{}),
                                      j.at("period").get<std::vector<std::uint64_t>>(), j.value("twoSided", false));
    } catch (const json::exception& ex) {
        throw format_error(std::string("malformed weight sequence: ") + ex.what());
    }
}

inline json report_to_json(const TilingReport& r) {
    json j;
    j["status"] = to_string(r.status);
    j["exists"] = r.exists;
    j["t"] = r.t;
    j["diam"] = r.diam;
    j["shift"] = r.shift;
    j["newmanBound"] = r.newman_bound.str();
    j["biroBoundLog"] = r.biro_bound_log;
    j["epsilon"] = r.epsilon;
    j["cycleCount"] = r.cycle_count;
    j["statesVisited"] = r.states_visited;
    j["agreement"] = r.agreement;
    if (r.witness) {
        j["period"] = *r.minimal_period_combinatorial;
        j["periodBlock"] = r.witness->period();
        j["preperiod"] = r.witness->preperiod();
        j["offset"] = r.witness->offset();
    } else {
        j["period"] = nullptr;
        j["periodBlock"] = json::array();
        j["preperiod"] = json::array();
    }
    j["minimalPeriodAlgebraic"] = r.minimal_period_algebraic ? json(*r.minimal_period_algebraic) : json(nullptr);
    j["cyclotomicIndices"] = r.cyclotomic_indices ? json(*r.cyclotomic_indices) : json::array();
    return j;
}

// ---- lemma reports ---------------------------------------------------------

inline const char* kBoundsCsvHeader = "lemmaId,instanceId,n,d,observed,bound,pass,ratio";

inline void write_lemma_csv(std::ostream& os, const std::vector<LemmaReport>& reports) {
    for (const auto& rep : reports) {
        for (std::size_t i = 0; i < rep.rows.size(); ++i) {
            const auto& row = rep.rows[i];
            os << to_string(rep.lemma) << ',' << i << ',' << row.n << ',' << row.d << ',' << row.observed << ','
               << row.bound << ',' << (row.pass ? "pass" : "fail") << ',' << format_real(row.ratio) << '\n';
        }
    }
}

inline void write_period_bound_csv(std::ostream& os, const std::vector<PeriodBoundRow>& rows) {
    for (const auto& row : rows) {
        os << "T8," << row.instance_id << ',' << row.diam + 1 << ',' << row.k << ',' << format_real(row.log_k) << ','
           << format_real(row.bound_diam_plus_one) << ',' << (row.satisfied_diam_plus_one ? "pass" : "fail") << ','
           << format_real(row.bound_diam_plus_one > 0 ? row.log_k / row.bound_diam_plus_one : 0.0) << '\n';
    }
}

inline json lemma_report_to_json(const LemmaReport& rep) {
    json rows = json::array();
    for (const auto& row : rep.rows) {
        json r{{"n", row.n}, {"d", row.d}, {"observed", row.observed}, {"bound", row.bound},
               {"pass", row.pass}, {"ratio", format_real(row.ratio)}};
        if (rep.lemma == LemmaId::L4) {
            r["mechanismChecks"] = row.mechanism_checks;
            r["mechanismViolations"] = row.mechanism_violations;
        }
        if (!row.notes.empty()) r["notes"] = row.notes;
        rows.push_back(std::move(r));
    }
    return json{{"lemmaId", to_string(rep.lemma)}, {"instances", rep.instances},   {"violations", rep.violations},
                {"maxRatio", format_real(rep.max_ratio)}, {"notes", rep.notes}, {"rows", std::move(rows)}};
}

inline json period_bound_to_json(const std::vector<PeriodBoundRow>& rows) {
    json out = json::array();
    for (const auto& row : rows) {
        out.push_back(json{{"instanceId", row.instance_id},
                           {"diam", row.diam},
                           {"t", row.t},
                           {"k", row.k},
                           {"logK", format_real(row.log_k)},
                           {"boundNDiam", format_real(row.bound_diam)},
                           {"boundNDiamPlusOne", format_real(row.bound_diam_plus_one)},
                           {"satisfiedNDiam", row.satisfied_diam},
                           {"satisfiedNDiamPlusOne", row.satisfied_diam_plus_one},
                           {"logNewmanBound", format_real(row.log_newman)}});
    }
    return out;
}

}  // namespace tilekit::io
