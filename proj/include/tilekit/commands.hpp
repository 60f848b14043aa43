#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tilekit/bounds.hpp"
#include "tilekit/cyclotomic.hpp"
#include "tilekit/io.hpp"
#include "tilekit/multiset.hpp"
#include "tilekit/tiling.hpp"

namespace tilekit::cli {

using nlohmann::json;

enum class Command { analyze, complement, factor, bounds, batch };
enum class OutputFormat { json, csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInconclusive = 2;

inline constexpr int kBatchSchemaVersion = 1;
inline const char* kBatchCsvHeader = "schemaVersion,diam,t,instanceId,exists,k,newmanBound,logK,biroBoundLog,status,multiset";

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

struct RunConfig {
    Command command = Command::analyze;
    std::string input_path;
    double epsilon = 0.5;
    std::uint64_t budget = kDefaultBudget;
    std::uint64_t seed = 20240601;
    OutputFormat output_format = OutputFormat::json;
    std::optional<std::string> output_path;

    void validate() const {
        if (!(epsilon > 0)) throw std::domain_error("--epsilon must be positive");
        if (budget < 1) throw std::domain_error("--budget must be at least 1");
    }
};

/// Default budget: TILEKIT_BUDGET when set to a positive integer.
inline std::uint64_t default_budget() {
    if (const char* env = std::getenv("TILEKIT_BUDGET")) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string(env).size() && v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    return kDefaultBudget;
}

namespace detail {

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::format_error("cannot open input file " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& ex) {
        throw io::format_error(std::string("malformed JSON in ") + path + ": " + ex.what());
    }
}

/// Writes to --output when given, otherwise to the fallback stream.
class Sink {
public:
    Sink(const RunConfig& cfg, std::ostream& fallback) : out_(&fallback) {
        if (cfg.output_path) {
            file_.open(*cfg.output_path);
            if (!file_) throw io::format_error("cannot open output file " + *cfg.output_path);
            out_ = &file_;
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_;
};

struct AnalyzeInput {
    IntegerMultiset multiset;
    std::uint64_t t = 0;
    std::optional<std::int64_t> scale;  // v, for linear-form input
};

inline AnalyzeInput parse_analyze_input(const json& j) {
    AnalyzeInput in;
    if (!j.is_object() || !j.contains("t")) throw io::format_error("input needs a positive integer \"t\"");
    const json& t = j["t"];
    if (!(t.is_number_integer() && t.get<std::int64_t>() > 0)) throw io::format_error("\"t\" must be a positive integer");
    in.t = static_cast<std::uint64_t>(t.get<std::int64_t>());
    if (j.contains("weights")) {
        in.multiset = io::multiset_from_json(j);
    } else if (j.contains("u")) {
        auto lf = io::linear_form_from_json(j);
        auto [image, scale] = linear_form_to_multiset(lf.sets, lf.form);
        in.multiset = std::move(image);
        in.scale = scale;
    } else {
        throw io::format_error("input needs either \"weights\" or a linear form (\"u\", \"v\", \"sets\")");
    }
    return in;
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const io::format_error& ex) {
        err << "error: " << ex.what() << '\n';
    } catch (const std::domain_error& ex) {
        err << "error: " << ex.what() << '\n';
    } catch (const divisibility_error& ex) {
        err << "error: " << ex.what() << '\n';
    }
    return kExitInputError;
}

}  // namespace detail

/// Full analysis of one instance: witness, both period routes and bounds.
inline int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        cfg.validate();
        auto in = detail::parse_analyze_input(detail::read_json_file(cfg.input_path));
        TilingOptions opts{cfg.epsilon, cfg.budget, true};
        TilingReport rep = find_complement(in.multiset, in.t, opts);
        json j = io::report_to_json(rep);
        j["multiset"] = io::multiset_to_json(in.multiset)["weights"];
        if (in.scale) j["scale"] = *in.scale;
        detail::Sink sink(cfg, out);
        sink.stream() << j.dump(2) << '\n';
        return rep.status == SearchStatus::ok ? kExitOk : kExitInconclusive;
    });
}

/// Existence and witness only; skips the algebraic route.
inline int cmd_complement(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        cfg.validate();
        auto in = detail::parse_analyze_input(detail::read_json_file(cfg.input_path));
        TilingOptions opts{cfg.epsilon, cfg.budget, false};
        TilingReport rep = find_complement(in.multiset, in.t, opts);
        json j{{"status", to_string(rep.status)}, {"exists", rep.exists}};
        j["witness"] = rep.witness ? io::sequence_to_json(*rep.witness) : json(nullptr);
        j["period"] = rep.minimal_period_combinatorial ? json(*rep.minimal_period_combinatorial) : json(nullptr);
        detail::Sink sink(cfg, out);
        sink.stream() << j.dump(2) << '\n';
        return rep.status == SearchStatus::ok ? kExitOk : kExitInconclusive;
    });
}

inline int cmd_factor(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        Polynomial f = io::polynomial_from_json(detail::read_json_file(cfg.input_path));
        if (f.is_zero()) throw std::domain_error("cannot factor the zero polynomial");
        detail::Sink sink(cfg, out);
        sink.stream() << io::factorization_to_json(cyclotomic_part(f)).dump(2) << '\n';
        return kExitOk;
    });
}

// ---- batch grids -----------------------------------------------------------

/// {"diam": [1, 2], "t": [1], "weightCap": 1, "limit": 100}
struct GridSpec {
    std::vector<std::uint64_t> diams;
    std::vector<std::uint64_t> ts;
    std::uint64_t weight_cap = 1;
    std::optional<std::uint64_t> limit;  // per (diam, t) cell
};

inline GridSpec grid_from_json(const json& j) {
    GridSpec g;
    if (!j.is_object()) throw io::format_error("grid spec must be a JSON object");
    try {
        g.diams = j.value("diam", std::vector<std::uint64_t>{});
        g.ts = j.value("t", std::vector<std::uint64_t>{});
        g.weight_cap = j.value("weightCap", std::uint64_t{1});
        if (j.contains("limit")) g.limit = j["limit"].get<std::uint64_t>();
    } catch (const json::exception& ex) {
        throw io::format_error(std::string("malformed grid spec: ") + ex.what());
    }
    if (g.weight_cap < 1) throw io::format_error("weightCap must be at least 1");
    for (auto t : g.ts)
        if (t < 1) throw io::format_error("t values must be positive");
    return g;
}

/// All multisets with min 0, max diam and weights in [1, cap], interior mask
/// ascending, then weights in odometer order.
inline std::vector<IntegerMultiset> enumerate_multisets(std::uint64_t d, std::uint64_t cap,
                                                        std::optional<std::uint64_t> limit = std::nullopt) {
    std::vector<IntegerMultiset> out;
    auto full = [&] { return limit && out.size() >= *limit; };
    if (d == 0) {
        for (std::uint64_t w = 1; w <= cap && !full(); ++w) out.push_back(IntegerMultiset{{0, w}});
        return out;
    }
    if (d > 62) throw io::format_error("diam too large to enumerate");
    const std::uint64_t masks = std::uint64_t{1} << (d - 1);
    for (std::uint64_t mask = 0; mask < masks && !full(); ++mask) {
        std::vector<std::int64_t> support{0};
        for (std::uint64_t i = 1; i < d; ++i)
            if (mask >> (i - 1) & 1U) support.push_back(static_cast<std::int64_t>(i));
        support.push_back(static_cast<std::int64_t>(d));
        std::vector<std::uint64_t> weights(support.size(), 1);
        for (;;) {
            if (full()) break;
            IntegerMultiset::Weights w;
            for (std::size_t i = 0; i < support.size(); ++i) w[support[i]] = weights[i];
            out.emplace_back(std::move(w));
            std::size_t i = 0;
            while (i < weights.size() && weights[i] == cap) weights[i++] = 1;
            if (i == weights.size()) break;
            ++weights[i];
        }
    }
    return out;
}

struct BatchInstance {
    IntegerMultiset multiset;
    std::uint64_t t = 1;
};

inline std::vector<BatchInstance> expand_grid(const GridSpec& g) {
    std::vector<BatchInstance> out;
    for (auto d : g.diams)
        for (auto t : g.ts)
            for (auto& a : enumerate_multisets(d, g.weight_cap, g.limit)) out.push_back({std::move(a), t});
    return out;
}

/// Runs every instance on a small worker pool; results are indexed by
/// instance id, so completion order does not matter.
inline std::vector<TilingReport> run_instances(const std::vector<BatchInstance>& instances, const TilingOptions& opts,
                                               unsigned threads = 0) {
    std::vector<TilingReport> results(instances.size());
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(instances.size(), 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < instances.size(); i = next++)
            results[i] = find_complement(instances[i].multiset, instances[i].t, opts);
    };
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    pool.clear();
    return results;
}

inline int cmd_batch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        cfg.validate();
        GridSpec grid = grid_from_json(detail::read_json_file(cfg.input_path));
        auto instances = expand_grid(grid);
        auto reports = run_instances(instances, TilingOptions{cfg.epsilon, cfg.budget, true});
        bool inconclusive = false;
        detail::Sink sink(cfg, out);
        std::ostream& os = sink.stream();
        if (cfg.output_format == OutputFormat::csv) {
            os << kBatchCsvHeader << '\n';
            for (std::size_t i = 0; i < reports.size(); ++i) {
                const auto& r = reports[i];
                inconclusive |= r.status != SearchStatus::ok;
                os << kBatchSchemaVersion << ',' << r.diam << ',' << r.t << ',' << i << ','
                   << (r.exists ? "true" : "false") << ',';
                if (r.minimal_period_combinatorial) os << *r.minimal_period_combinatorial;
                os << ',' << r.newman_bound.str() << ',';
                if (r.minimal_period_combinatorial)
                    os << format_real(std::log(static_cast<double>(*r.minimal_period_combinatorial)));
                os << ',' << format_real(r.biro_bound_log) << ',' << to_string(r.status) << ','
                   << io::multiset_to_compact(instances[i].multiset) << '\n';
            }
        } else {
            json arr = json::array();
            for (std::size_t i = 0; i < reports.size(); ++i) {
                inconclusive |= reports[i].status != SearchStatus::ok;
                json j = io::report_to_json(reports[i]);
                j["instanceId"] = i;
                j["multiset"] = io::multiset_to_json(instances[i].multiset)["weights"];
                arr.push_back(std::move(j));
            }
            os << json{{"schemaVersion", kBatchSchemaVersion}, {"instances", arr}}.dump(2) << '\n';
        }
        return inconclusive ? kExitInconclusive : kExitOk;
    });
}

// ---- lemma runs ------------------------------------------------------------

/// Optional input: {"lemma1": 100, "lemma2": 50, "lemma3K": [2, 4, 100], "lemma4": 50,
/// "c": 67.3, "periodGrid": {grid spec}}
inline int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        cfg.validate();
        BoundsSuiteConfig suite;
        suite.seed = cfg.seed;
        suite.epsilon = cfg.epsilon;
        GridSpec grid{{1, 2, 3, 4}, {1, 2}, 1, std::nullopt};
        if (!cfg.input_path.empty()) {
            json j = detail::read_json_file(cfg.input_path);
            try {
                suite.lemma1_count = j.value("lemma1", suite.lemma1_count);
                suite.lemma2_count = j.value("lemma2", suite.lemma2_count);
                suite.lemma3_k = j.value("lemma3K", suite.lemma3_k);
                suite.lemma4_count = j.value("lemma4", suite.lemma4_count);
                suite.c_exponent = j.value("c", suite.c_exponent);
            } catch (const json::exception& ex) {
                throw io::format_error(std::string("malformed bounds config: ") + ex.what());
            }
            if (j.contains("periodGrid")) grid = grid_from_json(j["periodGrid"]);
        }
        auto reports = run_bounds_suite(suite);
        auto tilings = run_instances(expand_grid(grid), TilingOptions{cfg.epsilon, cfg.budget, true});
        auto period_rows = theorem8_bound_report(tilings, cfg.epsilon);

        detail::Sink sink(cfg, out);
        std::ostream& os = sink.stream();
        if (cfg.output_format == OutputFormat::csv) {
            os << io::kBoundsCsvHeader << '\n';
            io::write_lemma_csv(os, reports);
            io::write_period_bound_csv(os, period_rows);
        } else {
            json lemmas = json::array();
            for (const auto& r : reports) lemmas.push_back(io::lemma_report_to_json(r));
            os << json{{"seed", cfg.seed},
                       {"epsilon", format_real(cfg.epsilon)},
                       {"lemmas", lemmas},
                       {"periodBounds", io::period_bound_to_json(period_rows)}}
                      .dump(2)
               << '\n';
        }
        std::uint64_t violations = 0;
        for (const auto& r : reports) violations += r.violations;
        if (violations != 0) err << "warning: " << violations << " asserted lemma violations\n";
        return kExitOk;
    });
}

inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    switch (cfg.command) {
        case Command::analyze: return cmd_analyze(cfg, out, err);
        case Command::complement: return cmd_complement(cfg, out, err);
        case Command::factor: return cmd_factor(cfg, out, err);
        case Command::bounds: return cmd_bounds(cfg, out, err);
        case Command::batch: return cmd_batch(cfg, out, err);
    }
    return kExitInputError;
}

}  // namespace tilekit::cli
