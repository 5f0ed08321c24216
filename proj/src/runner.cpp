#include "meancomp/runner.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace meancomp {

namespace {

using nlohmann::json;

double parse_endpoint(const json& v, const char* which) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw ConfigError(std::string("interval ") + which + ": expected a number, \"inf\" or "
                          "\"-inf\", got \"" + s + "\"");
    }
    throw ConfigError(std::string("interval ") + which + " has the wrong type");
}

struct MeanDesc {
    // exactly one of dsl/power per component
    std::optional<std::string> generator_dsl;
    std::optional<double> generator_power;
    std::vector<std::string> weight_dsl;
    std::vector<double> lambda, alpha;

    bool power_generator() const { return generator_power.has_value(); }
    bool power_weights() const { return weight_dsl.empty(); }
    bool fully_power() const { return power_generator() && power_weights(); }

    std::string display() const {
        auto num = [](double v) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%g", v);
            return std::string(buf);
        };
        std::string g = power_generator()
                            ? (*generator_power == 0.0 ? std::string("log(x)")
                                                       : "x^" + num(*generator_power))
                            : *generator_dsl;
        std::string w;
        if (power_weights()) {
            for (std::size_t i = 0; i < lambda.size(); ++i) {
                if (i) w += ", ";
                w += num(lambda[i]) + "*x^" + num(alpha[i]);
            }
        } else {
            for (std::size_t i = 0; i < weight_dsl.size(); ++i) {
                if (i) w += ", ";
                w += weight_dsl[i];
            }
        }
        return "generator " + g + "; weights (" + w + ")";
    }
};

MeanDesc parse_mean(const json& j, const char* name, int n) {
    if (!j.is_object()) throw ConfigError(std::string("means.") + name + " must be an object");
    MeanDesc d;
    if (!j.contains("generator"))
        throw ConfigError(std::string("means.") + name + " is missing \"generator\"");
    const json& g = j.at("generator");
    if (g.is_string()) {
        d.generator_dsl = g.get<std::string>();
    } else if (g.is_object() && g.contains("power") && g.size() == 1 &&
               g.at("power").is_number()) {
        d.generator_power = g.at("power").get<double>();
    } else {
        throw ConfigError(std::string("means.") + name +
                          ".generator must be a DSL string or {\"power\": a}");
    }

    if (!j.contains("weights"))
        throw ConfigError(std::string("means.") + name + " is missing \"weights\"");
    const json& w = j.at("weights");
    if (w.is_array()) {
        for (const auto& e : w) {
            if (!e.is_string())
                throw ConfigError(std::string("means.") + name +
                                  ".weights entries must be DSL strings");
            d.weight_dsl.push_back(e.get<std::string>());
        }
        if (static_cast<int>(d.weight_dsl.size()) != n)
            throw ConfigError(std::string("means.") + name + ".weights must list n = " +
                              std::to_string(n) + " expressions");
    } else if (w.is_object() && w.contains("lambda") && w.contains("alpha") && w.size() == 2) {
        d.lambda = w.at("lambda").get<std::vector<double>>();
        d.alpha = w.at("alpha").get<std::vector<double>>();
        if (static_cast<int>(d.lambda.size()) != n || static_cast<int>(d.alpha.size()) != n)
            throw ConfigError(std::string("means.") + name +
                              ".weights lambda/alpha must have length n = " + std::to_string(n));
    } else {
        throw ConfigError(std::string("means.") + name +
                          ".weights must be an array of DSL strings or "
                          "{\"lambda\": [...], \"alpha\": [...]}");
    }
    return d;
}

MeanSpec build_mean(const MeanDesc& d, const Interval& interval,
                    const CertificationOptions& cert) {
    GeneratorSpec gen =
        d.power_generator()
            ? GeneratorSpec::power(*d.generator_power, interval, cert)
            : GeneratorSpec::create(parse_expr(*d.generator_dsl), interval, cert);
    WeightFamily weights = [&] {
        if (d.power_weights()) return WeightFamily::power(d.lambda, d.alpha, interval, cert);
        std::vector<ExprPtr> ws;
        ws.reserve(d.weight_dsl.size());
        for (const auto& s : d.weight_dsl) ws.push_back(parse_expr(s));
        return WeightFamily::create(std::move(ws), interval, cert);
    }();
    return MeanSpec::create(std::move(gen), std::move(weights));
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field \"") + key + "\" has the wrong type");
    }
}

}  // namespace

RunOutputs run_compare_config(const std::string& config_json, const std::string& overrides_json) {
    json cfg;
    try {
        cfg = json::parse(config_json);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
    }
    if (!overrides_json.empty()) {
        try {
            cfg.merge_patch(json::parse(overrides_json));
        } catch (const json::exception& e) {
            throw ConfigError(std::string("overrides are not valid JSON: ") + e.what());
        }
    }
    if (!cfg.is_object()) throw ConfigError("configuration must be a JSON object");

    const int n = get_or<int>(cfg, "n", 2);
    if (n < 2 || n > 8) throw ConfigError("n must lie in [2, 8]");

    if (!cfg.contains("interval") || !cfg.at("interval").is_array() ||
        cfg.at("interval").size() != 2)
        throw ConfigError("\"interval\" must be a two-element array [lo, hi]");
    Interval interval;
    try {
        interval = Interval(parse_endpoint(cfg.at("interval")[0], "lower"),
                            parse_endpoint(cfg.at("interval")[1], "upper"));
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }

    Window window = default_window(interval);
    if (cfg.contains("window")) {
        const json& w = cfg.at("window");
        if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
            throw ConfigError("\"window\" must be a two-element numeric array");
        try {
            window = window_within(interval, w[0].get<double>(), w[1].get<double>());
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
    }

    if (!cfg.contains("means") || !cfg.at("means").is_object() ||
        !cfg.at("means").contains("fp") || !cfg.at("means").contains("gq"))
        throw ConfigError("\"means\" must be an object with entries \"fp\" and \"gq\"");
    MeanDesc fp = parse_mean(cfg.at("means").at("fp"), "fp", n);
    MeanDesc gq = parse_mean(cfg.at("means").at("gq"), "gq", n);

    CheckOptions opts;
    if (cfg.contains("tolerances")) {
        const json& t = cfg.at("tolerances");
        opts.tol_equality = get_or<double>(t, "equality", opts.tol_equality);
        opts.tol_monotone = get_or<double>(t, "monotonicity", opts.tol_monotone);
        opts.tol_pair = get_or<double>(t, "pair", opts.tol_pair);
    }
    if (cfg.contains("grid")) {
        const json& g = cfg.at("grid");
        opts.samples = get_or<int>(g, "samples", opts.samples);
        opts.pair_resolution = get_or<int>(g, "pair", opts.pair_resolution);
    }
    if (opts.samples < 2 || opts.pair_resolution < 2)
        throw ConfigError("grid sizes must be >= 2");

    CertificationOptions cert;
    if (cfg.contains("certification"))
        cert.samples = get_or<int>(cfg.at("certification"), "samples", cert.samples);
    cert.window = window;  // sampled checks honor the configured working window

    SearchConfig search;
    search.window = window;
    bool search_enabled = true;
    if (cfg.contains("search")) {
        const json& s = cfg.at("search");
        search_enabled = get_or<bool>(s, "enabled", true);
        search.resolution = get_or<int>(s, "resolution", search.resolution);
        search.multistarts = get_or<int>(s, "multistarts", search.multistarts);
        search.max_iterations = get_or<int>(s, "max_iterations", search.max_iterations);
        search.anchors = get_or<int>(s, "anchors", search.anchors);
        search.seed = get_or<std::uint64_t>(s, "seed", search.seed);
        search.witness_threshold = get_or<double>(s, "witness_threshold", 1e-9);
        if (s.contains("radii")) search.radii = s.at("radii").get<std::vector<double>>();
    }
    try {
        search.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }

    int csv_resolution = search.resolution;
    if (cfg.contains("csv"))
        csv_resolution = get_or<int>(cfg.at("csv"), "resolution", csv_resolution);
    if (csv_resolution < 2) throw ConfigError("csv resolution must be >= 2");

    OutputPaths paths;
    if (cfg.contains("output")) {
        const json& o = cfg.at("output");
        if (o.contains("report")) paths.report = o.at("report").get<std::string>();
        if (o.contains("csv")) paths.csv = o.at("csv").get<std::string>();
        if (o.contains("summary")) paths.summary = o.at("summary").get<std::string>();
    }

    // -- build means; configuration errors end here ---------------------
    MeanSpec m1 = [&] {
        try {
            return build_mean(fp, interval, cert);
        } catch (const Error& e) {
            throw ConfigError(std::string("means.fp: ") + e.what());
        }
    }();
    MeanSpec m2 = [&] {
        try {
            return build_mean(gq, interval, cert);
        } catch (const Error& e) {
            throw ConfigError(std::string("means.gq: ") + e.what());
        }
    }();

    RunReport report;
    report.tool_version = kToolVersion;
    report.n = n;
    report.interval = interval;
    report.window = window;
    report.seed = search.seed;
    report.mean_fp = fp.display();
    report.mean_gq = gq.display();
    report.options = opts;
    report.search_enabled = search_enabled;

    // -- sampled battery -------------------------------------------------
    report.comparison = compare_means(m1, m2, opts);
    report.locally_smaller = report.comparison.locally_smaller;
    report.globally_smaller = report.comparison.globally_smaller;

    // -- power-family closed forms ---------------------------------------
    std::optional<PowerRelation> relation;
    if (fp.power_weights() && gq.power_weights()) {
        PowerParams params;
        params.a = fp.power_generator() ? *fp.generator_power : 0.0;
        params.b = gq.power_generator() ? *gq.generator_power : 0.0;
        params.lambda = fp.lambda;
        params.alpha = fp.alpha;
        params.mu = gq.lambda;
        params.beta = gq.alpha;
        if (fp.fully_power() && gq.fully_power()) {
            report.power = classify_power(params);
            relation = report.power->relation;
        } else {
            relation = derive_power_relation(params);
        }
        // the power-weighted tangent inequality applies whenever the weight
        // relation exists, whatever the generators are
        if (relation && interval.is_positive())
            report.gsc_power = check_gsc_power(m1.generator(), m2.generator(), relation->delta,
                                               opts);
    }

    // -- gap search --------------------------------------------------------
    if (search_enabled) {
        report.search_global = max_gap(m1, m2, search);
        report.search_local = local_gap_probe(m1, m2, search);
    }

    // -- merge evidence into final conclusions ----------------------------
    if (report.power) {
        const ComparisonReport& pr = report.power->report;
        auto merge = [&](ConclusionEntry& into, const ConclusionEntry& closed,
                         const char* which) {
            if (closed.status == Conclusion::unknown) return;
            if (into.status != Conclusion::unknown && into.status != closed.status) {
                report.notes.push_back(std::string("the sampled battery and the power-family "
                                                   "closed forms disagree on the ") +
                                       which + " conclusion (" + to_string(into.status) +
                                       " vs " + to_string(closed.status) +
                                       "); keeping the closed form");
            }
            into = closed;
        };
        merge(report.locally_smaller, pr.locally_smaller, "local");
        merge(report.globally_smaller, pr.globally_smaller, "global");
    }
    if (report.gsc_power && report.gsc_power->holds() &&
        report.comparison.first_order.holds() &&
        report.globally_smaller.status == Conclusion::unknown) {
        report.globally_smaller = {Conclusion::implied, rules::power_weighted_gsc,
                                   Certification::sampled};
        if (report.locally_smaller.status == Conclusion::unknown)
            report.locally_smaller = {Conclusion::implied, rules::global_implies_local,
                                      Certification::sampled};
    }
    if (report.search_global && report.search_global->witness) {
        if (report.globally_smaller.status == Conclusion::implied)
            report.notes.push_back(
                "a verified counterexample contradicts the rule \"" +
                report.globally_smaller.justified_by +
                "\"; reporting the counterexample and marking the comparison refuted");
        if (report.globally_smaller.status != Conclusion::refuted)
            report.globally_smaller = {Conclusion::refuted, rules::counterexample,
                                       Certification::witness};
    }

    RunOutputs out;
    out.paths = paths;
    if (n == 2) out.csv = landscape_csv(m1, m2, window, csv_resolution);
    out.report_json = report_to_json(report);
    out.summary = report_summary(report);
    out.refuted = report.refuted();
    return out;
}

}  // namespace meancomp
