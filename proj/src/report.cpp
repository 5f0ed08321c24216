#include "meancomp/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace meancomp {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string g10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

ordered_json witness_json(const CheckWitness& w) {
    ordered_json j;
    j["x"] = w.x;
    if (w.y) j["y"] = *w.y;
    if (w.index) j["index"] = *w.index;
    j["value"] = w.value;
    return j;
}

ordered_json verdict_json(const Verdict& v) {
    ordered_json j;
    j["status"] = to_string(v.status);
    j["strict"] = v.strict;
    j["certification"] = to_string(v.certification);
    if (v.certification == Certification::sampled) {
        j["samples"] = v.samples;
        j["tolerance"] = v.tolerance;
    }
    j["witness"] = v.witness ? witness_json(*v.witness) : ordered_json(nullptr);
    j["detail"] = v.detail;
    return j;
}

ordered_json conclusion_json(const ConclusionEntry& c) {
    ordered_json j;
    j["status"] = to_string(c.status);
    j["justified_by"] = c.justified_by;
    j["certification"] = to_string(c.certification);
    return j;
}

const char* status_caps(Status s) {
    switch (s) {
        case Status::holds: return "HOLDS";
        case Status::fails: return "FAILS";
        case Status::inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

const char* conclusion_caps(Conclusion c) {
    switch (c) {
        case Conclusion::implied: return "IMPLIED";
        case Conclusion::refuted: return "REFUTED";
        case Conclusion::unknown: return "UNKNOWN";
    }
    return "?";
}

void summary_verdict_line(std::string& out, const char* name, const Verdict& v) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  %-20s %-13s %s\n", name,
                  (std::string(status_caps(v.status)) + (v.strict ? "*" : "")).c_str(),
                  v.detail.c_str());
    out += buf;
}

}  // namespace

std::string report_to_json(const RunReport& r) {
    ordered_json j;
    j["tool"] = {{"name", "meancomp"}, {"version", r.tool_version}};
    j["setup"] = {
        {"n", r.n},
        {"interval", {r.interval.lo, r.interval.hi}},
        {"window", {r.window.lo, r.window.hi}},
        {"seed", r.seed},
        {"mean_fp", r.mean_fp},
        {"mean_gq", r.mean_gq},
        {"tolerances",
         {{"equality", r.options.tol_equality},
          {"monotonicity", r.options.tol_monotone},
          {"pair", r.options.tol_pair}}},
        {"grid", {{"samples", r.options.samples}, {"pair", r.options.pair_resolution}}},
    };

    ordered_json checks;
    checks["first_order"] = verdict_json(r.comparison.first_order);
    checks["ratio_monotone"] = verdict_json(r.comparison.ratio_monotone);
    checks["hessian_definite"] = verdict_json(r.comparison.hessian_definite);
    checks["gsc"] = verdict_json(r.comparison.gsc);
    checks["gsc_plus"] = verdict_json(r.comparison.gsc_plus);
    if (r.comparison.shared_weights) {
        const SharedWeightBattery& b = *r.comparison.shared_weights;
        checks["shared_weight_battery"] = {{"ratio_increasing", verdict_json(b.ratio_increasing)},
                                           {"curvature_order", verdict_json(b.curvature_order)},
                                           {"inverse_convexity", verdict_json(b.inverse_convexity)},
                                           {"tangent_inequality",
                                            verdict_json(b.tangent_inequality)},
                                           {"consistent", b.consistent}};
    }
    if (r.comparison.shared_generator)
        checks["shared_generator"] = verdict_json(*r.comparison.shared_generator);
    if (r.gsc_power) checks["gsc_power"] = verdict_json(*r.gsc_power);
    j["checks"] = checks;

    if (r.power) {
        ordered_json p;
        p["proportional"] = r.power->proportional;
        if (r.power->relation) {
            p["gamma"] = r.power->relation->gamma;
            p["delta"] = r.power->relation->delta;
        }
        p["first_order"] = verdict_json(r.power->report.first_order);
        p["ratio_monotone"] = verdict_json(r.power->report.ratio_monotone);
        p["hessian_definite"] = verdict_json(r.power->report.hessian_definite);
        p["gsc"] = verdict_json(r.power->report.gsc);
        p["gsc_plus"] = verdict_json(r.power->report.gsc_plus);
        p["locally_smaller"] = conclusion_json(r.power->report.locally_smaller);
        p["globally_smaller"] = conclusion_json(r.power->report.globally_smaller);
        j["power_family"] = p;
    }

    ordered_json search;
    search["enabled"] = r.search_enabled;
    if (r.search_global) {
        ordered_json s;
        s["best_gap"] = r.search_global->best_gap;
        s["evaluations"] = r.search_global->evaluations;
        s["skipped"] = r.search_global->skipped;
        if (r.search_global->witness) {
            s["witness"] = {{"point", r.search_global->witness->point},
                            {"gap", r.search_global->witness->gap}};
        } else {
            s["witness"] = nullptr;
        }
        search["max_gap"] = s;
    }
    if (!r.search_local.empty()) {
        ordered_json probes = ordered_json::array();
        for (const auto& [radius, gap] : r.search_local)
            probes.push_back({{"radius", radius}, {"max_gap", gap}});
        search["local_probe"] = probes;
    }
    j["search"] = search;

    j["conclusions"] = {{"locally_smaller", conclusion_json(r.locally_smaller)},
                        {"globally_smaller", conclusion_json(r.globally_smaller)}};
    j["notes"] = r.notes;
    return j.dump(2) + "\n";
}

std::string report_summary(const RunReport& r) {
    std::string out;
    out += "meancomp " + r.tool_version + " — comparison of generalized Bajraktarevic means\n";
    out += "  A[f,p] = " + r.mean_fp + "\n";
    out += "  A[g,q] = " + r.mean_gq + "\n";
    out += "  interval " + r.interval.str() + ", window [" + g6(r.window.lo) + ", " +
           g6(r.window.hi) + "], n = " + std::to_string(r.n) + ", seed " +
           std::to_string(r.seed) + "\n";
    out += "checks (holds/fails refer to the sampled grid at the stated tolerance; * = strict)\n";
    summary_verdict_line(out, "first_order", r.comparison.first_order);
    summary_verdict_line(out, "ratio_monotone", r.comparison.ratio_monotone);
    summary_verdict_line(out, "hessian_definite", r.comparison.hessian_definite);
    summary_verdict_line(out, "gsc", r.comparison.gsc);
    summary_verdict_line(out, "gsc_plus", r.comparison.gsc_plus);
    if (r.comparison.shared_weights) {
        const SharedWeightBattery& b = *r.comparison.shared_weights;
        out += "  shared-weight equivalence battery";
        out += b.consistent ? " (consistent)\n" : " (INTERNAL DISAGREEMENT)\n";
        summary_verdict_line(out, "  ratio_increasing", b.ratio_increasing);
        summary_verdict_line(out, "  curvature_order", b.curvature_order);
        summary_verdict_line(out, "  inverse_convexity", b.inverse_convexity);
        summary_verdict_line(out, "  tangent_inequality", b.tangent_inequality);
    }
    if (r.comparison.shared_generator)
        summary_verdict_line(out, "shared_generator", *r.comparison.shared_generator);
    if (r.gsc_power) summary_verdict_line(out, "gsc_power", *r.gsc_power);

    if (r.power) {
        out += "power family\n";
        if (r.power->relation) {
            out += "  gamma = " + g17(r.power->relation->gamma) +
                   ", delta = " + g17(r.power->relation->delta) + "\n";
        } else {
            out += "  weight families are not proportional (no gamma/delta relation)\n";
        }
        out += std::string("  locally smaller : ") +
               conclusion_caps(r.power->report.locally_smaller.status) + " — " +
               r.power->report.locally_smaller.justified_by + "\n";
        out += std::string("  globally smaller: ") +
               conclusion_caps(r.power->report.globally_smaller.status) + " — " +
               r.power->report.globally_smaller.justified_by + "\n";
    }

    if (r.search_enabled && r.search_global) {
        out += "search\n";
        out += "  max gap " + g10(r.search_global->best_gap);
        if (r.search_global->witness) {
            out += " at (";
            const auto& pt = r.search_global->witness->point;
            for (std::size_t i = 0; i < pt.size(); ++i)
                out += (i ? ", " : "") + g10(pt[i]);
            out += ")";
        } else {
            out += " (no violation found above the threshold)";
        }
        out += "; evaluations " + std::to_string(r.search_global->evaluations) + ", skipped " +
               std::to_string(r.search_global->skipped) + "\n";
        if (!r.search_local.empty()) {
            out += "  local probe:";
            for (const auto& [radius, gap] : r.search_local)
                out += " r=" + g6(radius) + " -> " + g10(gap) + ";";
            out += "\n";
        }
    }

    out += "conclusions\n";
    out += std::string("  locally smaller : ") + conclusion_caps(r.locally_smaller.status) +
           " — " + r.locally_smaller.justified_by + " [" +
           to_string(r.locally_smaller.certification) + "]\n";
    out += std::string("  globally smaller: ") + conclusion_caps(r.globally_smaller.status) +
           " — " + r.globally_smaller.justified_by + " [" +
           to_string(r.globally_smaller.certification) + "]\n";
    for (const auto& note : r.notes) out += "note: " + note + "\n";
    return out;
}

std::string landscape_csv(const MeanSpec& smaller, const MeanSpec& larger, const Window& window,
                          int resolution) {
    if (smaller.n() != 2 || larger.n() != 2)
        throw InvalidArgument("the gap landscape is only defined for n = 2");
    if (resolution < 2) throw InvalidArgument("landscape resolution must be >= 2");
    std::string out = "x,y,mean_fp,mean_gq,gap\n";
    char row[256];
    for (int i = 0; i < resolution; ++i) {
        double x = window.lo + window.width() * i / (resolution - 1);
        for (int k = 0; k < resolution; ++k) {
            double y = window.lo + window.width() * k / (resolution - 1);
            double xs[2] = {x, y};
            double a = smaller.evaluate(xs);
            double b = larger.evaluate(xs);
            std::snprintf(row, sizeof(row), "%.17g,%.17g,%.17g,%.17g,%.17g\n", x, y, a, b,
                          a - b);
            out += row;
        }
    }
    return out;
}

}  // namespace meancomp
