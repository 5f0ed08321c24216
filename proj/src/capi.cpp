#include "meancomp.h"

#include <cstring>
#include <string>

#include "meancomp/mean.hpp"
#include "meancomp/runner.hpp"
#include "meancomp/selftest.hpp"

using namespace meancomp;

namespace {

thread_local std::string t_last_error;

mc_status status_of(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::parse: return MC_ERR_PARSE;
        case ErrorKind::domain: return MC_ERR_DOMAIN;
        case ErrorKind::overflow: return MC_ERR_OVERFLOW;
        case ErrorKind::invalid: return MC_ERR_INVALID;
        case ErrorKind::certification: return MC_ERR_CERTIFY;
        case ErrorKind::inversion: return MC_ERR_INVERT;
        case ErrorKind::config: return MC_ERR_CONFIG;
        case ErrorKind::internal: return MC_ERR_INTERNAL;
    }
    return MC_ERR_INTERNAL;
}

template <typename Fn>
mc_status guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return MC_OK;
    } catch (const Error& e) {
        t_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return MC_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

Interval make_interval(double lo, double hi) { return Interval(lo, hi); }

}  // namespace

struct mc_expr {
    ExprPtr expr;
};

struct mc_mean {
    MeanSpec mean;
};

struct mc_run {
    RunOutputs outputs;
};

extern "C" {

const char* mc_version(void) { return MC_VERSION_STRING; }

const char* mc_last_error(void) { return t_last_error.c_str(); }

void mc_free(char* text) { delete[] text; }

mc_status mc_expr_parse(const char* source, mc_expr** out) {
    if (!source || !out) {
        t_last_error = "null argument";
        return MC_ERR_INVALID;
    }
    return guarded([&] { *out = new mc_expr{parse_expr(source)}; });
}

mc_status mc_expr_eval(const mc_expr* expr, double x, double* value_out) {
    if (!expr || !value_out) {
        t_last_error = "null argument";
        return MC_ERR_INVALID;
    }
    return guarded([&] { *value_out = expr->expr->eval(x); });
}

mc_status mc_expr_derivative(const mc_expr* expr, mc_expr** out) {
    if (!expr || !out) {
        t_last_error = "null argument";
        return MC_ERR_INVALID;
    }
    return guarded([&] { *out = new mc_expr{expr->expr->derivative()}; });
}

mc_status mc_expr_format(const mc_expr* expr, char** text_out) {
    if (!expr || !text_out) {
        t_last_error = "null argument";
        return MC_ERR_INVALID;
    }
    return guarded([&] { *text_out = dup_string(expr->expr->str()); });
}

void mc_expr_free(mc_expr* expr) { delete expr; }

mc_status mc_mean_create(const char* generator, const char* const* weights, int n, double lo,
                         double hi, mc_mean** out) {
    if (!generator || !weights || !out || n < 2) {
        t_last_error = "null argument or n < 2";
        return MC_ERR_INVALID;
    }
    return guarded([&] {
        Interval domain = make_interval(lo, hi);
        GeneratorSpec gen = GeneratorSpec::create(parse_expr(generator), domain);
        std::vector<ExprPtr> ws;
        ws.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            if (!weights[i]) throw InvalidArgument("null weight expression");
            ws.push_back(parse_expr(weights[i]));
        }
        WeightFamily family = WeightFamily::create(std::move(ws), domain);
        *out = new mc_mean{MeanSpec::create(std::move(gen), std::move(family))};
    });
}

mc_status mc_mean_create_power(double exponent, const double* lambda, const double* alpha, int n,
                               double lo, double hi, mc_mean** out) {
    if (!lambda || !alpha || !out || n < 2) {
        t_last_error = "null argument or n < 2";
        return MC_ERR_INVALID;
    }
    return guarded([&] {
        Interval domain = make_interval(lo, hi);
        std::span<const double> lam(lambda, static_cast<std::size_t>(n));
        std::span<const double> al(alpha, static_cast<std::size_t>(n));
        *out = new mc_mean{MeanSpec::create(GeneratorSpec::power(exponent, domain),
                                            WeightFamily::power(lam, al, domain))};
    });
}

mc_status mc_mean_eval(const mc_mean* mean, const double* xs, int n, double* value_out) {
    if (!mean || !xs || !value_out) {
        t_last_error = "null argument";
        return MC_ERR_INVALID;
    }
    return guarded([&] {
        *value_out = mean->mean.evaluate(std::span<const double>(xs, static_cast<std::size_t>(n)));
    });
}

mc_status mc_mean_invert_generator(const mc_mean* mean, double y, double* x_out) {
    if (!mean || !x_out) {
        t_last_error = "null argument";
        return MC_ERR_INVALID;
    }
    return guarded([&] { *x_out = mean->mean.generator().invert(y); });
}

mc_status mc_mean_diag_first_partial(const mc_mean* mean, int index, double x,
                                     double* value_out) {
    if (!mean || !value_out) {
        t_last_error = "null argument";
        return MC_ERR_INVALID;
    }
    return guarded([&] { *value_out = mean->mean.diag_first_partial(index, x); });
}

void mc_mean_free(mc_mean* mean) { delete mean; }

mc_status mc_run_compare(const char* config_json, const char* overrides_json, mc_run** out) {
    if (!config_json || !out) {
        t_last_error = "null argument";
        return MC_ERR_INVALID;
    }
    return guarded([&] {
        *out = new mc_run{
            run_compare_config(config_json, overrides_json ? overrides_json : "")};
    });
}

const char* mc_run_report_json(const mc_run* run) {
    return run ? run->outputs.report_json.c_str() : nullptr;
}

const char* mc_run_summary(const mc_run* run) {
    return run ? run->outputs.summary.c_str() : nullptr;
}

const char* mc_run_csv(const mc_run* run) {
    return run && run->outputs.csv ? run->outputs.csv->c_str() : nullptr;
}

const char* mc_run_report_path(const mc_run* run) {
    return run && run->outputs.paths.report ? run->outputs.paths.report->c_str() : nullptr;
}

const char* mc_run_csv_path(const mc_run* run) {
    return run && run->outputs.paths.csv ? run->outputs.paths.csv->c_str() : nullptr;
}

const char* mc_run_summary_path(const mc_run* run) {
    return run && run->outputs.paths.summary ? run->outputs.paths.summary->c_str() : nullptr;
}

int mc_run_refuted(const mc_run* run) { return run && run->outputs.refuted ? 1 : 0; }

void mc_run_free(mc_run* run) { delete run; }

mc_status mc_selftest(char** text_out, int* failures_out) {
    if (!text_out || !failures_out) {
        t_last_error = "null argument";
        return MC_ERR_INVALID;
    }
    return guarded([&] {
        auto results = run_selftest();
        int failures = 0;
        for (const auto& r : results)
            if (!r.passed) ++failures;
        *failures_out = failures;
        *text_out = dup_string(selftest_text(results));
    });
}

}  // extern "C"
