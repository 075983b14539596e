#include "decim/decim.h"

#include <cstring>
#include <string>

#include "decim/commands.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

decim_status fail(decim_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

template <typename F>
decim_status guarded(F&& f) {
    try {
        return f();
    } catch (const decim::ConfigError& e) {
        return fail(DECIM_ERR_CONFIG, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(DECIM_ERR_CONFIG, e.what());
    } catch (const std::exception& e) {
        return fail(DECIM_ERR_RUNTIME, e.what());
    } catch (...) {
        return fail(DECIM_ERR_RUNTIME, "unknown error");
    }
}

nlohmann::json parse_json(const char* text, const char* what) {
    if (text == nullptr) throw decim::ConfigError(std::string(what) + ": null input");
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw decim::ConfigError(std::string(what) + ": " + e.what());
    }
}

}  // namespace

struct decim_model {
    decim::CouplingModel model;
    decim::InteractionKernel kernel;
    int32_t radius = 1;
};

extern "C" {

const char* decim_version(void) { return "0.1.0"; }

const char* decim_last_error(void) { return g_last_error.c_str(); }

void decim_string_free(char* s) { delete[] s; }

decim_status decim_model_create(const char* model_json, decim_model** out) {
    return guarded([&]() -> decim_status {
        if (out == nullptr) return fail(DECIM_ERR_CONFIG, "decim_model_create: null output");
        const nlohmann::json doc = parse_json(model_json, "model");
        const auto [model, radius] = decim::parse_model_block(doc);
        auto* handle = new decim_model;
        handle->model = model;
        handle->radius = radius;
        handle->kernel = decim::build_kernel(model, radius);
        *out = handle;
        return DECIM_OK;
    });
}

void decim_model_free(decim_model* m) { delete m; }

decim_status decim_model_coupling(const decim_model* m, int32_t i1, int32_t i2, int32_t j1,
                                  int32_t j2, double* out) {
    return guarded([&]() -> decim_status {
        if (m == nullptr || out == nullptr)
            return fail(DECIM_ERR_CONFIG, "decim_model_coupling: null argument");
        *out = decim::coupling(m->model, decim::Site{i1, i2}, decim::Site{j1, j2});
        return DECIM_OK;
    });
}

decim_status decim_model_tail_mass(const decim_model* m, double* out) {
    return guarded([&]() -> decim_status {
        if (m == nullptr || out == nullptr)
            return fail(DECIM_ERR_CONFIG, "decim_model_tail_mass: null argument");
        *out = decim::tail_mass(m->model, m->radius);
        return DECIM_OK;
    });
}

decim_status decim_model_energy_bound(const decim_model* m, int32_t inner_l, int64_t outer_n,
                                      double* out) {
    return guarded([&]() -> decim_status {
        if (m == nullptr || out == nullptr)
            return fail(DECIM_ERR_CONFIG, "decim_model_energy_bound: null argument");
        *out = decim::bc_energy_bound(inner_l, outer_n, m->model, m->kernel);
        return DECIM_OK;
    });
}

decim_status decim_model_annulus_size(const decim_model* m, int32_t inner_l, double target_c,
                                      int64_t* n_out, double* bound_out, double* exponent_out) {
    return guarded([&]() -> decim_status {
        if (m == nullptr || n_out == nullptr)
            return fail(DECIM_ERR_CONFIG, "decim_model_annulus_size: null argument");
        const decim::AnnulusSchedule s =
            decim::annulus_size(m->model, m->kernel, inner_l, target_c);
        *n_out = s.outer_n;
        if (bound_out) *bound_out = s.bound_c;
        if (exponent_out) *exponent_out = s.asymptotic_exponent;
        return DECIM_OK;
    });
}

decim_status decim_run(const char* command, const char* config_json, char** result_json) {
    return guarded([&]() -> decim_status {
        if (command == nullptr || result_json == nullptr)
            return fail(DECIM_ERR_CONFIG, "decim_run: null argument");
        const nlohmann::json config = parse_json(config_json, "config");
        const decim::CommandResult res = decim::run_command(command, config);
        nlohmann::ordered_json doc;
        doc["summary"] = res.summary;
        auto artifacts = nlohmann::ordered_json::array();
        for (const auto& [name, content] : res.artifacts)
            artifacts.push_back({{"name", name}, {"content", content}});
        doc["artifacts"] = artifacts;
        *result_json = dup_string(doc.dump(2));
        return DECIM_OK;
    });
}

decim_status decim_plan(const char* command, const char* config_json, char** plan_json) {
    return guarded([&]() -> decim_status {
        if (command == nullptr || plan_json == nullptr)
            return fail(DECIM_ERR_CONFIG, "decim_plan: null argument");
        const nlohmann::json config = parse_json(config_json, "config");
        *plan_json = dup_string(decim::dry_run_plan(command, config).dump(2));
        return DECIM_OK;
    });
}

decim_status decim_decimate_document(const char* configuration_json, char** result_json) {
    return guarded([&]() -> decim_status {
        if (result_json == nullptr)
            return fail(DECIM_ERR_CONFIG, "decim_decimate_document: null argument");
        const nlohmann::json doc = parse_json(configuration_json, "configuration");
        decim::SpinConfiguration in = decim::SpinConfiguration::from_json(doc);
        *result_json = dup_string(decim::decimate(in).to_json().dump(2));
        return DECIM_OK;
    });
}

}  // extern "C"
