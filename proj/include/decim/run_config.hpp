#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "decim/decimation.hpp"

namespace decim {

/// invalid or ill-formed run configuration (CLI exit code 2)
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A validated run configuration. Unknown keys are rejected, missing or
/// ill-typed fields raise ConfigError naming the offending field.
struct RunConfig {
    std::string command;
    CouplingModel model;
    int32_t truncation_radius = 1;

    int32_t geometry_l = 0;
    int32_t geometry_n = 0;
    bool geometry_n_given = false;
    double target_c = 1.0;
    double eps = 0.1;

    ChainSpec chain;
    bool dump_series = false;
    int32_t workers = 1;
    bool output_csv = true;
    bool output_json = true;

    // magnetize
    int32_t box_half_width = 16;

    // probe
    int32_t replicas = 8;
    bool control_image = false;
    RotatorAxis rotator_axis = RotatorAxis::horizontal;
    bool convergence_check = false;

    // scan
    std::vector<int32_t> scan_l_list;
    AnnulusRule annulus_rule = AnnulusRule::paper_schedule;
    double fixed_ratio = 1.5;

    // annulus
    std::vector<int32_t> annulus_l_list;

    // energy-bound
    int32_t bound_l = 0;
    int64_t bound_n = 0;

    // oracle
    std::string oracle_kind;  // enumerate_ising | clock_rotator | onsager
    int32_t oracle_l = 1;
    std::vector<Site> oracle_sites;  // alternative to a full box
    std::string oracle_boundary = "free";
    std::string oracle_frozen_even;  // "", alternating, all_plus, all_minus
    int64_t oracle_q = 64;

    // decimate
    nlohmann::json decimate_document;
    std::string decimate_input;
    std::string decimate_output = "decimated.json";

    InteractionKernel build_model_kernel() const { return build_kernel(model, truncation_radius); }
};

/// Parse and validate a config document for one command.
RunConfig parse_run_config(const std::string& command, const nlohmann::json& config);

/// Parse a bare model block ({family, J, beta, ..., truncation_radius});
/// returns the model and the truncation radius.
std::pair<CouplingModel, int32_t> parse_model_block(const nlohmann::json& block);

/// The list of commands parse_run_config accepts.
const std::vector<std::string>& known_commands();

}  // namespace decim
