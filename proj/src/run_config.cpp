#include "decim/run_config.hpp"

#include <algorithm>
#include <set>

#include "decim/parallel.hpp"

namespace decim {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError("config: '" + path + "' must be an object");
}

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    require_object(j, path);
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            throw ConfigError("config: unknown key '" + path + "." + item.key() + "'");
}

const json& require(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key))
        throw ConfigError("config: missing required field '" + path + "." + key + "'");
    return j.at(key);
}

double as_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError("config: '" + where + "' must be a number");
    return j.get<double>();
}

int64_t as_integer(const json& j, const std::string& where) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        throw ConfigError("config: '" + where + "' must be an integer");
    return j.get<int64_t>();
}

bool as_bool(const json& j, const std::string& where) {
    if (!j.is_boolean()) throw ConfigError("config: '" + where + "' must be a boolean");
    return j.get<bool>();
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw ConfigError("config: '" + where + "' must be a string");
    return j.get<std::string>();
}

void parse_model(const json& block, RunConfig& out) {
    check_keys(block, "model",
               {"family", "J", "beta", "alpha1", "alpha2", "kappa", "truncation_radius"});
    CouplingModel m;
    try {
        m.family = family_from_name(as_string(require(block, "model", "family"), "model.family"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: model.family: ") + e.what());
    }
    m.strength = as_number(require(block, "model", "J"), "model.J");
    m.beta = as_number(require(block, "model", "beta"), "model.beta");
    if (block.contains("alpha1")) m.alpha1 = as_number(block.at("alpha1"), "model.alpha1");
    if (block.contains("alpha2")) m.alpha2 = as_number(block.at("alpha2"), "model.alpha2");
    if (block.contains("kappa")) m.kappa = as_number(block.at("kappa"), "model.kappa");
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    out.model = m;
    if (block.contains("truncation_radius")) {
        out.truncation_radius =
            int32_t(as_integer(block.at("truncation_radius"), "model.truncation_radius"));
        if (out.truncation_radius < 1)
            throw ConfigError("config: model.truncation_radius must be >= 1");
    } else if (m.long_range()) {
        throw ConfigError("config: missing required field 'model.truncation_radius'");
    }
}

void parse_geometry(const json& block, RunConfig& out) {
    check_keys(block, "geometry", {"L", "N", "target_C", "eps"});
    out.geometry_l = int32_t(as_integer(require(block, "geometry", "L"), "geometry.L"));
    if (out.geometry_l < 0) throw ConfigError("config: geometry.L must be >= 0");
    if (block.contains("N")) {
        out.geometry_n = int32_t(as_integer(block.at("N"), "geometry.N"));
        out.geometry_n_given = true;
        if (out.geometry_n <= out.geometry_l)
            throw ConfigError("config: geometry.N must exceed geometry.L");
    }
    if (block.contains("target_C")) {
        out.target_c = as_number(block.at("target_C"), "geometry.target_C");
        if (out.target_c <= 0.0) throw ConfigError("config: geometry.target_C must be > 0");
    }
    if (block.contains("eps")) {
        out.eps = as_number(block.at("eps"), "geometry.eps");
        if (!(out.eps > 0.0 && out.eps < pi / 2))
            throw ConfigError("config: geometry.eps must lie in (0, pi/2)");
    }
}

void parse_chain(const json& block, RunConfig& out) {
    check_keys(block, "chain",
               {"sweeps", "burn_in", "thinning", "seed", "proposal_width", "dump_series"});
    out.chain.sweeps = as_integer(require(block, "chain", "sweeps"), "chain.sweeps");
    if (block.contains("burn_in"))
        out.chain.burn_in = as_integer(block.at("burn_in"), "chain.burn_in");
    if (block.contains("thinning"))
        out.chain.thinning = as_integer(block.at("thinning"), "chain.thinning");
    if (block.contains("seed")) out.chain.seed = uint64_t(as_integer(block.at("seed"), "chain.seed"));
    if (block.contains("proposal_width"))
        out.chain.proposal_width = as_number(block.at("proposal_width"), "chain.proposal_width");
    if (block.contains("dump_series"))
        out.dump_series = as_bool(block.at("dump_series"), "chain.dump_series");
    try {
        out.chain.validate(out.model.spin_kind());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

void parse_output(const json& block, RunConfig& out) {
    check_keys(block, "output", {"csv", "json"});
    if (block.contains("csv")) out.output_csv = as_bool(block.at("csv"), "output.csv");
    if (block.contains("json")) out.output_json = as_bool(block.at("json"), "output.json");
}

std::vector<int32_t> parse_l_list(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw ConfigError("config: '" + where + "' must be a non-empty array of integers");
    std::vector<int32_t> out;
    for (const auto& v : j) out.push_back(int32_t(as_integer(v, where)));
    return out;
}

}  // namespace

std::pair<CouplingModel, int32_t> parse_model_block(const nlohmann::json& block) {
    RunConfig tmp;
    parse_model(block, tmp);
    return {tmp.model, tmp.truncation_radius};
}

const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> cmds = {"magnetize", "probe",        "scan",  "annulus",
                                                  "energy-bound", "oracle", "decimate"};
    return cmds;
}

RunConfig parse_run_config(const std::string& command, const nlohmann::json& config) {
    if (std::find(known_commands().begin(), known_commands().end(), command) ==
        known_commands().end())
        throw ConfigError("config: unknown command '" + command + "'");
    require_object(config, "(top level)");

    RunConfig out;
    out.command = command;
    out.workers = default_workers();

    std::set<std::string> allowed = {"command", "workers", "output"};
    const bool needs_model = command != "decimate";
    const bool needs_chain = command == "magnetize" || command == "probe" || command == "scan";
    if (needs_model) allowed.insert("model");
    if (needs_chain) allowed.insert("chain");
    if (command == "magnetize") allowed.insert("magnetize");
    if (command == "probe") {
        allowed.insert("geometry");
        allowed.insert("probe");
    }
    if (command == "scan") allowed.insert("scan");
    if (command == "annulus") allowed.insert("annulus");
    if (command == "energy-bound") allowed.insert("energy_bound");
    if (command == "oracle") allowed.insert("oracle");
    if (command == "decimate") allowed.insert("decimate");
    check_keys(config, "(top level)", allowed);

    if (config.contains("command") && as_string(config.at("command"), "command") != command)
        throw ConfigError("config: 'command' does not match the invoked subcommand");
    if (config.contains("workers")) {
        out.workers = int32_t(as_integer(config.at("workers"), "workers"));
        if (out.workers < 1) throw ConfigError("config: workers must be >= 1");
    }
    if (config.contains("output")) parse_output(config.at("output"), out);
    if (needs_model) parse_model(require(config, "(top level)", "model"), out);
    if (needs_chain) parse_chain(require(config, "(top level)", "chain"), out);

    if (command == "magnetize") {
        const json& block = require(config, "(top level)", "magnetize");
        check_keys(block, "magnetize", {"box_half_width"});
        out.box_half_width = int32_t(
            as_integer(require(block, "magnetize", "box_half_width"), "magnetize.box_half_width"));
        if (out.box_half_width < 1)
            throw ConfigError("config: magnetize.box_half_width must be >= 1");
    } else if (command == "probe") {
        parse_geometry(require(config, "(top level)", "geometry"), out);
        if (!out.geometry_n_given) {
            if (out.model.long_range())
                throw ConfigError(
                    "config: missing required field 'geometry.N' for long-range probes "
                    "(derive it with the annulus command)");
            out.geometry_n = out.geometry_l + 1;
        }
        if (config.contains("probe")) {
            const json& block = config.at("probe");
            check_keys(block, "probe", {"replicas", "control", "rotator_axis", "convergence_check"});
            if (block.contains("replicas"))
                out.replicas = int32_t(as_integer(block.at("replicas"), "probe.replicas"));
            if (out.replicas < 1) throw ConfigError("config: probe.replicas must be >= 1");
            if (block.contains("control"))
                out.control_image = as_bool(block.at("control"), "probe.control");
            if (block.contains("rotator_axis")) {
                const std::string axis = as_string(block.at("rotator_axis"), "probe.rotator_axis");
                if (axis == "horizontal") out.rotator_axis = RotatorAxis::horizontal;
                else if (axis == "vertical") out.rotator_axis = RotatorAxis::vertical;
                else
                    throw ConfigError(
                        "config: probe.rotator_axis must be 'horizontal' or 'vertical'");
            }
            if (block.contains("convergence_check"))
                out.convergence_check =
                    as_bool(block.at("convergence_check"), "probe.convergence_check");
        }
    } else if (command == "scan") {
        const json& block = require(config, "(top level)", "scan");
        check_keys(block, "scan",
                   {"L_list", "N_rule", "fixed_ratio", "eps", "replicas", "rotator_axis",
                    "target_C"});
        out.scan_l_list = parse_l_list(require(block, "scan", "L_list"), "scan.L_list");
        if (block.contains("N_rule")) {
            const std::string rule = as_string(block.at("N_rule"), "scan.N_rule");
            if (rule == "paper_schedule") out.annulus_rule = AnnulusRule::paper_schedule;
            else if (rule == "fixed_ratio") out.annulus_rule = AnnulusRule::fixed_ratio;
            else throw ConfigError("config: scan.N_rule must be 'paper_schedule' or 'fixed_ratio'");
        }
        if (block.contains("fixed_ratio"))
            out.fixed_ratio = as_number(block.at("fixed_ratio"), "scan.fixed_ratio");
        if (out.fixed_ratio <= 1.0) throw ConfigError("config: scan.fixed_ratio must be > 1");
        if (block.contains("eps")) out.eps = as_number(block.at("eps"), "scan.eps");
        if (block.contains("replicas"))
            out.replicas = int32_t(as_integer(block.at("replicas"), "scan.replicas"));
        if (out.replicas < 1) throw ConfigError("config: scan.replicas must be >= 1");
        if (block.contains("target_C")) {
            out.target_c = as_number(block.at("target_C"), "scan.target_C");
            if (out.target_c <= 0.0) throw ConfigError("config: scan.target_C must be > 0");
        }
        if (block.contains("rotator_axis")) {
            const std::string axis = as_string(block.at("rotator_axis"), "scan.rotator_axis");
            out.rotator_axis = axis == "vertical" ? RotatorAxis::vertical : RotatorAxis::horizontal;
        }
    } else if (command == "annulus") {
        const json& block = require(config, "(top level)", "annulus");
        check_keys(block, "annulus", {"L_list", "target_C"});
        out.annulus_l_list = parse_l_list(require(block, "annulus", "L_list"), "annulus.L_list");
        if (block.contains("target_C")) {
            out.target_c = as_number(block.at("target_C"), "annulus.target_C");
            if (out.target_c <= 0.0) throw ConfigError("config: annulus.target_C must be > 0");
        }
    } else if (command == "energy-bound") {
        const json& block = require(config, "(top level)", "energy_bound");
        check_keys(block, "energy_bound", {"L", "N"});
        out.bound_l = int32_t(as_integer(require(block, "energy_bound", "L"), "energy_bound.L"));
        out.bound_n = as_integer(require(block, "energy_bound", "N"), "energy_bound.N");
        if (out.bound_n <= out.bound_l)
            throw ConfigError("config: energy_bound.N must exceed energy_bound.L");
    } else if (command == "oracle") {
        const json& block = require(config, "(top level)", "oracle");
        check_keys(block, "oracle", {"kind", "L", "sites", "boundary", "frozen_even", "q"});
        out.oracle_kind = as_string(require(block, "oracle", "kind"), "oracle.kind");
        if (out.oracle_kind != "enumerate_ising" && out.oracle_kind != "clock_rotator" &&
            out.oracle_kind != "onsager")
            throw ConfigError(
                "config: oracle.kind must be 'enumerate_ising', 'clock_rotator' or 'onsager'");
        if (block.contains("L")) {
            out.oracle_l = int32_t(as_integer(block.at("L"), "oracle.L"));
            if (out.oracle_l < 0) throw ConfigError("config: oracle.L must be >= 0");
        }
        if (block.contains("sites")) {
            if (!block.at("sites").is_array())
                throw ConfigError("config: 'oracle.sites' must be an array of [i1,i2] pairs");
            for (const auto& p : block.at("sites")) {
                if (!p.is_array() || p.size() != 2)
                    throw ConfigError("config: 'oracle.sites' entries must be [i1,i2] pairs");
                out.oracle_sites.push_back(Site{int32_t(as_integer(p.at(0), "oracle.sites")),
                                                int32_t(as_integer(p.at(1), "oracle.sites"))});
            }
        }
        if (block.contains("boundary")) {
            out.oracle_boundary = as_string(block.at("boundary"), "oracle.boundary");
            if (out.oracle_boundary != "plus" && out.oracle_boundary != "minus" &&
                out.oracle_boundary != "free")
                throw ConfigError("config: oracle.boundary must be 'plus', 'minus' or 'free'");
        }
        if (block.contains("frozen_even")) {
            out.oracle_frozen_even = as_string(block.at("frozen_even"), "oracle.frozen_even");
            if (out.oracle_frozen_even != "alternating" && out.oracle_frozen_even != "all_plus" &&
                out.oracle_frozen_even != "all_minus")
                throw ConfigError(
                    "config: oracle.frozen_even must be 'alternating', 'all_plus' or 'all_minus'");
        }
        if (block.contains("q")) {
            out.oracle_q = as_integer(block.at("q"), "oracle.q");
            if (out.oracle_q < 8) throw ConfigError("config: oracle.q must be >= 8");
        }
    } else if (command == "decimate") {
        const json& block = require(config, "(top level)", "decimate");
        check_keys(block, "decimate", {"input", "output", "configuration"});
        if (block.contains("input"))
            out.decimate_input = as_string(block.at("input"), "decimate.input");
        if (block.contains("output"))
            out.decimate_output = as_string(block.at("output"), "decimate.output");
        if (block.contains("configuration")) out.decimate_document = block.at("configuration");
        if (out.decimate_document.is_null() && out.decimate_input.empty())
            throw ConfigError(
                "config: decimate needs 'decimate.input' or 'decimate.configuration'");
    }
    return out;
}

}  // namespace decim
