// decim CLI: thin front-end over the shared-library C API. Reads a JSON run
// config, executes one subcommand, writes the result payloads and a run
// manifest under the output directory. All file IO happens here.
#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>

#include "decim/decim.h"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_runtime = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

// FNV-1a, hex; enough to identify a config byte-for-byte in the manifest
std::string fnv1a_hex(const std::string& data) {
    uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

struct Freed {
    char* p = nullptr;
    ~Freed() { decim_string_free(p); }
};

int fail_with(decim_status status) {
    std::cerr << "decim: " << decim_last_error() << "\n";
    return status == DECIM_ERR_CONFIG ? exit_config : exit_runtime;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decim: decimated 2d Ising and rotator lattice systems"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    uint64_t seed_override = 0;
    bool seed_given = false;
    int workers_override = 0;
    bool dry_run = false;

    const std::vector<std::string> commands = {"magnetize", "probe",  "scan",    "annulus",
                                               "energy-bound", "oracle", "decimate"};
    for (const std::string& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "run config JSON path")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory")->envname("DECIM_OUT");
        sub->add_option("--seed", seed_override, "override chain.seed")
            ->envname("DECIM_SEED")
            ->each([&](const std::string&) { seed_given = true; });
        sub->add_option("--workers", workers_override, "worker pool size")
            ->envname("DECIM_WORKERS");
        sub->add_flag("--dry-run", dry_run, "validate the config and print the plan");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    nlohmann::json config;
    try {
        config = nlohmann::json::parse(read_file(config_path));
    } catch (const std::exception& e) {
        std::cerr << "decim: config: " << e.what() << "\n";
        return exit_config;
    }

    // apply overrides before handing the config to the library
    if (seed_given) {
        if (!config.contains("chain") || !config["chain"].is_object())
            config["chain"] = nlohmann::json::object();
        config["chain"]["seed"] = seed_override;
    }
    if (workers_override > 0) config["workers"] = workers_override;
    if (command == "decimate" && config.contains("decimate") &&
        config["decimate"].is_object() && config["decimate"].contains("input")) {
        try {
            config["decimate"]["configuration"] =
                nlohmann::json::parse(read_file(config["decimate"]["input"].get<std::string>()));
        } catch (const std::exception& e) {
            std::cerr << "decim: decimate.input: " << e.what() << "\n";
            return exit_config;
        }
    }
    const std::string config_text = config.dump();

    if (dry_run) {
        Freed plan;
        const decim_status status = decim_plan(command.c_str(), config_text.c_str(), &plan.p);
        if (status != DECIM_OK) return fail_with(status);
        std::cout << plan.p << "\n";
        return exit_ok;
    }

    const std::string started = timestamp_utc();
    Freed result;
    const decim_status status = decim_run(command.c_str(), config_text.c_str(), &result.p);
    if (status != DECIM_OK) return fail_with(status);

    try {
        const auto doc = nlohmann::json::parse(result.p);
        const std::filesystem::path dir(out_dir);
        std::filesystem::create_directories(dir);

        nlohmann::json files = nlohmann::json::array();
        const bool want_json = !config.contains("output") ||
                               !config["output"].contains("json") ||
                               config["output"]["json"].get<bool>();
        const bool want_csv = !config.contains("output") || !config["output"].contains("csv") ||
                              config["output"]["csv"].get<bool>();
        if (want_json) {
            write_file(dir / "summary.json", doc.at("summary").dump(2) + "\n");
            files.push_back("summary.json");
        }
        for (const auto& artifact : doc.at("artifacts")) {
            const std::string name = artifact.at("name").get<std::string>();
            const bool is_csv = name.size() > 4 && name.substr(name.size() - 4) == ".csv";
            if (is_csv && !want_csv) continue;
            if (!is_csv && !want_json) continue;
            write_file(dir / name, artifact.at("content").get<std::string>());
            files.push_back(name);
        }

        nlohmann::json manifest;
        manifest["artifact_version"] = decim_version();
        manifest["command"] = command;
        manifest["config_hash"] = fnv1a_hex(config_text);
        if (doc.at("summary").contains("seeds")) manifest["seeds"] = doc.at("summary").at("seeds");
        else if (config.contains("chain") && config["chain"].contains("seed"))
            manifest["seeds"] = {{"base", config["chain"]["seed"]}};
        manifest["started_at"] = started;
        manifest["finished_at"] = timestamp_utc();
        manifest["results"] = files;
        write_file(dir / "manifest.json", manifest.dump(2) + "\n");

        std::cout << doc.at("summary").dump(2) << "\n";
    } catch (const std::exception& e) {
        std::cerr << "decim: output: " << e.what() << "\n";
        return exit_runtime;
    }
    return exit_ok;
}
