#include "decim/commands.hpp"

#include <cstdio>

#include "decim/parallel.hpp"

namespace decim {

const char* const probe_csv_header =
    "family,alpha1,alpha2,kappa,J,beta,L,N,eps,side_obs,m_plus,se_plus,m_minus,se_minus,gap,"
    "significance,seed_base";
const char* const annulus_csv_header =
    "family,alpha1,alpha2,L,target_C,N,bound_C,asymptotic_exponent";
const char* const magnetize_csv_header =
    "family,J,beta,box_half_width,side,mean,std_error,tau_int,n_samples,seed";
const char* const energy_bound_csv_header = "family,alpha1,alpha2,J,L,N,bound";

namespace {

using nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ordered_json estimate_json(const Estimate& e) {
    return ordered_json{{"mean", e.mean},
                        {"std_error", e.std_error},
                        {"tau_int", e.tau_int},
                        {"n_samples", e.n_samples}};
}

ordered_json model_json(const RunConfig& rc) {
    ordered_json j = ordered_json::object();
    const nlohmann::json m = rc.model.to_json();
    for (const auto& item : m.items()) j[item.key()] = item.value();
    j["truncation_radius"] = rc.truncation_radius;
    return j;
}

ordered_json chain_json(const ChainSpec& c, SpinKind kind) {
    ordered_json j{{"sweeps", c.sweeps},
                   {"burn_in", c.burn_in},
                   {"thinning", c.thinning},
                   {"seed", c.seed}};
    if (kind == SpinKind::planar) j["proposal_width"] = c.proposal_width;
    return j;
}

std::string series_csv(const std::vector<double>& series, int64_t thinning) {
    std::string out = "sweep_index,value\n";
    for (size_t i = 0; i < series.size(); ++i) {
        out += std::to_string(int64_t(i + 1) * thinning);
        out += ',';
        out += fmt(series[i]);
        out += '\n';
    }
    return out;
}

std::string probe_csv_row(const RunConfig& rc, const GapReport& rep) {
    std::string row;
    row += family_name(rc.model.family);
    row += ',' + fmt(rc.model.alpha1) + ',' + fmt(rc.model.alpha2) + ',' + fmt(rc.model.kappa);
    row += ',' + fmt(rc.model.strength) + ',' + fmt(rc.model.beta);
    row += ',' + std::to_string(rep.image_l) + ',' + std::to_string(rep.image_n);
    row += ',' + fmt(rep.eps) + ',' + rep.side_observable;
    row += ',' + fmt(rep.m_plus.mean) + ',' + fmt(rep.m_plus.std_error);
    row += ',' + fmt(rep.m_minus.mean) + ',' + fmt(rep.m_minus.std_error);
    row += ',' + fmt(rep.gap) + ',' + fmt(rep.significance) + ',' + std::to_string(rep.seed_base);
    row += '\n';
    return row;
}

ordered_json gap_report_json(const GapReport& rep) {
    ordered_json j;
    j["side_observable"] = rep.side_observable;
    j["L"] = rep.image_l;
    j["N"] = rep.image_n;
    j["eps"] = rep.eps;
    j["m_plus"] = estimate_json(rep.m_plus);
    j["m_minus"] = estimate_json(rep.m_minus);
    j["gap"] = rep.gap;
    j["significance"] = rep.significance;
    j["seed_base"] = rep.seed_base;
    if (rep.schedule_n > 0) {
        j["schedule"] = ordered_json{{"minimal_original_n", rep.schedule_n},
                                     {"warning", rep.schedule_warning}};
    }
    ordered_json plus = ordered_json::array(), minus = ordered_json::array();
    for (const auto& e : rep.plus_replicas) plus.push_back(estimate_json(e));
    for (const auto& e : rep.minus_replicas) minus.push_back(estimate_json(e));
    j["replica_detail"] = ordered_json{{"plus", plus}, {"minus", minus}};
    return j;
}

ProbeOptions probe_options(const RunConfig& rc) {
    ProbeOptions opt;
    opt.image_l = rc.geometry_l;
    opt.image_n = rc.geometry_n;
    opt.eps = rc.eps;
    opt.replicas = rc.replicas;
    opt.workers = rc.workers;
    opt.image = rc.control_image ? BadImage::all_plus : BadImage::alternating;
    opt.rotator_axis = rc.rotator_axis;
    opt.schedule_target_c = rc.target_c;
    return opt;
}

CommandResult cmd_magnetize(const RunConfig& rc) {
    const InteractionKernel kernel = rc.build_model_kernel();
    const BoxRegion box(rc.box_half_width);
    const SiteSet region = SiteSet::all_of(box);
    const SpinKind kind = rc.model.spin_kind();

    struct SideRun {
        Estimate estimate;
        std::vector<double> series;
        uint64_t seed = 0;
    };
    SideRun runs[2];
    parallel_jobs(2, rc.workers, [&](int64_t job) {
        const Level level = job == 0 ? Level::plus : Level::minus;
        ChainSpec spec = rc.chain;
        spec.seed = derive_seed(rc.chain.seed, uint64_t(job));
        runs[job].seed = spec.seed;
        const SpinConfiguration init = homogeneous(box, kind, level);
        const FiniteSystem sys =
            assemble_system(region, init, BoundarySpec::homogeneous_exterior(level), kernel);
        ChainResult res = run_chain(sys, rc.model, kernel, spec, {observable_region_mean()},
                                    rc.dump_series);
        runs[job].estimate = res.estimates[0];
        if (rc.dump_series) runs[job].series = std::move(res.series[0]);
    });

    CommandResult out;
    out.summary["command"] = "magnetize";
    out.summary["model"] = model_json(rc);
    out.summary["box_half_width"] = rc.box_half_width;
    out.summary["observable"] = kind == SpinKind::scalar ? "mean_sigma" : "mean_sin_theta";
    out.summary["chain"] = chain_json(rc.chain, kind);
    out.summary["plus"] = estimate_json(runs[0].estimate);
    out.summary["minus"] = estimate_json(runs[1].estimate);
    out.summary["difference"] = runs[0].estimate.mean - runs[1].estimate.mean;
    if (rc.model.family == Family::nn_ising && rc.model.beta > 0.0)
        out.summary["onsager_reference"] = onsager_reference(rc.model.beta);
    out.summary["seeds"] = ordered_json{{"base", rc.chain.seed},
                                        {"plus", runs[0].seed},
                                        {"minus", runs[1].seed}};

    std::string csv = magnetize_csv_header;
    csv += '\n';
    for (int job = 0; job < 2; ++job) {
        const Estimate& e = runs[job].estimate;
        csv += family_name(rc.model.family);
        csv += ',' + fmt(rc.model.strength) + ',' + fmt(rc.model.beta);
        csv += ',' + std::to_string(rc.box_half_width);
        csv += job == 0 ? ",plus," : ",minus,";
        csv += fmt(e.mean) + ',' + fmt(e.std_error) + ',' + fmt(e.tau_int) + ',' +
               std::to_string(e.n_samples) + ',' + std::to_string(runs[job].seed) + '\n';
    }
    out.artifacts.emplace_back("magnetize.csv", csv);
    if (rc.dump_series) {
        out.artifacts.emplace_back("series_plus.csv", series_csv(runs[0].series, rc.chain.thinning));
        out.artifacts.emplace_back("series_minus.csv",
                                   series_csv(runs[1].series, rc.chain.thinning));
    }
    return out;
}

CommandResult cmd_probe(const RunConfig& rc) {
    const InteractionKernel kernel = rc.build_model_kernel();
    const GapReport rep = discontinuity_probe(rc.model, kernel, rc.chain, probe_options(rc));

    CommandResult out;
    out.summary["command"] = "probe";
    out.summary["model"] = model_json(rc);
    out.summary["chain"] = chain_json(rc.chain, rc.model.spin_kind());
    out.summary["control"] = rc.control_image;
    out.summary["replicas"] = rc.replicas;
    out.summary["report"] = gap_report_json(rep);
    if (rc.convergence_check) {
        ProbeOptions wide = probe_options(rc);
        wide.image_n = 2 * rc.geometry_n;
        wide.replicas = 1;
        ChainSpec spec = rc.chain;
        spec.seed = derive_seed(rc.chain.seed, 0x5eedULL);
        const GapReport rep2 = discontinuity_probe(rc.model, kernel, spec, wide);
        out.summary["convergence"] =
            ordered_json{{"N2", wide.image_n},
                         {"m_plus_shift", rep2.m_plus.mean - rep.m_plus.mean},
                         {"m_minus_shift", rep2.m_minus.mean - rep.m_minus.mean}};
    }
    std::string csv = probe_csv_header;
    csv += '\n';
    csv += probe_csv_row(rc, rep);
    out.artifacts.emplace_back("probe.csv", csv);
    return out;
}

CommandResult cmd_scan(const RunConfig& rc) {
    const InteractionKernel kernel = rc.build_model_kernel();
    ScanOptions opt;
    opt.l_list = rc.scan_l_list;
    opt.rule = rc.annulus_rule;
    opt.fixed_ratio = rc.fixed_ratio;
    opt.eps = rc.eps;
    opt.replicas = rc.replicas;
    opt.workers = rc.workers;
    opt.rotator_axis = rc.rotator_axis;
    opt.schedule_target_c = rc.target_c;
    const ScanResult res = bad_vs_good_scan(rc.model, kernel, rc.chain, opt);

    CommandResult out;
    out.summary["command"] = "scan";
    out.summary["model"] = model_json(rc);
    out.summary["chain"] = chain_json(rc.chain, rc.model.spin_kind());
    out.summary["N_rule"] =
        rc.annulus_rule == AnnulusRule::paper_schedule ? "paper_schedule" : "fixed_ratio";
    ordered_json rows = ordered_json::array();
    std::string csv = probe_csv_header;
    csv += '\n';
    for (const GapReport& rep : res.rows) {
        rows.push_back(gap_report_json(rep));
        csv += probe_csv_row(rc, rep);
    }
    out.summary["rows"] = rows;
    out.summary["warnings"] = res.warnings;
    out.artifacts.emplace_back("scan.csv", csv);
    return out;
}

CommandResult cmd_annulus(const RunConfig& rc) {
    const InteractionKernel kernel = rc.build_model_kernel();
    CommandResult out;
    out.summary["command"] = "annulus";
    out.summary["model"] = model_json(rc);
    out.summary["target_C"] = rc.target_c;
    ordered_json rows = ordered_json::array();
    std::string csv = annulus_csv_header;
    csv += '\n';
    for (const int32_t l : rc.annulus_l_list) {
        const AnnulusSchedule s = annulus_size(rc.model, kernel, l, rc.target_c);
        rows.push_back(ordered_json{{"L", s.inner_l},
                                    {"N", s.outer_n},
                                    {"bound_C", s.bound_c},
                                    {"alpha_eff", s.alpha_eff},
                                    {"asymptotic_exponent", s.asymptotic_exponent}});
        csv += family_name(rc.model.family);
        csv += ',' + fmt(rc.model.alpha1) + ',' + fmt(rc.model.alpha2);
        csv += ',' + std::to_string(s.inner_l) + ',' + fmt(rc.target_c);
        csv += ',' + std::to_string(s.outer_n) + ',' + fmt(s.bound_c) + ',' +
               fmt(s.asymptotic_exponent) + '\n';
    }
    out.summary["rows"] = rows;
    out.artifacts.emplace_back("annulus.csv", csv);
    return out;
}

CommandResult cmd_energy_bound(const RunConfig& rc) {
    const InteractionKernel kernel = rc.build_model_kernel();
    const double bound = bc_energy_bound(rc.bound_l, rc.bound_n, rc.model, kernel);
    CommandResult out;
    out.summary["command"] = "energy-bound";
    out.summary["model"] = model_json(rc);
    out.summary["L"] = rc.bound_l;
    out.summary["N"] = rc.bound_n;
    out.summary["bound"] = bound;
    out.summary["kernel_tail_mass"] = tail_mass(rc.model, rc.truncation_radius);
    std::string csv = energy_bound_csv_header;
    csv += '\n';
    csv += family_name(rc.model.family);
    csv += ',' + fmt(rc.model.alpha1) + ',' + fmt(rc.model.alpha2) + ',' + fmt(rc.model.strength);
    csv += ',' + std::to_string(rc.bound_l) + ',' + std::to_string(rc.bound_n) + ',' + fmt(bound) +
           '\n';
    out.artifacts.emplace_back("energy_bound.csv", csv);
    return out;
}

ordered_json exact_result_json(const ExactResult& r, bool planar) {
    ordered_json j;
    j["log_partition"] = r.log_partition;
    j["partition_value"] = r.partition_value;
    j["energy_mean"] = r.energy_mean;
    ordered_json sites = ordered_json::array();
    for (size_t a = 0; a < r.sites.size(); ++a) {
        ordered_json row{{"site", {r.sites[a].i1, r.sites[a].i2}},
                         {"mean", r.site_means[a]}};
        if (planar) row["mean_cos"] = r.site_means_x[a];
        sites.push_back(row);
    }
    j["free_sites"] = sites;
    if (r.clock_q > 0) {
        j["q"] = r.clock_q;
        j["q_alt"] = r.clock_q_alt;
        j["discretization_shift"] = r.discretization_shift;
    }
    return j;
}

CommandResult cmd_oracle(const RunConfig& rc) {
    CommandResult out;
    out.summary["command"] = "oracle";
    out.summary["model"] = model_json(rc);
    out.summary["kind"] = rc.oracle_kind;
    if (rc.oracle_kind == "onsager") {
        if (rc.model.beta <= 0.0) throw ConfigError("config: onsager oracle needs model.beta > 0");
        out.summary["beta"] = rc.model.beta;
        out.summary["spontaneous_magnetization"] = onsager_reference(rc.model.beta);
        return out;
    }

    const SpinKind kind = rc.model.spin_kind();
    if (rc.oracle_kind == "enumerate_ising" && kind != SpinKind::scalar)
        throw ConfigError("config: enumerate_ising needs a scalar model family");
    if (rc.oracle_kind == "clock_rotator" && kind != SpinKind::planar)
        throw ConfigError("config: clock_rotator needs a planar model family");

    int32_t box_l = rc.oracle_l;
    SiteSet region(BoxRegion(0));
    if (!rc.oracle_sites.empty()) {
        int32_t w = 0;
        for (const Site s : rc.oracle_sites) w = std::max(w, sup_norm(s));
        box_l = w;
        region = SiteSet(BoxRegion(w));
        for (const Site s : rc.oracle_sites) region.insert(s);
    } else {
        region = SiteSet::all_of(BoxRegion(box_l));
    }

    SpinConfiguration config = homogeneous(BoxRegion(box_l), kind, Level::plus);
    if (!rc.oracle_frozen_even.empty()) {
        SpinConfiguration pattern =
            rc.oracle_frozen_even == "alternating"
                ? (kind == SpinKind::scalar ? alternating_ising(BoxRegion(box_l))
                                            : alternating_rotator(BoxRegion(box_l)))
                : homogeneous(BoxRegion(box_l), kind,
                              rc.oracle_frozen_even == "all_plus" ? Level::plus : Level::minus);
        SiteSet::all_of(BoxRegion(box_l)).for_each([&](Site s) {
            if (is_even_site(s) && !(s == Site{0, 0})) {
                config.set_value(s, pattern.value(s));
                config.freeze(s);
            }
        });
    }
    BoundarySpec bc = BoundarySpec::free_exterior();
    if (rc.oracle_boundary == "plus") bc = BoundarySpec::homogeneous_exterior(Level::plus);
    if (rc.oracle_boundary == "minus") bc = BoundarySpec::homogeneous_exterior(Level::minus);

    const InteractionKernel kernel = rc.build_model_kernel();
    const ExactResult r =
        rc.oracle_kind == "enumerate_ising"
            ? enumerate_ising(region, config, bc, rc.model, kernel)
            : clock_quadrature_rotator(region, rc.oracle_q, config, bc, rc.model, kernel);
    out.summary["boundary"] = rc.oracle_boundary;
    out.summary["result"] = exact_result_json(r, kind == SpinKind::planar);
    return out;
}

CommandResult cmd_decimate(const RunConfig& rc) {
    if (rc.decimate_document.is_null())
        throw ConfigError("config: decimate.configuration missing (the CLI loads decimate.input)");
    SpinConfiguration in = [&] {
        try {
            return SpinConfiguration::from_json(rc.decimate_document);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config: decimate.configuration: ") + e.what());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: decimate.configuration: ") + e.what());
        }
    }();
    const SpinConfiguration out_conf = decimate(in);
    CommandResult out;
    out.summary["command"] = "decimate";
    out.summary["input_L"] = in.window().half_width;
    out.summary["output_L"] = out_conf.window().half_width;
    out.summary["configuration"] = out_conf.to_json();
    out.artifacts.emplace_back(rc.decimate_output, out_conf.to_json().dump(2) + "\n");
    return out;
}

int64_t probe_free_spins(int32_t image_n) {
    return invisible_sites(BoxRegion(2 * image_n), true).size();
}

}  // namespace

CommandResult run_command(const std::string& command, const nlohmann::json& config) {
    const RunConfig rc = parse_run_config(command, config);
    if (command == "magnetize") return cmd_magnetize(rc);
    if (command == "probe") return cmd_probe(rc);
    if (command == "scan") return cmd_scan(rc);
    if (command == "annulus") return cmd_annulus(rc);
    if (command == "energy-bound") return cmd_energy_bound(rc);
    if (command == "oracle") return cmd_oracle(rc);
    if (command == "decimate") return cmd_decimate(rc);
    throw ConfigError("config: unknown command '" + command + "'");
}

nlohmann::ordered_json dry_run_plan(const std::string& command, const nlohmann::json& config) {
    const RunConfig rc = parse_run_config(command, config);
    ordered_json plan;
    plan["command"] = command;
    plan["valid"] = true;
    if (command != "decimate") {
        const int32_t r = rc.truncation_radius;
        const bool axial =
            rc.model.family == Family::axial_lr || rc.model.family == Family::biaxial_lr;
        plan["kernel"] = ordered_json{{"radius", r},
                                      {"entries", axial ? int64_t(2) * r
                                                        : int64_t(2 * r + 1) * (2 * r + 1)},
                                      {"tail_mass", tail_mass(rc.model, r)}};
    }
    auto window_estimate = [&](int64_t region_half) {
        const int64_t side = 2 * (region_half + rc.truncation_radius) + 1;
        const int64_t cells = side * side;
        return ordered_json{{"window_side", side},
                            {"memory_bytes", cells * (4 * 8 + 3)}};
    };
    if (command == "magnetize") {
        plan["box_half_width"] = rc.box_half_width;
        plan["sites"] = BoxRegion(rc.box_half_width).site_count();
        plan["plan"] = window_estimate(rc.box_half_width);
    } else if (command == "probe") {
        plan["image_L"] = rc.geometry_l;
        plan["image_N"] = rc.geometry_n;
        plan["original_box_half_width"] = 2 * rc.geometry_n;
        plan["free_spins"] = probe_free_spins(rc.geometry_n);
        plan["jobs"] = 2 * rc.replicas;
        plan["plan"] = window_estimate(2 * rc.geometry_n);
        if (rc.model.long_range()) {
            const InteractionKernel kernel = rc.build_model_kernel();
            const AnnulusSchedule sched =
                annulus_size(rc.model, kernel, 2 * rc.geometry_l, rc.target_c);
            plan["schedule"] = ordered_json{{"minimal_original_n", sched.outer_n},
                                            {"warning", 2 * rc.geometry_n < sched.outer_n}};
        }
    } else if (command == "scan") {
        ordered_json rows = ordered_json::array();
        const InteractionKernel kernel = rc.build_model_kernel();
        for (const int32_t l : rc.scan_l_list) {
            int64_t n = l + 1;
            if (rc.annulus_rule == AnnulusRule::fixed_ratio)
                n = std::max<int64_t>(l + 1, int64_t(std::ceil(rc.fixed_ratio * l)));
            else if (rc.model.long_range())
                n = std::max<int64_t>(l + 1,
                                      (annulus_size(rc.model, kernel, 2 * l, rc.target_c).outer_n +
                                       1) / 2);
            rows.push_back(ordered_json{{"L", l}, {"N", n}});
        }
        plan["rows"] = rows;
    } else if (command == "decimate") {
        plan["output"] = rc.decimate_output;
    }
    return plan;
}

}  // namespace decim
