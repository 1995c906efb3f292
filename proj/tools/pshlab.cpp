// Command-line front end: certify / envelope / abp / extend / catalog /
// demo-counterexample. JSON in, JSON (+ optional CSV) out.
// Exit codes: 0 Pass/Certified, 1 Fail/not-certified, 2 precondition
// violated or inconclusive, 3 configuration error.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pshlab/catalog.hpp"
#include "pshlab/pipeline.hpp"
#include "pshlab/report.hpp"

using namespace pshlab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitConfig = 3;

struct ConfigError {
    std::string message;
};

struct RunConfig {
    std::string command;
    std::string target;
    int n = 2;
    std::vector<double> deltas;  // per-command default applied later
    int points_per_axis = 17;
    std::optional<SingularSet> set_override;
    PipelineParams params;
    std::string out_json;
    std::string out_csv;
    int verbosity = 1;
};

void check_keys(const Json& obj, const std::vector<std::string>& allowed,
                const std::string& where) {
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw ConfigError{"unknown key \"" + item.key() + "\" in " + where};
        }
    }
}

SingularSet parse_set(const Json& j, int n) {
    if (!j.is_object() || !j.contains("type")) {
        throw ConfigError{"set: expected an object with a \"type\" field"};
    }
    const std::string type = j.at("type").get<std::string>();
    if (type == "empty") {
        check_keys(j, {"type"}, "set");
        return SingularSet::empty();
    }
    if (type == "hyperplane") {
        check_keys(j, {"type", "axis", "value"}, "set");
        return SingularSet::hyperplane(j.value("axis", 0), j.value("value", 0.0));
    }
    if (type == "sphere") {
        check_keys(j, {"type", "radius", "center"}, "set");
        ComplexPoint center = ComplexPoint::origin(n);
        if (j.contains("center")) {
            const auto c = j.at("center").get<std::vector<double>>();
            if (static_cast<int>(c.size()) != 2 * n) {
                throw ConfigError{"set.center: expected 2*n coordinates"};
            }
            center = ComplexPoint(c);
        }
        return SingularSet::sphere(center, j.value("radius", 1.0));
    }
    if (type == "cantor") {
        check_keys(j, {"type", "depth"}, "set");
        return SingularSet::cantor_product(j.value("depth", 3), n);
    }
    throw ConfigError{"set.type: unknown set type \"" + type + "\""};
}

void parse_params(const Json& j, PipelineParams& p) {
    check_keys(j,
               {"deltas", "points_per_axis", "radii_cells", "cert_radii_cells",
                "direction_count", "quadrature_points", "margin_cells", "cert_margin_cells",
                "cert_tol", "envelope_tol_scale", "chain_tol", "psd_scale", "final_tol",
                "collar_tol", "max_iter", "seed"},
               "params");
    if (j.contains("deltas")) p.deltas = j.at("deltas").get<std::vector<double>>();
    if (j.contains("points_per_axis")) p.points_per_axis = j.at("points_per_axis").get<int>();
    if (j.contains("radii_cells")) p.radii_cells = j.at("radii_cells").get<std::vector<double>>();
    if (j.contains("cert_radii_cells")) {
        p.cert_radii_cells = j.at("cert_radii_cells").get<std::vector<double>>();
    }
    if (j.contains("direction_count")) p.direction_count = j.at("direction_count").get<int>();
    if (j.contains("quadrature_points")) {
        p.quadrature_points = j.at("quadrature_points").get<int>();
    }
    if (j.contains("margin_cells")) p.margin_cells = j.at("margin_cells").get<double>();
    if (j.contains("cert_margin_cells")) {
        p.cert_margin_cells = j.at("cert_margin_cells").get<double>();
    }
    if (j.contains("cert_tol")) p.cert_tol = j.at("cert_tol").get<double>();
    if (j.contains("envelope_tol_scale")) {
        p.envelope_tol_scale = j.at("envelope_tol_scale").get<double>();
    }
    if (j.contains("chain_tol")) p.chain_tol = j.at("chain_tol").get<double>();
    if (j.contains("psd_scale")) p.psd_scale = j.at("psd_scale").get<double>();
    if (j.contains("final_tol")) p.final_tol = j.at("final_tol").get<double>();
    if (j.contains("collar_tol")) p.collar_tol = j.at("collar_tol").get<double>();
    if (j.contains("max_iter")) p.max_iter = j.at("max_iter").get<long>();
    if (j.contains("seed")) p.seed = j.at("seed").get<unsigned>();
}

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError{"config: cannot open " + path};
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError{std::string("config: malformed JSON: ") + e.what()};
    }
    check_keys(j, {"command", "target", "grid", "set", "params", "output"}, "config");
    if (j.contains("command")) cfg.command = j.at("command").get<std::string>();
    if (j.contains("target")) cfg.target = j.at("target").get<std::string>();
    if (j.contains("grid")) {
        const Json& g = j.at("grid");
        check_keys(g, {"n", "delta", "points_per_axis"}, "grid");
        if (g.contains("n")) cfg.n = g.at("n").get<int>();
        if (g.contains("delta")) {
            if (g.at("delta").is_array()) {
                cfg.deltas = g.at("delta").get<std::vector<double>>();
            } else {
                cfg.deltas = {g.at("delta").get<double>()};
            }
        }
        if (g.contains("points_per_axis")) {
            cfg.points_per_axis = g.at("points_per_axis").get<int>();
        }
    }
    if (j.contains("params")) parse_params(j.at("params"), cfg.params);
    if (j.contains("set")) cfg.set_override = parse_set(j.at("set"), cfg.n);
    if (j.contains("output")) {
        const Json& o = j.at("output");
        check_keys(o, {"json", "csv", "verbosity"}, "output");
        if (o.contains("json")) cfg.out_json = o.at("json").get<std::string>();
        if (o.contains("csv")) cfg.out_csv = o.at("csv").get<std::string>();
        if (o.contains("verbosity")) cfg.verbosity = o.at("verbosity").get<int>();
    }
}

void validate(const RunConfig& cfg) {
    const std::vector<std::string> commands = {"certify",  "envelope", "abp",
                                               "extend",   "catalog",  "demo-counterexample"};
    if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end()) {
        throw ConfigError{"command: expected one of certify/envelope/abp/extend/catalog/"
                          "demo-counterexample"};
    }
    if (cfg.n < 1) throw ConfigError{"grid.n: must be >= 1"};
    if (cfg.points_per_axis < 5 || cfg.points_per_axis % 2 == 0) {
        throw ConfigError{"grid.points_per_axis: must be odd and >= 5"};
    }
    for (const double d : cfg.deltas) {
        if (!(d > 0.0)) throw ConfigError{"grid.delta: values must be > 0"};
    }
}

void emit(const RunConfig& cfg, Json report, const std::string& csv,
          std::chrono::steady_clock::time_point t0) {
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    report["timing_seconds"] = elapsed.count();
    const std::string text = report.dump(2);
    if (!cfg.out_json.empty()) {
        std::ofstream out(cfg.out_json);
        out << text << "\n";
    }
    if (!cfg.out_csv.empty() && !csv.empty()) {
        std::ofstream out(cfg.out_csv);
        out << csv;
    }
    if (cfg.verbosity > 0 || cfg.out_json.empty()) std::cout << text << "\n";
}

Json echo_inputs(const RunConfig& cfg) {
    Json j;
    j["command"] = cfg.command;
    if (!cfg.target.empty()) j["target"] = cfg.target;
    j["n"] = cfg.n;
    if (!cfg.deltas.empty()) j["deltas"] = cfg.deltas;
    j["points_per_axis"] = cfg.points_per_axis;
    j["seed"] = cfg.params.seed;
    return j;
}

int exit_code_for(PipelineVerdict v) {
    switch (v) {
        case PipelineVerdict::Certified: return kExitPass;
        case PipelineVerdict::PreconditionViolated: return kExitInconclusive;
        case PipelineVerdict::Inconclusive: return kExitInconclusive;
    }
    return kExitFail;
}

const Scenario& find_scenario_or_throw(const std::vector<Scenario>& scenarios,
                                       const std::string& target) {
    const Scenario* s = find_scenario(scenarios, target.empty() ? "trivial" : target);
    if (s == nullptr) throw ConfigError{"target: no scenario named \"" + target + "\""};
    return *s;
}

int cmd_certify(const RunConfig& cfg, std::chrono::steady_clock::time_point t0) {
    const auto entries = catalog_entries(cfg.n);
    const CatalogEntry* e = find_entry(entries, cfg.target);
    if (e == nullptr) throw ConfigError{"target: no catalog entry named \"" + cfg.target + "\""};
    CatalogEntry entry = *e;
    if (!cfg.deltas.empty()) entry.grid_delta = cfg.deltas.front();
    const EntryVerdicts v = certify_entry(entry, cfg.points_per_axis, cfg.params.seed);
    Json rep;
    rep["inputs"] = echo_inputs(cfg);
    rep["expected"] = {{"subharmonic", to_string(entry.expected_subharmonic)},
                       {"psh", to_string(entry.expected_psh)}};
    rep["verdicts"] = to_json(v);
    emit(cfg, rep, "", t0);
    const std::vector<Status> statuses = [&] {
        std::vector<Status> s{v.subharmonic.status, v.psh.status};
        if (v.psh_off) s.push_back(v.psh_off->status);
        return s;
    }();
    for (const Status s : statuses) {
        if (s == Status::Inconclusive) return kExitInconclusive;
    }
    for (const Status s : statuses) {
        if (s == Status::Fail) return kExitFail;
    }
    return kExitPass;
}

int cmd_envelope(const RunConfig& cfg, std::chrono::steady_clock::time_point t0) {
    Scenario s = find_scenario_or_throw(scenario_entries(cfg.n), cfg.target);
    if (cfg.set_override) s.E = *cfg.set_override;
    const double delta = cfg.deltas.empty() ? 0.2 : cfg.deltas.front();
    auto d = std::make_shared<const GridDomain>(cfg.n, s.z0, delta, cfg.points_per_axis);
    const ScalarField v = build_v_delta(s, delta, d);
    const Obstacle ob = build_obstacle(v);
    const double tol = cfg.params.envelope_tol_scale * delta * delta * delta;
    const long max_iter = cfg.params.max_iter > 0
                              ? cfg.params.max_iter
                              : 50L * cfg.points_per_axis * cfg.points_per_axis;
    Json rep;
    rep["inputs"] = echo_inputs(cfg);
    int code = kExitPass;
    try {
        const EnvelopeSolution sol =
            convex_envelope_iterative(ob, default_stencil(d->dim()), tol, max_iter);
        const ContactSet contact = contact_set(sol, ob, default_contact_tol(ob, tol));
        rep["envelope"] = {{"iterations", sol.iterations},
                           {"final_residual", sol.final_residual},
                           {"converged", sol.converged},
                           {"tol", tol}};
        rep["contact"] = {{"count", contact.nodes.size()},
                          {"measure", contact.measure},
                          {"tol_used", contact.tol_used}};
    } catch (const std::runtime_error& e) {
        rep["error"] = e.what();
        code = kExitInconclusive;
    }
    emit(cfg, rep, "", t0);
    return code;
}

int cmd_abp(const RunConfig& cfg, std::chrono::steady_clock::time_point t0) {
    Scenario s = find_scenario_or_throw(scenario_entries(cfg.n), cfg.target);
    if (cfg.set_override) s.E = *cfg.set_override;
    const std::vector<double> deltas =
        cfg.deltas.empty() ? std::vector<double>{0.2, 0.1, 0.05} : cfg.deltas;
    ExtensionReport holder;  // carrier for the CSV emitter
    bool all_ok = true;
    for (const double delta : deltas) {
        auto d = std::make_shared<const GridDomain>(cfg.n, s.z0, delta, cfg.points_per_axis);
        const ScalarField v = build_v_delta(s, delta, d);
        const Obstacle ob = build_obstacle(v);
        const double tol = cfg.params.envelope_tol_scale * delta * delta * delta;
        const long max_iter = cfg.params.max_iter > 0
                                  ? cfg.params.max_iter
                                  : 50L * cfg.points_per_axis * cfg.points_per_axis;
        const EnvelopeSolution sol =
            convex_envelope_iterative(ob, default_stencil(d->dim()), tol, max_iter);
        const ContactSet contact = contact_set(sol, ob, default_contact_tol(ob, tol));
        const ScalarField f = poisson_rhs(sample(s.phi, d), delta);
        DeltaRecord rec;
        rec.delta = delta;
        rec.h = d->h();
        rec.abp = abp_quantities(v, contact, f, delta);
        holder.records.push_back(rec);
        if (!rec.abp.lower_bound_ok || !rec.abp.implied_C_defined) all_ok = false;
    }
    Json rep;
    rep["inputs"] = echo_inputs(cfg);
    Json arr = Json::array();
    for (const DeltaRecord& r : holder.records) arr.push_back(to_json(r.abp));
    rep["abp"] = arr;
    if (all_ok) {
        std::vector<AbpReport> reports;
        for (const DeltaRecord& r : holder.records) reports.push_back(r.abp);
        rep["estimated_C"] = estimate_constant(reports);
    }
    emit(cfg, rep, abp_reports_csv(holder), t0);
    return all_ok ? kExitPass : kExitFail;
}

int cmd_extend(const RunConfig& cfg, std::chrono::steady_clock::time_point t0) {
    Scenario s = find_scenario_or_throw(scenario_entries(cfg.n), cfg.target);
    if (cfg.set_override) s.E = *cfg.set_override;
    PipelineParams params = cfg.params;
    if (!cfg.deltas.empty()) params.deltas = cfg.deltas;
    params.points_per_axis = cfg.points_per_axis;
    const ExtensionReport rep = run_extension(s, params);
    Json j;
    j["inputs"] = echo_inputs(cfg);
    j["report"] = to_json(rep);
    emit(cfg, j, chain_records_csv(rep), t0);
    return exit_code_for(rep.verdict);
}

int cmd_catalog(const RunConfig& cfg, std::chrono::steady_clock::time_point t0) {
    Json j;
    j["inputs"] = echo_inputs(cfg);
    Json entries = Json::array();
    for (const CatalogEntry& e : catalog_entries(cfg.n)) {
        Json je;
        je["name"] = e.name;
        je["n"] = e.n;
        je["grid_delta"] = e.grid_delta;
        je["expected_subharmonic"] = to_string(e.expected_subharmonic);
        je["expected_psh"] = to_string(e.expected_psh);
        je["has_off_set"] = e.psh_off_set.has_value();
        je["notes"] = e.notes;
        entries.push_back(je);
    }
    j["entries"] = entries;
    Json scenarios = Json::array();
    for (const Scenario& s : scenario_entries(cfg.n)) {
        Json js;
        js["name"] = s.name;
        js["n"] = s.n;
        js["delta0"] = s.delta0;
        js["notes"] = s.notes;
        scenarios.push_back(js);
    }
    j["scenarios"] = scenarios;
    emit(cfg, j, "", t0);
    return kExitPass;
}

int cmd_demo(const RunConfig& cfg, std::chrono::steady_clock::time_point t0) {
    const CounterexampleDemoReport demo =
        counterexample_demo(cfg.n, cfg.deltas.empty() ? 0.75 : cfg.deltas.front(),
                            cfg.points_per_axis);
    Json j;
    j["inputs"] = echo_inputs(cfg);
    j["subharmonic"] = to_json(demo.subharmonic);
    j["psh_off_sphere"] = to_json(demo.psh_off);
    j["pipeline"] = to_json(demo.pipeline);
    j["witness_distance_to_sphere"] = demo.witness_distance_to_sphere;
    const bool as_expected = demo.subharmonic.status == Status::Fail &&
                             demo.psh_off.status == Status::Pass &&
                             demo.pipeline.verdict == PipelineVerdict::PreconditionViolated;
    j["as_expected"] = as_expected;
    emit(cfg, j, "", t0);
    return as_expected ? kExitInconclusive : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    const auto t0 = std::chrono::steady_clock::now();
    CLI::App app{"numerical laboratory for psh extension across small sets"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::vector<double> flag_deltas;
    int flag_n = 0, flag_ppa = 0;
    long flag_seed = -1;

    const std::vector<std::string> commands = {"certify",  "envelope", "abp",
                                               "extend",   "catalog",  "demo-counterexample"};
    for (const std::string& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON configuration file");
        sub->add_option("--target", cfg.target, "catalog entry or scenario name");
        sub->add_option("--n", flag_n, "complex dimension");
        sub->add_option("--delta", flag_deltas, "delta value(s)");
        sub->add_option("--ppa", flag_ppa, "grid points per axis (odd, >= 5)");
        sub->add_option("--out-json", cfg.out_json, "JSON report path");
        sub->add_option("--out-csv", cfg.out_csv, "CSV table path");
        sub->add_option("--seed", flag_seed, "direction-sample seed");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        if (!config_path.empty()) {
            const std::string flag_target = cfg.target;  // flags beat the file
            const std::string cli_command = cfg.command;
            load_config_file(config_path, cfg);
            if (!flag_target.empty()) cfg.target = flag_target;
            if (cfg.command != cli_command && !cfg.command.empty()) {
                // A config naming a different command than the subcommand is a
                // contradiction worth failing loudly on.
                if (cfg.command != cli_command) {
                    throw ConfigError{"command: config says \"" + cfg.command +
                                      "\" but the subcommand is \"" + cli_command + "\""};
                }
            }
            cfg.command = cli_command;
        }
        if (flag_n > 0) cfg.n = flag_n;
        if (!flag_deltas.empty()) cfg.deltas = flag_deltas;
        if (flag_ppa > 0) cfg.points_per_axis = flag_ppa;
        if (flag_seed >= 0) cfg.params.seed = static_cast<unsigned>(flag_seed);
        validate(cfg);

        if (cfg.command == "certify") return cmd_certify(cfg, t0);
        if (cfg.command == "envelope") return cmd_envelope(cfg, t0);
        if (cfg.command == "abp") return cmd_abp(cfg, t0);
        if (cfg.command == "extend") return cmd_extend(cfg, t0);
        if (cfg.command == "catalog") return cmd_catalog(cfg, t0);
        if (cfg.command == "demo-counterexample") return cmd_demo(cfg, t0);
        throw ConfigError{"command: unhandled command"};
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.message << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
