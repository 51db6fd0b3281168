#include <complex>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mazer/datasets.hpp"
#include "mazer/io.hpp"

using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

// Effective settings are layered: built-in defaults, then command-line
// flags, then the JSON config file (config overrides flags).
struct Layered {
    json values;

    void set(const std::string& key, json v) { values[key] = std::move(v); }

    void merge_config(const std::string& path) {
        json cfg;
        try {
            cfg = json::parse(mazer::read_text_file(path));
        } catch (const json::exception& e) {
            throw mazer::ValidationError("config file " + path + " is not valid JSON: "
                                         + e.what());
        }
        if (!cfg.is_object())
            throw mazer::ValidationError("config file " + path + " must hold a JSON object");
        for (auto& [key, value] : cfg.items())
            values[key] = value;
    }

    bool has(const std::string& key) const { return values.contains(key); }

    double number(const std::string& key) const {
        if (!values[key].is_number())
            throw mazer::ValidationError("setting \"" + key + "\" must be a number");
        return values[key].get<double>();
    }

    int integer(const std::string& key) const {
        if (!values[key].is_number_integer())
            throw mazer::ValidationError("setting \"" + key + "\" must be an integer");
        return values[key].get<int>();
    }

    std::string text(const std::string& key) const {
        if (!values[key].is_string())
            throw mazer::ValidationError("setting \"" + key + "\" must be a string");
        return values[key].get<std::string>();
    }
};

mazer::ModeProfile profile_from(const Layered& s) {
    json desc;
    desc["mode"] = s.has("mode") ? s.text("mode") : "mesa";
    desc["kappa_L"] = s.has("kappa_L") ? s.number("kappa_L") : 10.0;
    if (s.has("width"))
        desc["width"] = s.number("width");
    if (s.has("lobes"))
        desc["lobes"] = s.integer("lobes");
    if (s.has("expr"))
        desc["expr"] = s.text("expr");
    return mazer::profile_from_json(desc);
}

mazer::SolverConfig solver_from(const Layered& s) {
    mazer::SolverConfig config;
    if (s.has("segments"))
        config.segments = s.integer("segments");
    if (s.has("support_epsilon"))
        config.support_epsilon = s.number("support_epsilon");
    if (s.has("unitarity_tol"))
        config.unitarity_tol = s.number("unitarity_tol");
    config.validate();
    return config;
}

mazer::Branch branch_from(const Layered& s) {
    if (!s.has("branch"))
        return mazer::Branch::Plus;
    const std::string b = s.text("branch");
    if (b == "+" || b == "plus")
        return mazer::Branch::Plus;
    if (b == "-" || b == "minus")
        return mazer::Branch::Minus;
    throw mazer::ValidationError("branch must be '+', '-', 'plus', or 'minus', got \"" + b
                                 + "\"");
}

std::optional<mazer::TrappingParam> trapping_from(const Layered& s) {
    if (!s.has("gamma"))
        return std::nullopt;
    mazer::TrappingParam p;
    const json& g = s.values["gamma"];
    if (g.is_number()) {
        const double phase = s.has("gamma_phase") ? s.number("gamma_phase") : 0.0;
        p.gamma = std::polar(g.get<double>(), phase);
    } else if (g.is_array() && g.size() == 2 && g[0].is_number() && g[1].is_number()) {
        p.gamma = mazer::Complex(g[0].get<double>(), g[1].get<double>());
    } else {
        throw mazer::ValidationError("\"gamma\" must be a number or an [re, im] pair");
    }
    p.branch = branch_from(s);
    return p;
}

std::optional<mazer::PureStateSpec> state_from(const Layered& s) {
    int sources = (s.has("state") ? 1 : 0) + (s.has("state_file") ? 1 : 0);
    if (sources > 1)
        throw mazer::ValidationError("give at most one of inline state / state file");
    if (s.has("state")) {
        json inline_state = s.values["state"];
        if (inline_state.is_string()) // --state-json passes a raw JSON string
            inline_state = json::parse(inline_state.get<std::string>(), nullptr, true);
        return mazer::state_from_json(inline_state);
    }
    if (s.has("state_file"))
        return mazer::state_from_json(json::parse(mazer::read_text_file(s.text("state_file"))));
    return std::nullopt;
}

mazer::WavePacketSpec momentum_from(const Layered& s) {
    if (s.has("packet")) {
        const json& p = s.values["packet"];
        if (!p.is_object() || !p.contains("type"))
            throw mazer::ValidationError("\"packet\" must be an object with a \"type\"");
        const std::string type = p["type"].get<std::string>();
        if (type == "delta")
            return mazer::DeltaPacket{p["k0"].get<double>()};
        if (type == "gaussian") {
            mazer::GaussianPacket g{p["k0"].get<double>(), p["sigma_k"].get<double>()};
            if (p.contains("nodes"))
                g.nodes = p["nodes"].get<int>();
            return g;
        }
        if (type == "tabulated") {
            mazer::TabulatedPacket t;
            for (const json& row : p["samples"])
                t.samples.emplace_back(row[0].get<double>(), row[1].get<double>());
            return t;
        }
        throw mazer::ValidationError("unknown packet type \"" + type + "\"");
    }
    return mazer::DeltaPacket{s.has("k") ? s.number("k") : 0.1};
}

void emit(const Layered& s, const std::string& contents) {
    if (s.has("out"))
        mazer::write_text_file(s.text("out"), contents);
    else
        std::fwrite(contents.data(), 1, contents.size(), stdout);
}

std::string format_from(const Layered& s, const std::string& fallback) {
    const std::string f = s.has("format") ? s.text("format") : fallback;
    if (f != "csv" && f != "json")
        throw mazer::ValidationError("format must be csv or json, got \"" + f + "\"");
    return f;
}

int cmd_report(const Layered& s) {
    const mazer::ModeProfile profile = profile_from(s);
    const mazer::SolverConfig solver = solver_from(s);
    const mazer::WavePacketSpec momentum = momentum_from(s);
    const double eps_tail = s.has("eps_tail") ? s.number("eps_tail") : 1e-10;

    const auto trapping = trapping_from(s);
    const auto state = state_from(s);
    if (trapping.has_value() == state.has_value())
        throw mazer::ValidationError(
            "report needs exactly one state source: --gamma, --state-file, or --state-json");

    mazer::ObservablesReport report;
    if (trapping)
        report = mazer::report_from_coords(mazer::trapping_state(*trapping, eps_tail), profile,
                                           momentum, solver, mazer::Exec::Parallel);
    else
        report = mazer::full_report(*state, profile, momentum, solver);

    if (format_from(s, "json") == "json")
        emit(s, mazer::report_to_json(report).dump(2) + "\n");
    else
        emit(s, mazer::report_per_n_csv(report));
    return 0;
}

int cmd_figure1(const Layered& s) {
    const mazer::ModeProfile profile = profile_from(s);
    const double k = s.has("k") ? s.number("k") : 0.1;
    const int points = s.has("points") ? s.integer("points") : 100;
    const double eps_tail = s.has("eps_tail") ? s.number("eps_tail") : 1e-10;
    const auto rows = mazer::figure1_dataset(profile, k, solver_from(s), eps_tail, points);
    emit(s, mazer::figure1_csv(rows));
    return 0;
}

int cmd_sweep(const Layered& s) {
    if (!s.has("axis"))
        throw mazer::ValidationError("sweep needs --axis gamma_abs|k_over_kappa|kappa_L");
    const std::string axis_name = s.text("axis");
    mazer::SweepSpec spec{.profile = profile_from(s)};
    if (axis_name == "gamma_abs")
        spec.axis = mazer::SweepAxis::GammaAbs;
    else if (axis_name == "k_over_kappa")
        spec.axis = mazer::SweepAxis::KOverKappa;
    else if (axis_name == "kappa_L")
        spec.axis = mazer::SweepAxis::KappaL;
    else
        throw mazer::ValidationError("unknown sweep axis \"" + axis_name + "\"");

    if (!s.has("min") || !s.has("max"))
        throw mazer::ValidationError("sweep needs --min and --max (or config \"range\")");
    spec.lo = s.number("min");
    spec.hi = s.number("max");
    spec.points = s.has("points") ? s.integer("points") : 50;
    spec.k = s.has("k") ? s.number("k") : 0.1;
    spec.solver = solver_from(s);
    if (s.has("eps_tail"))
        spec.epsilon_tail = s.number("eps_tail");

    spec.trapping = trapping_from(s);
    auto state = state_from(s);
    if (state)
        spec.state = std::move(*state);

    const auto rows = mazer::run_sweep(spec);
    emit(s, mazer::sweep_csv(spec.axis, rows));
    return 0;
}

int cmd_scatter(const Layered& s) {
    const mazer::ModeProfile profile = profile_from(s);
    const int n_max = s.has("nmax") ? s.integer("nmax") : 5;
    std::vector<double> ks;
    if (s.has("k_list")) {
        for (const json& v : s.values["k_list"])
            ks.push_back(v.get<double>());
    } else {
        ks.push_back(s.has("k") ? s.number("k") : 0.1);
    }
    const auto table = mazer::amplitude_table(profile, n_max, ks, solver_from(s));
    emit(s, mazer::amplitude_table_csv(table));
    return 0;
}

int cmd_coords(const Layered& s) {
    const double eps_tail = s.has("eps_tail") ? s.number("eps_tail") : 1e-10;
    const auto trapping = trapping_from(s);
    const auto state = state_from(s);
    if (trapping.has_value() == state.has_value())
        throw mazer::ValidationError(
            "coords needs exactly one state source: --gamma, --state-file, or --state-json");
    const mazer::DressedCoordinates coords =
        trapping ? mazer::trapping_state(*trapping, eps_tail)
                 : mazer::to_dressed_coordinates(*state);
    emit(s, mazer::coords_to_json(coords).dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-photon mazer simulator: dressed-channel scattering of "
                 "ultracold two-level atoms on cavity-mode potentials"};
    app.require_subcommand(1);

    std::string config_path;
    std::string mode, expr, branch, state_file, state_json, axis, format, out;
    double kappa_l = 0, k = 0, width = 0, gamma = 0, gamma_phase = 0, range_min = 0,
           range_max = 0, eps_tail = 0;
    int lobes = 0, nmax = 0, segments = 0, points = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file (overrides flags)");
        cmd->add_option("--mode", mode, "profile: mesa|sech2|gaussian|sin|expr");
        cmd->add_option("--kappa-l", kappa_l, "interaction length kappa*L");
        cmd->add_option("--width", width, "sech2/gaussian width (units of 1/kappa)");
        cmd->add_option("--lobes", lobes, "sinusoidal lobe count m");
        cmd->add_option("--expr", expr, "custom profile expression u(z)");
        cmd->add_option("--k", k, "wave number k/kappa");
        cmd->add_option("--gamma", gamma, "trapping |gamma| < 1");
        cmd->add_option("--gamma-phase", gamma_phase, "arg(gamma) in radians");
        cmd->add_option("--branch", branch, "trapping branch: +|-");
        cmd->add_option("--state-file", state_file, "JSON state file");
        cmd->add_option("--state-json", state_json, "inline JSON state");
        cmd->add_option("--nmax", nmax, "photon cutoff for amplitude tables");
        cmd->add_option("--segments", segments, "transfer-matrix slices");
        cmd->add_option("--eps-tail", eps_tail, "trapping truncation tail bound");
        cmd->add_option("--axis", axis, "sweep axis: gamma_abs|k_over_kappa|kappa_L");
        cmd->add_option("--min", range_min, "sweep range start");
        cmd->add_option("--max", range_max, "sweep range end");
        cmd->add_option("--points", points, "number of grid points");
        cmd->add_option("--out", out, "output path (stdout if omitted)");
        cmd->add_option("--format", format, "csv|json");
        return cmd;
    };

    CLI::App* report = add_common(app.add_subcommand("report", "full observables report"));
    CLI::App* figure1 = add_common(app.add_subcommand(
        "figure1", "trapping-state reflection curves R+(|gamma|), R-(|gamma|)"));
    CLI::App* sweep = add_common(app.add_subcommand("sweep", "observables along one axis"));
    CLI::App* scatter =
        add_common(app.add_subcommand("scatter", "raw amplitude table for all channels"));
    CLI::App* coords =
        add_common(app.add_subcommand("coords", "dressed-state coordinates of a state"));

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* active = app.get_subcommands().front();
        Layered s;
        auto capture = [&](const char* flag, const char* key, json value) {
            if (active->count(flag) > 0)
                s.set(key, std::move(value));
        };
        capture("--mode", "mode", mode);
        capture("--kappa-l", "kappa_L", kappa_l);
        capture("--width", "width", width);
        capture("--lobes", "lobes", lobes);
        capture("--expr", "expr", expr);
        capture("--k", "k", k);
        capture("--gamma", "gamma", gamma);
        capture("--gamma-phase", "gamma_phase", gamma_phase);
        capture("--branch", "branch", branch);
        capture("--state-file", "state_file", state_file);
        capture("--state-json", "state", state_json);
        capture("--nmax", "nmax", nmax);
        capture("--segments", "segments", segments);
        capture("--eps-tail", "eps_tail", eps_tail);
        capture("--axis", "axis", axis);
        capture("--min", "min", range_min);
        capture("--max", "max", range_max);
        capture("--points", "points", points);
        capture("--out", "out", out);
        capture("--format", "format", format);
        if (active->count("--config") > 0)
            s.merge_config(config_path);
        if (s.has("range")) { // config-file spelling of --min/--max
            const json& r = s.values["range"];
            if (!r.is_array() || r.size() != 2)
                throw mazer::ValidationError("\"range\" must be [low, high]");
            s.set("min", r[0]);
            s.set("max", r[1]);
        }

        if (active == report)
            return cmd_report(s);
        if (active == figure1)
            return cmd_figure1(s);
        if (active == sweep)
            return cmd_sweep(s);
        if (active == scatter)
            return cmd_scatter(s);
        if (active == coords)
            return cmd_coords(s);
        return kExitConfig;
    } catch (const mazer::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const mazer::IoError& e) {
        std::cerr << "io failure: " << e.what() << "\n";
        return kExitIo;
    } catch (const mazer::Error& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitConfig;
    }
}
