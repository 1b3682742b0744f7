#include "mlturn/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlturn/equalization.hpp"
#include "mlturn/errors.hpp"
#include "mlturn/oracle.hpp"
#include "mlturn/run_config.hpp"
#include "mlturn/svg_plot.hpp"
#include "mlturn/turn.hpp"
#include "mlturn/waveform_io.hpp"

namespace mlturn {

namespace {

using nlohmann::json;

void warn_mode_ordering(const RunConfig& cfg, std::ostream& err) {
    if (const auto warning = cfg.modal.mode_ordering_warning()) {
        err << "warning: " << *warning << '\n';
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw Error("failed while writing '" + path + "'");
    }
}

int cmd_extract(const std::string& config_path, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
    const RunConfig cfg = load_run_config_file(config_path);
    warn_mode_ordering(cfg, err);
    const SymmetricMatrix2 z = characteristic_impedance_matrix(cfg.modal);

    json report;
    report["Ze_ohm"] = cfg.modal.z_even();
    report["Zo_ohm"] = cfg.modal.z_odd();
    report["tau_e_ns_per_m"] = cfg.modal.tau_even * 1e9;
    report["tau_o_ns_per_m"] = cfg.modal.tau_odd * 1e9;
    report["Z11_ohm"] = z.m11;
    report["Z12_ohm"] = z.m12;
    report["k"] = coupling_coefficient(cfg.modal);
    report["y0_matched_S"] = matched_admittance(cfg.modal);

    const std::string text = report.dump(2) + "\n";
    out << text;
    if (!out_path.empty()) {
        write_text_file(out_path, text);
    }
    return 0;
}

std::vector<int> parse_nodes_flag(const std::string& nodes) {
    std::vector<int> selected;
    std::stringstream ss(nodes);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "v1") {
            selected.push_back(0);
        } else if (item == "v2") {
            selected.push_back(1);
        } else if (item == "v3") {
            selected.push_back(2);
        } else {
            throw Error("--nodes must be a comma-separated subset of v1,v2,v3, got '" + item + "'");
        }
    }
    std::sort(selected.begin(), selected.end());
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
    if (selected.empty()) {
        throw Error("--nodes selected no output columns");
    }
    return selected;
}

WaveformTable sampled_node_table(const RunConfig& cfg, const std::vector<int>& nodes, double dt,
                                 Eigen::Index n) {
    const NodeResponses responses = turn_responses(cfg.turn_config());
    const PulseTrain* trains[3] = {&responses.v1, &responses.v2, &responses.v3};
    const char* names[3] = {"V1_V", "V2_V", "V3_V"};

    WaveformTable table;
    table.time.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        table.time[j] = dt * static_cast<double>(j);
    }
    for (int node : nodes) {
        table.names.emplace_back(names[node]);
        table.columns.push_back(sample_train(*trains[node], cfg.excitation, 0.0, dt, n).samples);
    }
    return table;
}

int cmd_respond(const std::string& config_path, const std::string& out_path,
                const std::string& nodes_flag, std::ostream& err) {
    const RunConfig cfg = load_run_config_file(config_path);
    warn_mode_ordering(cfg, err);
    const std::vector<int> nodes = parse_nodes_flag(nodes_flag);
    const WaveformTable table = sampled_node_table(cfg, nodes, cfg.sampling.dt, cfg.sample_count());

    std::ostringstream csv;
    write_csv(csv, table);
    write_text_file(out_path, csv.str());
    return 0;
}

int cmd_equalize(const std::string& config_path, const std::string& out_path,
                 const std::vector<double>& design_z_even, std::ostream& out, std::ostream& err) {
    const RunConfig cfg = load_run_config_file(config_path);
    warn_mode_ordering(cfg, err);
    const EqualizationReport report = make_equalization_report(
        cfg.modal, cfg.resolved_y0(), cfg.length, cfg.excitation.total_duration());

    json doc;
    doc["k"] = report.k;
    doc["y0_matched_S"] = report.y0_matched;
    doc["z0_matched_ohm"] = 1.0 / report.y0_matched;
    doc["y0_used_S"] = report.y0_used;
    doc["v_c"] = report.amplitudes.v_c;
    doc["v_o"] = report.amplitudes.v_o;
    doc["v_e"] = report.amplitudes.v_e;
    doc["eq9_residual"] = report.eq9_residual;
    doc["eq9_applicable"] = report.eq9_applicable;
    doc["separation_ok"] = report.separation_ok;
    if (!design_z_even.empty()) {
        const EqualizedDesign d = design_equalized(design_z_even.front());
        doc["design"] = {{"z_even_ohm", d.z_even},
                         {"z_odd_ohm", d.z_odd},
                         {"y0_S", d.y0},
                         {"predicted_amplitude", d.predicted_amplitude}};
    }

    const std::string text = doc.dump(2) + "\n";
    out << text;
    if (!out_path.empty()) {
        write_text_file(out_path, text);
    }
    return 0;
}

int cmd_verify(const std::string& config_path, double tolerance, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
    const RunConfig cfg = load_run_config_file(config_path);
    warn_mode_ordering(cfg, err);
    const TurnConfig turn = cfg.turn_config();
    const OracleConfig ocfg = cfg.oracle.resolved(cfg.excitation);
    const OracleWaveforms oracle = turn_oracle(turn, ocfg);

    const NodeResponses analytic = turn_responses(turn);
    const PulseTrain* trains[3] = {&analytic.v1, &analytic.v2, &analytic.v3};
    const Waveform* oracle_w[3] = {&oracle.w1, &oracle.w2, &oracle.w3};
    const char* names[3] = {"v1", "v2", "v3"};
    const double peak = cfg.excitation.vin_peak();

    json deviations;
    double worst = 0.0;
    for (int node = 0; node < 3; ++node) {
        const Waveform sampled =
            sample_train(*trains[node], cfg.excitation, 0.0, ocfg.dt, ocfg.n_samples);
        const double dev =
            (oracle_w[node]->samples - sampled.samples).cwiseAbs().maxCoeff() / peak;
        deviations[names[node]] = dev;
        worst = std::max(worst, dev);
    }

    const bool pass = worst <= tolerance;
    json doc;
    doc["tolerance"] = tolerance;
    doc["n_samples"] = static_cast<long long>(ocfg.n_samples);
    doc["dt_s"] = ocfg.dt;
    doc["deviation_rel_vin_peak"] = deviations;
    doc["max_deviation"] = worst;
    doc["pass"] = pass;

    const std::string text = doc.dump(2) + "\n";
    out << text;
    if (!out_path.empty()) {
        write_text_file(out_path, text);
    }
    return pass ? 0 : 2;
}

int cmd_plot(const std::string& csv_path, const std::string& out_path, const std::string& title,
             std::ostream&) {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + csv_path + "'");
    }
    const WaveformTable table = read_csv(in);

    PlotOptions options;
    options.title = title;
    std::ostringstream svg;
    write_svg(svg, table, options);
    write_text_file(out_path, svg.str());
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Meander-line turn transient response tool"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string nodes_flag = "v1,v2,v3";
    std::string csv_path;
    std::string title;
    double tolerance = 0.01;
    std::vector<double> design_z_even;

    CLI::App* extract = app.add_subcommand("extract", "Print modal parameters of the cross-section");
    extract->add_option("--config", config_path, "JSON run configuration")->required();
    extract->add_option("--out", out_path, "also write the JSON report to this file");

    CLI::App* respond = app.add_subcommand("respond", "Write the analytic node responses as CSV");
    respond->add_option("--config", config_path, "JSON run configuration")->required();
    respond->add_option("--out", out_path, "output CSV path")->required();
    respond->add_option("--nodes", nodes_flag, "comma-separated subset of v1,v2,v3");

    CLI::App* equalize = app.add_subcommand("equalize", "Print the equalization report");
    equalize->add_option("--config", config_path, "JSON run configuration")->required();
    equalize->add_option("--out", out_path, "also write the JSON report to this file");
    equalize->add_option("--design", design_z_even,
                         "design an equalized cross-section from this even-mode impedance (ohm)")
        ->expected(1);

    CLI::App* verify = app.add_subcommand("verify", "Check the analytic model against the oracle");
    verify->add_option("--config", config_path, "JSON run configuration")->required();
    verify->add_option("--tolerance", tolerance, "max deviation relative to the V_in peak");
    verify->add_option("--out", out_path, "also write the JSON report to this file");

    CLI::App* plot = app.add_subcommand("plot", "Render a respond CSV as an SVG chart");
    plot->add_option("csv", csv_path, "input CSV (respond format)")->required();
    plot->add_option("--out", out_path, "output SVG path")->required();
    plot->add_option("--title", title, "chart title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (extract->parsed()) {
            return cmd_extract(config_path, out_path, out, err);
        }
        if (respond->parsed()) {
            return cmd_respond(config_path, out_path, nodes_flag, err);
        }
        if (equalize->parsed()) {
            return cmd_equalize(config_path, out_path, design_z_even, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(config_path, tolerance, out_path, out, err);
        }
        if (plot->parsed()) {
            return cmd_plot(csv_path, out_path, title, out);
        }
        err << "error: no command selected\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace mlturn
