#include "mlturn/run_config.hpp"

#include "mlturn/equalization.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace mlturn {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError(path, message);
}

std::string join(const std::string& path, const char* key) {
    return path.empty() ? key : path + "." + key;
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) {
            fail(join(path, key.c_str()), "unknown key");
        }
    }
}

const json& require_key(const json& obj, const std::string& path, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        fail(join(path, key), "required key is missing");
    }
    return *it;
}

double number_at(const json& obj, const std::string& path, const char* key) {
    const json& v = require_key(obj, path, key);
    if (!v.is_number()) {
        fail(join(path, key), "must be a number");
    }
    const double value = v.get<double>();
    if (!std::isfinite(value)) {
        fail(join(path, key), "must be finite");
    }
    return value;
}

double positive_at(const json& obj, const std::string& path, const char* key) {
    const double value = number_at(obj, path, key);
    if (value <= 0.0) {
        fail(join(path, key), "must be strictly positive");
    }
    return value;
}

double number_or(const json& obj, const std::string& path, const char* key, double fallback) {
    return obj.contains(key) ? number_at(obj, path, key) : fallback;
}

int int_at(const json& obj, const std::string& path, const char* key) {
    const json& v = require_key(obj, path, key);
    if (!v.is_number_integer()) {
        fail(join(path, key), "must be an integer");
    }
    return v.get<int>();
}

SymmetricMatrix2 matrix_at(const json& obj, const std::string& path, const char* key,
                           MatrixKind kind, double unit_scale) {
    const json& v = require_key(obj, path, key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(join(path, key), "must be an array [m11, m12] of two numbers");
    }
    SymmetricMatrix2 m;
    m.kind = kind;
    m.m11 = v[0].get<double>() * unit_scale;
    m.m12 = v[1].get<double>() * unit_scale;
    try {
        m.validate(key);
    } catch (const NonPositiveDefinite& e) {
        fail(join(path, key), e.what());
    }
    return m;
}

ExcitationSpec parse_excitation(const json& obj, const std::string& path) {
    ExcitationSpec ex;
    ex.emf_amplitude = number_or(obj, path, "emf_V", 2.0);

    const json& shape = require_key(obj, path, "shape");
    if (!shape.is_string()) {
        fail(join(path, "shape"), "must be \"trapezoid\", \"gaussian\" or \"samples\"");
    }
    const std::string kind = shape.get<std::string>();
    if (kind == "trapezoid") {
        check_keys(obj, path, {"shape", "rise_ps", "top_ps", "fall_ps", "emf_V"});
        TrapezoidShape t;
        t.rise = positive_at(obj, path, "rise_ps") * 1e-12;
        t.top = number_at(obj, path, "top_ps") * 1e-12;
        t.fall = positive_at(obj, path, "fall_ps") * 1e-12;
        ex.shape = t;
    } else if (kind == "gaussian") {
        check_keys(obj, path, {"shape", "fwhm_ps", "center_ps", "emf_V"});
        GaussianShape g;
        g.fwhm = positive_at(obj, path, "fwhm_ps") * 1e-12;
        g.center = number_at(obj, path, "center_ps") * 1e-12;
        ex.shape = g;
    } else if (kind == "samples") {
        check_keys(obj, path, {"shape", "t0_ps", "dt_ps", "values", "emf_V"});
        SampledShape s;
        s.grid.t0 = number_or(obj, path, "t0_ps", 0.0) * 1e-12;
        s.grid.dt = positive_at(obj, path, "dt_ps") * 1e-12;
        const json& values = require_key(obj, path, "values");
        if (!values.is_array() || values.size() < 2) {
            fail(join(path, "values"), "must be an array of at least 2 numbers");
        }
        s.grid.samples.resize(static_cast<Eigen::Index>(values.size()));
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!values[i].is_number()) {
                fail(join(path, "values"), "must contain only numbers");
            }
            s.grid.samples[static_cast<Eigen::Index>(i)] = values[i].get<double>();
        }
        ex.shape = s;
    } else {
        fail(join(path, "shape"), "unknown shape '" + kind + "'");
    }

    try {
        ex.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return ex;
}

} // namespace

double RunConfig::resolved_y0() const {
    return y0 ? *y0 : matched_admittance(modal);
}

TurnConfig RunConfig::turn_config() const {
    TurnConfig cfg;
    cfg.modal = modal;
    cfg.length = length;
    cfg.y0 = resolved_y0();
    cfg.k_ref = k_ref;
    cfg.excitation = excitation;
    return cfg;
}

Eigen::Index RunConfig::sample_count() const {
    // Tolerate t_end being an inexact multiple of dt.
    return static_cast<Eigen::Index>(std::floor(sampling.t_end / sampling.dt + 1e-9)) + 1;
}

RunConfig load_run_config(const json& j) {
    if (!j.is_object()) {
        fail("(root)", "config must be a JSON object");
    }
    check_keys(j, "", {"L_nH_per_m", "C_pF_per_m", "modal", "length_m", "y0_S", "z0_ohm", "y0",
                       "k_ref", "excitation", "sampling", "oracle"});

    RunConfig cfg;

    // Cross-section: per-unit-length matrices or a direct modal block.
    const bool has_matrices = j.contains("L_nH_per_m") || j.contains("C_pF_per_m");
    const bool has_modal = j.contains("modal");
    if (has_matrices == has_modal) {
        fail("(root)", "exactly one of the matrix pair L_nH_per_m/C_pF_per_m or the modal block "
                       "must be present");
    }
    if (has_matrices) {
        cfg.inductance = matrix_at(j, "", "L_nH_per_m", MatrixKind::Inductance, 1e-9);
        cfg.capacitance = matrix_at(j, "", "C_pF_per_m", MatrixKind::Capacitance, 1e-12);
        try {
            cfg.modal = extract_modal(*cfg.inductance, *cfg.capacitance);
        } catch (const NonPositiveDefinite& e) {
            fail("L_nH_per_m/C_pF_per_m", e.what());
        }
    } else {
        const json& m = j["modal"];
        if (!m.is_object()) {
            fail("modal", "must be an object");
        }
        check_keys(m, "modal", {"Ze_ohm", "Zo_ohm", "tau_e_ns_per_m", "tau_o_ns_per_m"});
        cfg.modal.y_even = 1.0 / positive_at(m, "modal", "Ze_ohm");
        cfg.modal.y_odd = 1.0 / positive_at(m, "modal", "Zo_ohm");
        cfg.modal.tau_even = positive_at(m, "modal", "tau_e_ns_per_m") * 1e-9;
        cfg.modal.tau_odd = positive_at(m, "modal", "tau_o_ns_per_m") * 1e-9;
        try {
            cfg.modal.validate();
        } catch (const NonPositiveDefinite& e) {
            fail("modal", e.what());
        }
    }

    cfg.length = positive_at(j, "", "length_m");

    // Terminal admittance: explicit value, impedance, or the matched rule.
    const int y0_specs = static_cast<int>(j.contains("y0_S")) +
                         static_cast<int>(j.contains("z0_ohm")) +
                         static_cast<int>(j.contains("y0"));
    if (y0_specs != 1) {
        fail("(root)", "exactly one of y0_S, z0_ohm or y0: \"matched\" must be present");
    }
    if (j.contains("y0_S")) {
        cfg.y0 = positive_at(j, "", "y0_S");
    } else if (j.contains("z0_ohm")) {
        cfg.y0 = 1.0 / positive_at(j, "", "z0_ohm");
    } else {
        const json& y0 = j["y0"];
        if (!y0.is_string() || y0.get<std::string>() != "matched") {
            fail("y0", "must be the string \"matched\" (or use y0_S / z0_ohm)");
        }
        cfg.y0 = std::nullopt;
    }

    cfg.k_ref = int_at(j, "", "k_ref");
    if (cfg.k_ref < 2) {
        fail("k_ref", "must be >= 2");
    }

    if (j.contains("excitation")) {
        const json& ex = j["excitation"];
        if (!ex.is_object()) {
            fail("excitation", "must be an object");
        }
        cfg.excitation = parse_excitation(ex, "excitation");
    } // else: documented default, 50/100/50 ps trapezoid with E = 2 V

    const json& sampling = require_key(j, "", "sampling");
    if (!sampling.is_object()) {
        fail("sampling", "must be an object");
    }
    check_keys(sampling, "sampling", {"dt_s", "t_end_s"});
    cfg.sampling.dt = positive_at(sampling, "sampling", "dt_s");
    cfg.sampling.t_end = positive_at(sampling, "sampling", "t_end_s");
    if (cfg.sampling.t_end < cfg.sampling.dt) {
        fail("sampling.t_end_s", "must be at least dt_s (need >= 2 samples)");
    }
    const double max_dt = cfg.excitation.effective_rise() / 10.0;
    if (cfg.sampling.dt > max_dt) {
        std::ostringstream msg;
        msg << "must not exceed a tenth of the excitation rise (" << max_dt << " s)";
        fail("sampling.dt_s", msg.str());
    }

    if (j.contains("oracle")) {
        const json& oracle = j["oracle"];
        if (!oracle.is_object()) {
            fail("oracle", "must be an object");
        }
        check_keys(oracle, "oracle", {"n_samples", "dt_s", "settle_margin"});
        if (oracle.contains("n_samples")) {
            cfg.oracle.n_samples = int_at(oracle, "oracle", "n_samples");
        }
        if (oracle.contains("dt_s")) {
            cfg.oracle.dt = positive_at(oracle, "oracle", "dt_s");
        }
        if (oracle.contains("settle_margin")) {
            cfg.oracle.settle_margin = number_at(oracle, "oracle", "settle_margin");
        }
    }
    try {
        cfg.oracle.resolved(cfg.excitation).validate(cfg.excitation);
    } catch (const std::invalid_argument& e) {
        fail("oracle", e.what());
    }

    // Final cross-module check so every config that loads also runs.
    try {
        cfg.turn_config().validate();
    } catch (const std::exception& e) {
        fail("(root)", e.what());
    }
    return cfg;
}

RunConfig load_run_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("(file)", "cannot open '" + path + "'");
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("(file)", "'" + path + "' is not valid JSON: " + e.what());
    }
    return load_run_config(j);
}

} // namespace mlturn
