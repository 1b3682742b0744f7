#include <doctest.h>

#include <string>

#include <json.hpp>

#include "mlturn/run_config.hpp"

#include "test_support.hpp"

using namespace mlturn;
using namespace mlturn::testing;
using nlohmann::json;

namespace {

json base_config() {
    return json{
        {"L_nH_per_m", {390.34, 309.03}},
        {"C_pF_per_m", {232.06, -138.12}},
        {"length_m", 0.05},
        {"y0", "matched"},
        {"k_ref", 20},
        {"excitation",
         {{"shape", "trapezoid"}, {"rise_ps", 50.0}, {"top_ps", 100.0}, {"fall_ps", 50.0},
          {"emf_V", 2.0}}},
        {"sampling", {{"dt_s", 2.5e-12}, {"t_end_s", 1.5e-9}}},
    };
}

/// Loads an expected-bad config and returns the ConfigError field path.
std::string fails_at(const json& j) {
    try {
        (void)load_run_config(j);
    } catch (const ConfigError& e) {
        return e.field();
    }
    FAIL("expected the config to be rejected");
    return {};
}

} // namespace

TEST_CASE("matrix config resolves the reference cross-section") {
    const RunConfig cfg = load_run_config(base_config());

    REQUIRE(cfg.inductance.has_value());
    REQUIRE(cfg.capacitance.has_value());
    CHECK(cfg.inductance->m11 == doctest::Approx(390.34e-9).epsilon(1e-15));
    CHECK(cfg.capacitance->m12 == doctest::Approx(-138.12e-12).epsilon(1e-15));

    CHECK(rel_diff(cfg.modal.z_even(), 86.283592995819642) <= 1e-12);
    CHECK(rel_diff(cfg.modal.z_odd(), 14.820590408233573) <= 1e-12);
    CHECK(rel_diff(cfg.modal.tau_even, 8.1054807260272971e-9) <= 1e-12);
    CHECK(rel_diff(cfg.modal.tau_odd, 5.4862861573199041e-9) <= 1e-12);

    // "matched" resolves to sqrt(Ye*Yo) at turn-config time.
    CHECK(!cfg.y0.has_value());
    CHECK(rel_diff(cfg.resolved_y0(), 0.027964247466924281) <= 1e-12);
    CHECK(cfg.turn_config().y0 == cfg.resolved_y0());

    CHECK(cfg.k_ref == 20);
    CHECK(cfg.length == 0.05);
    CHECK(cfg.sample_count() == 601);
    CHECK(std::holds_alternative<TrapezoidShape>(cfg.excitation.shape));
}

TEST_CASE("modal block config") {
    json j = base_config();
    j.erase("L_nH_per_m");
    j.erase("C_pF_per_m");
    j["modal"] = {{"Ze_ohm", 86.282},
                  {"Zo_ohm", 14.8211},
                  {"tau_e_ns_per_m", 8.1054807260272971},
                  {"tau_o_ns_per_m", 5.4862861573199041}};

    const RunConfig cfg = load_run_config(j);
    CHECK(!cfg.inductance.has_value());
    CHECK(rel_diff(cfg.modal.y_even, 1.0 / 86.282) <= 1e-15);
    CHECK(rel_diff(cfg.modal.y_odd, 1.0 / 14.8211) <= 1e-15);
    CHECK(rel_diff(cfg.resolved_y0(), 0.027964024859089342) <= 1e-12);
}

TEST_CASE("terminal admittance forms") {
    SUBCASE("explicit admittance") {
        json j = base_config();
        j.erase("y0");
        j["y0_S"] = 0.02;
        const RunConfig cfg = load_run_config(j);
        REQUIRE(cfg.y0.has_value());
        CHECK(cfg.resolved_y0() == 0.02);
    }
    SUBCASE("explicit impedance") {
        json j = base_config();
        j.erase("y0");
        j["z0_ohm"] = 50.0;
        const RunConfig cfg = load_run_config(j);
        CHECK(cfg.resolved_y0() == doctest::Approx(0.02).epsilon(1e-15));
    }
    SUBCASE("both forms at once are rejected") {
        json j = base_config();
        j["y0_S"] = 0.02; // on top of y0: "matched"
        CHECK(fails_at(j) == "(root)");
    }
    SUBCASE("neither form is rejected") {
        json j = base_config();
        j.erase("y0");
        CHECK(fails_at(j) == "(root)");
    }
    SUBCASE("y0 must be the literal string") {
        json j = base_config();
        j["y0"] = "automatic";
        CHECK(fails_at(j) == "y0");
    }
}

TEST_CASE("cross-section source validation") {
    SUBCASE("matrices and modal block together are rejected") {
        json j = base_config();
        j["modal"] = {{"Ze_ohm", 86.282},
                      {"Zo_ohm", 14.8211},
                      {"tau_e_ns_per_m", 8.1},
                      {"tau_o_ns_per_m", 5.5}};
        CHECK(fails_at(j) == "(root)");
    }
    SUBCASE("non-positive-definite capacitance names the matrix key") {
        json j = base_config();
        j["C_pF_per_m"] = {100.0, -120.0};
        const std::string field = fails_at(j);
        CHECK(field.find("C_pF_per_m") != std::string::npos);
    }
    SUBCASE("matrix with wrong arity") {
        json j = base_config();
        j["L_nH_per_m"] = {390.34};
        CHECK(fails_at(j) == "L_nH_per_m");
    }
    SUBCASE("missing modal key") {
        json j = base_config();
        j.erase("L_nH_per_m");
        j.erase("C_pF_per_m");
        j["modal"] = {{"Ze_ohm", 86.282}, {"Zo_ohm", 14.8211}, {"tau_e_ns_per_m", 8.1}};
        CHECK(fails_at(j) == "modal.tau_o_ns_per_m");
    }
}

TEST_CASE("unknown keys are rejected at every level") {
    SUBCASE("top level") {
        json j = base_config();
        j["lenght_m"] = 0.05; // typo
        CHECK(fails_at(j) == "lenght_m");
    }
    SUBCASE("sampling block") {
        json j = base_config();
        j["sampling"]["dt"] = 1e-12;
        CHECK(fails_at(j) == "sampling.dt");
    }
    SUBCASE("excitation block") {
        json j = base_config();
        j["excitation"]["width_ps"] = 10.0;
        CHECK(fails_at(j) == "excitation.width_ps");
    }
    SUBCASE("oracle block") {
        json j = base_config();
        j["oracle"] = {{"samples", 4096}};
        CHECK(fails_at(j) == "oracle.samples");
    }
}

TEST_CASE("excitation parsing") {
    SUBCASE("absent block uses the documented default") {
        json j = base_config();
        j.erase("excitation");
        const RunConfig cfg = load_run_config(j);
        const auto* t = std::get_if<TrapezoidShape>(&cfg.excitation.shape);
        REQUIRE(t != nullptr);
        CHECK(t->rise == doctest::Approx(50e-12).epsilon(1e-15));
        CHECK(t->top == doctest::Approx(100e-12).epsilon(1e-15));
        CHECK(t->fall == doctest::Approx(50e-12).epsilon(1e-15));
        CHECK(cfg.excitation.emf_amplitude == 2.0);
    }
    SUBCASE("gaussian shape") {
        json j = base_config();
        j["excitation"] = {{"shape", "gaussian"}, {"fwhm_ps", 80.0}, {"center_ps", 200.0}};
        const RunConfig cfg = load_run_config(j);
        const auto* g = std::get_if<GaussianShape>(&cfg.excitation.shape);
        REQUIRE(g != nullptr);
        CHECK(g->fwhm == doctest::Approx(80e-12).epsilon(1e-15));
        CHECK(cfg.excitation.emf_amplitude == 2.0); // default kept
    }
    SUBCASE("sampled shape") {
        json j = base_config();
        j["excitation"] = {{"shape", "samples"}, {"dt_ps", 10.0},
                           {"values", {0.0, 0.5, 1.0, 0.5, 0.0}}, {"emf_V", 3.0}};
        j["sampling"]["dt_s"] = 5e-12; // effective rise = 10*dt_ps = 100 ps
        const RunConfig cfg = load_run_config(j);
        const auto* s = std::get_if<SampledShape>(&cfg.excitation.shape);
        REQUIRE(s != nullptr);
        CHECK(s->grid.samples.size() == 5);
        CHECK(cfg.excitation.vin_peak() == doctest::Approx(1.5).epsilon(1e-15));
    }
    SUBCASE("unknown shape name") {
        json j = base_config();
        j["excitation"]["shape"] = "square";
        CHECK(fails_at(j) == "excitation.shape");
    }
    SUBCASE("gaussian too close to t = 0 is rejected with the field path") {
        json j = base_config();
        j["excitation"] = {{"shape", "gaussian"}, {"fwhm_ps", 80.0}, {"center_ps", 100.0}};
        CHECK(fails_at(j) == "excitation");
    }
    SUBCASE("trapezoid missing an edge") {
        json j = base_config();
        j["excitation"].erase("rise_ps");
        CHECK(fails_at(j) == "excitation.rise_ps");
    }
}

TEST_CASE("sampling validation") {
    SUBCASE("dt coarser than a tenth of the rise") {
        json j = base_config();
        j["sampling"]["dt_s"] = 6e-12;
        CHECK(fails_at(j) == "sampling.dt_s");
    }
    SUBCASE("t_end below dt") {
        json j = base_config();
        j["sampling"]["t_end_s"] = 1e-12;
        CHECK(fails_at(j) == "sampling.t_end_s");
    }
    SUBCASE("missing block") {
        json j = base_config();
        j.erase("sampling");
        CHECK(fails_at(j) == "sampling");
    }
    SUBCASE("sample count covers [0, t_end]") {
        json j = base_config();
        j["sampling"] = {{"dt_s", 1e-12}, {"t_end_s", 1e-9}};
        CHECK(load_run_config(j).sample_count() == 1001);
    }
}

TEST_CASE("k_ref validation") {
    json j = base_config();
    j["k_ref"] = 1;
    CHECK(fails_at(j) == "k_ref");
    j["k_ref"] = 2.5;
    CHECK(fails_at(j) == "k_ref");
}

TEST_CASE("oracle overrides") {
    json j = base_config();
    j["oracle"] = {{"n_samples", 4096}, {"dt_s", 2e-12}, {"settle_margin", 2.0}};
    const RunConfig cfg = load_run_config(j);
    CHECK(cfg.oracle.n_samples == 4096);
    CHECK(cfg.oracle.dt == 2e-12);
    CHECK(cfg.oracle.settle_margin == 2.0);

    SUBCASE("defaults when absent") {
        const RunConfig d = load_run_config(base_config());
        CHECK(d.oracle.n_samples == (1 << 14));
        CHECK(d.oracle.dt == 0.0); // resolved against the excitation later
        CHECK(d.oracle.settle_margin == 3.0);
    }
    SUBCASE("non-power-of-two sample count") {
        json bad = base_config();
        bad["oracle"] = {{"n_samples", 5000}};
        CHECK(fails_at(bad) == "oracle");
    }
}

TEST_CASE("file loading") {
    SUBCASE("missing file") {
        CHECK_THROWS_AS((void)load_run_config_file("/nonexistent/config.json"), ConfigError);
    }
    SUBCASE("shipped reference config loads") {
        const RunConfig cfg = load_run_config_file(std::string(MLTURN_CONFIG_DIR) +
                                                   "/reference_turn.json");
        CHECK(rel_diff(cfg.modal.z_even(), 86.283592995819642) <= 1e-12);
        CHECK(cfg.k_ref == 20);
    }
}

TEST_CASE("non-object root is rejected") {
    CHECK(fails_at(json::array({1, 2, 3})) == "(root)");
}
