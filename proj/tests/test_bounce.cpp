#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "mlturn/bounce.hpp"

#include "test_support.hpp"

using namespace mlturn;
using namespace mlturn::testing;

namespace {

LineSection section(double y1, double tau1 = 5e-9, double length = 0.04) {
    return LineSection{y1, tau1, length};
}

} // namespace

TEST_CASE("far-end reflection and transmission coefficients") {
    const double y1 = 0.02;
    CHECK(reflection_far(y1, Termination::open()) == 1.0);
    CHECK(reflection_far(y1, Termination::shorted()) == -1.0);
    CHECK(reflection_far(y1, Termination::admittance(y1)) == 0.0);
    CHECK(reflection_far(y1, Termination::admittance(0.06)) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(transmission_far(y1, Termination::open()) == 2.0);
    CHECK(transmission_far(y1, Termination::shorted()) == 0.0);
    CHECK(transmission_far(y1, Termination::admittance(y1)) == doctest::Approx(1.0).epsilon(1e-15));

    SUBCASE("negative termination admittance is rejected") {
        CHECK_THROWS_AS((void)Termination::admittance(-0.01), std::invalid_argument);
    }
}

TEST_CASE("source reflection") {
    CHECK(source_reflection(0.02, 0.02) == 0.0);
    CHECK(source_reflection(0.03, 0.01) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS((void)source_reflection(0.02, 0.0), DegenerateSource);
    CHECK_THROWS_AS((void)source_reflection(0.02, -0.01), DegenerateSource);
}

TEST_CASE("primary components") {
    SUBCASE("matched line into matched load: single clean transit") {
        const LineSection sec = section(0.02);
        const PrimaryComponents c = primary_components(sec, 0.02, Termination::admittance(0.02));
        CHECK(c.v0.gain == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(c.v0.delay == doctest::Approx(sec.delay()).epsilon(1e-15));
        CHECK(c.v1_prime.gain == 0.0);
        CHECK(c.v1_double_prime.gain == 0.0);
    }

    SUBCASE("matched source, open far end") {
        const LineSection sec = section(0.02);
        const PrimaryComponents c = primary_components(sec, 0.02, Termination::open());
        CHECK(c.v0.gain == doctest::Approx(2.0).epsilon(1e-15)); // voltage doubling
        CHECK(c.v1_double_prime.gain == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(c.v1_double_prime.delay == doctest::Approx(2.0 * sec.delay()).epsilon(1e-15));
    }

    SUBCASE("Y0 = 2*Y1, open far end") {
        const LineSection sec = section(0.01);
        const PrimaryComponents c = primary_components(sec, 0.02, Termination::open());
        // into_line = 2*2/(2+1) = 4/3, T_far = 2 -> v0 = 8/3.
        CHECK(c.v0.gain == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
        CHECK(c.v1_prime.gain == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
        // out_of_line = 2*1/(2+1) = 2/3 -> v1'' = 4/3 * 2/3 * 1 = 8/9.
        CHECK(c.v1_double_prime.gain == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
    }
}

TEST_CASE("far_response term structure") {
    SUBCASE("geometric decay with ratio 1/2") {
        // Y1 = 3*Y0, open far end: Gs = (3-1)/(3+1) = 1/2, Gf = 1, v0 = (2/4)*2 = 1.
        const LineSection sec = section(0.03);
        const PulseTrain t = far_response(sec, 0.01, Termination::open(), 4);
        REQUIRE(t.size() == 3);
        for (int k = 0; k < 3; ++k) {
            CHECK(rel_diff(t.terms[k].gain, std::pow(0.5, k)) <= 1e-15);
            CHECK(rel_diff(t.terms[k].delay, (2.0 * k + 1.0) * sec.delay()) <= 1e-15);
        }
    }

    SUBCASE("matched source keeps only the first transit") {
        const LineSection sec = section(0.02);
        const PulseTrain t = far_response(sec, 0.02, Termination::open(), 10);
        REQUIRE(t.size() == 1);
        CHECK(t.terms[0].gain == doctest::Approx(2.0).epsilon(1e-15));
    }

    SUBCASE("shorted far end has no transmitted response") {
        const PulseTrain t = far_response(section(0.02), 0.01, Termination::shorted(), 8);
        CHECK(t.empty());
    }

    SUBCASE("term count is floor(k_ref/2)+1 before gain pruning") {
        const LineSection sec = section(0.05); // strong mismatch vs y0 = 0.01
        CHECK(far_response(sec, 0.01, Termination::open(), 0).size() == 1);
        CHECK(far_response(sec, 0.01, Termination::open(), 1).size() == 1);
        CHECK(far_response(sec, 0.01, Termination::open(), 2).size() == 2);
        CHECK(far_response(sec, 0.01, Termination::open(), 7).size() == 4);
    }
}

TEST_CASE("near_response term structure") {
    SUBCASE("fully matched: empty response") {
        const PulseTrain t = near_response(section(0.02), 0.02, Termination::admittance(0.02), 6);
        CHECK(t.empty());
    }

    SUBCASE("matched source, open far end: single echo of +1 at 2*l*tau") {
        const LineSection sec = section(0.02);
        const PulseTrain t = near_response(sec, 0.02, Termination::open(), 6);
        REQUIRE(t.size() == 1);
        CHECK(t.terms[0].gain == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(rel_diff(t.terms[0].delay, 2.0 * sec.delay()) <= 1e-15);
    }

    SUBCASE("matched source, shorted far end: single echo of -1") {
        const LineSection sec = section(0.02);
        const PulseTrain t = near_response(sec, 0.02, Termination::shorted(), 6);
        REQUIRE(t.size() == 1);
        CHECK(t.terms[0].gain == doctest::Approx(-1.0).epsilon(1e-15));
    }

    SUBCASE("immediate reflection plus first return") {
        const LineSection sec = section(0.01);
        const PulseTrain t = near_response(sec, 0.02, Termination::open(), 2);
        // v1' = (2-1)/3 = 1/3 at 0; v1'' = 8/9 at 2*l*tau.
        REQUIRE(t.size() == 2);
        CHECK(t.terms[0].delay == 0.0);
        CHECK(t.terms[0].gain == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK(rel_diff(t.terms[1].delay, 2.0 * sec.delay()) <= 1e-15);
        CHECK(t.terms[1].gain == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
    }
}

TEST_CASE("truncated geometric sums approach the transmission-line DC limits") {
    std::mt19937 rng(20240813);
    for (int trial = 0; trial < 200; ++trial) {
        const double y0 = log_uniform(rng, -2.5, -1.0);
        const double y1 = log_uniform(rng, -2.5, -1.0);
        const double y2 = log_uniform(rng, -2.5, -1.0);
        const LineSection sec = section(y1);
        const Termination far = Termination::admittance(y2);

        const double q = reflection_far(y1, far) * source_reflection(y1, y0);
        REQUIRE(std::abs(q) < 1.0);
        const int k_ref = 40;

        // Far end: the truncated series has the exact partial sum
        // v0*(1-q^(K+1))/(1-q) and approaches 2*Y0/(Y0+Y2); the deviation
        // from the limit is bounded by the dropped geometric tail.
        const double far_sum = gain_sum(far_response(sec, y0, far, k_ref));
        const double far_limit = 2.0 * y0 / (y0 + y2);
        const double v0 = 2.0 * y0 / (y0 + y1) * transmission_far(y1, far);
        const int far_terms = k_ref / 2 + 1;
        const double far_partial = v0 * (1.0 - std::pow(q, far_terms)) / (1.0 - q);
        CHECK(std::abs(far_sum - far_partial) <= 1e-12 * std::max(1.0, std::abs(far_partial)));
        const double far_tail =
            std::abs(v0) * std::pow(std::abs(q), far_terms) / (1.0 - std::abs(q)) + 1e-13;
        CHECK(std::abs(far_sum - far_limit) <= far_tail);

        // Near end: the node settles to the same DC divider, so the response
        // (which excludes the incident wave) sums to 2*Y0/(Y0+Y2) - 1.
        const double near_sum = gain_sum(near_response(sec, y0, far, k_ref));
        const double near_limit = far_limit - 1.0;
        const double v1pp = 2.0 * y0 / (y0 + y1) * (2.0 * y1 / (y0 + y1)) *
                            reflection_far(y1, far);
        const int near_terms = (k_ref - 1) / 2 + 1;
        const double near_partial = (y0 - y1) / (y0 + y1) +
                                    v1pp * (1.0 - std::pow(q, near_terms)) / (1.0 - q);
        CHECK(std::abs(near_sum - near_partial) <= 1e-12 * std::max(1.0, std::abs(near_partial)));
        const double near_tail =
            std::abs(v1pp) * std::pow(std::abs(q), near_terms) / (1.0 - std::abs(q)) + 1e-13;
        CHECK(std::abs(near_sum - near_limit) <= near_tail);
    }
}

TEST_CASE("increasing k_ref extends the train without changing its prefix") {
    const LineSection sec = section(0.05, 6e-9, 0.03);
    const double y0 = 0.012;
    const Termination far = Termination::admittance(0.004);
    const PulseTrain shorter = far_response(sec, y0, far, 8);
    const PulseTrain longer = far_response(sec, y0, far, 10);
    REQUIRE(longer.size() == shorter.size() + 1);
    for (std::size_t i = 0; i < shorter.size(); ++i) {
        CHECK(shorter.terms[i].gain == longer.terms[i].gain);
        CHECK(shorter.terms[i].delay == longer.terms[i].delay);
    }
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS((void)far_response(section(0.02), 0.01, Termination::open(), -1),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)near_response(section(0.02), 0.01, Termination::open(), -3),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)far_response(section(0.02), 0.0, Termination::open(), 2),
                    DegenerateSource);
    CHECK_THROWS_AS((void)far_response(section(-0.02), 0.01, Termination::open(), 2),
                    std::invalid_argument);
}
