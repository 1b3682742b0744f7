// Shared doctest helpers layered on the plain generators.
#pragma once

#include <cmath>

#include <doctest.h>

#include "mlturn/pulse_train.hpp"

#include "generators.hpp"

namespace mlturn::testing {

/// Asserts two trains are equal term-by-term: same length, delays within an
/// absolute merge-window-sized slack plus 1e-12 relative, gains within
/// rel_tol relative.
inline void require_trains_equal(const PulseTrain& a, const PulseTrain& b, double rel_tol) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const PulseTerm& ta = a.terms[i];
        const PulseTerm& tb = b.terms[i];
        REQUIRE(std::abs(ta.delay - tb.delay) <=
                PulseTrain::merge_window_s + 1e-12 * std::max(ta.delay, tb.delay));
        REQUIRE(rel_diff(ta.gain, tb.gain) <= rel_tol);
    }
}

} // namespace mlturn::testing
