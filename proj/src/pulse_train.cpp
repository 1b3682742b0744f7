#include "mlturn/pulse_train.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mlturn {

PulseTrain normalized(PulseTrain train) {
    for (const PulseTerm& term : train.terms) {
        if (!std::isfinite(term.gain) || !std::isfinite(term.delay)) {
            throw std::invalid_argument("pulse train term has a non-finite gain or delay");
        }
        if (term.delay < 0.0) {
            throw std::invalid_argument("pulse train term has a negative delay");
        }
    }
    std::stable_sort(train.terms.begin(), train.terms.end(),
                     [](const PulseTerm& a, const PulseTerm& b) { return a.delay < b.delay; });

    std::vector<PulseTerm> merged;
    merged.reserve(train.terms.size());
    for (const PulseTerm& term : train.terms) {
        if (!merged.empty() && term.delay - merged.back().delay < PulseTrain::merge_window_s) {
            merged.back().gain += term.gain;
        } else {
            merged.push_back(term);
        }
    }
    std::erase_if(merged, [](const PulseTerm& t) { return std::abs(t.gain) < PulseTrain::min_gain; });

    train.terms = std::move(merged);
    return train;
}

PulseTrain scaled(PulseTrain train, double factor) {
    for (PulseTerm& term : train.terms) {
        term.gain *= factor;
    }
    return train;
}

PulseTrain delayed(PulseTrain train, double shift) {
    for (PulseTerm& term : train.terms) {
        term.delay += shift;
        if (term.delay < 0.0) {
            throw std::invalid_argument("pulse train shift would produce a negative delay");
        }
    }
    return train;
}

PulseTrain combined(const PulseTrain& a, double wa, const PulseTrain& b, double wb) {
    PulseTrain out;
    out.terms.reserve(a.terms.size() + b.terms.size());
    for (const PulseTerm& term : a.terms) {
        out.terms.push_back({term.gain * wa, term.delay});
    }
    for (const PulseTerm& term : b.terms) {
        out.terms.push_back({term.gain * wb, term.delay});
    }
    return normalized(std::move(out));
}

double gain_sum(const PulseTrain& train) {
    double sum = 0.0;
    for (const PulseTerm& term : train.terms) {
        sum += term.gain;
    }
    return sum;
}

} // namespace mlturn
