// Node responses of one meander turn: the generic even/odd superposition of
// per-mode bounce responses, and the turn-specific closed forms (far end open
// for the even mode, shorted for the odd mode), kept as two independent code
// paths so they can be checked against each other.
#pragma once

#include "mlturn/bounce.hpp"
#include "mlturn/excitation.hpp"
#include "mlturn/modal.hpp"
#include "mlturn/pulse_train.hpp"

namespace mlturn {

/// Full problem statement for one turn. The source internal admittance and
/// the load admittance are both y0.
struct TurnConfig {
    ModalParameters modal;
    double length = 0.0; ///< m
    double y0 = 0.0;     ///< S
    int k_ref = 2;       ///< reflection count, >= 2
    ExcitationSpec excitation;

    void validate() const;
};

/// Responses at the four turn nodes, as pulse trains applied to V_in.
/// Node 1 is the driven near end, node 2 the passive near end (turn output),
/// nodes 3 and 4 the far-end junction. v3 and v4 are identical term-by-term:
/// the odd mode contributes nothing at the shorted far-end junction. v4 sits
/// inside the short loop and is kept only for that identity check.
struct NodeResponses {
    PulseTrain v1, v2, v3, v4;
};

/// Generic composition: per-mode near/far bounce responses combined as
///   v1 = (near_e + near_o)/2,  v2 = (near_e - near_o)/2,
///   v3 = (far_e + far_o)/2,    v4 = (far_e - far_o)/2.
[[nodiscard]] NodeResponses coupled_node_responses(const ModalParameters& modal, double y0,
                                                   const Termination& far_even,
                                                   const Termination& far_odd,
                                                   double length, int k_ref);

/// Turn-specific closed forms, written out as the literal i-indexed sums with
/// the even-mode alternating sign (-1)^(i+1); algebraically a specialization
/// of coupled_node_responses with far_even = open, far_odd = short, and
/// asserted equal to it in the test suite.
[[nodiscard]] NodeResponses turn_responses(const TurnConfig& cfg);

} // namespace mlturn
