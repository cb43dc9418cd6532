#pragma once

#include "automaton.hpp"

namespace chronosynth::fixtures {

// D-encoded specs over binary signals; letters ((a, a'), (b, b')) name the
// value at a sample point and on the interval after it.

// X = Y.
ParityAutomaton psi_copy();
// Y jumps somewhere in (0, oo).
ParityAutomaton psi_jump();
// For some t > 0, X is constant on (0, t] and Y jumps at t.
ParityAutomaton psi_indet();

// Plain specs.
ParityAutomaton one_state();
// Output at step i equals input at step i + 1.
ParityAutomaton predict_next();
// Output equals input at every step.
ParityAutomaton copy_plain();

} // namespace chronosynth::fixtures
