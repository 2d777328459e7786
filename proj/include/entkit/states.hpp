// Canonical state constructors: Bell pairs, GHZ, W, W-class and basis states.
#pragma once

#include "entkit/types.hpp"

namespace entkit {

enum class BellKind { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

// (|01> +- |10>)/sqrt2 and (|00> +- |11>)/sqrt2.
PureState bell(BellKind kind);

// (|0...0> + |1...1>)/sqrt2 on n >= 2 qubits.
PureState ghz(int n);

// Equal superposition of all weight-one basis states, 1/sqrt(n) amplitudes.
PureState w_state(int n);

// a|100> + b|010> + c|001>. Requires |a|^2+|b|^2+|c|^2 = 1 within 1e-9
// unless auto_normalize is set; the all-zero triple is rejected.
PureState w_class(Complex a, Complex b, Complex c, bool auto_normalize = false);

// Computational basis vector |digits> for the given subsystem dimensions.
PureState basis_state(const std::vector<int>& dims, const std::vector<int>& digits);

// CLI-facing label parsing: "ghz", "w", "bell:psi-", "bell:phi+",
// "wclass:a,b,c", "basis:digits".
BellKind parse_bell_label(const std::string& label);

}  // namespace entkit
