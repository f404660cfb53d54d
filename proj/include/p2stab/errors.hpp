#pragma once

#include <stdexcept>
#include <string>

namespace p2stab {

// Malformed or out-of-domain caller input.  The CLI maps this to exit code 2.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Degenerate input data (identically vanishing jump curve and the like).
// Still caller input, still exit code 2, but distinguishable by type.
struct degeneracy_error : input_error {
    using input_error::input_error;
};

// A violated internal invariant.  The CLI maps this to exit code 3.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace p2stab
