#pragma once

#include <stdexcept>
#include <string>

namespace bergman_ops {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Composition target has |phi(0)| >= 1; the series has no expansion at 0.
struct constant_term_outside_disk : error {
    using error::error;
};

// Kernel (or sample) point with |w| >= 1, or outside a checker's stated radius.
struct point_outside_disk : error {
    using error::error;
};

struct invalid_alpha : error {
    using error::error;
};

struct invalid_order : error {
    using error::error;
};

struct window_too_short : error {
    using error::error;
};

// Family parameters violate the sufficient self-map bound.
struct inadmissible : error {
    using error::error;
};

// The entrywise-reduced and basis-vector computations of C T* C disagree
// beyond rounding. Signals an implementation bug, not a math failure.
struct path_disagreement : error {
    using error::error;
};

struct sample_outside_domain : error {
    using error::error;
};

struct config_error : error {
    using error::error;
};

}  // namespace bergman_ops
