#pragma once

#include <stdexcept>
#include <string>

namespace mf {

// Thrown where a formula has a genuine pole (rho = 0, xi = +-1, ...).
struct singularity_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Requested accuracy could not be reached (quadrature depth, grid too short, ...).
struct accuracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A search (bracket, scan, root) found nothing in its window.
struct not_found_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// State has no finite norm (l = 0 zero-energy states).
struct non_normalizable_error : std::domain_error {
    using std::domain_error::domain_error;
};

// File could not be opened or written.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mf
