#pragma once

#include <stdexcept>
#include <string>

namespace quniform {

// Dropping a nonzero low bit during precision reduction. Signals that the
// requested target precision cannot represent the point set exactly.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Request exceeds a hard resource cap (e.g. asking for 2^31 points).
struct scale_error : std::runtime_error {
    explicit scale_error(const std::string& what) : std::runtime_error(what) {}
};

// Point set with coincident points: separation radius is zero and the mesh
// ratio is not a finite number.
struct degenerate_error : std::runtime_error {
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace quniform
