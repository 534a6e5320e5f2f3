#pragma once

#include <stdexcept>

namespace grasslab {

/// Same-orbit precondition failed (e.g. witness requested across classes).
struct class_mismatch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A computation was declined because it exceeds a configured budget; callers
/// report this, they never silently skip.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Post-hoc verification of an internally constructed object failed. This is
/// a bug signal, never a data error.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace grasslab
