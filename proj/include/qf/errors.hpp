#pragma once

#include <stdexcept>
#include <string>

namespace qf {

// Input that could not even be parsed into a table (bad shape, non-numeric,
// out-of-range entries).  CLI maps this to exit code 2.
struct MalformedInput : std::runtime_error {
    explicit MalformedInput(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed input that violates a documented precondition (axiom failure
// where validity is required, wrong matrix shapes, ...).  Exit code 1.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A configured cap was exceeded (closure size, search nodes, ...).  Exit code 1.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// An internal soundness check failed.  These guard claims the code relies on
// (e.g. torsion-freeness of quandle abelianizations); reaching one is a bug,
// never a user error.  Exit code 1.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qf
