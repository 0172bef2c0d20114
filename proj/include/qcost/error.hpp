#pragma once

#include <stdexcept>
#include <string>

namespace qcost {

/// Classification of every failure the library reports. The CLI maps each
/// kind onto an exit code and a distinct message prefix.
enum class ErrorKind {
    malformed_document,
    invariant_violation,
    duplicate_name,
    empty_catalog,
    unknown_scheme,
    precondition,
    budget_infeasible,
    distillation_depth_exceeded,
    insufficient_points,
    rank_deficient,
    deadline_unreachable,
    io,
};

inline const char* to_string(ErrorKind k) noexcept
{
    switch (k) {
    case ErrorKind::malformed_document: return "malformed document";
    case ErrorKind::invariant_violation: return "invariant violation";
    case ErrorKind::duplicate_name: return "duplicate name";
    case ErrorKind::empty_catalog: return "empty catalog";
    case ErrorKind::unknown_scheme: return "unknown scheme";
    case ErrorKind::precondition: return "precondition violated";
    case ErrorKind::budget_infeasible: return "budget infeasible";
    case ErrorKind::distillation_depth_exceeded: return "distillation depth exceeded";
    case ErrorKind::insufficient_points: return "insufficient points for fit";
    case ErrorKind::rank_deficient: return "rank-deficient system";
    case ErrorKind::deadline_unreachable: return "deadline unreachable";
    case ErrorKind::io: return "i/o error";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + (detail.empty() ? "" : ": " + detail)),
          kind_(kind)
    {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail = {})
{
    throw Error(kind, detail);
}

inline void require(bool cond, const std::string& detail)
{
    if (!cond)
        fail(ErrorKind::precondition, detail);
}

} // namespace qcost
