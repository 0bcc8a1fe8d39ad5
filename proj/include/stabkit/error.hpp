#pragma once

#include <stdexcept>
#include <string>

namespace stabkit {

enum class ErrorKind {
    input,           // malformed or out-of-contract arguments
    resource,        // enumeration bound exceeded
    domain,          // mathematically undefined request (e.g. phase of 0)
    guard_violation, // a precondition guard (spherical guard) failed
    internal,        // broken invariant
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail(ErrorKind::input, msg);
}

} // namespace stabkit
