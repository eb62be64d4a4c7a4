#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace permbin {

enum class Errc {
    not_prime,            // characteristic is not a prime
    size_exceeded,        // field order above the table limit, or integer overflow
    field_mismatch,       // elements of two different fields combined
    zero_to_nonpositive,  // 0 raised to a non-positive power
    precond_violated,     // caller broke a documented precondition
    internal,             // invariant broken inside the library
    io,                   // report / checkpoint file trouble
};

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace permbin
