#pragma once

#include <stdexcept>
#include <string>

namespace gpd {

/// Failure categories. The CLI maps these onto exit codes.
enum class Errc {
    contract_violation,   // caller broke a precondition (shape mismatch, wrong order, ...)
    validation,           // an algebra, quiver or module fails its invariants
    parse,                // malformed input file
    not_applicable,       // criterion only holds over kQ[eps]
    inconclusive,         // isomorphism search exhausted its options
    witness_not_found,    // no strong-GP sequence from the minimal syzygy
    budget_exceeded,      // exhaustive enumeration refused
    internal_inconsistency
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
    if (!cond) fail(Errc::contract_violation, what);
}

}  // namespace gpd
