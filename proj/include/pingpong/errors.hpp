// Error taxonomy shared across the library.
//
// Contract violations (wrong model, elliptic element where a loxodromic is
// required, ...) throw; resource refusals carry enough data for the caller
// to decide whether to raise a budget and retry.

#pragma once

#include <stdexcept>
#include <string>

namespace pingpong {

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Two sites / elements from different models were mixed.
struct model_mismatch_error : error {
    explicit model_mismatch_error(const std::string& what) : error(what) {}
};

// Operation is not available on this model kind (e.g. certificates on the
// floating half-plane model).
struct capability_error : error {
    explicit capability_error(const std::string& what) : error(what) {}
};

// Precondition on the mathematical input failed (elliptic where loxodromic
// required, fixed-point pairs not disjoint, ...).
struct domain_violation : error {
    explicit domain_violation(const std::string& what) : error(what) {}
};

// A bounded search ran out of budget without a verified result.
struct budget_exhausted_error : error {
    explicit budget_exhausted_error(const std::string& what) : error(what) {}
};

// An enumeration would exceed the configured cap; refusing is the only way
// to keep "Pass" synonymous with "exhaustive".
struct enumeration_cap_error : error {
    enumeration_cap_error(const std::string& what, unsigned long long estimate)
        : error(what), estimated_count(estimate) {}
    unsigned long long estimated_count;
};

// Subgroup closure enumeration exceeded the cap: the generated subgroup is
// not elliptic (or too large for desk scale).
struct subgroup_cap_error : error {
    explicit subgroup_cap_error(const std::string& what) : error(what) {}
};

// The two independent evaluation oracles disagreed.  This is an encoding
// bug, never a mathematical result, so it aborts the whole run.
struct oracle_mismatch_error : error {
    explicit oracle_mismatch_error(const std::string& what) : error(what) {}
};

// Input text did not parse; position is a byte offset where known.
struct parse_error : error {
    parse_error(const std::string& what, std::size_t position)
        : error(what), where(position) {}
    std::size_t where;
};

struct arithmetic_overflow_error : error {
    explicit arithmetic_overflow_error(const std::string& what) : error(what) {}
};

}  // namespace pingpong
