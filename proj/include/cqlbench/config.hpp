// config.hpp — Dimension caps and shared error types

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cql {

// Dense operators (anything that gets stored or eigendecomposed as a full
// matrix) are capped independently of the joint state-vector dimension.
inline constexpr std::size_t kMaxOperatorDim = 4096;

inline constexpr std::size_t kDefaultMaxStateDim = 250000;

// Joint state-vector dimension cap. CQLBENCH_MAX_DIM overrides the default.
std::size_t max_state_dim();

// Thrown when a requested construction exceeds a dimension cap; the message
// carries the offending dimension so the CLI can surface it verbatim.
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the fidelity/dispersion inequality chain is violated beyond
// tolerance. A breach means an implementation bug, never a physics outcome.
struct theorem_breach : std::runtime_error {
    explicit theorem_breach(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cql
