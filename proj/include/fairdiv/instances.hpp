#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "fairdiv/core.hpp"

namespace fairdiv {

inline constexpr std::string_view kInstanceFormat = "fairdiv-instance/1";
inline constexpr std::string_view kAllocationFormat = "fairdiv-allocation/1";

struct InstanceFile {
  Instance instance;
  std::optional<std::string> name;
  std::optional<std::string> source;
};

// Throws ParseError carrying the 1-based line number.
InstanceFile parse_instance(std::string_view text);
// Canonical text: fixed key order, reduced fractions, goods relabelled
// g1.., d1.., LF line endings.
std::string serialize_instance(const InstanceFile& file);
std::string serialize_instance(const Instance& inst);

// Validated against the instance dimensions.
Allocation parse_allocation(std::string_view text, const Instance& inst);
std::string serialize_allocation(const Allocation& a, const Instance& inst);

// Two agents, one indivisible good worth 1/2 to both and two divisible goods
// worth (1/2 - eps, eps) and (eps, 1/2 - eps). Throws ArgumentError unless
// 0 < eps < 1/2.
Instance thm34_lower_bound(const Rational& eps);

// Two agents, one indivisible good worth 1 to both; agent 1 values only d1
// (1/2), agent 2 only d2 (1/2).
Instance table3_po_example();

// Utilities p/q with q in 1..60 and p in 0..q; scaled rows are normalised
// exactly. Deterministic in the seed. Throws DimensionError when n == 0.
Instance random_instance(std::size_t n, std::size_t m, std::size_t m_div, bool scaled,
                         std::uint64_t seed);

}  // namespace fairdiv
