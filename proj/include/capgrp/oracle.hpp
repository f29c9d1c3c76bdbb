#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "capgrp/capability.hpp"
#include "json.hpp"

namespace capgrp {

/// Number of k-dimensional subspaces of F_p^m; throws std::overflow_error
/// if the count does not fit in 64 bits.
std::uint64_t gaussian_binomial(std::size_t m, std::size_t k, std::uint32_t p);

/// Exhaustive enumeration of Gr(k, F_p^m) by canonical RREF forms: pivot
/// column sets in lexicographic order, free entries counted in base p.
/// Each subspace is produced exactly once, in a deterministic order. The
/// visitor may return false to stop early. Returns the number visited.
std::uint64_t enumerate_subspaces(std::uint32_t p, std::size_t m, std::size_t k,
                                  const std::function<bool(const Subspace&)>& visit);

/// Uniform sample from Gr(k, F_p^m): pivot set drawn with Gaussian weight,
/// free entries uniform.
Subspace sample_subspace(std::mt19937_64& rng, std::uint32_t p, std::size_t m, std::size_t k);

/// Uniform sample over all subspaces of F_p^m (dimension drawn by count).
Subspace sample_subspace_any(std::mt19937_64& rng, std::uint32_t p, std::size_t m);

struct Violation {
  std::string input;
  std::string expected;
  std::string got;
};

struct SuiteReport {
  std::string suite;
  std::uint32_t n = 0;
  std::uint32_t p = 0;
  nlohmann::ordered_json params;
  std::uint64_t checked = 0;
  std::vector<Violation> violations;  // capped; violations_total is exact
  std::uint64_t violations_total = 0;
  nlohmann::ordered_json stats;
  std::optional<std::uint64_t> seed;
  double elapsed_ms = 0;

  bool passed() const { return violations_total == 0; }
  nlohmann::ordered_json to_json() const;
};

struct SuiteOptions {
  std::optional<std::uint64_t> sample;  // force sampling with this many cases
  std::uint64_t seed = 0;
  std::uint64_t ceiling = 10'000'000;  // max exhaustive instances
};

const std::vector<std::string>& suite_names();

/// Runs one verification suite; throws std::invalid_argument for an unknown
/// name or an infeasible exhaustive request.
SuiteReport run_suite(const std::string& name, std::uint32_t n, std::uint32_t p,
                      const SuiteOptions& opts = {});

/// Number of closed k-dimensional subspaces of V(n), by direct closure.
std::uint64_t census_closed(std::uint32_t n, std::uint32_t p, std::size_t k);

}  // namespace capgrp
