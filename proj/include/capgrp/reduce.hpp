#pragma once

#include <optional>
#include <string>
#include <vector>

#include "capgrp/closure.hpp"

namespace capgrp {

enum class StepKind {
  central_cancellation,
  block_split,
  dimension_sufficient,
  dimension_necessary_fail,
  n4_dim5_rule,
  direct_closure,
};

const char* step_kind_name(StepKind k);

struct TraceStep {
  StepKind kind;
  std::string detail;
  /// For central-cancellation steps: the cancelled direction in U, so the
  /// step can be replayed.
  std::vector<Fp> u;
};

struct ReductionTrace {
  std::vector<TraceStep> steps;
  std::uint32_t final_n = 0;
  std::uint32_t p = 0;
  std::optional<Subspace> final_subspace;  // empty only for the n=1 case
};

/// Re-applies the recorded subspace-transforming steps to the original
/// (ctx, x); must reproduce trace.final_subspace bit-exactly.
Subspace replay(const ReductionTrace& trace, const SpaceContext& ctx, const Subspace& x);

/// {u in U : psi_i(u) in x for all i} = the intersection of the psi
/// preimages; <u>* is contained in x exactly for u in this subspace.
Subspace central_lines(const SpaceContext& ctx, const Subspace& x);

struct CancelResult {
  SpaceContext ctx;  // generator count n-1
  Subspace x;        // dimension dim(x) - (n-1)
};

/// Changes basis so u becomes x_n, strips the <v_{ni}> block, and drops to
/// n-1 generators. Requires <u>* contained in x and n >= 3; closedness is
/// preserved in both directions.
CancelResult cancel_central(const SpaceContext& ctx, const Subspace& x, const std::vector<Fp>& u);

struct BlockSplit {
  std::vector<int> left;   // I
  std::vector<int> right;  // J
  Subspace x_left;         // x cut down to the I-coordinates
  Subspace x_right;        // x cut down to the J-coordinates
};

/// Searches for a nontrivial partition {1..n} = I u J with
/// x = X_I + X_J + V_{(I,J)}; partitions are tried by increasing |I| and
/// lexicographically within a size, first hit wins.
std::optional<BlockSplit> block_split(const SpaceContext& ctx, const Subspace& x);

/// Coordinate span of all v_{ji} with exactly one of i,j in the index set.
Subspace mixed_block(const SpaceContext& ctx, const std::vector<int>& left);

struct DimensionTests {
  bool sufficient_closed;   // dim(x) < 2 sqrt(n): x is closed
  bool necessary_capable;   // rank condition 2l + C(l,2) >= n' still allows capability
};

/// Integer-exact dimension shortcuts; l = C(n,2) - dim(x) and n' = n minus
/// the number of independent central directions.
DimensionTests dimension_tests(const SpaceContext& ctx, const Subspace& x);

/// For n = 4 and dim(x) = 5 closedness is equivalent to the existence of a
/// central line. Throws for any other shape.
bool n4_dim5_rule(const SpaceContext& ctx, const Subspace& x);

}  // namespace capgrp
