#pragma once

#include <optional>
#include <string>
#include <vector>

#include "capgrp/reduce.hpp"
#include "json.hpp"

namespace capgrp {

/// One commutator term c * [j,i] of a relator, with j > i.
struct RelTerm {
  int j = 0;
  int i = 0;
  Fp coef = 1;
};

/// A class-two exponent-p presentation: n generators, relators that are
/// formal sums of basic commutators [j,i].
struct Presentation {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::vector<std::vector<RelTerm>> relators;
};

struct ParseError {
  std::size_t line = 0;
  std::string message;
};

/// Parses the line-oriented presentation format:
///   p <odd prime>
///   n <generators>
///   rel <term> [<+|-> <term>]...     term = [coef*][j,i], coef in [1,p)
/// '#' starts a comment. Throws ParseError with the offending line number.
Presentation parse_presentation(const std::string& text);

/// Relator span inside V(n); requires n >= 2.
std::pair<SpaceContext, Subspace> to_subspace(const Presentation& pres);

enum class Reason {
  closed_subspace,
  not_closed,
  cyclic_noncapable,
  n4_classification,
  dimension_sufficient,
};

const char* reason_name(Reason r);

struct Verdict {
  bool capable = false;
  Reason reason = Reason::closed_subspace;
  std::uint32_t n = 0;
  std::uint32_t p = 0;
  std::size_t dim_x = 0;
  std::size_t dim_x_closure = 0;
  ReductionTrace trace;
  std::optional<std::vector<Fp>> witness;
};

/// Full decision pipeline on a subspace of V(n): central cancellation loop,
/// block split, dimension shortcuts, then direct closure; the result is
/// cross-checked against a direct closure computation.
Verdict decide_subspace(const SpaceContext& ctx, const Subspace& x);

/// Group-facing verdict; n = 1 is handled as the (non-capable) cyclic case.
Verdict decide(const Presentation& pres);

enum class FourGenClass { capable, cyclic_nontrivial, extra_special_p5 };

const char* four_gen_class_name(FourGenClass c);

/// Trichotomy for up to four generators; throws for n > 4.
FourGenClass classify_4gen(const Presentation& pres);

/// Deterministic-field-order JSON rendering of a verdict.
nlohmann::ordered_json verdict_json(const Verdict& v);

}  // namespace capgrp
