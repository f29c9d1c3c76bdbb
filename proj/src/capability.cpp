#include "capgrp/capability.hpp"

#include <regex>
#include <sstream>
#include <stdexcept>

namespace capgrp {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  static const std::regex term_re(R"(^(?:(\d+)\*)?\[(\d+),(\d+)\]$)");

  Presentation pres;
  bool have_p = false, have_n = false;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos) line = line.substr(0, pos);
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> toks = split_ws(line);

    if (toks[0] == "p") {
      if (toks.size() != 2) throw ParseError{lineno, "expected: p <odd prime>"};
      unsigned long val;
      try {
        val = std::stoul(toks[1]);
      } catch (...) {
        throw ParseError{lineno, "p is not a number: " + toks[1]};
      }
      if (!is_odd_prime(static_cast<std::uint32_t>(val)))
        throw ParseError{lineno, "p must be an odd prime, got " + toks[1]};
      pres.p = static_cast<std::uint32_t>(val);
      have_p = true;
    } else if (toks[0] == "n") {
      if (toks.size() != 2) throw ParseError{lineno, "expected: n <generators>"};
      unsigned long val;
      try {
        val = std::stoul(toks[1]);
      } catch (...) {
        throw ParseError{lineno, "n is not a number: " + toks[1]};
      }
      if (val < 1 || val > 64) throw ParseError{lineno, "n out of range (1..64)"};
      pres.n = static_cast<std::uint32_t>(val);
      have_n = true;
    } else if (toks[0] == "rel") {
      if (!have_p || !have_n)
        throw ParseError{lineno, "rel before p and n are declared"};
      if (toks.size() < 2) throw ParseError{lineno, "empty relator"};
      std::vector<RelTerm> rel;
      bool negate = false;
      std::size_t t = 1;
      if (toks[t] == "-") {
        negate = true;
        ++t;
      }
      bool expect_term = true;
      for (; t < toks.size(); ++t) {
        if (!expect_term) {
          if (toks[t] == "+")
            negate = false;
          else if (toks[t] == "-")
            negate = true;
          else
            throw ParseError{lineno, "expected + or - between terms, got " + toks[t]};
          expect_term = true;
          continue;
        }
        std::smatch m;
        if (!std::regex_match(toks[t], m, term_re))
          throw ParseError{lineno, "malformed term: " + toks[t]};
        Fp coef = 1;
        if (m[1].matched) {
          unsigned long c = std::stoul(m[1].str());
          if (c < 1 || c >= pres.p)
            throw ParseError{lineno, "coefficient must lie in [1, p): " + m[1].str()};
          coef = static_cast<Fp>(c);
        }
        int j = std::stoi(m[2].str());
        int i = std::stoi(m[3].str());
        if (j <= i) throw ParseError{lineno, "bracket must have j > i: " + toks[t]};
        if (i < 1 || j > static_cast<int>(pres.n))
          throw ParseError{lineno, "index out of range: " + toks[t]};
        if (negate) coef = fp_neg(pres.p, coef);
        rel.push_back(RelTerm{j, i, coef});
        expect_term = false;
      }
      if (expect_term) throw ParseError{lineno, "relator ends with a dangling sign"};
      pres.relators.push_back(std::move(rel));
    } else {
      throw ParseError{lineno, "unknown directive: " + toks[0]};
    }
  }
  if (!have_p) throw ParseError{lineno, "missing p line"};
  if (!have_n) throw ParseError{lineno, "missing n line"};
  return pres;
}

std::pair<SpaceContext, Subspace> to_subspace(const Presentation& pres) {
  if (pres.n < 2) throw std::invalid_argument("to_subspace: needs n >= 2");
  SpaceContext ctx = make_context(pres.p, pres.n);
  std::vector<std::vector<Fp>> rows;
  for (const auto& rel : pres.relators) {
    std::vector<Fp> v(ctx.dim_v, 0);
    for (const RelTerm& t : rel) {
      std::size_t pos = ctx.v_pos(t.j, t.i);
      v[pos] = fp_add(ctx.p, v[pos], t.coef);
    }
    rows.push_back(std::move(v));
  }
  Subspace x = Subspace::span(ctx.p, ctx.dim_v, rows);
  return {std::move(ctx), std::move(x)};
}

const char* reason_name(Reason r) {
  switch (r) {
    case Reason::closed_subspace: return "closed-subspace";
    case Reason::not_closed: return "not-closed";
    case Reason::cyclic_noncapable: return "cyclic-noncapable";
    case Reason::n4_classification: return "n4-classification";
    case Reason::dimension_sufficient: return "dimension-sufficient";
  }
  return "?";
}

const char* four_gen_class_name(FourGenClass c) {
  switch (c) {
    case FourGenClass::capable: return "capable";
    case FourGenClass::cyclic_nontrivial: return "cyclic-nontrivial";
    case FourGenClass::extra_special_p5: return "extra-special-p5";
  }
  return "?";
}

namespace {

std::string vec_to_string(const std::vector<Fp>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

std::string set_to_string(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

}  // namespace

Verdict decide_subspace(const SpaceContext& ctx, const Subspace& x) {
  Verdict v;
  v.n = ctx.n;
  v.p = ctx.p;
  v.dim_x = x.dim();
  v.trace.p = ctx.p;

  SpaceContext cur = ctx;
  Subspace curx = x;

  while (cur.n >= 3) {
    Subspace central = central_lines(cur, curx);
    if (central.dim() == 0) break;
    std::vector<Fp> u = central.basis_row(0);
    CancelResult res = cancel_central(cur, curx, u);
    v.trace.steps.push_back(TraceStep{
        StepKind::central_cancellation,
        "cancel u=" + vec_to_string(u) + ", n " + std::to_string(cur.n) + " -> " +
            std::to_string(cur.n - 1) + ", dim " + std::to_string(curx.dim()) + " -> " +
            std::to_string(res.x.dim()),
        u});
    cur = std::move(res.ctx);
    curx = std::move(res.x);
  }

  bool capable = false;
  if (auto split = block_split(cur, curx)) {
    bool left_closed = closure(phi_subfamily(cur, split->left), split->x_left).closed;
    bool right_closed = closure(phi_subfamily(cur, split->right), split->x_right).closed;
    capable = left_closed && right_closed;
    v.trace.steps.push_back(TraceStep{
        StepKind::block_split,
        "I=" + set_to_string(split->left) + " J=" + set_to_string(split->right) +
            ", X_I closed=" + (left_closed ? "yes" : "no") +
            ", X_J closed=" + (right_closed ? "yes" : "no"),
        {}});
    v.reason = capable ? Reason::closed_subspace : Reason::not_closed;
  } else {
    DimensionTests dt = dimension_tests(cur, curx);
    if (dt.sufficient_closed) {
      capable = true;
      v.reason = Reason::dimension_sufficient;
      v.trace.steps.push_back(TraceStep{
          StepKind::dimension_sufficient,
          "dim^2 = " + std::to_string(curx.dim() * curx.dim()) + " < 4n = " +
              std::to_string(4 * cur.n),
          {}});
    } else if (cur.n == 4 && curx.dim() == 5) {
      capable = n4_dim5_rule(cur, curx);
      v.reason = Reason::n4_classification;
      v.trace.steps.push_back(TraceStep{
          StepKind::n4_dim5_rule,
          std::string("central line ") + (capable ? "exists" : "does not exist"),
          {}});
    } else if (!dt.necessary_capable) {
      capable = false;
      v.reason = Reason::not_closed;
      v.trace.steps.push_back(
          TraceStep{StepKind::dimension_necessary_fail, "commutator rank too small", {}});
    } else {
      ClosureResult cl = closure(cur, curx);
      capable = cl.closed;
      v.reason = capable ? Reason::closed_subspace : Reason::not_closed;
      v.trace.steps.push_back(TraceStep{
          StepKind::direct_closure,
          "dim X = " + std::to_string(curx.dim()) + ", dim X* = " +
              std::to_string(cl.x_star.dim()) + ", dim X** = " +
              std::to_string(cl.x_closure.dim()),
          {}});
    }
  }

  v.capable = capable;
  v.trace.final_n = cur.n;
  v.trace.final_subspace = curx;

  // Independent closure of the original subspace; disagreement with the
  // shortcut pipeline is a hard internal error.
  if (ctx.dim_v <= 21) {
    ClosureResult direct = closure(ctx, x);
    if (direct.closed != capable)
      throw std::logic_error("decide_subspace: pipeline disagrees with direct closure");
    v.dim_x_closure = direct.x_closure.dim();
    v.witness = direct.witness;
  } else if (capable) {
    v.dim_x_closure = v.dim_x;
  } else {
    ClosureResult reduced = closure(cur, curx);
    v.dim_x_closure = x.dim() + (reduced.x_closure.dim() - curx.dim());
    v.witness = reduced.witness;  // expressed in the reduced coordinates
  }
  return v;
}

Verdict decide(const Presentation& pres) {
  if (pres.n == 1) {
    Verdict v;
    v.capable = false;
    v.reason = Reason::cyclic_noncapable;
    v.n = 1;
    v.p = pres.p;
    v.trace.final_n = 1;
    v.trace.p = pres.p;
    return v;
  }
  auto [ctx, x] = to_subspace(pres);
  return decide_subspace(ctx, x);
}

FourGenClass classify_4gen(const Presentation& pres) {
  if (pres.n > 4) throw std::invalid_argument("classify_4gen: needs n <= 4");
  if (pres.n == 1) return FourGenClass::cyclic_nontrivial;
  return decide(pres).capable ? FourGenClass::capable : FourGenClass::extra_special_p5;
}

nlohmann::ordered_json verdict_json(const Verdict& v) {
  nlohmann::ordered_json j;
  j["capable"] = v.capable;
  j["reason"] = reason_name(v.reason);
  j["n"] = v.n;
  j["p"] = v.p;
  j["dim_X"] = v.dim_x;
  j["dim_X_closure"] = v.dim_x_closure;
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const TraceStep& s : v.trace.steps) {
    nlohmann::ordered_json e;
    e["kind"] = step_kind_name(s.kind);
    e["detail"] = s.detail;
    steps.push_back(std::move(e));
  }
  j["trace"] = std::move(steps);
  if (v.witness)
    j["witness"] = *v.witness;
  else
    j["witness"] = nullptr;
  return j;
}

}  // namespace capgrp
