#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "capgrp/capability.hpp"
#include "capgrp/oracle.hpp"

namespace {

using namespace capgrp;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text << "\n";
  }
}

// Raw subspace format, shared with the oracle fixtures:
//   p <odd prime>
//   ambient <n>            (generator count; rows have C(n,2) entries)
//   <C(n,2) integers>      one basis row per line
// '#' starts a comment.
bool looks_like_raw(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line = line.substr(0, pos);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "ambient") return true;
    if (tok == "n" || tok == "rel") return false;
  }
  return false;
}

std::pair<SpaceContext, Subspace> parse_raw_subspace(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::uint32_t p = 0, n = 0;
  std::vector<std::vector<Fp>> rows;
  std::size_t lineno = 0;
  std::optional<SpaceContext> ctx;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line = line.substr(0, pos);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "p") {
      if (!(ls >> p) || !is_odd_prime(p))
        throw std::runtime_error("line " + std::to_string(lineno) + ": p must be an odd prime");
    } else if (tok == "ambient") {
      if (!(ls >> n) || n < 2)
        throw std::runtime_error("line " + std::to_string(lineno) + ": ambient needs n >= 2");
    } else {
      if (p == 0 || n == 0)
        throw std::runtime_error("line " + std::to_string(lineno) +
                                 ": rows must follow the p and ambient lines");
      if (!ctx) ctx = make_context(p, n);
      std::vector<Fp> row;
      ls.clear();
      ls.str(line);
      long long val;
      while (ls >> val)
        row.push_back(fp_norm(p, static_cast<std::int64_t>(val)));
      if (row.size() != ctx->dim_v)
        throw std::runtime_error("line " + std::to_string(lineno) + ": expected " +
                                 std::to_string(ctx->dim_v) + " coefficients");
      rows.push_back(std::move(row));
    }
  }
  if (p == 0 || n == 0) throw std::runtime_error("missing p or ambient line");
  if (!ctx) ctx = make_context(p, n);
  Subspace x = Subspace::span(p, ctx->dim_v, rows);
  return {std::move(*ctx), std::move(x)};
}

std::pair<SpaceContext, Subspace> load_subspace(const std::string& path) {
  std::string text = read_file(path);
  if (looks_like_raw(text)) return parse_raw_subspace(text);
  return to_subspace(parse_presentation(text));
}

int cmd_check(const std::string& path, bool json, const std::string& out_path) {
  Verdict v = decide(parse_presentation(read_file(path)));
  if (json) {
    emit(verdict_json(v).dump(2), out_path);
  } else {
    std::ostringstream out;
    out << (v.capable ? "capable" : "not capable") << " (" << reason_name(v.reason) << ")\n"
        << "n = " << v.n << ", p = " << v.p << ", dim X = " << v.dim_x
        << ", dim X** = " << v.dim_x_closure << "\n";
    for (const TraceStep& s : v.trace.steps)
      out << "  [" << step_kind_name(s.kind) << "] " << s.detail << "\n";
    std::string s = out.str();
    s.pop_back();
    emit(s, out_path);
  }
  return v.capable ? 0 : 1;
}

int cmd_classify4(const std::string& path, bool json, const std::string& out_path) {
  FourGenClass c = classify_4gen(parse_presentation(read_file(path)));
  if (json) {
    nlohmann::ordered_json j;
    j["class"] = four_gen_class_name(c);
    emit(j.dump(2), out_path);
  } else {
    emit(four_gen_class_name(c), out_path);
  }
  return 0;
}

int cmd_closure(const std::string& path, bool json, const std::string& out_path) {
  auto [ctx, x] = load_subspace(path);
  ClosureResult cl = closure(ctx, x);
  if (json) {
    nlohmann::ordered_json j;
    j["n"] = ctx.n;
    j["p"] = ctx.p;
    j["dim_X"] = x.dim();
    j["dim_X_star"] = cl.x_star.dim();
    j["dim_X_closure"] = cl.x_closure.dim();
    j["closed"] = cl.closed;
    if (cl.witness)
      j["witness"] = *cl.witness;
    else
      j["witness"] = nullptr;
    emit(j.dump(2), out_path);
  } else {
    std::ostringstream out;
    out << "n = " << ctx.n << ", p = " << ctx.p << "\n"
        << "dim X = " << x.dim() << ", dim X* = " << cl.x_star.dim()
        << ", dim X** = " << cl.x_closure.dim() << "\n"
        << (cl.closed ? "closed" : "not closed");
    if (cl.witness) {
      out << "\nwitness:";
      for (Fp c : *cl.witness) out << " " << c;
    }
    emit(out.str(), out_path);
  }
  return cl.closed ? 0 : 1;
}

int cmd_verify(const std::string& suite, std::uint32_t n, std::uint32_t p,
               const SuiteOptions& opts, bool json, const std::string& out_path) {
  SuiteReport rep = run_suite(suite, n, p, opts);
  if (json) {
    emit(rep.to_json().dump(2), out_path);
  } else {
    std::ostringstream out;
    out << rep.suite << " n=" << rep.n << " p=" << rep.p << ": "
        << (rep.passed() ? "pass" : "FAIL") << ", checked " << rep.checked
        << ", violations " << rep.violations_total;
    if (rep.seed) out << ", seed " << *rep.seed;
    out << ", " << rep.elapsed_ms << " ms";
    for (const Violation& v : rep.violations)
      out << "\n  violation: " << v.input << " expected " << v.expected << " got " << v.got;
    emit(out.str(), out_path);
  }
  return rep.passed() ? 0 : 1;
}

int cmd_enumerate(std::uint32_t p, std::size_t m, std::size_t k, std::uint64_t ceiling,
                  bool list, bool json, const std::string& out_path) {
  std::uint64_t expect = gaussian_binomial(m, k, p);
  if (expect > ceiling)
    throw std::runtime_error("enumeration of " + std::to_string(expect) +
                             " subspaces exceeds the ceiling; raise --ceiling");
  std::ostringstream rows;
  std::uint64_t count = enumerate_subspaces(p, m, k, [&](const Subspace& s) {
    if (list) {
      for (std::size_t r = 0; r < s.dim(); ++r) {
        for (std::size_t c = 0; c < m; ++c) rows << (c ? " " : "") << s.basis().at(r, c);
        rows << (r + 1 < s.dim() ? " ; " : "");
      }
      rows << "\n";
    }
    return true;
  });
  if (json) {
    nlohmann::ordered_json j;
    j["p"] = p;
    j["m"] = m;
    j["k"] = k;
    j["count"] = count;
    emit(j.dump(2), out_path);
  } else {
    std::string body = list ? rows.str() : "";
    emit(body + "count " + std::to_string(count), out_path);
  }
  return count == expect ? 0 : 1;
}

int cmd_dump_maps(std::uint32_t p, std::uint32_t n, const std::string& out_path) {
  SpaceContext ctx = make_context(p, n);
  std::ostringstream out;
  auto grid = [&](const std::string& name, const LinearMap& map,
                  auto row_label, auto col_label) {
    out << name << " : rows are codomain coordinates, columns are domain coordinates\n";
    for (std::size_t r = 0; r < map.mat.rows(); ++r) {
      out << "  " << row_label(r) << " |";
      for (std::size_t c = 0; c < map.mat.cols(); ++c) out << " " << map.mat.at(r, c);
      out << "\n";
    }
  };
  auto v_label = [&](std::size_t r) {
    auto [j, i] = ctx.v_index[r];
    return "v_" + std::to_string(j) + std::to_string(i);
  };
  auto w_label = [&](std::size_t r) {
    auto [j, i, k] = ctx.w_index[r];
    return "w_" + std::to_string(j) + std::to_string(i) + std::to_string(k);
  };
  auto x_label = [&](std::size_t r) { return "x_" + std::to_string(r + 1); };
  (void)x_label;
  for (std::uint32_t i = 1; i <= n; ++i)
    grid("psi_" + std::to_string(i), ctx.psi[i - 1], v_label, x_label);
  for (std::uint32_t k = 1; k <= n; ++k)
    grid("phi_" + std::to_string(k), ctx.phi[k - 1], w_label, v_label);
  std::string s = out.str();
  s.pop_back();
  emit(s, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capability of class-two exponent-p groups via subspace closure"};
  app.require_subcommand(1);

  bool json = false;
  std::string out_path;
  app.add_flag("--json", json, "emit JSON instead of text");
  app.add_option("--out", out_path, "write output to a file instead of stdout");

  std::string path;
  auto* check = app.add_subcommand("check", "decide capability of a presentation file");
  check->add_option("file", path, "presentation file")->required();

  auto* closure_cmd = app.add_subcommand("closure", "closure report for a presentation or raw subspace file");
  closure_cmd->add_option("file", path, "input file")->required();

  auto* classify = app.add_subcommand("classify4", "trichotomy for at most four generators");
  classify->add_option("file", path, "presentation file")->required();

  std::string suite;
  std::uint32_t n = 0, p = 3;
  SuiteOptions opts;
  std::optional<std::uint64_t> sample_opt;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name")->required();
  verify->add_option("--n", n, "generator count")->required();
  verify->add_option("--p", p, "odd prime");
  verify->add_option("--sample", sample_opt, "force sampling with this many cases");
  verify->add_option("--seed", opts.seed, "RNG seed for sampled suites");
  verify->add_option("--ceiling", opts.ceiling, "max exhaustive instances");

  std::size_t m = 0, k = 0;
  bool list = false;
  auto* enumerate = app.add_subcommand("enumerate", "enumerate Gr(k, F_p^m)");
  enumerate->add_option("--p", p, "odd prime");
  enumerate->add_option("--m", m, "ambient dimension (defaults to C(n,2) when --n given)");
  enumerate->add_option("--n", n, "generator count; ambient becomes C(n,2)");
  enumerate->add_option("--k", k, "subspace dimension")->required();
  enumerate->add_option("--ceiling", opts.ceiling, "max enumerated instances");
  enumerate->add_flag("--list", list, "print every subspace basis");

  auto* dump = app.add_subcommand("dump-maps", "print the psi/phi matrices");
  dump->add_option("--p", p, "odd prime");
  dump->add_option("--n", n, "generator count")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(path, json, out_path);
    if (*closure_cmd) return cmd_closure(path, json, out_path);
    if (*classify) return cmd_classify4(path, json, out_path);
    if (*verify) {
      opts.sample = sample_opt;
      return cmd_verify(suite, n, p, opts, json, out_path);
    }
    if (*enumerate) {
      if (m == 0) {
        if (n < 2) throw std::runtime_error("enumerate needs --m, or --n >= 2");
        m = static_cast<std::size_t>(n) * (n - 1) / 2;
      }
      require_odd_prime(p);
      return cmd_enumerate(p, m, k, opts.ceiling, list, json, out_path);
    }
    if (*dump) return cmd_dump_maps(p, n, out_path);
  } catch (const ParseError& e) {
    std::cerr << "error: line " << e.line << ": " << e.message << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
