// dpoisson: command-line driver.
//
//   dpoisson validate FILE
//   dpoisson axioms   FILE [--max-weight 6] [--max-jacobi-weight 5]
//   dpoisson bracket  FILE LHS RHS [--mode double|natural|homology] [--reduced]
//   dpoisson homology FILE [--target natural|cyclic|rep] [--dim D] [--max-weight W] [--max-degree K]
//   dpoisson traces   FILE [--dim D]... [--max-weight 4] [--samples N] [--seed S]
//
// Exit status: 0 all checks pass, 1 a check failed, 2 bad input.

#include "dpoisson.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace dpoisson;

namespace {

struct Table {
  bool tsv = false;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void print(std::ostream &os) const {
    if (tsv) {
      auto line = [&](const std::vector<std::string> &r) {
        for (std::size_t i = 0; i < r.size(); ++i)
          os << (i ? "\t" : "") << r[i];
        os << "\n";
      };
      line(header);
      for (const auto &r : rows)
        line(r);
      return;
    }
    // last column is left unpadded (free text)
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t i = 0; i + 1 < header.size(); ++i) {
      width[i] = header[i].size();
      for (const auto &r : rows)
        width[i] = std::max(width[i], r[i].size());
    }
    auto line = [&](const std::vector<std::string> &r) {
      std::string s;
      for (std::size_t i = 0; i < r.size(); ++i) {
        s += r[i];
        if (i + 1 < r.size())
          s += std::string(width[i] - r[i].size() + 2, ' ');
      }
      while (!s.empty() && s.back() == ' ')
        s.pop_back();
      os << s << "\n";
    };
    line(header);
    for (const auto &r : rows)
      line(r);
  }
};

struct Options {
  std::string file;
  std::string format = "text";
  int max_weight = 0;
  int max_degree = -1;
  int max_jacobi_weight = 0;
  std::vector<int> dims;
  bool reduced = false;
  unsigned seed = 1;
  std::size_t samples = 0;
  std::string mode = "double";
  std::string target = "natural";
  std::string lhs, rhs;
};

int cmd_validate(const Options &o) {
  const InputFile in = load_input(o.file);
  const ValidationReport rep = validate(in.coalgebra);
  Table t{o.format == "tsv", {"check", "tier", "result", "detail"}, {}};
  for (const auto &c : rep.checks)
    t.rows.push_back({c.name, c.required ? "required" : "advisory", c.passed ? "pass" : "FAIL", c.detail});
  std::cout << "# " << (in.name.empty() ? o.file : in.name) << "\n";
  t.print(std::cout);
  if (rep.required_pass() && !rep.all_pass())
    std::cout << "note: required checks pass; the strict (per-slot) cyclicity check fails\n";
  return rep.required_pass() ? 0 : 1;
}

int cmd_axioms(const Options &o) {
  const InputFile in = load_input(o.file);
  const CobarAlgebra alg = cobar_of(in);
  const int w = o.max_weight > 0 ? o.max_weight : 6;
  const int jw = o.max_jacobi_weight > 0 ? o.max_jacobi_weight : std::min(w, 5);
  const AxiomReport rep = axiom_suite(alg, w, jw);
  Table t{o.format == "tsv", {"family", "checked", "failed", "result", "first_failure"}, {}};
  for (const auto &f : rep.families)
    t.rows.push_back({f.name, std::to_string(f.checked), std::to_string(f.failed), f.passed() ? "pass" : "FAIL",
                      f.first_failure});
  std::cout << "# " << in.name << " pairs up to weight " << w << ", jacobi triples up to weight " << jw
            << ", bracket degree " << alg.bracket_degree << ", mutation " << mutation_name(alg.mutation) << "\n";
  t.print(std::cout);
  return rep.passed() ? 0 : 1;
}

bool is_kxy(const Alphabet &a) {
  try {
    kxy_letters(a);
    return true;
  } catch (const AlgebraError &) {
    return false;
  }
}

int cmd_bracket(const Options &o) {
  const InputFile in = load_input(o.file);
  const CobarAlgebra alg = cobar_of(in);
  const AlphabetPtr ap = alg.algebra.alphabet();
  const Element a = parse_expression(ap, o.lhs), b = parse_expression(ap, o.rhs);
  if (o.mode == "double") {
    std::cout << double_bracket(alg, a, b).to_string() << "\n";
    return 0;
  }
  if (o.mode == "natural") {
    std::cout << natural_bracket(alg, project_natural(a, o.reduced), project_natural(b, o.reduced)).to_string()
              << "\n";
    return 0;
  }
  // homology: classes in the reduced quotient
  const NaturalElement na = project_natural(a, true), nb = project_natural(b, true);
  const NaturalElement r = homology_bracket(alg, na, nb);
  const bool boundary = r.is_zero() || is_natural_boundary(alg.algebra, r);
  std::cout << "cycle: " << r.to_string() << "\n";
  std::cout << "class: " << (boundary ? "0" : "nonzero") << "\n";
  if (is_kxy(*ap) && !r.is_zero()) {
    const int deg = alg.alphabet().degree(r.terms().begin()->first);
    if (deg == 0)
      std::cout << "polynomial: " << poly_to_string(drop_constant(abelianize(r))) << "\n";
    else if (deg == 1)
      std::cout << "1-form: (" << poly_to_string(polynomial_to_dx_form(one_form_polynomial(r))) << ")*dx\n";
  }
  return 0;
}

std::pair<int, int> degree_bounds(const CobarAlgebra &alg, int max_weight, int max_degree) {
  auto [lo, hi] = degree_range(alg.alphabet(), max_weight);
  if (max_degree >= 0)
    hi = std::min(hi, max_degree);
  return {lo, hi};
}

int cmd_homology(const Options &o) {
  const InputFile in = load_input(o.file);
  const CobarAlgebra alg = cobar_of(in);
  const int w = o.max_weight > 0 ? o.max_weight : 6;
  Table t{o.format == "tsv", {}, {}};
  bool ok = true;
  if (o.target == "natural") {
    t.header = {"degree", "weight", "dim", "representatives"};
    const auto [lo, hi] = degree_bounds(alg, w, o.max_degree);
    for (int wt = 1; wt <= w; ++wt)
      for (int d = lo; d <= hi; ++d) {
        const NaturalHomology h = natural_slice_homology(alg.algebra, d, wt, o.reduced);
        std::string reps;
        for (const auto &r : homology_representatives(alg.algebra, h))
          reps += (reps.empty() ? "" : "; ") + r.to_string();
        t.rows.push_back({std::to_string(d), std::to_string(wt), std::to_string(h.dimension()), reps});
      }
  } else if (o.target == "cyclic") {
    t.header = {"degree", "weight", "cyclic_dim", "natural_dim", "match"};
    const auto [lo, hi] = degree_bounds(alg, w, o.max_degree);
    for (const SliceComparison &c : compare_with_cobar(alg, w, lo, hi)) {
      ok = ok && c.ok();
      t.rows.push_back({std::to_string(c.degree), std::to_string(c.weight), std::to_string(c.cyclic_homology),
                        std::to_string(c.natural_homology), c.ok() ? "yes" : "NO"});
    }
  } else if (o.target == "rep") {
    const int d = o.dims.empty() ? 1 : o.dims.front();
    const RepAlgebra ra(alg, d);
    t.header = {"degree", "weight", "dim", "representatives"};
    const int hi = o.max_degree >= 0 ? o.max_degree : 0;
    for (int wt = 1; wt <= w; ++wt)
      for (int deg = 0; deg <= hi; ++deg) {
        const RepHomology h = rep_homology_slice(ra, deg, wt);
        std::string reps;
        if (h.dimension() <= 12)
          for (const auto &v : h.slice.representatives) {
            CommElement e(ra.alphabet());
            for (const auto &[i, c] : v)
              e.add(h.basis[i], c);
            reps += (reps.empty() ? "" : "; ") + e.to_string();
          }
        else
          reps = "(" + std::to_string(h.dimension()) + " classes)";
        t.rows.push_back({std::to_string(deg), std::to_string(wt), std::to_string(h.dimension()), reps});
      }
  } else {
    throw AlgebraError(ErrorKind::Usage, "unknown target '" + o.target + "'");
  }
  t.print(std::cout);
  return ok ? 0 : 1;
}

int cmd_traces(const Options &o) {
  const InputFile in = load_input(o.file);
  CobarAlgebra alg = cobar_of(in);
  const int w = o.max_weight > 0 ? o.max_weight : 4;
  const std::vector<int> dims = o.dims.empty() ? std::vector<int>{1, 2} : o.dims;
  const Alphabet &a = alg.alphabet();
  std::vector<Word> words;
  const auto [lo, hi] = degree_range(a, w);
  for (int wt = 1; wt <= w; ++wt)
    for (int d = lo; d <= hi; ++d)
      for (Word &x : natural_slice_basis(a, d, wt, false))
        words.push_back(std::move(x));
  Table t{o.format == "tsv", {"dim", "pairs", "failed", "result", "first_failure"}, {}};
  bool ok = true;
  for (int d : dims) {
    RepAlgebra ra(alg, d);
    ra.mutation = in.rep_mutation;
    std::size_t failed = 0, pairs = 0;
    std::string first;
    for (const Word &u : words)
      for (const Word &v : words) {
        ++pairs;
        const RepCheck c = check_trace_poisson(ra, Element(alg.algebra.alphabet(), u), Element(alg.algebra.alphabet(), v));
        if (!c.passed && failed++ == 0)
          first = c.detail;
      }
    ok = ok && failed == 0;
    t.rows.push_back({std::to_string(d), std::to_string(pairs), std::to_string(failed), failed ? "FAIL" : "pass", first});
    if (o.samples > 0) {
      const RepAxiomReport r = check_rep_poisson_axioms(ra, o.samples, o.seed);
      ok = ok && r.passed();
      const std::size_t bad =
          r.antisymmetry_failures + r.leibniz_failures + r.jacobi_failures + r.d_trace_failures;
      t.rows.push_back({std::to_string(d), std::to_string(r.samples) + " samples", std::to_string(bad),
                        r.passed() ? "pass" : "FAIL",
                        "antisymmetry " + std::to_string(r.antisymmetry_failures) + ", leibniz " +
                            std::to_string(r.leibniz_failures) + ", jacobi " + std::to_string(r.jacobi_failures) +
                            ", d on traces " + std::to_string(r.d_trace_failures) + ", d on entries " +
                            std::to_string(r.d_entry_failures) +
                            (r.first_failure.empty() ? "" : "; first: " + r.first_failure)});
    }
  }
  std::cout << "# " << in.name << " words up to weight " << w << ", rep mutation "
            << rep_mutation_name(in.rep_mutation) << "\n";
  t.print(std::cout);
  return ok ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Double Poisson brackets on cobar constructions: checks and homology tables"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App *s) {
    s->add_option("file", o.file, "coalgebra or algebra file")->required();
    s->add_option("--format", o.format, "text or tsv")->check(CLI::IsMember({"text", "tsv"}));
  };
  auto *validate_cmd = app.add_subcommand("validate", "check the cyclic coalgebra axioms");
  common(validate_cmd);
  auto *axioms_cmd = app.add_subcommand("axioms", "exhaustive double Poisson axiom table");
  common(axioms_cmd);
  axioms_cmd->add_option("--max-weight", o.max_weight, "pair weight bound (default 6)")->check(CLI::PositiveNumber);
  axioms_cmd->add_option("--max-jacobi-weight", o.max_jacobi_weight, "triple weight bound (default 5)")
      ->check(CLI::PositiveNumber);
  auto *bracket_cmd = app.add_subcommand("bracket", "evaluate a bracket");
  common(bracket_cmd);
  bracket_cmd->add_option("lhs", o.lhs)->required();
  bracket_cmd->add_option("rhs", o.rhs)->required();
  bracket_cmd->add_option("--mode", o.mode)->check(CLI::IsMember({"double", "natural", "homology"}));
  bracket_cmd->add_flag("--reduced", o.reduced, "natural mode: kill the unit");
  auto *homology_cmd = app.add_subcommand("homology", "slice homology tables");
  common(homology_cmd);
  homology_cmd->add_option("--target", o.target)->check(CLI::IsMember({"natural", "cyclic", "rep"}));
  homology_cmd->add_option("--max-weight", o.max_weight)->check(CLI::PositiveNumber);
  homology_cmd->add_option("--max-degree", o.max_degree)->check(CLI::NonNegativeNumber);
  homology_cmd->add_option("--dim", o.dims, "representation dimension")->check(CLI::PositiveNumber);
  homology_cmd->add_flag("--reduced", o.reduced, "natural target: kill the unit");
  auto *traces_cmd = app.add_subcommand("traces", "trace map versus representation bracket");
  common(traces_cmd);
  traces_cmd->add_option("--dim", o.dims, "representation dimensions (repeatable)")->check(CLI::PositiveNumber);
  traces_cmd->add_option("--max-weight", o.max_weight)->check(CLI::PositiveNumber);
  traces_cmd->add_option("--samples", o.samples, "also sample the Poisson axioms");
  traces_cmd->add_option("--seed", o.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd)
      return cmd_validate(o);
    if (*axioms_cmd)
      return cmd_axioms(o);
    if (*bracket_cmd)
      return cmd_bracket(o);
    if (*homology_cmd)
      return cmd_homology(o);
    return cmd_traces(o);
  } catch (const AlgebraError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
