#pragma once

// Text formats: sectioned coalgebra/algebra files and bracket operand
// expressions.
//
//   # comment
//   name: kxy-omega
//   kind: coalgebra            (or: algebra, dualized on load)
//   cyclic_degree: -2
//   mutation: flip_right_terms (optional; or drop_transpose)
//
//   [basis]        name degree weight
//   [coproduct]    element left right coeff      (coalgebra)
//   [product]      left right result coeff       (algebra)
//   [differential] element target coeff          (d(element) contains coeff*target)
//   [pairing]      u v coeff
//   [cobar]        basis_name generator_name     (optional renaming)

#include "dpoisson/cobar.hpp"
#include "dpoisson/coalgebra.hpp"
#include "dpoisson/rep.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace dpoisson {

struct InputFile {
  std::string name;
  std::string kind = "coalgebra";
  CyclicCoalgebra coalgebra;
  std::optional<CyclicAlgebra> algebra; // set when kind == algebra
  std::vector<std::string> cobar_names;
  BracketMutation bracket_mutation = BracketMutation::none;
  RepMutation rep_mutation = RepMutation::none;
};

namespace detail {

[[noreturn]] inline void parse_error(const std::string &source, std::size_t line, std::size_t col,
                                     const std::string &msg) {
  throw AlgebraError(ErrorKind::Parse,
                     source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

struct Token {
  std::string text;
  std::size_t col = 0; // 1-based
};

inline std::vector<Token> split_fields(const std::string &line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i >= line.size())
      break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

} // namespace detail

inline InputFile parse_input(std::istream &in, const std::string &source = "<input>") {
  using detail::parse_error;
  InputFile f;
  std::optional<int> cyclic_degree;
  std::string section;
  std::vector<Generator> basis;
  struct Row {
    std::vector<detail::Token> fields;
    std::size_t line;
  };
  std::map<std::string, std::vector<Row>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos)
      line.erase(h);
    const std::string t = detail::trim(line);
    if (t.empty())
      continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        parse_error(source, lineno, 1, "unterminated section header");
      section = t.substr(1, t.size() - 2);
      static const std::vector<std::string> known{"basis", "coproduct", "product", "differential", "pairing", "cobar"};
      if (std::find(known.begin(), known.end(), section) == known.end())
        parse_error(source, lineno, 2, "unknown section '" + section + "'");
      continue;
    }
    if (section.empty()) {
      const auto colon = t.find(':');
      if (colon == std::string::npos)
        parse_error(source, lineno, 1, "expected 'key: value'");
      const std::string key = detail::trim(t.substr(0, colon));
      const std::string value = detail::trim(t.substr(colon + 1));
      const std::size_t vcol = line.find(value, line.find(':')) + 1;
      if (key == "name") {
        f.name = value;
      } else if (key == "kind") {
        if (value != "coalgebra" && value != "algebra")
          parse_error(source, lineno, vcol, "kind must be 'coalgebra' or 'algebra'");
        f.kind = value;
      } else if (key == "cyclic_degree") {
        try {
          std::size_t used = 0;
          cyclic_degree = std::stoi(value, &used);
          if (used != value.size())
            throw std::invalid_argument("trailing");
        } catch (const std::exception &) {
          parse_error(source, lineno, vcol, "cyclic_degree must be an integer");
        }
      } else if (key == "mutation") {
        if (value == "flip_right_terms")
          f.bracket_mutation = BracketMutation::flip_right_terms;
        else if (value == "drop_transpose")
          f.rep_mutation = RepMutation::drop_transpose;
        else if (value != "none")
          parse_error(source, lineno, vcol, "unknown mutation '" + value + "'");
      } else {
        parse_error(source, lineno, 1, "unknown key '" + key + "'");
      }
      continue;
    }
    rows[section].push_back({detail::split_fields(line), lineno});
  }
  if (!cyclic_degree)
    parse_error(source, lineno, 1, "missing 'cyclic_degree'");

  auto expect = [&](const Row &r, std::size_t n, const char *what) {
    if (r.fields.size() != n)
      parse_error(source, r.line, r.fields.empty() ? 1 : r.fields.front().col,
                  std::string("expected ") + what);
  };
  auto integer = [&](const Row &r, std::size_t k) {
    try {
      std::size_t used = 0;
      int v = std::stoi(r.fields[k].text, &used);
      if (used != r.fields[k].text.size())
        throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception &) {
      parse_error(source, r.line, r.fields[k].col, "expected an integer, got '" + r.fields[k].text + "'");
    }
  };
  auto rational = [&](const Row &r, std::size_t k) {
    try {
      return parse_rational(r.fields[k].text);
    } catch (const AlgebraError &e) {
      parse_error(source, r.line, r.fields[k].col, e.what());
    }
  };
  for (const Row &r : rows["basis"]) {
    expect(r, 3, "'name degree weight'");
    basis.push_back({r.fields[0].text, integer(r, 1), integer(r, 2)});
    for (std::size_t i = 0; i + 1 < basis.size(); ++i)
      if (basis[i].name == basis.back().name)
        parse_error(source, r.line, r.fields[0].col, "duplicate basis element '" + basis.back().name + "'");
  }
  auto index = [&](const Row &r, std::size_t k) {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].name == r.fields[k].text)
        return i;
    parse_error(source, r.line, r.fields[k].col, "unknown basis element '" + r.fields[k].text + "'");
  };

  if (f.kind == "algebra") {
    if (!rows["coproduct"].empty())
      parse_error(source, rows["coproduct"].front().line, 1, "[coproduct] in an algebra file");
    CyclicAlgebra a(basis, *cyclic_degree);
    for (const Row &r : rows["product"]) {
      expect(r, 4, "'left right result coeff'");
      const auto i = index(r, 0), j = index(r, 1), k = index(r, 2);
      a.set_product(i, j, la::axpy(a.product(i, j), rational(r, 3), la::unit(k)));
    }
    for (const Row &r : rows["differential"]) {
      expect(r, 3, "'element target coeff'");
      const auto i = index(r, 0);
      a.differential[i] = la::axpy(a.differential[i], rational(r, 2), la::unit(index(r, 1)));
    }
    for (const Row &r : rows["pairing"]) {
      expect(r, 3, "'u v coeff'");
      const Q q = rational(r, 2);
      if (q != 0)
        a.pairing[{index(r, 0), index(r, 1)}] = q;
    }
    f.algebra = a;
    try {
      f.coalgebra = dualize(a);
    } catch (const AlgebraError &e) {
      parse_error(source, lineno, 1, e.what());
    }
  } else {
    if (!rows["product"].empty())
      parse_error(source, rows["product"].front().line, 1, "[product] in a coalgebra file");
    CyclicCoalgebra c(basis, *cyclic_degree);
    for (const Row &r : rows["coproduct"]) {
      expect(r, 4, "'element left right coeff'");
      c.add_coproduct(index(r, 0), index(r, 1), index(r, 2), rational(r, 3));
    }
    for (const Row &r : rows["differential"]) {
      expect(r, 3, "'element target coeff'");
      c.add_differential(index(r, 0), index(r, 1), rational(r, 2));
    }
    for (const Row &r : rows["pairing"]) {
      expect(r, 3, "'u v coeff'");
      c.set_pair(index(r, 0), index(r, 1), c.pair(index(r, 0), index(r, 1)) + rational(r, 2));
    }
    f.coalgebra = c;
  }

  if (!rows["cobar"].empty()) {
    f.cobar_names.assign(basis.size(), "");
    for (const Row &r : rows["cobar"]) {
      expect(r, 2, "'basis_name generator_name'");
      f.cobar_names[index(r, 0)] = r.fields[1].text;
    }
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (f.cobar_names[i].empty())
        f.cobar_names[i] = basis[i].name;
  }
  return f;
}

inline InputFile load_input(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw AlgebraError(ErrorKind::Parse, "cannot open '" + path + "'");
  return parse_input(in, path);
}

/// Builds the cobar construction of a loaded file, applying its mutation.
inline CobarAlgebra cobar_of(const InputFile &f) {
  CobarAlgebra alg = cobar(f.coalgebra, f.cobar_names);
  alg.mutation = f.bracket_mutation;
  return alg;
}

/// Parses an expression such as "x^2*y - 3/2*y*t + (x+y)^2" into an element
/// of the free algebra on `alphabet` (noncommutative product).
class ExpressionParser {
public:
  ExpressionParser(AlphabetPtr a, std::string text) : a_(std::move(a)), s_(std::move(text)) {}

  Element parse() {
    Element e = expr();
    skip();
    if (pos_ != s_.size())
      fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string &msg) const {
    throw AlgebraError(ErrorKind::Parse, "column " + std::to_string(pos_ + 1) + " of '" + s_ + "': " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Element expr() {
    Element e = term();
    for (;;) {
      if (eat('+'))
        e += term();
      else if (eat('-'))
        e -= term();
      else
        return e;
    }
  }
  Element term() {
    Element e = unary();
    while (eat('*'))
      e = multiply(e, unary());
    return e;
  }
  Element unary() {
    if (eat('-'))
      return Q(-1) * unary();
    return power();
  }
  Element power() {
    Element base = primary();
    if (!eat('^'))
      return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected an exponent");
    const int n = std::stoi(s_.substr(start, pos_ - start));
    Element out = Element::unit(a_);
    for (int k = 0; k < n; ++k)
      out = multiply(out, base);
    return out;
  }
  Element primary() {
    skip();
    if (pos_ >= s_.size())
      fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Element e = expr();
      if (!eat(')'))
        fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
        ++pos_;
      return Element::unit(a_, parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      auto l = a_->find(name);
      if (!l) {
        pos_ = start;
        fail("unknown generator '" + name + "'");
      }
      return Element(a_, Word{*l});
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  AlphabetPtr a_;
  std::string s_;
  std::size_t pos_ = 0;
};

inline Element parse_expression(const AlphabetPtr &a, const std::string &text) {
  return ExpressionParser(a, text).parse();
}

} // namespace dpoisson
