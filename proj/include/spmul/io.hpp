#pragma once

// Line-oriented polynomial files.
//
//   # comment
//   ring int                  | field <q> <s>
//   modulus <c0> ... <cs>     (extension fields, only when not the default)
//   vars <n>
//   term <c> <e1> ... <en>
//
// Extension-field coefficients are s comma-separated residues, lowest power
// first. Terms may appear in any order; duplicates and zeros are rejected.

#include <algorithm>
#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spmul/arith.hpp"
#include "spmul/bigint.hpp"
#include "spmul/error.hpp"
#include "spmul/multivar.hpp"
#include "spmul/poly.hpp"
#include "spmul/ring.hpp"

namespace spmul {

using AnyPoly = std::variant<SparsePoly, MultiPoly>;

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline std::vector<std::string> split_on(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

/// Strict decimal: optional '-' (when allowed), then digits.
inline Int parse_decimal(const std::string& tok, bool allow_negative, std::size_t line) {
  std::size_t i = 0;
  if (allow_negative && !tok.empty() && tok[0] == '-') i = 1;
  if (i == tok.size()) throw ParseError(line, "expected an integer, got '" + tok + "'");
  for (std::size_t j = i; j < tok.size(); ++j)
    if (tok[j] < '0' || tok[j] > '9') throw ParseError(line, "expected an integer, got '" + tok + "'");
  return Int(tok, 10);
}

inline Elem parse_coeff(const std::string& tok, const RingSpec& ring, std::size_t line) {
  if (ring.is_integers()) return Elem(parse_decimal(tok, true, line));
  const auto parts = split_on(tok, ',');
  if (parts.size() != ring.s())
    throw ParseError(line, "coefficient needs " + std::to_string(ring.s()) + " residues");
  std::vector<Int> residues;
  residues.reserve(parts.size());
  for (const auto& part : parts) {
    Int r = parse_decimal(part, false, line);
    if (r >= ring.q()) throw ParseError(line, "coefficient " + part + " out of range [0, q)");
    residues.push_back(std::move(r));
  }
  return Elem(std::move(residues));
}

inline RingSpec build_ring(const Int& q, unsigned s, const std::optional<std::vector<Int>>& modulus,
                           std::size_t line) {
  try {
    if (s == 1) {
      if (modulus) throw ParseError(line, "modulus given for a prime field");
      return RingSpec::prime_field(q);
    }
    return RingSpec::ext_field(q, modulus ? *modulus : canonical_irreducible(q, s));
  } catch (const DomainError& e) {
    throw ParseError(line, e.what());
  }
}

}  // namespace detail

/// Parses a polynomial file. One variable gives a SparsePoly.
inline AnyPoly parse_poly(std::istream& in) {
  std::optional<RingSpec> ring;
  Int q;
  unsigned s = 0;
  std::size_t field_line = 0;
  std::optional<std::vector<Int>> modulus;
  std::optional<std::size_t> nvars;
  std::vector<MultiTerm> terms;
  std::vector<std::size_t> term_lines;

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const auto tok = detail::split_ws(raw);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    if (key == "ring") {
      if (ring || s != 0) throw ParseError(lineno, "duplicate ring line");
      if (tok.size() != 2 || tok[1] != "int") throw ParseError(lineno, "expected 'ring int'");
      ring = RingSpec::integers();
    } else if (key == "field") {
      if (ring || s != 0) throw ParseError(lineno, "duplicate ring line");
      if (tok.size() != 3) throw ParseError(lineno, "expected 'field <q> <s>'");
      q = detail::parse_decimal(tok[1], false, lineno);
      const Int sv = detail::parse_decimal(tok[2], false, lineno);
      if (sv < 1 || sv > 4096) throw ParseError(lineno, "extension degree out of range");
      s = static_cast<unsigned>(sv.get_ui());
      field_line = lineno;
    } else if (key == "modulus") {
      if (s == 0) throw ParseError(lineno, "modulus must follow a field line");
      if (modulus || nvars) throw ParseError(lineno, "misplaced modulus line");
      std::vector<Int> m;
      for (std::size_t i = 1; i < tok.size(); ++i) m.push_back(detail::parse_decimal(tok[i], false, lineno));
      if (m.size() != s + 1) throw ParseError(lineno, "modulus needs s+1 coefficients");
      modulus = std::move(m);
    } else if (key == "vars") {
      if (!ring && s == 0) throw ParseError(lineno, "vars before ring line");
      if (nvars) throw ParseError(lineno, "duplicate vars line");
      if (tok.size() != 2) throw ParseError(lineno, "expected 'vars <n>'");
      const Int n = detail::parse_decimal(tok[1], false, lineno);
      if (n < 1 || n > 1024) throw ParseError(lineno, "variable count out of range");
      nvars = n.get_ui();
      if (!ring) ring = detail::build_ring(q, s, modulus, field_line);
    } else if (key == "term") {
      if (!nvars) throw ParseError(lineno, "term before vars line");
      if (tok.size() != 2 + *nvars) throw ParseError(lineno, "term needs a coefficient and " +
                                                               std::to_string(*nvars) + " exponents");
      MultiTerm t{{}, detail::parse_coeff(tok[1], *ring, lineno)};
      if (ring->is_zero(t.coeff)) throw ParseError(lineno, "zero coefficient");
      for (std::size_t i = 0; i < *nvars; ++i) t.exps.push_back(detail::parse_decimal(tok[2 + i], false, lineno));
      terms.push_back(std::move(t));
      term_lines.push_back(lineno);
    } else {
      throw ParseError(lineno, "unknown record '" + key + "'");
    }
  }
  if (!nvars) throw ParseError(lineno, "missing ring or vars line");

  std::vector<std::size_t> order(terms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return terms[a].exps < terms[b].exps; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (terms[order[i]].exps == terms[order[i - 1]].exps)
      throw ParseError(std::max(term_lines[order[i]], term_lines[order[i - 1]]), "duplicate exponent");

  MultiPoly poly = canonicalize(std::move(terms), *ring, *nvars);
  if (*nvars == 1) return to_univariate(poly);
  return poly;
}

inline AnyPoly parse_poly(const std::string& text) {
  std::istringstream in(text);
  return parse_poly(in);
}

/// Any polynomial as a MultiPoly (a SparsePoly becomes one variable).
inline MultiPoly as_multi(const AnyPoly& p) {
  if (const auto* u = std::get_if<SparsePoly>(&p)) return to_multi(*u);
  return std::get<MultiPoly>(p);
}

namespace detail {

inline void format_header(std::ostream& out, const RingSpec& ring, std::size_t nvars) {
  if (ring.is_integers()) {
    out << "ring int\n";
  } else {
    out << "field " << ring.q().get_str() << ' ' << ring.s() << '\n';
    if (ring.s() > 1 && ring.modulus() != canonical_irreducible(ring.q(), ring.s())) {
      out << "modulus";
      for (const auto& c : ring.modulus()) out << ' ' << c.get_str();
      out << '\n';
    }
  }
  out << "vars " << nvars << '\n';
}

inline void format_coeff(std::ostream& out, const Elem& c) {
  for (std::size_t j = 0; j < c.residues.size(); ++j) {
    if (j) out << ',';
    out << c.residues[j].get_str();
  }
}

}  // namespace detail

inline std::string format_poly(const MultiPoly& f) {
  std::ostringstream out;
  detail::format_header(out, f.ring(), f.nvars());
  for (const auto& t : f.terms()) {
    out << "term ";
    detail::format_coeff(out, t.coeff);
    for (const auto& e : t.exps) out << ' ' << e.get_str();
    out << '\n';
  }
  return out.str();
}

inline std::string format_poly(const SparsePoly& f) {
  std::ostringstream out;
  detail::format_header(out, f.ring(), 1);
  for (const auto& t : f.terms()) {
    out << "term ";
    detail::format_coeff(out, t.coeff);
    out << ' ' << t.exp.get_str() << '\n';
  }
  return out.str();
}

inline std::string format_poly(const AnyPoly& p) {
  return std::visit([](const auto& x) { return format_poly(x); }, p);
}

}  // namespace spmul
