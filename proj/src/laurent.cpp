#include "verlab/laurent.hpp"

#include <cctype>
#include <sstream>
#include <utility>

#include "verlab/errors.hpp"

namespace verlab {

LaurentPoly LaurentPoly::constant(Int c) {
  LaurentPoly f;
  f.add_term(0, c);
  return f;
}

LaurentPoly LaurentPoly::monomial(Int c, Weight e) {
  LaurentPoly f;
  f.add_term(e, c);
  return f;
}

Int LaurentPoly::coefficient(Weight e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

Weight LaurentPoly::top_exponent() const {
  if (terms_.empty()) {
    throw Error("EmptyPolynomial", "top_exponent of the zero polynomial");
  }
  return terms_.rbegin()->first;
}

void LaurentPoly::add_term(Weight e, const Int& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& g) {
  for (const auto& [e, c] : g.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& g) {
  for (const auto& [e, c] : g.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& g) const {
  LaurentPoly r;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : g.terms_) {
      r.add_term(e1 + e2, c1 * c2);
    }
  }
  return r;
}

LaurentPoly LaurentPoly::operator*(const Int& c) const {
  LaurentPoly r;
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

LaurentPoly LaurentPoly::operator-() const { return *this * Int(-1); }

bool LaurentPoly::is_symmetric() const {
  for (const auto& [e, c] : terms_) {
    if (coefficient(-e) != c) return false;
  }
  return true;
}

bool LaurentPoly::is_nonnegative() const {
  for (const auto& [e, c] : terms_) {
    (void)e;
    if (c < 0) return false;
  }
  return true;
}

LaurentPoly LaurentPoly::scale_exponents(Weight k) const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e * k, c);
  return r;
}

SymChar::SymChar(LaurentPoly p) : poly_(std::move(p)) {
  if (!poly_.is_symmetric()) {
    throw NonSymmetricInput("character is not invariant under v -> 1/v: " +
                            format_char(poly_));
  }
}

SymChar SymChar::unchecked(LaurentPoly p) {
  SymChar f;
  f.poly_ = std::move(p);
  return f;
}

SymChar SymChar::unit() { return unchecked(LaurentPoly::constant(1)); }

SymChar SymChar::operator*(const SymChar& g) const {
  return unchecked(poly_ * g.poly_);
}

SymChar SymChar::operator+(const SymChar& g) const {
  return unchecked(poly_ + g.poly_);
}

SymChar SymChar::operator-(const SymChar& g) const {
  return unchecked(poly_ - g.poly_);
}

SymChar SymChar::operator*(const Int& c) const { return unchecked(poly_ * c); }

SymChar weyl_char(Weight m) {
  if (m < 0) throw Error("NegativeWeight", "weyl_char requires m >= 0");
  LaurentPoly f;
  for (Weight k = 0; k <= m; ++k) f.add_term(m - 2 * k, 1);
  return SymChar::unchecked(std::move(f));
}

SymChar frobenius_substitute(const SymChar& f, std::int64_t p) {
  require_prime(p);
  return SymChar::unchecked(f.poly().scale_exponents(p));
}

WeightMap greedy_decompose(const LaurentPoly& f, const CharBasis& basis) {
  if (!f.is_symmetric()) {
    throw NonSymmetricInput("greedy_decompose requires a symmetric input");
  }
  WeightMap out;
  LaurentPoly rest = f;
  while (!rest.is_zero()) {
    const Weight e = rest.top_exponent();
    const Int c = rest.coefficient(e);
    const SymChar b = basis(e);
    if (b.is_zero() || b.top_weight() != e || b.poly().coefficient(e) != 1) {
      throw Error("BadBasis", "basis element at index " + std::to_string(e) +
                                  " is not unitriangular");
    }
    rest -= b.poly() * c;
    out[e] += c;
    if (out[e] == 0) out.erase(e);
    // the top exponent strictly decreases, so this terminates
  }
  return out;
}

WeightMap greedy_decompose(const SymChar& f, const CharBasis& basis) {
  return greedy_decompose(f.poly(), basis);
}

std::string format_char(const LaurentPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // descending exponent order
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    if (!first) os << '+';
    first = false;
    if (it->first == 0) {
      os << it->second.str();
    } else {
      os << it->second.str() << "*v^" << it->first;
    }
  }
  return os.str();
}

std::string format_char(const SymChar& f) { return format_char(f.poly()); }

namespace {

// one term: [coeff '*'] 'v' ['^' exp]  |  coeff
void parse_term(std::string_view term, LaurentPoly& out) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < term.size() && std::isspace(static_cast<unsigned char>(term[i]))) ++i;
  };
  auto read_int = [&](const char* what) -> Int {
    skip_ws();
    std::size_t start = i;
    if (i < term.size() && (term[i] == '-' || term[i] == '+')) ++i;
    std::size_t digits = 0;
    while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) {
      ++i;
      ++digits;
    }
    if (digits == 0) {
      throw ParseError(std::string("expected ") + what + " in term '" +
                       std::string(term) + "'");
    }
    return Int(std::string(term.substr(start, i - start)));
  };

  skip_ws();
  if (i >= term.size()) throw ParseError("empty character term");

  Int coeff = 1;
  if (term[i] != 'v') {
    coeff = read_int("coefficient");
    skip_ws();
    if (i == term.size()) {
      out.add_term(0, coeff);  // bare constant
      return;
    }
    if (term[i] != '*') {
      throw ParseError("expected '*' in term '" + std::string(term) + "'");
    }
    ++i;
    skip_ws();
  }
  if (i >= term.size() || term[i] != 'v') {
    throw ParseError("expected 'v' in term '" + std::string(term) + "'");
  }
  ++i;
  Weight exp = 1;
  skip_ws();
  if (i < term.size() && term[i] == '^') {
    ++i;
    Int e = read_int("exponent");
    if (e > 1000000000 || e < -1000000000) {
      throw ParseError("exponent out of range in term '" + std::string(term) + "'");
    }
    exp = e.convert_to<Weight>();
  }
  skip_ws();
  if (i != term.size()) {
    throw ParseError("trailing characters in term '" + std::string(term) + "'");
  }
  out.add_term(exp, coeff);
}

}  // namespace

LaurentPoly parse_char(std::string_view text) {
  LaurentPoly out;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '+') {
      parse_term(text.substr(begin, i - begin), out);
      begin = i + 1;
    }
  }
  return out;
}

}  // namespace verlab
