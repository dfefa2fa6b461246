#include "w2n/expr.hpp"

#include <cctype>
#include <sstream>

namespace w2n {

bool operator==(const FieldExpr& a, const FieldExpr& b) {
  return a.k == b.k && a.gen == b.gen && a.n == b.n && a.m == b.m && a.label == b.label &&
         a.deriv == b.deriv && a.star == b.star && a.scalar == b.scalar && a.args == b.args;
}

namespace {

struct Parser {
  std::string s;
  size_t pos = 0;

  [[noreturn]] void err(const std::string& what) {
    fail(errc::parse, what + " at position " + std::to_string(pos) + " in '" + s + "'");
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool peek(char c) {
    skip();
    return pos < s.size() && s[pos] == c;
  }
  bool lookahead_word(const char* w) {
    skip();
    size_t n = std::strlen(w);
    return s.compare(pos, n, w) == 0;
  }
  std::string ident() {
    skip();
    size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    return s.substr(start, pos - start);
  }
  long integer() {
    skip();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) err("expected an integer");
    return std::stol(s.substr(start, pos - start));
  }

  // ---- scalar sub-grammar: rational functions in k --------------------
  // Attempted with backtracking: returns nullopt when the text under the
  // cursor is not a pure scalar.
  std::optional<RatK> try_scalar() {
    size_t save = pos;
    try {
      RatK v = scalar_sum(true);
      return v;
    } catch (const error&) {
      pos = save;
      return std::nullopt;
    }
  }
  RatK scalar_sum(bool strict) {
    RatK acc = scalar_term(strict);
    for (;;) {
      skip();
      if (eat('+'))
        acc += scalar_term(strict);
      else if (pos < s.size() && s[pos] == '-' ) {
        ++pos;
        acc -= scalar_term(strict);
      } else
        return acc;
    }
  }
  RatK scalar_term(bool strict) {
    RatK acc = scalar_pow(strict);
    for (;;) {
      skip();
      if (eat('*'))
        acc *= scalar_pow(strict);
      else if (eat('/'))
        acc /= scalar_pow(strict);
      else if (pos < s.size() && (s[pos] == 'k' || s[pos] == '(') && !lookahead_word("k_"))
        acc *= scalar_pow(strict);  // juxtaposition like "2k" or "3(k+1)"
      else
        return acc;
    }
  }
  RatK scalar_pow(bool strict) {
    RatK base = scalar_atom(strict);
    skip();
    if (eat('^')) {
      long e = integer();
      if (e < 0) {
        base = base.inverse();
        e = -e;
      }
      RatK r = RatK::one();
      for (long i = 0; i < e; ++i) r *= base;
      return r;
    }
    return base;
  }
  RatK scalar_atom(bool strict) {
    skip();
    if (pos >= s.size()) err("expected a scalar");
    if (s[pos] == '(') {
      ++pos;
      RatK v = scalar_sum(strict);
      if (!eat(')')) err("expected ')' in scalar");
      return v;
    }
    if (s[pos] == 'k') {
      ++pos;
      if (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) err("not a scalar");
      return RatK::k();
    }
    if (s[pos] == '-') {
      ++pos;
      return -scalar_atom(strict);
    }
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return RatK(BigRat(s.substr(start, pos - start)));
    }
    err("not a scalar");
  }

  // ---- field grammar ---------------------------------------------------
  FieldExpr expr() {
    FieldExpr first = term();
    skip();
    if (!peek('+') && !peek('-')) return first;
    FieldExpr sum;
    sum.k = FieldExpr::kind::sum;
    sum.args.push_back(std::move(first));
    while (pos < s.size()) {
      skip();
      if (eat('+')) {
        sum.args.push_back(term());
      } else if (peek('-')) {
        ++pos;
        FieldExpr t = term();
        FieldExpr neg;
        neg.k = FieldExpr::kind::scalar_mul;
        neg.scalar = RatK(-1);
        neg.args.push_back(std::move(t));
        sum.args.push_back(std::move(neg));
      } else {
        break;
      }
    }
    return sum;
  }

  FieldExpr term() {
    // optional scalar prefix, then one or more atoms (juxtaposition).
    std::optional<RatK> sc;
    skip();
    if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '(')) {
      sc = try_scalar();
    }
    std::vector<FieldExpr> factors;
    for (;;) {
      skip();
      if (pos >= s.size()) break;
      char c = s[pos];
      if (c == '+' || c == ')' || c == ',' || c == '-') break;
      factors.push_back(factor());
    }
    if (factors.empty()) {
      if (sc) err("a scalar must multiply a field expression");
      err("expected a field expression");
    }
    FieldExpr prod;
    if (factors.size() == 1) {
      prod = std::move(factors[0]);
    } else {
      prod.k = FieldExpr::kind::normal_product;
      prod.args = std::move(factors);
    }
    if (sc) {
      FieldExpr sm;
      sm.k = FieldExpr::kind::scalar_mul;
      sm.scalar = *sc;
      sm.args.push_back(std::move(prod));
      return sm;
    }
    return prod;
  }

  FieldExpr factor() {
    skip();
    if (s[pos] == '(') {
      ++pos;
      FieldExpr e = expr();
      if (!eat(')')) err("expected ')'");
      return e;
    }
    if (s.compare(pos, 2, "d^") == 0) {
      pos += 2;
      long order = integer();
      if (order < 0) err("derivative order must be nonnegative");
      if (!eat('(')) err("expected '(' after d^n");
      FieldExpr inner = expr();
      if (!eat(')')) err("expected ')' after derivative argument");
      FieldExpr d;
      d.k = FieldExpr::kind::derivative;
      d.deriv = static_cast<int>(order);
      d.args.push_back(std::move(inner));
      return d;
    }
    if (lookahead_word("prod(")) {
      pos += 5;
      FieldExpr a = expr();
      if (!eat(',')) err("expected ',' in prod");
      FieldExpr b = expr();
      if (!eat(')')) err("expected ')' after prod");
      FieldExpr p;
      p.k = FieldExpr::kind::normal_product;
      p.args.push_back(std::move(a));
      p.args.push_back(std::move(b));
      return p;
    }
    return atom();
  }

  FieldExpr atom() {
    skip();
    std::string name = ident();
    if (name.empty() && pos < s.size() && (s[pos] == 'Q' || s[pos] == 'A')) name = ident();
    if (name.empty()) err("expected a name");

    // current names: A<int>, A-<int>, Q, Q+, Q-, Y
    auto current = [&](const std::string& label) {
      FieldExpr c;
      c.k = FieldExpr::kind::current;
      c.label = label;
      return c;
    };
    if (name == "Y") return current("Y");
    if (name == "Q") {
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        char sign = s[pos++];
        return current(std::string("Q") + sign);
      }
      return current("Q");
    }
    if (name[0] == 'A' && name.size() >= 2 && std::isdigit(static_cast<unsigned char>(name[1])))
      return current(name);
    if (name == "A" && pos < s.size() && s[pos] == '-') {
      ++pos;
      long i = integer();
      return current("A-" + std::to_string(i));
    }

    auto ref_args = [&](FieldExpr& e) {
      if (!eat('(')) err("expected '(n,m)' after " + name);
      e.n = static_cast<int>(integer());
      if (!eat(',')) err("expected ','");
      e.m = static_cast<int>(integer());
      if (!eat(')')) err("expected ')'");
    };
    if (name == "V" || name == "Vstar") {
      FieldExpr v;
      v.k = FieldExpr::kind::vertex;
      v.star = name == "Vstar";
      ref_args(v);
      return v;
    }
    char gen = 0;
    if (name == "E" || name == "H" || name == "F" || name == "T" || name == "W")
      gen = name[0];
    else if (name == "Lambda")
      gen = 'L';
    else if (name == "Z")
      gen = 'Z';
    if (gen) {
      FieldExpr g;
      g.k = FieldExpr::kind::generator;
      g.gen = gen;
      ref_args(g);
      return g;
    }
    err("unknown name '" + name + "' (expected a generator, vertex or current)");
  }
};

void collect_nm(const FieldExpr& e, std::optional<std::pair<int, int>>& nm) {
  if (e.k == FieldExpr::kind::generator || e.k == FieldExpr::kind::vertex) {
    std::pair<int, int> here{e.n, e.m};
    if (nm && *nm != here)
      fail(errc::invalid_argument, "conflicting realizations in one expression");
    nm = here;
  }
  for (const auto& a : e.args) collect_nm(a, nm);
}

struct GenCache {
  const RootData& rd;
  std::optional<GeneratorSet> gens;
  std::optional<VertexField> w, lambda, z;

  const GeneratorSet& generators() {
    if (!gens) gens = generators_recursive(rd);
    return *gens;
  }
  const VertexField& w3() {
    if (!w) {
      if (rd.n() < 4) fail(errc::invalid_argument, "W requires n >= 4");
      w = w3_current(rd, generators());
    }
    return *w;
  }
  const VertexField& lam() {
    if (!lambda) {
      if (rd.n() != 4) fail(errc::invalid_argument, "Lambda is defined for n = 4");
      lambda = w4_lambda(rd, generators(), w3());
    }
    return *lambda;
  }
  const VertexField& zfield() {
    if (!z) {
      if (rd.n() != 4) fail(errc::invalid_argument, "Z is defined for n = 4");
      z = w4_z(rd, generators(), w3(), lam());
    }
    return *z;
  }
};

VertexField resolve(const FieldExpr& e, const RootData& rd, GenCache& cache) {
  switch (e.k) {
    case FieldExpr::kind::generator: {
      const GeneratorSet& g = cache.generators();
      switch (e.gen) {
        case 'E': return g.E;
        case 'H': return g.H;
        case 'F': return g.F;
        case 'T': return g.T;
        case 'W': return cache.w3();
        case 'L': return cache.lam();
        case 'Z': return cache.zfield();
      }
      fail(errc::internal, "unknown generator");
    }
    case FieldExpr::kind::current: {
      int idx = rd.index_of_name(e.label);
      if (idx < 0)
        fail(errc::invalid_argument,
             "current '" + e.label + "' does not exist in this realization");
      return field_current(rd, idx, e.deriv);
    }
    case FieldExpr::kind::vertex: {
      auto dm = distinguished_momenta(rd);
      if (e.star) {
        if (!dm.has_v_star) fail(errc::domain, "V* does not exist at m = 0");
        return field_exponential(rd, dm.v_star_nm);
      }
      if (!dm.has_v) fail(errc::domain, "V does not exist at m = n");
      return field_exponential(rd, dm.v_nm);
    }
    case FieldExpr::kind::normal_product: {
      // right-nested
      VertexField acc = resolve(e.args.back(), rd, cache);
      for (int i = static_cast<int>(e.args.size()) - 2; i >= 0; --i)
        acc = normal_product(resolve(e.args[i], rd, cache), acc, rd);
      return acc;
    }
    case FieldExpr::kind::derivative: {
      VertexField f = resolve(e.args[0], rd, cache);
      for (int i = 0; i < e.deriv; ++i) f = derivative(f, rd);
      return f;
    }
    case FieldExpr::kind::scalar_mul:
      return field_scale(e.scalar, resolve(e.args[0], rd, cache));
    case FieldExpr::kind::sum: {
      VertexField acc = resolve(e.args[0], rd, cache);
      for (size_t i = 1; i < e.args.size(); ++i)
        acc = field_add(acc, resolve(e.args[i], rd, cache));
      return acc;
    }
  }
  fail(errc::internal, "unhandled expression node");
}

} // namespace

FieldExpr parse_expression(const std::string& text) {
  Parser p{text};
  FieldExpr e = p.expr();
  p.skip();
  if (p.pos != text.size()) p.err("trailing input");
  return e;
}

std::string render_expression(const FieldExpr& e) {
  std::ostringstream os;
  switch (e.k) {
    case FieldExpr::kind::generator: {
      std::string name(1, e.gen);
      if (e.gen == 'L') name = "Lambda";
      os << name << "(" << e.n << "," << e.m << ")";
      break;
    }
    case FieldExpr::kind::current: os << e.label; break;
    case FieldExpr::kind::vertex:
      os << (e.star ? "Vstar" : "V") << "(" << e.n << "," << e.m << ")";
      break;
    case FieldExpr::kind::normal_product: {
      os << "prod(" << render_expression(e.args[0]) << ", ";
      if (e.args.size() == 2) {
        os << render_expression(e.args[1]);
      } else {
        FieldExpr rest = e;
        rest.args.erase(rest.args.begin());
        os << render_expression(rest);
      }
      os << ")";
      break;
    }
    case FieldExpr::kind::derivative:
      os << "d^" << e.deriv << "(" << render_expression(e.args[0]) << ")";
      break;
    case FieldExpr::kind::scalar_mul:
      os << "(" << e.scalar.str() << ") " << render_expression(e.args[0]);
      break;
    case FieldExpr::kind::sum: {
      for (size_t i = 0; i < e.args.size(); ++i) {
        if (i) os << " + ";
        os << render_expression(e.args[i]);
      }
      break;
    }
  }
  return os.str();
}

ResolvedField resolve_expression(const FieldExpr& e, std::optional<std::pair<int, int>> nm) {
  std::optional<std::pair<int, int>> found;
  collect_nm(e, found);
  if (nm && found && *nm != *found)
    fail(errc::invalid_argument, "expression realization conflicts with the requested one");
  std::optional<std::pair<int, int>> use = nm ? nm : found;
  if (!use) fail(errc::invalid_argument, "no realization: pass n and m or reference a generator");
  RootData rd = RootData::build(use->first, use->second);
  GenCache cache{rd, {}, {}, {}, {}};
  VertexField f = resolve(e, rd, cache);
  return {std::move(rd), std::move(f)};
}

} // namespace w2n
