#include "minspace/syntax.hpp"

#include "minspace/error.hpp"
#include "parse_detail.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

namespace minspace {

namespace {

const char* keyword_of(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::Constant: return "const";
    case SymbolKind::Function: return "fn";
    case SymbolKind::Relation: return "rel";
    case SymbolKind::Variable: return "var";
  }
  return "?";
}

} // namespace

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::vector<Family> families) : families_(std::move(families)) {
  std::set<std::string> names;
  bool has_constant = false;
  for (const Family& f : families_) {
    if (f.name.empty()) throw Error("bad-signature", "empty symbol name");
    if (!names.insert(f.name).second) throw Error("duplicate-symbol", "duplicate symbol name '" + f.name + "'");
    switch (f.kind) {
      case SymbolKind::Constant:
        if (f.arity != 0) throw Error("bad-arity", "constant '" + f.name + "' must have arity 0");
        break;
      case SymbolKind::Function:
      case SymbolKind::Relation:
        if (f.arity < 1)
          throw Error("bad-arity", "symbol '" + f.name + "' must have arity >= 1");
        break;
      case SymbolKind::Variable:
        throw Error("bad-signature", "variables cannot be declared in a signature");
    }
    if (f.indexed && f.size && *f.size == 0) throw Error("bad-signature", "family '" + f.name + "' is empty");
    if (!f.indexed && f.size && *f.size != 1) throw Error("bad-signature", "unindexed family '" + f.name + "' must be a single symbol");
    if (f.kind == SymbolKind::Constant) has_constant = true;
  }
  if (!has_constant) throw Error("no-constant", "signature must contain at least one constant symbol");

  std::vector<std::uint32_t> order(families_.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return families_[a].name < families_[b].name; });
  rank_.assign(families_.size(), 0);
  for (std::uint32_t r = 0; r < order.size(); ++r) rank_[order[r]] = r;
}

SymbolKind Signature::kind(SymbolRef s) const {
  if (s.is_variable()) return SymbolKind::Variable;
  return families_.at(s.family).kind;
}

int Signature::arity(SymbolRef s) const {
  if (s.is_variable()) return 0;
  return families_.at(s.family).arity;
}

std::string Signature::symbol_name(SymbolRef s) const {
  if (s.is_variable()) return "?" + std::to_string(s.index);
  const Family& f = families_.at(s.family);
  if (!f.indexed) return f.name;
  return f.name + "[" + std::to_string(s.index) + "]";
}

std::optional<std::uint32_t> Signature::family_index(std::string_view base) const {
  for (std::uint32_t i = 0; i < families_.size(); ++i)
    if (families_[i].name == base) return i;
  return std::nullopt;
}

std::optional<SymbolRef> Signature::lookup(std::string_view base, std::optional<std::uint64_t> index) const {
  const auto fam = family_index(base);
  if (!fam) return std::nullopt;
  const Family& f = families_[*fam];
  if (!f.indexed) {
    if (index) return std::nullopt;
    return SymbolRef{*fam, 0};
  }
  if (!index) return std::nullopt;
  if (f.size && *index >= *f.size) return std::nullopt;
  return SymbolRef{*fam, *index};
}

bool Signature::is_locally_finite() const {
  return std::all_of(families_.begin(), families_.end(), [](const Family& f) { return f.size.has_value() || !f.indexed; });
}

std::vector<SymbolRef> Signature::symbols(SymbolKind kind, const EnumerationOptions& opts) const {
  std::vector<std::uint32_t> fams;
  for (std::uint32_t i = 0; i < families_.size(); ++i)
    if (families_[i].kind == kind) fams.push_back(i);
  std::sort(fams.begin(), fams.end(), [&](std::uint32_t a, std::uint32_t b) { return rank_[a] < rank_[b]; });
  std::vector<SymbolRef> out;
  for (std::uint32_t fi : fams) {
    const Family& f = families_[fi];
    if (!f.indexed) {
      out.push_back({fi, 0});
      continue;
    }
    std::size_t count = 0;
    if (f.size) {
      count = *f.size;
    } else if (opts.index_cutoff) {
      count = *opts.index_cutoff;
    } else {
      throw Error("infinite-enumeration",
                  "family '" + f.name + "' is omega-indexed; an index cutoff is required");
    }
    for (std::size_t i = 0; i < count; ++i) out.push_back({fi, i});
  }
  return out;
}

std::strong_ordering Signature::compare(SymbolRef a, SymbolRef b) const {
  if (a.is_variable() || b.is_variable()) {
    if (a.is_variable() != b.is_variable()) return a.is_variable() ? std::strong_ordering::greater : std::strong_ordering::less;
    return a.index <=> b.index;
  }
  if (a.family != b.family) return rank_[a.family] <=> rank_[b.family];
  return a.index <=> b.index;
}

std::string Signature::to_string() const {
  std::ostringstream out;
  for (const Family& f : families_) {
    out << keyword_of(f.kind) << ' ' << f.name;
    if (f.kind != SymbolKind::Constant) out << '/' << f.arity;
    if (f.indexed) {
      if (f.size)
        out << '[' << *f.size << ']';
      else
        out << "[omega]";
    }
    out << ";\n";
  }
  return out.str();
}

bool operator==(const Signature& a, const Signature& b) {
  if (a.families_.size() != b.families_.size()) return false;
  for (std::size_t i = 0; i < a.families_.size(); ++i) {
    const Family& x = a.families_[i];
    const Family& y = b.families_[i];
    if (x.name != y.name || x.kind != y.kind || x.arity != y.arity || x.indexed != y.indexed || x.size != y.size)
      return false;
  }
  return true;
}

bool is_locally_finite(const Signature& sig) { return sig.is_locally_finite(); }

// ---------------------------------------------------------------------------
// Terms, atoms, sentences

Atom Atom::eq(Term lhs, Term rhs) {
  Atom a;
  a.kind = Kind::Eq;
  a.args.push_back(std::move(lhs));
  a.args.push_back(std::move(rhs));
  return a;
}

Atom Atom::rel(SymbolRef relation, std::vector<Term> args) {
  Atom a;
  a.kind = Kind::Rel;
  a.relation = relation;
  a.args = std::move(args);
  return a;
}

Sentence Sentence::atomic(Atom a) {
  Sentence s;
  s.kind = Kind::Atomic;
  s.atom = std::move(a);
  return s;
}

Sentence Sentence::negation(Sentence inner) {
  Sentence s;
  s.kind = Kind::Not;
  s.children.push_back(std::move(inner));
  return s;
}

Sentence Sentence::conjunction(Sentence a, Sentence b) {
  Sentence s;
  s.kind = Kind::And;
  s.children.push_back(std::move(a));
  s.children.push_back(std::move(b));
  return s;
}

Sentence Sentence::disjunction(Sentence a, Sentence b) {
  Sentence s;
  s.kind = Kind::Or;
  s.children.push_back(std::move(a));
  s.children.push_back(std::move(b));
  return s;
}

std::size_t length(const Term& t) {
  std::size_t n = 1;
  for (const Term& a : t.args) n += length(a);
  return n;
}

std::size_t length(const Atom& a) {
  std::size_t n = 1;
  for (const Term& t : a.args) n += length(t);
  return n;
}

Term constant(SymbolRef c) { return Term{c, {}}; }

Term apply(SymbolRef f, std::vector<Term> args) { return Term{f, std::move(args)}; }

std::strong_ordering compare_tokens(const Signature& sig, const Term& a, const Term& b) {
  if (auto c = sig.compare(a.head, b.head); c != 0) return c;
  for (std::size_t i = 0; i < a.args.size() && i < b.args.size(); ++i)
    if (auto c = compare_tokens(sig, a.args[i], b.args[i]); c != 0) return c;
  return a.args.size() <=> b.args.size();
}

std::strong_ordering compare_terms(const Signature& sig, const Term& a, const Term& b) {
  if (auto c = length(a) <=> length(b); c != 0) return c;
  return compare_tokens(sig, a, b);
}

std::strong_ordering compare_atoms(const Signature& sig, const Atom& a, const Atom& b) {
  if (auto c = length(a) <=> length(b); c != 0) return c;
  if (a.kind != b.kind) return a.kind == Atom::Kind::Eq ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.kind == Atom::Kind::Rel)
    if (auto c = sig.compare(a.relation, b.relation); c != 0) return c;
  for (std::size_t i = 0; i < a.args.size() && i < b.args.size(); ++i)
    if (auto c = compare_tokens(sig, a.args[i], b.args[i]); c != 0) return c;
  return a.args.size() <=> b.args.size();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_term(std::ostringstream& out, const Signature& sig, const Term& t, std::span<const std::string> vars) {
  if (t.head.is_variable()) {
    if (t.head.index < vars.size())
      out << vars[t.head.index];
    else
      out << sig.symbol_name(t.head);
    return;
  }
  out << sig.symbol_name(t.head);
  if (t.args.empty()) return;
  out << '(';
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out << ", ";
    print_term(out, sig, t.args[i], vars);
  }
  out << ')';
}

void print_atom(std::ostringstream& out, const Signature& sig, const Atom& a, std::span<const std::string> vars) {
  if (a.kind == Atom::Kind::Eq) {
    print_term(out, sig, a.args[0], vars);
    out << " = ";
    print_term(out, sig, a.args[1], vars);
    return;
  }
  out << sig.symbol_name(a.relation) << '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out << ", ";
    print_term(out, sig, a.args[i], vars);
  }
  out << ')';
}

void print_sentence(std::ostringstream& out, const Signature& sig, const Sentence& s,
                    std::span<const std::string> vars) {
  using K = Sentence::Kind;
  auto wrapped = [&](const Sentence& child, bool parens) {
    if (parens) out << '(';
    print_sentence(out, sig, child, vars);
    if (parens) out << ')';
  };
  switch (s.kind) {
    case K::Atomic:
      print_atom(out, sig, s.atom, vars);
      break;
    case K::Not: {
      const Sentence& c = s.children[0];
      const bool bare = c.kind == K::Not || (c.kind == K::Atomic && c.atom.kind == Atom::Kind::Rel);
      out << '!';
      wrapped(c, !bare);
      break;
    }
    case K::And:
      wrapped(s.children[0], s.children[0].kind == K::Or);
      out << " & ";
      wrapped(s.children[1], s.children[1].kind == K::Or || s.children[1].kind == K::And);
      break;
    case K::Or:
      wrapped(s.children[0], false);
      out << " | ";
      wrapped(s.children[1], s.children[1].kind == K::Or);
      break;
  }
}

} // namespace

std::string to_string(const Signature& sig, const Term& t, std::span<const std::string> variables) {
  std::ostringstream out;
  print_term(out, sig, t, variables);
  return out.str();
}

std::string to_string(const Signature& sig, const Atom& a, std::span<const std::string> variables) {
  std::ostringstream out;
  print_atom(out, sig, a, variables);
  return out.str();
}

std::string to_string(const Signature& sig, const Sentence& s, std::span<const std::string> variables) {
  std::ostringstream out;
  print_sentence(out, sig, s, variables);
  return out.str();
}

std::string to_string(const Signature& sig, const QuantifiedSentence& q) {
  std::ostringstream out;
  out << (q.quantifier == QuantifiedSentence::Quantifier::Forall ? "forall" : "exists");
  for (const std::string& v : q.variables) out << ' ' << v;
  out << ": ";
  print_sentence(out, sig, q.matrix, q.variables);
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

long long parse_integer(Lexer& lex) {
  const bool negative = lex.accept(Tok::Minus);
  const Token t = lex.expect(Tok::Number, "integer");
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc()) throw ParseError("integer out of range", t.line, t.column);
  return negative ? -value : value;
}

Family parse_family(Lexer& lex, const std::string& keyword) {
  Family f;
  if (keyword == "const") {
    f.kind = SymbolKind::Constant;
  } else if (keyword == "fn") {
    f.kind = SymbolKind::Function;
  } else if (keyword == "rel") {
    f.kind = SymbolKind::Relation;
  } else {
    lex.fail("unknown declaration '" + keyword + "'");
  }
  f.name = lex.expect(Tok::Ident, "symbol name").text;
  if (f.kind != SymbolKind::Constant) {
    lex.expect(Tok::Slash, "'/' and arity");
    const long long arity = parse_integer(lex);
    if (arity < 1 || arity > 64) lex.fail("arity must be between 1 and 64");
    f.arity = static_cast<int>(arity);
  }
  if (lex.accept(Tok::LBracket)) {
    f.indexed = true;
    if (lex.peek().kind == Tok::Ident && lex.peek().text == "omega") {
      lex.next();
      f.size = std::nullopt;
    } else {
      const long long n = parse_integer(lex);
      if (n < 1) lex.fail("family size must be positive");
      f.size = static_cast<std::size_t>(n);
    }
    lex.expect(Tok::RBracket, "']'");
  } else {
    f.size = 1;
  }
  return f;
}

namespace {

SymbolRef parse_symbol(Lexer& lex, const Signature& sig, std::span<const std::string> variables, Token& name) {
  name = lex.expect(Tok::Ident, "symbol");
  std::optional<std::uint64_t> index;
  if (lex.accept(Tok::LBracket)) {
    const long long i = parse_integer(lex);
    if (i < 0) lex.fail("symbol index must be nonnegative");
    index = static_cast<std::uint64_t>(i);
    lex.expect(Tok::RBracket, "']'");
  }
  if (!index) {
    for (std::size_t v = 0; v < variables.size(); ++v)
      if (variables[v] == name.text) return SymbolRef::variable(v);
  }
  const auto ref = sig.lookup(name.text, index);
  if (!ref) {
    std::string shown = name.text;
    if (index) shown += "[" + std::to_string(*index) + "]";
    throw Error("unknown-symbol", std::to_string(name.line) + ":" + std::to_string(name.column) +
                                      ": unknown symbol '" + shown + "'");
  }
  return *ref;
}

std::vector<Term> parse_args(Lexer& lex, const Signature& sig, std::span<const std::string> variables) {
  std::vector<Term> args;
  if (!lex.accept(Tok::LParen)) return args;
  args.push_back(parse_term(lex, sig, variables));
  while (lex.accept(Tok::Comma)) args.push_back(parse_term(lex, sig, variables));
  lex.expect(Tok::RParen, "')'");
  return args;
}

void check_arity(const Signature& sig, SymbolRef s, std::size_t got, const Token& at) {
  const auto want = static_cast<std::size_t>(sig.arity(s));
  if (want != got)
    throw Error("arity-mismatch", std::to_string(at.line) + ":" + std::to_string(at.column) + ": symbol '" +
                                      sig.symbol_name(s) + "' expects " + std::to_string(want) +
                                      " argument(s), got " + std::to_string(got));
}

Sentence parse_disjunction(Lexer& lex, const Signature& sig, std::span<const std::string> variables);

Sentence parse_primary(Lexer& lex, const Signature& sig, std::span<const std::string> variables) {
  if (lex.accept(Tok::LParen)) {
    Sentence inner = parse_disjunction(lex, sig, variables);
    lex.expect(Tok::RParen, "')'");
    return inner;
  }
  return Sentence::atomic(parse_atom(lex, sig, variables));
}

Sentence parse_unary(Lexer& lex, const Signature& sig, std::span<const std::string> variables) {
  if (lex.accept(Tok::Bang)) return Sentence::negation(parse_unary(lex, sig, variables));
  return parse_primary(lex, sig, variables);
}

Sentence parse_conjunction(Lexer& lex, const Signature& sig, std::span<const std::string> variables) {
  Sentence left = parse_unary(lex, sig, variables);
  while (lex.accept(Tok::Amp)) left = Sentence::conjunction(std::move(left), parse_unary(lex, sig, variables));
  return left;
}

Sentence parse_disjunction(Lexer& lex, const Signature& sig, std::span<const std::string> variables) {
  Sentence left = parse_conjunction(lex, sig, variables);
  while (lex.accept(Tok::Bar)) left = Sentence::disjunction(std::move(left), parse_conjunction(lex, sig, variables));
  return left;
}

} // namespace

Term parse_term(Lexer& lex, const Signature& sig, std::span<const std::string> variables) {
  Token name;
  const SymbolRef head = parse_symbol(lex, sig, variables, name);
  if (sig.kind(head) == SymbolKind::Relation)
    throw Error("sort-mismatch", std::to_string(name.line) + ":" + std::to_string(name.column) + ": relation '" +
                                     name.text + "' used as a term");
  std::vector<Term> args = parse_args(lex, sig, variables);
  check_arity(sig, head, args.size(), name);
  return Term{head, std::move(args)};
}

Atom parse_atom(Lexer& lex, const Signature& sig, std::span<const std::string> variables) {
  if (lex.peek().kind != Tok::Ident) lex.fail("expected atomic sentence" + lex.describe());
  // A relation symbol starts a relational atom; anything else is the left
  // side of an equation.
  const Token first = lex.peek();
  bool is_variable = false;
  for (const std::string& v : variables) is_variable = is_variable || v == first.text;
  const auto fam = sig.family_index(first.text);
  if (!is_variable && fam && sig.families()[*fam].kind == SymbolKind::Relation) {
    Token name;
    const SymbolRef r = parse_symbol(lex, sig, variables, name);
    std::vector<Term> args = parse_args(lex, sig, variables);
    check_arity(sig, r, args.size(), name);
    return Atom::rel(r, std::move(args));
  }
  Term lhs = parse_term(lex, sig, variables);
  lex.expect(Tok::Equals, "'='");
  if (lex.peek().kind != Tok::Ident) lex.fail("expected term" + lex.describe());
  Term rhs = parse_term(lex, sig, variables);
  return Atom::eq(std::move(lhs), std::move(rhs));
}

Sentence parse_sentence(Lexer& lex, const Signature& sig, std::span<const std::string> variables) {
  return parse_disjunction(lex, sig, variables);
}

} // namespace detail

namespace {

template <class F>
auto parse_whole(std::string_view text, F&& body) {
  detail::Lexer lex(text);
  auto result = body(lex);
  if (lex.peek().kind != detail::Tok::End) lex.fail("unexpected trailing input" + lex.describe());
  return result;
}

} // namespace

Signature parse_signature(std::string_view text) {
  return parse_whole(text, [](detail::Lexer& lex) {
    std::vector<Family> families;
    while (lex.peek().kind != detail::Tok::End) {
      const detail::Token kw = lex.expect(detail::Tok::Ident, "declaration keyword");
      families.push_back(detail::parse_family(lex, kw.text));
      lex.expect(detail::Tok::Semicolon, "';'");
    }
    return Signature(std::move(families));
  });
}

Term parse_term(std::string_view text, const Signature& sig) {
  return parse_whole(text, [&](detail::Lexer& lex) { return detail::parse_term(lex, sig, {}); });
}

Atom parse_atom(std::string_view text, const Signature& sig) {
  return parse_whole(text, [&](detail::Lexer& lex) { return detail::parse_atom(lex, sig, {}); });
}

Sentence parse_sentence(std::string_view text, const Signature& sig) {
  return parse_whole(text, [&](detail::Lexer& lex) { return detail::parse_sentence(lex, sig, {}); });
}

QuantifiedSentence parse_quantified(std::string_view text, const Signature& sig) {
  return parse_whole(text, [&](detail::Lexer& lex) {
    QuantifiedSentence q;
    const detail::Token kw = lex.expect(detail::Tok::Ident, "'forall' or 'exists'");
    if (kw.text == "forall") {
      q.quantifier = QuantifiedSentence::Quantifier::Forall;
    } else if (kw.text == "exists") {
      q.quantifier = QuantifiedSentence::Quantifier::Exists;
    } else {
      throw ParseError("expected 'forall' or 'exists'", kw.line, kw.column);
    }
    while (lex.peek().kind == detail::Tok::Ident) {
      const detail::Token v = lex.next();
      if (sig.family_index(v.text)) throw ParseError("variable '" + v.text + "' shadows a symbol", v.line, v.column);
      if (std::find(q.variables.begin(), q.variables.end(), v.text) != q.variables.end())
        throw ParseError("duplicate variable '" + v.text + "'", v.line, v.column);
      q.variables.push_back(v.text);
    }
    if (q.variables.empty()) lex.fail("expected at least one variable");
    lex.expect(detail::Tok::Colon, "':'");
    q.matrix = detail::parse_sentence(lex, sig, q.variables);
    return q;
  });
}

// ---------------------------------------------------------------------------
// Enumeration

TermPool::TermPool(Signature sig, EnumerationOptions opts, std::size_t node_limit)
    : sig_(std::move(sig)), opts_(opts), node_limit_(node_limit), by_length_(1) {
  for (SymbolKind k : {SymbolKind::Constant, SymbolKind::Function})
    for (SymbolRef s : sig_.symbols(k, opts_)) term_heads_.push_back(s);
}

std::span<const TermPool::Id> TermPool::of_length(std::size_t len) const {
  if (len == 0 || len >= by_length_.size()) return {};
  return by_length_[len];
}

void TermPool::grow_to(std::size_t max_length) {
  while (by_length_.size() <= max_length) build_length(by_length_.size());
}

void TermPool::build_length(std::size_t len) {
  std::vector<Id> bucket;
  std::vector<Id> args;
  for (SymbolRef head : term_heads_) {
    const auto arity = static_cast<std::size_t>(sig_.arity(head));
    if (arity == 0) {
      if (len == 1) {
        bucket.push_back(static_cast<Id>(nodes_.size()));
        nodes_.push_back(Node{head, {}, 1});
      }
      continue;
    }
    if (len < arity + 1) continue;
    // Distribute len - 1 symbols over the arguments, then take the product of
    // the buckets.
    args.assign(arity, 0);
    auto fill = [&](auto&& self, std::size_t pos, std::size_t remaining) -> void {
      if (pos + 1 == arity) {
        for (Id a : by_length_[remaining]) {
          args[pos] = a;
          if (nodes_.size() >= node_limit_)
            throw Error("budget-exceeded", "term enumeration exceeded " + std::to_string(node_limit_) + " terms");
          bucket.push_back(static_cast<Id>(nodes_.size()));
          nodes_.push_back(Node{head, args, static_cast<std::uint32_t>(len)});
        }
        return;
      }
      const std::size_t rest = arity - pos - 1;
      for (std::size_t here = 1; here + rest <= remaining; ++here) {
        for (Id a : by_length_[here]) {
          args[pos] = a;
          self(self, pos + 1, remaining - here);
        }
      }
    };
    fill(fill, 0, len - 1);
  }
  std::sort(bucket.begin(), bucket.end(), [&](Id a, Id b) { return compare(a, b) < 0; });
  std::vector<Id> merged;
  merged.reserve(token_sorted_.size() + bucket.size());
  std::merge(token_sorted_.begin(), token_sorted_.end(), bucket.begin(), bucket.end(), std::back_inserter(merged),
             [&](Id a, Id b) { return compare(a, b) < 0; });
  token_sorted_ = std::move(merged);
  by_length_.push_back(std::move(bucket));
}

Term TermPool::term(Id id) const {
  const Node& n = nodes_[id];
  Term t{n.head, {}};
  t.args.reserve(n.args.size());
  for (Id a : n.args) t.args.push_back(term(a));
  return t;
}

std::strong_ordering TermPool::compare(Id a, Id b) const {
  if (a == b) return std::strong_ordering::equal;
  const Node& x = nodes_[a];
  const Node& y = nodes_[b];
  if (auto c = sig_.compare(x.head, y.head); c != 0) return c;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (auto c = compare(x.args[i], y.args[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

std::vector<TermPool::AtomIds> TermPool::relation_atoms_of_length(std::size_t len) {
  if (relations_.empty()) relations_ = sig_.symbols(SymbolKind::Relation, opts_);
  std::vector<AtomIds> out;
  if (len < 2) return out;
  grow_to(len - 1);
  for (SymbolRef r : relations_) {
    const auto arity = static_cast<std::size_t>(sig_.arity(r));
    if (len - 1 < arity) continue;
    std::vector<std::vector<Id>> tuples;
    std::vector<Id> tuple(arity);
    auto fill = [&](auto&& self, std::size_t pos, std::size_t remaining) -> void {
      if (pos + 1 == arity) {
        for (Id a : of_length(remaining)) {
          tuple[pos] = a;
          tuples.push_back(tuple);
        }
        return;
      }
      const std::size_t rest = arity - pos - 1;
      for (std::size_t here = 1; here + rest <= remaining; ++here)
        for (Id a : of_length(here)) {
          tuple[pos] = a;
          self(self, pos + 1, remaining - here);
        }
    };
    fill(fill, 0, len - 1);
    std::sort(tuples.begin(), tuples.end(), [&](const std::vector<Id>& x, const std::vector<Id>& y) {
      for (std::size_t i = 0; i < x.size(); ++i)
        if (auto c = compare(x[i], y[i]); c != 0) return c < 0;
      return false;
    });
    for (auto& t : tuples) out.push_back(AtomIds{Atom::Kind::Rel, r, std::move(t)});
  }
  return out;
}

std::vector<TermPool::AtomIds> TermPool::atoms_of_length(std::size_t len) {
  std::vector<AtomIds> out;
  if (len == 0) return out;
  grow_to(len >= 1 ? len - 1 : 0);
  if (len >= 3) {
    for (Id s : token_sorted_) {
      const std::size_t ls = nodes_[s].length;
      if (ls > len - 2) continue;
      for (Id t : of_length(len - 1 - ls)) out.push_back(AtomIds{Atom::Kind::Eq, {}, {s, t}});
    }
  }
  auto rel = relation_atoms_of_length(len);
  out.insert(out.end(), std::make_move_iterator(rel.begin()), std::make_move_iterator(rel.end()));
  return out;
}

Atom TermPool::atom(const AtomIds& a) const {
  std::vector<Term> args;
  args.reserve(a.args.size());
  for (Id id : a.args) args.push_back(term(id));
  if (a.kind == Atom::Kind::Eq) return Atom::eq(std::move(args[0]), std::move(args[1]));
  return Atom::rel(a.relation, std::move(args));
}

std::vector<Term> enumerate_terms(const Signature& sig, std::size_t max_length, const EnumerationOptions& opts) {
  TermPool pool(sig, opts);
  pool.grow_to(max_length);
  std::vector<Term> out;
  for (std::size_t len = 1; len <= max_length; ++len)
    for (TermPool::Id id : pool.of_length(len)) out.push_back(pool.term(id));
  return out;
}

std::vector<Atom> enumerate_atomic(const Signature& sig, std::size_t max_length, const EnumerationOptions& opts) {
  TermPool pool(sig, opts);
  std::vector<Atom> out;
  for (std::size_t len = 1; len <= max_length; ++len)
    for (const auto& a : pool.atoms_of_length(len)) out.push_back(pool.atom(a));
  return out;
}

} // namespace minspace
