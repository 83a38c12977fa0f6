#pragma once

#include <algorithm>
#include <cassert>
#include <cctype>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "splearn/errors.hpp"

namespace splearn {

enum class TermKind { Empty, Letter, Hole, Seq, Par };
enum class Op { Seq, Par };

inline const char* op_symbol(Op op) { return op == Op::Seq ? "." : "|"; }

namespace detail {

// Canonical sp-term over the alphabet plus an optional hole. Flattened
// (no Seq under Seq, no Par under Par), unit-free below the root, and with
// Par children sorted by their printed form, so structural equality is
// string equality of the rendered text.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind = TermKind::Empty;
  std::string symbol;           // Letter only
  std::vector<TermPtr> parts;   // Seq/Par only, size >= 2
  int letters = 0;              // number of letter occurrences
  int holes = 0;
  std::string text;             // canonical print
};

inline TermPtr make_leaf(TermKind kind, std::string symbol) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  switch (kind) {
    case TermKind::Empty:
      t->text = "1";
      break;
    case TermKind::Hole:
      t->holes = 1;
      t->text = "_";
      break;
    case TermKind::Letter:
      t->letters = 1;
      t->text = symbol;
      t->symbol = std::move(symbol);
      break;
    default:
      assert(false && "make_leaf on composite kind");
  }
  return t;
}

inline const TermPtr& empty_term() {
  static const TermPtr instance = make_leaf(TermKind::Empty, "");
  return instance;
}

inline const TermPtr& hole_term() {
  static const TermPtr instance = make_leaf(TermKind::Hole, "");
  return instance;
}

inline TermPtr letter_term(std::string symbol) {
  return make_leaf(TermKind::Letter, std::move(symbol));
}

inline void append_flattened(TermKind kind, const TermPtr& t,
                             std::vector<TermPtr>& out) {
  if (t->kind == TermKind::Empty) return;
  if (t->kind == kind) {
    out.insert(out.end(), t->parts.begin(), t->parts.end());
  } else {
    out.push_back(t);
  }
}

inline TermPtr make_composite(TermKind kind, std::vector<TermPtr> parts) {
  if (parts.empty()) return empty_term();
  if (parts.size() == 1) return parts.front();
  if (kind == TermKind::Par) {
    std::sort(parts.begin(), parts.end(),
              [](const TermPtr& a, const TermPtr& b) { return a->text < b->text; });
  }
  auto t = std::make_shared<Term>();
  t->kind = kind;
  std::string text;
  for (const auto& p : parts) {
    t->letters += p->letters;
    t->holes += p->holes;
    if (!text.empty()) text += kind == TermKind::Seq ? '.' : '|';
    // '.' binds tighter than '|', so a Par child inside a Seq needs parens;
    // everything else prints bare.
    if (kind == TermKind::Seq && p->kind == TermKind::Par) {
      text += '(' + p->text + ')';
    } else {
      text += p->text;
    }
  }
  t->text = std::move(text);
  t->parts = std::move(parts);
  return t;
}

inline TermPtr compose(TermKind kind, const TermPtr& a, const TermPtr& b) {
  if (a->kind == TermKind::Empty) return b;
  if (b->kind == TermKind::Empty) return a;
  std::vector<TermPtr> parts;
  append_flattened(kind, a, parts);
  append_flattened(kind, b, parts);
  return make_composite(kind, std::move(parts));
}

inline TermPtr substitute_hole(const TermPtr& t, const TermPtr& filler) {
  switch (t->kind) {
    case TermKind::Hole:
      return filler;
    case TermKind::Empty:
    case TermKind::Letter:
      return t;
    case TermKind::Seq:
    case TermKind::Par: {
      if (t->holes == 0) return t;
      TermPtr acc = empty_term();
      for (const auto& p : t->parts) {
        acc = compose(t->kind, acc, substitute_hole(p, filler));
      }
      return acc;
    }
  }
  return t;
}

// Recursive-descent parser for the term grammar:
//   term := par ; par := seq ('|' seq)* ; seq := atom ('.' atom)* ;
//   atom := '1' | IDENT | '_' | '(' term ')'
class TermParser {
 public:
  explicit TermParser(const std::string& input) : s_(input) {}

  TermPtr parse() {
    TermPtr t = parse_par();
    skip_ws();
    if (pos_ != s_.size()) {
      throw ParseError("unexpected character '" + std::string(1, s_[pos_]) +
                       "' at offset " + std::to_string(pos_) + " in term: " + s_);
    }
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  TermPtr parse_par() {
    TermPtr t = parse_seq();
    while (eat('|')) t = compose(TermKind::Par, t, parse_seq());
    return t;
  }

  TermPtr parse_seq() {
    TermPtr t = parse_atom();
    while (eat('.')) t = compose(TermKind::Seq, t, parse_atom());
    return t;
  }

  TermPtr parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of term: " + s_);
    char c = s_[pos_];
    if (c == '1') {
      ++pos_;
      return empty_term();
    }
    if (c == '_') {
      ++pos_;
      return hole_term();
    }
    if (c == '(') {
      ++pos_;
      TermPtr t = parse_par();
      if (!eat(')')) throw ParseError("missing ')' in term: " + s_);
      return t;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_++;
      while (pos_ < s_.size() &&
             std::isalnum(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      }
      return letter_term(s_.substr(start, pos_ - start));
    }
    throw ParseError("unexpected character '" + std::string(1, c) +
                     "' at offset " + std::to_string(pos_) + " in term: " + s_);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Finite, ordered, non-empty set of letter symbols. A symbol is one
/// lowercase ASCII letter optionally followed by alphanumerics; "_" is
/// reserved for the context hole and "1" for the empty pomset.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw ParseError("alphabet must be non-empty");
    for (const auto& s : symbols_) {
      if (!valid_symbol(s)) throw ParseError("invalid alphabet symbol: '" + s + "'");
    }
    std::vector<std::string> sorted = symbols_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError("duplicate alphabet symbol");
    }
  }

  static bool valid_symbol(const std::string& s) {
    if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
      return std::isalnum(c) != 0;
    });
  }

  bool contains(const std::string& symbol) const {
    return std::find(symbols_.begin(), symbols_.end(), symbol) != symbols_.end();
  }

  std::size_t size() const { return symbols_.size(); }
  const std::vector<std::string>& symbols() const { return symbols_; }

  // Position of a symbol; throws for letters outside the alphabet.
  std::size_t index_of(const std::string& symbol) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
    if (it == symbols_.end()) throw UnknownLetterError(symbol);
    return static_cast<std::size_t>(it - symbols_.begin());
  }

  bool operator==(const Alphabet& other) const = default;

 private:
  std::vector<std::string> symbols_;
};

/// A series-parallel pomset, held as the canonical sp-term that represents
/// it. Values are immutable and cheap to copy; equality of values is
/// equality of pomsets. Ordering is by node count, then canonical print,
/// which is also the enumeration order used throughout the library.
class Pomset {
 public:
  Pomset() : t_(detail::empty_term()) {}

  static Pomset empty() { return Pomset(detail::empty_term()); }

  static Pomset letter(const std::string& symbol) {
    if (!Alphabet::valid_symbol(symbol)) {
      throw ParseError("invalid letter symbol: '" + symbol + "'");
    }
    return Pomset(detail::letter_term(symbol));
  }

  static Pomset parse(const std::string& text) {
    detail::TermPtr t = detail::TermParser(text).parse();
    if (t->holes != 0) throw ParseError("pomset must not contain a hole: " + text);
    return Pomset(t);
  }

  TermKind kind() const { return t_->kind; }

  const std::string& symbol() const {
    assert(t_->kind == TermKind::Letter);
    return t_->symbol;
  }

  std::vector<Pomset> parts() const {
    std::vector<Pomset> out;
    out.reserve(t_->parts.size());
    for (const auto& p : t_->parts) out.emplace_back(Pomset(p));
    return out;
  }

  int node_count() const { return t_->letters; }
  const std::string& str() const { return t_->text; }

  bool operator==(const Pomset& other) const { return t_->text == other.t_->text; }
  bool operator!=(const Pomset& other) const { return !(*this == other); }
  bool operator<(const Pomset& other) const {
    if (t_->letters != other.t_->letters) return t_->letters < other.t_->letters;
    return t_->text < other.t_->text;
  }

  const detail::TermPtr& term() const { return t_; }
  explicit Pomset(detail::TermPtr t) : t_(std::move(t)) { assert(t_->holes == 0); }

 private:
  detail::TermPtr t_;
};

/// A one-hole sp-term over the alphabet plus the hole "_". Plugging a
/// pomset (or another context) into the hole re-canonicalises the result.
class Context {
 public:
  Context() : t_(detail::hole_term()) {}

  static Context hole() { return Context(detail::hole_term()); }

  static Context parse(const std::string& text) {
    detail::TermPtr t = detail::TermParser(text).parse();
    if (t->holes != 1) {
      throw ParseError("context must contain exactly one hole: " + text);
    }
    return Context(t);
  }

  int node_count() const { return t_->letters; }
  const std::string& str() const { return t_->text; }

  bool operator==(const Context& other) const { return t_->text == other.t_->text; }
  bool operator!=(const Context& other) const { return !(*this == other); }
  bool operator<(const Context& other) const {
    if (t_->letters != other.t_->letters) return t_->letters < other.t_->letters;
    return t_->text < other.t_->text;
  }

  const detail::TermPtr& term() const { return t_; }
  explicit Context(detail::TermPtr t) : t_(std::move(t)) { assert(t_->holes == 1); }

 private:
  detail::TermPtr t_;
};

/// Sequential composition u·v, canonical by construction.
inline Pomset seq(const Pomset& u, const Pomset& v) {
  return Pomset(detail::compose(TermKind::Seq, u.term(), v.term()));
}

/// Parallel composition u∥v, canonical (commutative) by construction.
inline Pomset par(const Pomset& u, const Pomset& v) {
  return Pomset(detail::compose(TermKind::Par, u.term(), v.term()));
}

inline Pomset compose(Op op, const Pomset& u, const Pomset& v) {
  return op == Op::Seq ? seq(u, v) : par(u, v);
}

inline Context seq(const Context& c, const Pomset& v) {
  return Context(detail::compose(TermKind::Seq, c.term(), v.term()));
}

inline Context seq(const Pomset& u, const Context& c) {
  return Context(detail::compose(TermKind::Seq, u.term(), c.term()));
}

inline Context par(const Context& c, const Pomset& v) {
  return Context(detail::compose(TermKind::Par, c.term(), v.term()));
}

inline Context par(const Pomset& u, const Context& c) {
  return Context(detail::compose(TermKind::Par, u.term(), c.term()));
}

inline Context compose(Op op, const Context& c, const Pomset& v) {
  return op == Op::Seq ? seq(c, v) : par(c, v);
}

inline Context compose(Op op, const Pomset& u, const Context& c) {
  return op == Op::Seq ? seq(u, c) : par(u, c);
}

/// c[t]: substitute t for the hole of c.
inline Pomset plug(const Context& c, const Pomset& t) {
  return Pomset(detail::substitute_hole(c.term(), t.term()));
}

/// c[d]: substitute the one-hole term d for the hole of c; the result has
/// exactly one hole again.
inline Context plug_context(const Context& c, const Context& d) {
  return Context(detail::substitute_hole(c.term(), d.term()));
}

struct Decomposition {
  enum class Kind { Empty, Letter, Split };
  Kind kind = Kind::Empty;
  std::string symbol;  // Letter
  Pomset left, right;  // Split
  Op op = Op::Seq;     // Split
};

/// Deterministic decomposition: a Seq splits head vs. rest, a Par splits its
/// least child (in canonical order) vs. the rest. Re-composing a Split
/// yields the input.
inline Decomposition decompose(const Pomset& u) {
  Decomposition d;
  switch (u.kind()) {
    case TermKind::Empty:
      d.kind = Decomposition::Kind::Empty;
      return d;
    case TermKind::Letter:
      d.kind = Decomposition::Kind::Letter;
      d.symbol = u.symbol();
      return d;
    case TermKind::Seq:
    case TermKind::Par: {
      d.kind = Decomposition::Kind::Split;
      d.op = u.kind() == TermKind::Seq ? Op::Seq : Op::Par;
      const auto& parts = u.term()->parts;
      d.left = Pomset(parts.front());
      Pomset rest;
      for (std::size_t i = 1; i < parts.size(); ++i) {
        rest = compose(d.op, rest, Pomset(parts[i]));
      }
      d.right = rest;
      return d;
    }
    case TermKind::Hole:
      break;
  }
  assert(false && "decompose on hole");
  return d;
}

/// All sub-terms of the canonical term, always including u itself and 1.
inline std::set<Pomset> subterms(const Pomset& u) {
  std::set<Pomset> out;
  out.insert(Pomset::empty());
  std::vector<Pomset> stack{u};
  while (!stack.empty()) {
    Pomset t = stack.back();
    stack.pop_back();
    if (!out.insert(t).second) continue;
    if (t.kind() == TermKind::Seq || t.kind() == TermKind::Par) {
      for (const auto& p : t.parts()) stack.push_back(p);
    }
  }
  return out;
}

/// Number of binary composition operations needed to build u from letters.
inline int operation_count(const Pomset& u) {
  return u.node_count() == 0 ? 0 : u.node_count() - 1;
}

}  // namespace splearn
