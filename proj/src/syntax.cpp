#include "starchart/syntax.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <unordered_set>

#include "starchart/error.hpp"

namespace starchart {

bool is_action_name(std::string_view name) {
  if (name.empty() || name.front() < 'a' || name.front() > 'z') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxActions)
    throw InputError("alphabet has more than " + std::to_string(kMaxActions) + " actions");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!is_action_name(names_[i])) throw InputError("invalid action name '" + names_[i] + "'");
    if (!index_.emplace(names_[i], static_cast<ActionId>(i)).second)
      throw InputError("duplicate action '" + names_[i] + "'");
  }
}

Alphabet Alphabet::from_list(std::string_view csv) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= csv.size()) {
    auto comma = csv.find(',', start);
    if (comma == std::string_view::npos) comma = csv.size();
    std::string item(csv.substr(start, comma - start));
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) names.push_back(std::move(item));
    start = comma + 1;
  }
  return Alphabet(std::move(names));
}

std::optional<ActionId> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ActionId Alphabet::index(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw InputError("unknown action '" + std::string(name) + "'");
}

Alphabet Alphabet::merged(const Alphabet& other) const {
  auto names = names_;
  for (const auto& n : other.names_)
    if (!contains(n)) names.push_back(n);
  return Alphabet(std::move(names));
}

// ---------------------------------------------------------------------------

struct Expr::Node {
  ExprKind kind;
  std::string action;
  Expr lhs;
  Expr rhs;
  std::size_t hash;
  std::size_t count;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const Expr& zero_singleton() {
  static const Expr z = Expr::zero();
  return z;
}

}  // namespace

Expr::Expr() : Expr(zero_singleton()) {}

Expr Expr::zero() {
  static const auto node = std::make_shared<const Node>(
      Node{ExprKind::Zero, {}, Expr(nullptr), Expr(nullptr), 0x51ed27, 1});
  return Expr(node);
}

Expr Expr::atom(std::string action) {
  auto h = mix(0xa7, std::hash<std::string>{}(action));
  return Expr(std::make_shared<const Node>(
      Node{ExprKind::Atom, std::move(action), Expr(nullptr), Expr(nullptr), h, 1}));
}

#define STARCHART_BINARY(fn, KIND, TAG)                                                     \
  Expr Expr::fn(Expr lhs, Expr rhs) {                                                       \
    auto h = mix(mix(TAG, lhs.hash()), rhs.hash());                                         \
    auto count = lhs.node_count() + rhs.node_count() + 1;                                   \
    return Expr(std::make_shared<const Node>(                                               \
        Node{ExprKind::KIND, {}, std::move(lhs), std::move(rhs), h, count}));               \
  }

STARCHART_BINARY(sum, Sum, 0x5)
STARCHART_BINARY(seq, Seq, 0x7)
STARCHART_BINARY(star, Star, 0xb)
#undef STARCHART_BINARY

ExprKind Expr::kind() const noexcept { return node_->kind; }

const std::string& Expr::action() const {
  if (node_->kind != ExprKind::Atom) throw std::logic_error("Expr::action on non-atom");
  return node_->action;
}

const Expr& Expr::lhs() const {
  if (!node_->lhs.node_) throw std::logic_error("Expr::lhs on leaf");
  return node_->lhs;
}

const Expr& Expr::rhs() const {
  if (!node_->rhs.node_) throw std::logic_error("Expr::rhs on leaf");
  return node_->rhs;
}

std::size_t Expr::hash() const noexcept { return node_->hash; }
std::size_t Expr::node_count() const noexcept { return node_->count; }

bool operator==(const Expr& a, const Expr& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind ||
      a.node_->count != b.node_->count)
    return false;
  switch (a.node_->kind) {
    case ExprKind::Zero: return true;
    case ExprKind::Atom: return a.node_->action == b.node_->action;
    default: return a.node_->lhs == b.node_->lhs && a.node_->rhs == b.node_->rhs;
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, Zero, Plus, Star, Dot, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool is_word(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'; }

// Splits a run of identifier characters into actions. With an alphabet the
// longest declared name is taken at each point; without one an action is a
// letter followed by its digits and underscores, so "aa" reads as a a.
void split_word(std::string_view run, std::size_t at, const Alphabet* alphabet, std::vector<Token>& out) {
  std::size_t i = 0;
  while (i < run.size()) {
    std::size_t len = 0;
    if (alphabet) {
      for (const auto& name : alphabet->names())
        if (name.size() > len && run.substr(i, name.size()) == name) len = name.size();
      if (len == 0 && run[i] == '0') {
        out.push_back({Tok::Zero, "0", at + i});
        ++i;
        continue;
      }
      if (len == 0) {
        std::size_t j = i + 1;
        while (j < run.size() && !(run[j] >= 'a' && run[j] <= 'z')) ++j;
        throw SyntaxError("unknown action '" + std::string(run.substr(i, j - i)) + "'", at + i);
      }
    } else {
      len = 1;
      while (i + len < run.size() && !(run[i + len] >= 'a' && run[i + len] <= 'z')) ++len;
    }
    out.push_back({Tok::Ident, std::string(run.substr(i, len)), at + i});
    i += len;
  }
}

std::vector<Token> lex(std::string_view s, const Alphabet* alphabet) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i + 1;
      while (j < s.size() && is_word(s[j])) ++j;
      split_word(s.substr(i, j - i), i, alphabet, out);
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '0': k = Tok::Zero; break;
      case '+': k = Tok::Plus; break;
      case '*': k = Tok::Star; break;
      case '.': k = Tok::Dot; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default: throw SyntaxError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const Alphabet* alphabet)
      : toks_(std::move(toks)), alphabet_(alphabet) {}

  Expr parse_all() {
    Expr e = parse_sum();
    if (peek().kind != Tok::End) fail("expected end of input");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    const auto& t = peek();
    throw SyntaxError(msg + (t.kind == Tok::End ? " (found end)" : " (found '" + t.text + "')"),
                      t.pos);
  }

  bool starts_atom() const {
    auto k = peek().kind;
    return k == Tok::Ident || k == Tok::Zero || k == Tok::LParen;
  }

  Expr parse_sum() {
    std::vector<Expr> terms{parse_seq()};
    while (peek().kind == Tok::Plus) {
      next();
      terms.push_back(parse_seq());
    }
    Expr acc = terms.back();
    for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it) acc = Expr::sum(*it, acc);
    return acc;
  }

  Expr parse_seq() {
    Expr acc = parse_star();
    for (;;) {
      if (peek().kind == Tok::Dot) {
        next();
        acc = Expr::seq(acc, parse_star());
      } else if (starts_atom()) {
        acc = Expr::seq(acc, parse_star());
      } else {
        return acc;
      }
    }
  }

  Expr parse_star() {
    Expr body = parse_atom();
    if (peek().kind != Tok::Star) return body;
    next();
    Expr exit = parse_atom();
    if (peek().kind == Tok::Star) fail("binary star is not associative; add parentheses");
    return Expr::star(body, exit);
  }

  Expr parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Zero: next(); return Expr::zero();
      case Tok::Ident: {
        if (alphabet_ && !alphabet_->contains(t.text))
          throw SyntaxError("unknown action '" + t.text + "'", t.pos);
        next();
        return Expr::atom(t.text);
      }
      case Tok::LParen: {
        next();
        Expr e = parse_sum();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        next();
        return e;
      }
      default: fail("expected an action, '0' or '('");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Alphabet* alphabet_;
};

}  // namespace

Expr parse(std::string_view text, const Alphabet* alphabet) {
  return Parser(lex(text, alphabet), alphabet).parse_all();
}

Expr parse(std::string_view text, const Alphabet& alphabet) { return parse(text, &alphabet); }

// ---------------------------------------------------------------------------
// Rendering

namespace {

int level(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Sum: return 0;
    case ExprKind::Seq: return 1;
    case ExprKind::Star: return 2;
    default: return 3;
  }
}

bool word_char(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'; }

void render_into(const Expr& e, std::string& out);

void render_at(const Expr& e, int min_level, std::string& out) {
  if (level(e) < min_level) {
    out += '(';
    render_into(e, out);
    out += ')';
  } else {
    render_into(e, out);
  }
}

void render_into(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case ExprKind::Zero: out += '0'; break;
    case ExprKind::Atom: out += e.action(); break;
    case ExprKind::Sum:
      render_at(e.lhs(), 1, out);
      out += " + ";
      render_at(e.rhs(), 0, out);
      break;
    case ExprKind::Seq: {
      render_at(e.lhs(), 1, out);
      std::string right;
      render_at(e.rhs(), 2, right);
      if (!out.empty() && word_char(out.back()) && word_char(right.front())) out += ' ';
      out += right;
      break;
    }
    case ExprKind::Star:
      render_at(e.lhs(), 3, out);
      out += '*';
      render_at(e.rhs(), 3, out);
      break;
  }
}

}  // namespace

std::string render(const Expr& e) {
  std::string out;
  render_into(e, out);
  return out;
}

// ---------------------------------------------------------------------------

Expr gsum(const std::vector<Expr>& terms) {
  if (terms.empty()) return Expr::zero();
  Expr acc = terms.back();
  for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it) acc = Expr::sum(*it, acc);
  return acc;
}

std::size_t star_height(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Zero:
    case ExprKind::Atom: return 0;
    case ExprKind::Sum:
    case ExprKind::Seq: return std::max(star_height(e.lhs()), star_height(e.rhs()));
    case ExprKind::Star: return 1 + std::max(star_height(e.lhs()), star_height(e.rhs()));
  }
  return 0;
}

namespace {

constexpr std::size_t kSat = std::numeric_limits<std::size_t>::max();

std::size_t sat_add(std::size_t a, std::size_t b) { return a > kSat - b ? kSat : a + b; }
std::size_t sat_mul(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSat / b ? kSat : a * b;
}

}  // namespace

std::size_t size_bound(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Zero:
    case ExprKind::Atom: return 1;
    case ExprKind::Sum:
    case ExprKind::Star: return sat_add(size_bound(e.lhs()), size_bound(e.rhs()));
    case ExprKind::Seq: {
      auto n1 = size_bound(e.lhs());
      return sat_add(n1, sat_mul(n1, size_bound(e.rhs())));
    }
  }
  return 1;
}

std::vector<std::string> atoms_of(const Expr& e) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  std::function<void(const Expr&)> walk = [&](const Expr& x) {
    switch (x.kind()) {
      case ExprKind::Zero: return;
      case ExprKind::Atom:
        if (seen.insert(x.action()).second) out.push_back(x.action());
        return;
      default:
        walk(x.lhs());
        walk(x.rhs());
    }
  };
  walk(e);
  return out;
}

}  // namespace starchart
