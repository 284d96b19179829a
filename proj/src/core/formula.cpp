#include "formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace posetlab {

Formula Formula::make(Kind k, std::string a, std::string b,
                      std::vector<Formula> kids) {
  auto node = std::make_shared<Node>();
  node->kind = k;
  node->a = std::move(a);
  node->b = std::move(b);
  node->kids = std::move(kids);
  return Formula(std::move(node));
}

Formula Formula::eq(std::string a, std::string b) {
  return make(Kind::Eq, std::move(a), std::move(b), {});
}
Formula Formula::le(std::string a, std::string b) {
  return make(Kind::Le, std::move(a), std::move(b), {});
}
Formula Formula::lnot(Formula f) { return make(Kind::Not, "", "", {std::move(f)}); }
Formula Formula::land(Formula a, Formula b) {
  return make(Kind::And, "", "", {std::move(a), std::move(b)});
}
Formula Formula::lor(Formula a, Formula b) {
  return make(Kind::Or, "", "", {std::move(a), std::move(b)});
}
Formula Formula::forall(std::string var, Formula body) {
  return make(Kind::Forall, std::move(var), "", {std::move(body)});
}
Formula Formula::exists(std::string var, Formula body) {
  return make(Kind::Exists, std::move(var), "", {std::move(body)});
}

Formula Formula::conj(const std::vector<Formula>& fs) {
  if (fs.empty()) throw semantic_error("empty conjunction");
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = land(acc, fs[i]);
  return acc;
}

Formula Formula::disj(const std::vector<Formula>& fs) {
  if (fs.empty()) throw semantic_error("empty disjunction");
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = lor(acc, fs[i]);
  return acc;
}

Formula Formula::tautology() { return forall("t0", eq("t0", "t0")); }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  if (node_->a != other.node_->a || node_->b != other.node_->b) return false;
  if (node_->kids.size() != other.node_->kids.size()) return false;
  for (std::size_t i = 0; i < node_->kids.size(); ++i)
    if (!(node_->kids[i] == other.node_->kids[i])) return false;
  return true;
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
    case Formula::Kind::Le:
      if (!bound.count(f.var1())) out.insert(f.var1());
      if (!bound.count(f.var2())) out.insert(f.var2());
      return;
    case Formula::Kind::Not:
      collect_free(f.child(), bound, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      collect_free(f.child(0), bound, out);
      collect_free(f.child(1), bound, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool fresh = bound.insert(f.var1()).second;
      collect_free(f.child(), bound, out);
      if (fresh) bound.erase(f.var1());
      return;
    }
  }
}

void collect_bound(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
    case Formula::Kind::Le:
      return;
    case Formula::Kind::Not:
      collect_bound(f.child(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      collect_bound(f.child(0), out);
      collect_bound(f.child(1), out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      out.insert(f.var1());
      collect_bound(f.child(), out);
      return;
  }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  for (std::size_t i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!taken.count(candidate)) return candidate;
  }
}

void collect_all_vars(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
    case Formula::Kind::Le:
      out.insert(f.var1());
      out.insert(f.var2());
      return;
    case Formula::Kind::Not:
      collect_all_vars(f.child(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      collect_all_vars(f.child(0), out);
      collect_all_vars(f.child(1), out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      out.insert(f.var1());
      collect_all_vars(f.child(), out);
      return;
  }
}

}  // namespace

std::set<std::string> Formula::free_variables() const {
  std::set<std::string> bound, out;
  collect_free(*this, bound, out);
  return out;
}

std::set<std::string> Formula::bound_variables() const {
  std::set<std::string> out;
  collect_bound(*this, out);
  return out;
}

std::size_t Formula::quantifier_rank() const {
  switch (kind()) {
    case Kind::Eq:
    case Kind::Le:
      return 0;
    case Kind::Not:
      return child().quantifier_rank();
    case Kind::And:
    case Kind::Or:
      return std::max(child(0).quantifier_rank(), child(1).quantifier_rank());
    case Kind::Forall:
    case Kind::Exists:
      return 1 + child().quantifier_rank();
  }
  return 0;
}

Formula Formula::substitute(const std::string& var,
                            const std::string& replacement) const {
  switch (kind()) {
    case Kind::Eq:
    case Kind::Le: {
      std::string a = var1() == var ? replacement : var1();
      std::string b = var2() == var ? replacement : var2();
      return make(kind(), std::move(a), std::move(b), {});
    }
    case Kind::Not:
      return lnot(child().substitute(var, replacement));
    case Kind::And:
      return land(child(0).substitute(var, replacement),
                  child(1).substitute(var, replacement));
    case Kind::Or:
      return lor(child(0).substitute(var, replacement),
                 child(1).substitute(var, replacement));
    case Kind::Forall:
    case Kind::Exists: {
      if (var1() == var) return *this;  // shadowed
      Formula body = child();
      std::string binder = var1();
      if (binder == replacement) {
        // would capture: rename this binder first
        std::set<std::string> taken;
        collect_all_vars(body, taken);
        taken.insert(var);
        taken.insert(replacement);
        std::string renamed = fresh_name(binder, taken);
        body = body.substitute(binder, renamed);
        binder = renamed;
      }
      Formula new_body = body.substitute(var, replacement);
      return kind() == Kind::Forall ? forall(binder, new_body)
                                    : exists(binder, new_body);
    }
  }
  return *this;
}

Formula Formula::rename_bound_away_from(const std::set<std::string>& avoid) const {
  switch (kind()) {
    case Kind::Eq:
    case Kind::Le:
      return *this;
    case Kind::Not:
      return lnot(child().rename_bound_away_from(avoid));
    case Kind::And:
      return land(child(0).rename_bound_away_from(avoid),
                  child(1).rename_bound_away_from(avoid));
    case Kind::Or:
      return lor(child(0).rename_bound_away_from(avoid),
                 child(1).rename_bound_away_from(avoid));
    case Kind::Forall:
    case Kind::Exists: {
      Formula body = child().rename_bound_away_from(avoid);
      std::string binder = var1();
      if (avoid.count(binder)) {
        std::set<std::string> taken = avoid;
        collect_all_vars(body, taken);
        std::string renamed = fresh_name(binder, taken);
        body = body.substitute(binder, renamed);
        binder = renamed;
      }
      return kind() == Kind::Forall ? forall(binder, body) : exists(binder, body);
    }
  }
  return *this;
}

// ---------------------------------------------------------------------------
// Printer. Implication never appears (desugared at parse time). Operands are
// parenthesized exactly where the grammar demands it, so parse(to_string(f))
// rebuilds f.

namespace {

enum class Level { Formula, Or, And, Unary };

void print_rec(const Formula& f, Level level, std::string& out) {
  auto parenthesized = [&](const Formula& g, Level inner) {
    out += "(";
    print_rec(g, inner, out);
    out += ")";
  };
  switch (f.kind()) {
    case Formula::Kind::Eq:
      out += f.var1() + " = " + f.var2();
      return;
    case Formula::Kind::Le:
      out += f.var1() + " <= " + f.var2();
      return;
    case Formula::Kind::Not:
      out += "!";
      if (f.child().kind() == Formula::Kind::Eq ||
          f.child().kind() == Formula::Kind::Le ||
          f.child().kind() == Formula::Kind::Not)
        print_rec(f.child(), Level::Unary, out);
      else
        parenthesized(f.child(), Level::Formula);
      return;
    case Formula::Kind::And: {
      if (level == Level::Unary) {
        parenthesized(f, Level::Formula);
        return;
      }
      // left operand may itself be an &-chain; right operand must sit at
      // unary level
      print_rec(f.child(0), Level::And, out);
      out += " & ";
      Formula::Kind rk = f.child(1).kind();
      if (rk == Formula::Kind::Eq || rk == Formula::Kind::Le ||
          rk == Formula::Kind::Not)
        print_rec(f.child(1), Level::Unary, out);
      else
        parenthesized(f.child(1), Level::Formula);
      return;
    }
    case Formula::Kind::Or: {
      if (level == Level::Unary || level == Level::And) {
        parenthesized(f, Level::Formula);
        return;
      }
      print_rec(f.child(0), Level::Or, out);
      out += " | ";
      Formula::Kind rk = f.child(1).kind();
      if (rk == Formula::Kind::Or || rk == Formula::Kind::Forall ||
          rk == Formula::Kind::Exists)
        parenthesized(f.child(1), Level::Formula);
      else
        print_rec(f.child(1), Level::And, out);
      return;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      if (level != Level::Formula) {
        parenthesized(f, Level::Formula);
        return;
      }
      out += (f.kind() == Formula::Kind::Forall ? "forall " : "exists ");
      out += f.var1() + " . ";
      print_rec(f.child(), Level::Formula, out);
      return;
    }
  }
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print_rec(*this, Level::Formula, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
  enum class Type { Ident, Forall, Exists, Dot, LParen, RParen, Not, And, Or,
                    Implies, Le, Eq, End };
  Type type;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      current_ = {Token::Type::End, "", start};
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) ||
              text_[end] == '_' || text_[end] == '\''))
        ++end;
      std::string word = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (word == "forall")
        current_ = {Token::Type::Forall, word, start};
      else if (word == "exists")
        current_ = {Token::Type::Exists, word, start};
      else
        current_ = {Token::Type::Ident, word, start};
      return;
    }
    switch (c) {
      case '.': current_ = {Token::Type::Dot, ".", start}; ++pos_; return;
      case '(': current_ = {Token::Type::LParen, "(", start}; ++pos_; return;
      case ')': current_ = {Token::Type::RParen, ")", start}; ++pos_; return;
      case '!': current_ = {Token::Type::Not, "!", start}; ++pos_; return;
      case '&': current_ = {Token::Type::And, "&", start}; ++pos_; return;
      case '|': current_ = {Token::Type::Or, "|", start}; ++pos_; return;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          current_ = {Token::Type::Implies, "->", start};
          pos_ += 2;
          return;
        }
        throw parse_error("unexpected '-' at position " + std::to_string(start));
      case '<':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          current_ = {Token::Type::Le, "<=", start};
          pos_ += 2;
          return;
        }
        throw parse_error("unexpected '<' at position " + std::to_string(start));
      case '=': current_ = {Token::Type::Eq, "=", start}; ++pos_; return;
      default:
        throw parse_error(std::string("unexpected character '") + c +
                          "' at position " + std::to_string(start));
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token current_{Token::Type::End, "", 0};
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  Formula parse() {
    Formula f = formula();
    if (lex_.peek().type != Token::Type::End)
      throw parse_error("trailing input at position " +
                        std::to_string(lex_.peek().pos));
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw parse_error(what + " at position " + std::to_string(lex_.peek().pos));
  }

  Formula formula() {
    if (lex_.peek().type == Token::Type::Forall ||
        lex_.peek().type == Token::Type::Exists)
      return quantified();
    return implication();
  }

  Formula quantified() {
    Token q = lex_.take();
    if (lex_.peek().type != Token::Type::Ident) fail("expected variable");
    std::string var = lex_.take().text;
    if (lex_.peek().type != Token::Type::Dot) fail("expected '.'");
    lex_.take();
    Formula body = formula();
    return q.type == Token::Type::Forall ? Formula::forall(var, body)
                                         : Formula::exists(var, body);
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (lex_.peek().type == Token::Type::Implies) {
      lex_.take();
      Formula rhs = formula();  // right side may be quantified or another impl
      return Formula::lor(Formula::lnot(lhs), rhs);
    }
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (lex_.peek().type == Token::Type::Or) {
      lex_.take();
      acc = Formula::lor(acc, conjunction());
    }
    return acc;
  }

  Formula conjunction() {
    Formula acc = unary();
    while (lex_.peek().type == Token::Type::And) {
      lex_.take();
      acc = Formula::land(acc, unary());
    }
    return acc;
  }

  Formula unary() {
    switch (lex_.peek().type) {
      case Token::Type::Not:
        lex_.take();
        return Formula::lnot(unary());
      case Token::Type::LParen: {
        lex_.take();
        Formula f = formula();
        if (lex_.peek().type != Token::Type::RParen) fail("expected ')'");
        lex_.take();
        return f;
      }
      case Token::Type::Ident:
        return atom();
      default:
        fail("expected formula");
    }
  }

  Formula atom() {
    std::string a = lex_.take().text;
    switch (lex_.peek().type) {
      case Token::Type::Le: {
        lex_.take();
        if (lex_.peek().type != Token::Type::Ident) fail("expected variable");
        return Formula::le(a, lex_.take().text);
      }
      case Token::Type::Eq: {
        lex_.take();
        if (lex_.peek().type != Token::Type::Ident) fail("expected variable");
        return Formula::eq(a, lex_.take().text);
      }
      default:
        fail("expected '<=' or '='");
    }
  }

  Lexer lex_;
};

}  // namespace

Formula parse_formula(const std::string& text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

using Env = std::vector<std::pair<std::string, std::size_t>>;

std::optional<std::size_t> lookup(const Env& env, const std::string& var) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == var) return it->second;
  return std::nullopt;
}

bool eval_rec(const FinitePoset& x, const Formula& f, Env& env) {
  switch (f.kind()) {
    case Formula::Kind::Eq: {
      auto a = lookup(env, f.var1());
      auto b = lookup(env, f.var2());
      if (!a || !b)
        throw semantic_error("unassigned variable " +
                             (a ? f.var2() : f.var1()));
      return *a == *b;
    }
    case Formula::Kind::Le: {
      auto a = lookup(env, f.var1());
      auto b = lookup(env, f.var2());
      if (!a || !b)
        throw semantic_error("unassigned variable " +
                             (a ? f.var2() : f.var1()));
      return x.le(*a, *b);
    }
    case Formula::Kind::Not:
      return !eval_rec(x, f.child(), env);
    case Formula::Kind::And:
      return eval_rec(x, f.child(0), env) && eval_rec(x, f.child(1), env);
    case Formula::Kind::Or:
      return eval_rec(x, f.child(0), env) || eval_rec(x, f.child(1), env);
    case Formula::Kind::Forall: {
      env.emplace_back(f.var1(), 0);
      for (std::size_t e = 0; e < x.size(); ++e) {
        env.back().second = e;
        if (!eval_rec(x, f.child(), env)) {
          env.pop_back();
          return false;
        }
      }
      env.pop_back();
      return true;
    }
    case Formula::Kind::Exists: {
      env.emplace_back(f.var1(), 0);
      for (std::size_t e = 0; e < x.size(); ++e) {
        env.back().second = e;
        if (eval_rec(x, f.child(), env)) {
          env.pop_back();
          return true;
        }
      }
      env.pop_back();
      return false;
    }
  }
  return false;
}

}  // namespace

bool evaluate(const FinitePoset& x, const Formula& f, const Assignment& a) {
  for (const auto& v : f.free_variables())
    if (!a.count(v)) throw semantic_error("unassigned free variable " + v);
  Env env;
  env.reserve(a.size() + f.quantifier_rank() + 1);
  for (const auto& [var, elem] : a) env.emplace_back(var, x.require_index(elem));
  return eval_rec(x, f, env);
}

bool evaluate_env(const FinitePoset& x, const Formula& f, EvalEnv& env) {
  return eval_rec(x, f, env);
}

// ---------------------------------------------------------------------------
// Relativization

namespace {

Formula relativize_rec(const Formula& psi, const Formula& guard,
                       const std::string& subject) {
  switch (psi.kind()) {
    case Formula::Kind::Eq:
    case Formula::Kind::Le:
      return psi;
    case Formula::Kind::Not:
      return Formula::lnot(relativize_rec(psi.child(), guard, subject));
    case Formula::Kind::And:
      return Formula::land(relativize_rec(psi.child(0), guard, subject),
                           relativize_rec(psi.child(1), guard, subject));
    case Formula::Kind::Or:
      return Formula::lor(relativize_rec(psi.child(0), guard, subject),
                          relativize_rec(psi.child(1), guard, subject));
    case Formula::Kind::Forall: {
      Formula inner = relativize_rec(psi.child(), guard, subject);
      Formula g = guard.substitute(subject, psi.var1());
      return Formula::forall(psi.var1(),
                             Formula::lor(Formula::lnot(g), inner));
    }
    case Formula::Kind::Exists: {
      Formula inner = relativize_rec(psi.child(), guard, subject);
      Formula g = guard.substitute(subject, psi.var1());
      return Formula::exists(psi.var1(), Formula::land(g, inner));
    }
  }
  return psi;
}

}  // namespace

Formula relativize(const Formula& psi, const Formula& guard,
                   const std::vector<std::string>& params,
                   const std::string& subject) {
  std::set<std::string> allowed(params.begin(), params.end());
  allowed.insert(subject);
  for (const auto& v : guard.free_variables())
    if (!allowed.count(v))
      throw semantic_error("relativizer mentions variable outside parameters: " + v);
  std::set<std::string> avoid(params.begin(), params.end());
  Formula clean = psi.rename_bound_away_from(avoid);
  return relativize_rec(clean, guard, subject);
}

// ---------------------------------------------------------------------------
// Definable sets

FinitePoset DefinableSet::induced() const {
  if (empty()) throw semantic_error("induced substructure of an empty definable set");
  return parent->induced(member_indices);
}

DefinableSet definable_set(const FinitePoset& x, const Formula& guard,
                           const Assignment& params, const std::string& subject) {
  for (const auto& v : guard.free_variables())
    if (v != subject && !params.count(v))
      throw semantic_error("guard variable " + v + " is not a parameter");
  DefinableSet d;
  d.parent = &x;
  d.guard = guard;
  d.subject = subject;
  d.params = params;
  Env env;
  for (const auto& [var, elem] : params) env.emplace_back(var, x.require_index(elem));
  env.emplace_back(subject, 0);
  for (std::size_t e = 0; e < x.size(); ++e) {
    env.back().second = e;
    if (eval_rec(x, guard, env)) {
      d.member_indices.push_back(e);
      d.members.push_back(x.element(e));
    }
  }
  return d;
}

DefinableSpectrum definable_spectrum(const FinitePoset& x, const Formula& guard,
                                     const std::vector<std::string>& params,
                                     const std::string& subject,
                                     std::size_t canon_budget) {
  DefinableSpectrum spec;
  const std::size_t m = params.size();
  std::vector<std::size_t> tuple(m, 0);
  while (true) {
    Assignment a;
    for (std::size_t i = 0; i < m; ++i) a[params[i]] = x.element(tuple[i]);
    DefinableSet d = definable_set(x, guard, a, subject);
    ++spec.total_tuples;
    if (d.empty())
      ++spec.empty_tuples;
    else
      spec.forms.insert(canonical_form(d.induced(), canon_budget));
    // next tuple
    std::size_t k = m;
    while (k > 0) {
      if (++tuple[k - 1] < x.size()) break;
      tuple[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return spec;
}

}  // namespace posetlab
