#include "smll/formula.hpp"

#include <cctype>

namespace smll {

Formula Formula::one() {
  static auto n = std::make_shared<const Node>(Node{Kind::One, "", {}});
  return Formula(n);
}
Formula Formula::bot() {
  static auto n = std::make_shared<const Node>(Node{Kind::Bot, "", {}});
  return Formula(n);
}
Formula Formula::var(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}}));
}
Formula Formula::negvar(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Kind::NegVar, std::move(name), {}}));
}
Formula Formula::tensor(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Tensor, "", {std::move(a), std::move(b)}}));
}
Formula Formula::par(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Par, "", {std::move(a), std::move(b)}}));
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::One:
    case Kind::Bot:
      return true;
    case Kind::Var:
    case Kind::NegVar:
      return name() == o.name();
    case Kind::Tensor:
    case Kind::Par:
      return left() == o.left() && right() == o.right();
  }
  return false;
}

Formula negate_formula(const Formula& a) {
  using K = Formula::Kind;
  switch (a.kind()) {
    case K::One: return Formula::bot();
    case K::Bot: return Formula::one();
    case K::Var: return Formula::negvar(a.name());
    case K::NegVar: return Formula::var(a.name());
    case K::Tensor: return Formula::par(negate_formula(a.left()), negate_formula(a.right()));
    case K::Par: return Formula::tensor(negate_formula(a.left()), negate_formula(a.right()));
  }
  throw std::logic_error("negate_formula: bad kind");
}

Polarity polarity_of(const Formula& a) {
  using K = Formula::Kind;
  switch (a.kind()) {
    case K::One: return Polarity::Positive;
    case K::Bot: return Polarity::Negative;
    case K::Var:
    case K::NegVar:
      return Polarity::Unpolarized;
    case K::Tensor:
      return (polarity_of(a.left()) == Polarity::Positive &&
              polarity_of(a.right()) == Polarity::Positive)
                 ? Polarity::Positive
                 : Polarity::Unpolarized;
    case K::Par:
      return (polarity_of(a.left()) == Polarity::Negative &&
              polarity_of(a.right()) == Polarity::Negative)
                 ? Polarity::Negative
                 : Polarity::Unpolarized;
  }
  throw std::logic_error("polarity_of: bad kind");
}

static void collect_atoms(const Formula& a, std::string& path,
                          std::vector<AtomOcc>& out) {
  using K = Formula::Kind;
  if (a.is_atom()) {
    bool pos = a.kind() == K::One || a.kind() == K::Var;
    out.push_back(AtomOcc{path, pos, a});
    return;
  }
  path.push_back('l');
  collect_atoms(a.left(), path, out);
  path.back() = 'r';
  collect_atoms(a.right(), path, out);
  path.pop_back();
}

std::vector<AtomOcc> atom_addresses(const Formula& a) {
  std::vector<AtomOcc> out;
  std::string path;
  collect_atoms(a, path, out);
  return out;
}

Formula subformula_at(const Formula& a, std::string_view addr) {
  Formula cur = a;
  for (char c : addr) {
    if (cur.is_atom())
      throw InvalidAddress("address descends past an atom: " + std::string(addr));
    if (c == 'l')
      cur = cur.left();
    else if (c == 'r')
      cur = cur.right();
    else
      throw InvalidAddress("address contains a character other than l/r");
  }
  return cur;
}

int connective_count(const Formula& a) {
  if (a.is_atom()) return 0;
  return 1 + connective_count(a.left()) + connective_count(a.right());
}

bool contains_bot(const Formula& a) {
  if (a.kind() == Formula::Kind::Bot) return true;
  if (a.is_atom()) return false;
  return contains_bot(a.left()) || contains_bot(a.right());
}

std::string to_string(const Formula& a) {
  using K = Formula::Kind;
  // precedence: atoms, then *, then |
  switch (a.kind()) {
    case K::One: return "1";
    case K::Bot: return "bot";
    case K::Var: return a.name();
    case K::NegVar: return "~" + a.name();
    case K::Tensor: {
      auto wrap = [](const Formula& f) {
        std::string s = to_string(f);
        return f.is_atom() ? s : "(" + s + ")";
      };
      // right-associative chains of the same connective print unparenthesized
      std::string lhs = wrap(a.left());
      std::string rhs = a.right().kind() == K::Tensor ? to_string(a.right())
                                                      : wrap(a.right());
      return lhs + " * " + rhs;
    }
    case K::Par: {
      auto wrap = [](const Formula& f) {
        std::string s = to_string(f);
        return f.kind() == K::Par ? "(" + s + ")" : (f.kind() == K::Tensor ? "(" + s + ")" : s);
      };
      std::string lhs = wrap(a.left());
      std::string rhs = a.right().kind() == K::Par
                            ? to_string(a.right())
                            : (a.right().kind() == K::Tensor ? "(" + to_string(a.right()) + ")"
                                                             : to_string(a.right()));
      return lhs + " | " + rhs;
    }
  }
  throw std::logic_error("to_string: bad kind");
}

namespace {

struct FTok {
  enum Kind { One, Bot, Ident, NegIdent, Star, Pipe, Lolli, LParen, RParen, End } kind;
  std::string text;
};

class FLexer {
public:
  explicit FLexer(std::string_view s) : src_(s) { advance(); }
  const FTok& peek() const { return tok_; }
  FTok take() {
    FTok t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < src_.size() && std::isspace((unsigned char)src_[pos_])) pos_++;
    if (pos_ >= src_.size()) {
      tok_ = {FTok::End, ""};
      return;
    }
    char c = src_[pos_];
    if (c == '1') { pos_++; tok_ = {FTok::One, "1"}; return; }
    if (c == '*') { pos_++; tok_ = {FTok::Star, "*"}; return; }
    if (c == '|') { pos_++; tok_ = {FTok::Pipe, "|"}; return; }
    if (c == '(') { pos_++; tok_ = {FTok::LParen, "("}; return; }
    if (c == ')') { pos_++; tok_ = {FTok::RParen, ")"}; return; }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == 'o') {
      pos_ += 2;
      tok_ = {FTok::Lolli, "-o"};
      return;
    }
    bool neg = false;
    if (c == '~') {
      neg = true;
      pos_++;
      if (pos_ >= src_.size()) throw FormulaParseError("dangling ~");
      c = src_[pos_];
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_'))
        pos_++;
      std::string id(src_.substr(start, pos_ - start));
      if (id == "bot") {
        if (neg) throw FormulaParseError("~bot is not a formula; write 1");
        tok_ = {FTok::Bot, id};
      } else {
        tok_ = {neg ? FTok::NegIdent : FTok::Ident, id};
      }
      return;
    }
    throw FormulaParseError("unexpected character '" + std::string(1, c) + "' in formula");
  }

  std::string_view src_;
  size_t pos_ = 0;
  FTok tok_;
};

class FParser {
public:
  explicit FParser(std::string_view s) : lex_(s) {}

  Formula parse() {
    Formula f = lolli();
    if (lex_.peek().kind != FTok::End)
      throw FormulaParseError("trailing input after formula");
    return f;
  }

private:
  Formula lolli() {
    Formula lhs = par();
    if (lex_.peek().kind == FTok::Lolli) {
      lex_.take();
      Formula rhs = lolli();
      return Formula::par(negate_formula(lhs), rhs);
    }
    return lhs;
  }
  Formula par() {
    Formula lhs = tensor();
    if (lex_.peek().kind == FTok::Pipe) {
      lex_.take();
      return Formula::par(lhs, par());
    }
    return lhs;
  }
  Formula tensor() {
    Formula lhs = primary();
    if (lex_.peek().kind == FTok::Star) {
      lex_.take();
      return Formula::tensor(lhs, tensor());
    }
    return lhs;
  }
  Formula primary() {
    FTok t = lex_.take();
    switch (t.kind) {
      case FTok::One: return Formula::one();
      case FTok::Bot: return Formula::bot();
      case FTok::Ident: return Formula::var(t.text);
      case FTok::NegIdent: return Formula::negvar(t.text);
      case FTok::LParen: {
        Formula f = lolli();
        if (lex_.take().kind != FTok::RParen)
          throw FormulaParseError("missing )");
        return f;
      }
      default:
        throw FormulaParseError("unexpected token '" + t.text + "' in formula");
    }
  }

  FLexer lex_;
};

}  // namespace

Formula parse_formula(std::string_view src) { return FParser(src).parse(); }

}  // namespace smll
