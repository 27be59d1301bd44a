#ifndef SMLL_FORMULA_HPP
#define SMLL_FORMULA_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace smll {

struct FormulaParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidAddress : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Multiplicative formulas, kept in negation normal form: negation is a
// function on formulas, never a stored constructor (except on atoms).
class Formula {
public:
  enum class Kind { One, Bot, Var, NegVar, Tensor, Par };

  Formula() : Formula(one()) {}

  static Formula one();
  static Formula bot();
  static Formula var(std::string name);
  static Formula negvar(std::string name);
  static Formula tensor(Formula a, Formula b);
  static Formula par(Formula a, Formula b);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const Formula& left() const { return node_->sub[0]; }
  const Formula& right() const { return node_->sub[1]; }

  bool is_atom() const {
    Kind k = kind();
    return k == Kind::One || k == Kind::Bot || k == Kind::Var || k == Kind::NegVar;
  }
  bool is_binary() const { return !is_atom(); }

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

private:
  struct Node {
    Kind kind;
    std::string name;      // Var/NegVar only
    std::vector<Formula> sub;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

enum class Polarity { Positive, Negative, Unpolarized };

// De Morgan dual; involutive.
Formula negate_formula(const Formula& a);

// P ::= 1 | P*P   N ::= bot | N|N   everything else (variables included)
// is unpolarized.
Polarity polarity_of(const Formula& a);

// An occurrence of an atom, identified by its l/r path from the root.
// The sign is structural: One and Var occurrences are positive, Bot and
// NegVar negative (connectives never flip signs in negation normal form).
struct AtomOcc {
  std::string addr;
  bool positive;
  Formula atom;
};

// Left-to-right in-order enumeration of atom occurrences.
std::vector<AtomOcc> atom_addresses(const Formula& a);

// Subtree at the given l/r path; throws InvalidAddress if the path exits
// the tree.
Formula subformula_at(const Formula& a, std::string_view addr);

// Number of binary connectives.
int connective_count(const Formula& a);

bool contains_bot(const Formula& a);

std::string to_string(const Formula& a);

// Textual syntax: `1`, `bot`, `X`, `~X`, `A * B`, `A | B`, `A -o B`
// (sugar for ~A | B), parentheses; all connectives right-associative,
// `*` binds tighter than `|`, which binds tighter than `-o`.
Formula parse_formula(std::string_view src);

}  // namespace smll

#endif
