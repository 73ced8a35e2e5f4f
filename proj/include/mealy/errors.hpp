#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mealy {

struct MealyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingTransition : MealyError {
  MissingTransition(std::string state_, std::string letter_)
      : MealyError("missing transition from state '" + state_ + "' on letter '" + letter_ + "'"),
        state(std::move(state_)),
        letter(std::move(letter_)) {}
  std::string state;
  std::string letter;
};

struct DuplicateTransition : MealyError {
  DuplicateTransition(std::string state_, std::string letter_)
      : MealyError("duplicate transition from state '" + state_ + "' on letter '" + letter_ + "'"),
        state(std::move(state_)),
        letter(std::move(letter_)) {}
  std::string state;
  std::string letter;
};

struct UnknownSymbol : MealyError {
  explicit UnknownSymbol(std::string symbol_)
      : MealyError("unknown state or letter '" + symbol_ + "'"), symbol(std::move(symbol_)) {}
  std::string symbol;
};

struct AlphabetMismatch : MealyError {
  AlphabetMismatch() : MealyError("machines act on different alphabets") {}
};

struct NotInvertible : MealyError {
  explicit NotInvertible(std::string state_)
      : MealyError("machine is not invertible: state '" + state_ + "' does not permute the alphabet"),
        state(std::move(state_)) {}
  std::string state;
};

struct NotReversible : MealyError {
  explicit NotReversible(std::string letter_)
      : MealyError("machine is not reversible: letter '" + letter_ + "' does not permute the states"),
        letter(std::move(letter_)) {}
  std::string letter;
};

struct NotClosed : MealyError {
  NotClosed(std::string state_, std::string letter_, std::string target_)
      : MealyError("state set is not transition-closed: '" + state_ + "' leaves on letter '" +
                   letter_ + "' towards '" + target_ + "'"),
        state(std::move(state_)),
        letter(std::move(letter_)),
        target(std::move(target_)) {}
  std::string state;
  std::string letter;
  std::string target;
};

struct BudgetExceeded : MealyError {
  explicit BudgetExceeded(std::size_t budget_)
      : MealyError("exploration budget of " + std::to_string(budget_) + " state words exceeded"),
        budget(budget_) {}
  std::size_t budget;
};

struct LevelMismatch : MealyError {
  LevelMismatch(std::size_t from_, std::size_t to_)
      : MealyError("liftability target lives at level " + std::to_string(to_) +
                   ", above the source level " + std::to_string(from_)),
        from(from_),
        to(to_) {}
  std::size_t from;
  std::size_t to;
};

struct DepthExceeded : MealyError {
  DepthExceeded(std::size_t requested_, std::size_t available_)
      : MealyError("tree depth " + std::to_string(available_) +
                   " is too shallow for level " + std::to_string(requested_)),
        requested(requested_),
        available(available_) {}
  std::size_t requested;
  std::size_t available;
};

// Signals a broken internal invariant: component sizes of consecutive power
// levels of a reversible machine always divide evenly.
struct NonIntegerLabel : MealyError {
  NonIntegerLabel(std::size_t child_, std::size_t parent_)
      : MealyError("component size " + std::to_string(child_) +
                   " is not a multiple of its parent size " + std::to_string(parent_)),
        child(child_),
        parent(parent_) {}
  std::size_t child;
  std::size_t parent;
};

struct ParseError : MealyError {
  ParseError(std::size_t line_, std::string reason_)
      : MealyError("parse error at line " + std::to_string(line_) + ": " + reason_),
        line(line_),
        reason(std::move(reason_)) {}
  std::size_t line;
  std::string reason;
};

struct UnknownKey : MealyError {
  explicit UnknownKey(std::string key_)
      : MealyError("no catalog entry named '" + key_ + "'"), key(std::move(key_)) {}
  std::string key;
};

}  // namespace mealy
