#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mealy/mealy.hpp"

// The two-state machine over {0,1} generating the lamplighter group:
//   x --(0|1)--> y   x --(1|0)--> x   y --(0|0)--> x   y --(1|1)--> y
inline mealy::MealyMachine lamplighter() { return mealy::catalog("lamplighter").machine; }

inline mealy::MealyMachine machine_J() { return mealy::catalog("J").machine; }

// One state that copies every letter through unchanged.
inline mealy::MealyMachine identity_machine(std::size_t letters = 2) {
  mealy::MachineDescription d;
  d.name = "identity";
  d.states = {"e"};
  for (std::size_t i = 0; i < letters; ++i) d.alphabet.push_back(std::to_string(i));
  for (const auto& l : d.alphabet) d.transitions.push_back({"e", l, "e", l});
  return mealy::build_machine(d);
}

inline mealy::MachineDescription lamplighter_description() {
  mealy::MachineDescription d;
  d.name = "lamplighter";
  d.states = {"x", "y"};
  d.alphabet = {"0", "1"};
  d.transitions = {{"x", "0", "y", "1"},
                   {"x", "1", "x", "0"},
                   {"y", "0", "x", "0"},
                   {"y", "1", "y", "1"}};
  return d;
}
