#pragma once

#include <stdexcept>
#include <string>

namespace rankduel {

/// A Taxer or Ranker move that breaks the round rules of the current game.
class IllegalMove : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An input lies outside the configured size limits of an exponential search.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A strategy or constructive routine was invoked outside its hypotheses.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace rankduel
