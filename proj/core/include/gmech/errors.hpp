#pragma once

#include <stdexcept>
#include <string>

namespace gmech {

// Malformed or precondition-violating input (bad graph, nonpositive weight,
// disconnected graph passed to an operation that requires connectivity, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An edge failed one of the three collapse conditions. `condition()` reports
// which one: 1 = tail not ordinary, 2 = reverse edge present, 3 = covered.
class NotCollapsibleError : public ValidationError {
 public:
  NotCollapsibleError(int condition, const std::string& what)
      : ValidationError(what), condition_(condition) {}
  int condition() const { return condition_; }

 private:
  int condition_;
};

class NotProperSubgraphError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Some edge of the graph carries zero aggregate offer; the mechanism is only
// defined when every opportunity is active.
class InactiveEdgeError : public ValidationError {
 public:
  InactiveEdgeError(int from, int to, const std::string& what)
      : ValidationError(what), from_(from), to_(to) {}
  int from() const { return from_; }  // 0-based
  int to() const { return to_; }

 private:
  int from_, to_;
};

// A broken internal invariant (e.g. the balance system's kernel is not
// one-dimensional for a validated connected graph). Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gmech
