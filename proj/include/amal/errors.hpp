#pragma once

#include <stdexcept>
#include <string>

namespace amal {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Group construction failures. Each names the first violation found.
struct NotLatinSquare : Error {
  int row;
  explicit NotLatinSquare(int r, const std::string& what)
      : Error(what), row(r) {}
};

struct NoIdentity : Error {
  using Error::Error;
};

struct NonAssociative : Error {
  int a, b, c;
  NonAssociative(int a_, int b_, int c_, const std::string& what)
      : Error(what), a(a_), b(b_), c(c_) {}
};

struct BadEmbedding : Error {
  int a, b;
  BadEmbedding(int a_, int b_, const std::string& what)
      : Error(what), a(a_), b(b_) {}
};

struct ElementInH : Error {
  int index;
  ElementInH(int i, const std::string& what) : Error(what), index(i) {}
};

struct NotCyclicallyReduced : Error {
  using Error::Error;
};

struct ContextMismatch : Error {
  using Error::Error;
};

struct PreconditionUnverified : Error {
  using Error::Error;
};

struct HypothesisFailed : Error {
  std::string hypothesis;
  HypothesisFailed(std::string hyp, const std::string& what)
      : Error(what), hypothesis(std::move(hyp)) {}
};

struct SeparatednessViolated : Error {
  int i, j;
  SeparatednessViolated(int i_, int j_, const std::string& what)
      : Error(what), i(i_), j(j_) {}
};

struct MalnormalityViolated : Error {
  int element;
  MalnormalityViolated(int el, const std::string& what)
      : Error(what), element(el) {}
};

struct BudgetExceeded : Error {
  int lower_bound;
  BudgetExceeded(int lb, const std::string& what)
      : Error(what), lower_bound(lb) {}
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace amal
