#ifndef MUFRAC_ERROR_HPP
#define MUFRAC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mufrac {

/// Raised when an argument violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a persisted artifact (capacity tree, wavelet field, filter
/// table) fails to parse or to re-validate.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an operation's hypothesis on the environment does not hold
/// (e.g. an almost-doubling precondition) and no override was requested.
class HypothesisError : public std::runtime_error {
 public:
  explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InvalidArgument(msg);
}
}  // namespace detail

}  // namespace mufrac

#endif  // MUFRAC_ERROR_HPP
