#ifndef MCRS_ERROR_HPP
#define MCRS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mcrs {

// Error categories; the numeric values double as CLI exit codes.
enum class errc : int {
  parse = 2,      // malformed input
  domain = 3,     // input outside the operation's domain
  precision = 4,  // a certified decision could not be reached at max precision
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace mcrs

#endif
