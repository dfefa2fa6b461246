#pragma once

#include <stdexcept>
#include <string>

namespace w2n {

enum class errc {
  invalid_argument,
  division_by_zero,
  singular_matrix,
  nonlocal_product,
  domain,       // excluded or pole value of k, out-of-range (n,m), ...
  parse,
  internal,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace w2n
