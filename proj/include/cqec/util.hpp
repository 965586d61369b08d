#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace cqec {

template <class... Parts>
std::string cat(Parts&&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

[[noreturn]] inline void fail(const std::string& msg) { throw std::runtime_error(msg); }

template <class... Parts>
void require(bool cond, Parts&&... parts) {
  if (!cond) fail(cat(std::forward<Parts>(parts)...));
}

}  // namespace cqec
