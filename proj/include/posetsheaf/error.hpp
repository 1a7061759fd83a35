#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace posetsheaf {

enum class ErrorKind { input, domain, resource, internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Malformed or out-of-schema input.
struct InputError : Error {
  explicit InputError(const std::string& w) : Error(ErrorKind::input, w) {}
};

// Well-formed input that violates a mathematical precondition.
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::domain, w) {}
};

// An enumeration bound was hit; `bound` names the limit and its value.
struct ResourceError : Error {
  ResourceError(const std::string& bound, std::size_t value, const std::string& w)
      : Error(ErrorKind::resource, w + " (bound " + bound + "=" + std::to_string(value) + ")"),
        bound_name(bound),
        bound_value(value) {}
  std::string bound_name;
  std::size_t bound_value;
};

// A post-condition that should hold by construction failed.
struct InternalError : Error {
  explicit InternalError(const std::string& w) : Error(ErrorKind::internal, w) {}
};

struct Limits {
  std::size_t max_elems = 20;          // alexandrov_opens / upper_set_lattice carrier size
  std::size_t dense_lattice = 4096;    // above this, join/meet are computed on demand
  std::size_t max_ground = 4096;       // covering ground sets
  std::size_t max_lattice = 100000;    // generated (covering) lattices
  std::size_t max_proj_horizon = 20;   // proj_poset(N)

  // Reads POSETSHEAF_MAX_ELEMS if set.
  static Limits from_env() {
    Limits l;
    if (const char* v = std::getenv("POSETSHEAF_MAX_ELEMS")) {
      char* end = nullptr;
      unsigned long long n = std::strtoull(v, &end, 10);
      if (end == v || *end != '\0' || n == 0)
        throw InputError(std::string("POSETSHEAF_MAX_ELEMS must be a positive integer, got '") + v + "'");
      l.max_elems = static_cast<std::size_t>(n);
    }
    return l;
  }
};

inline const Limits& default_limits() {
  static const Limits l = Limits::from_env();
  return l;
}

}  // namespace posetsheaf
