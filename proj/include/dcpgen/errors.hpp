#pragma once

#include <stdexcept>
#include <string>

namespace dcpgen {

// Invalid input is reported with std::invalid_argument. The types below cover
// the remaining failure classes so callers (and the CLI exit codes) can tell
// them apart.

/// A requested precision or size cannot be met within the memory budget.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rejection sampler ran out of its configured trial budget.
class TrialCapExceeded : public std::runtime_error {
 public:
  TrialCapExceeded(const std::string& what, unsigned long long trials)
      : std::runtime_error(what), trials_(trials) {}
  unsigned long long trials() const noexcept { return trials_; }

 private:
  unsigned long long trials_;
};

/// An invariant that construction should guarantee was found broken.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dcpgen
