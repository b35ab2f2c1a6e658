#pragma once

#include <stdexcept>
#include <string>

namespace polyscar {

// Machine-readable error codes, also used by the CLI for exit statuses.
enum class errc {
  config,              // bad configuration / unsupported constant
  domain,              // invalid argument (zero vector, empty list, ...)
  resource,            // tolerance below available precision, budget exceeded
  needs_approximation, // IrrationalCase lattice without a rational approx
  unsupported_boundary,
  compatibility,       // periodic-skeleton size condition violated
  kind,                // operation applied to the wrong skeleton kind
  internal
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::config: return "E_CONFIG";
    case errc::domain: return "E_DOMAIN";
    case errc::resource: return "E_RESOURCE";
    case errc::needs_approximation: return "E_NEEDS_APPROX";
    case errc::unsupported_boundary: return "E_BOUNDARY";
    case errc::compatibility: return "E_COMPAT";
    case errc::kind: return "E_KIND";
    case errc::internal: return "E_INTERNAL";
  }
  return "E_UNKNOWN";
}

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

} // namespace polyscar
