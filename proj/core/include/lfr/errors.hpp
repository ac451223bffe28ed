#pragma once

#include <stdexcept>
#include <string>

namespace lfr {

// Error classes map onto CLI exit codes: config=2, numeric=3, data=4, constraint=5.
enum class errc {
  config     = 2,
  numeric    = 3,
  data       = 4,
  constraint = 5,
};

class error : public std::runtime_error {
public:
  error(errc c, std::string what) : std::runtime_error(std::move(what)), code_(c) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void throw_numeric(const std::string& w) { throw error(errc::numeric, w); }
[[noreturn]] inline void throw_config(const std::string& w) { throw error(errc::config, w); }
[[noreturn]] inline void throw_data(const std::string& w) { throw error(errc::data, w); }
[[noreturn]] inline void throw_constraint(const std::string& w) { throw error(errc::constraint, w); }

}  // namespace lfr
