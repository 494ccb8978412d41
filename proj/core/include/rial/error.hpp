#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rial {

// Library failures carry the subsystem they came from plus a stable code.
// The CLI prints them as "<module>.<Code>" so scripts can match exact
// failure kinds.
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string code, const std::string& detail = {})
        : std::runtime_error(module + "." + code + (detail.empty() ? "" : ": " + detail)),
          module_(std::move(module)),
          code_(std::move(code)),
          detail_(detail) {}

    const std::string& module() const noexcept { return module_; }
    const std::string& code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }
    std::string qualified() const { return module_ + "." + code_; }

private:
    std::string module_;
    std::string code_;
    std::string detail_;
};

}  // namespace rial
