#pragma once

#include <stdexcept>
#include <string>

namespace gauge_rabi {

// Error categories map one-to-one onto the CLI exit codes.
enum class ErrorKind { config = 2, numeric = 3, data = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& what)
        : std::runtime_error(what), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const noexcept { return kind_; }
    // Short machine-readable tag, e.g. "boundary_leak".
    const std::string& code() const noexcept { return code_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
    std::string code_;
};

inline Error config_error(std::string code, const std::string& what) {
    return {ErrorKind::config, std::move(code), what};
}
inline Error numeric_error(std::string code, const std::string& what) {
    return {ErrorKind::numeric, std::move(code), what};
}
inline Error data_error(std::string code, const std::string& what) {
    return {ErrorKind::data, std::move(code), what};
}

}  // namespace gauge_rabi
