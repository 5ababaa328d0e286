#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace react::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitComputation = 3;

// Bad or conflicting command-line configuration; names the offending flag.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string flag, const std::string& what)
        : std::runtime_error(flag + ": " + what), flag_(std::move(flag)) {}

    const std::string& flag() const noexcept { return flag_; }

private:
    std::string flag_;
};

// args excludes the program name. Artifacts go to --out when given, else to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace react::cli
