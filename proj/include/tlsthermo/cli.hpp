#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it with captured streams.
//
// Exit status: 0 success, 1 domain or feasibility error, 2 usage error.

#include <iosfwd>
#include <string>
#include <vector>

#include "tlsthermo/constants.hpp"

namespace tls::cli {

enum class Units { si, reduced };
enum class OutputFormat { table, csv, json };

struct RunConfig {
  Units units = Units::si;
  int precision = 12;  // significant digits, within [6, 17]
  OutputFormat format = OutputFormat::table;
  Constants constants = Constants::codata();
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// Environment variables overriding the constants (flags take precedence).
inline constexpr const char* kEnvBoltzmann = "TLSTHERMO_K_B";
inline constexpr const char* kEnvBohrMagneton = "TLSTHERMO_MU_B";

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tls::cli
