#pragma once

#include <string>
#include <vector>

#include "tropwave/errors.hpp"

namespace tropwave::cli {

enum ExitCode : int { Ok = 0, ParseFailure = 2, DomainViolation = 3, NoConvergence = 4, CertificateFailure = 5 };

int exit_code_for(ErrorCode code);

/// Runs the tool on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args);

}  // namespace tropwave::cli
