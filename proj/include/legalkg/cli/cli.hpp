#pragma once

#include <exception>
#include <iostream>
#include <string>
#include <vector>

namespace legalkg::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 1,  // bad input data, parse errors, failed checks
  kIoFailure = 2,          // files, network, LLM provider
  kConfigError = 3,        // configuration and command-line usage
};

// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr);

// Exit code for an exception, decided by the innermost recognised cause.
int exit_code_for(const std::exception& e);

// "what" of `e` followed by one "  caused by: ..." line per nested exception.
std::string cause_chain(const std::exception& e);

}  // namespace legalkg::cli
