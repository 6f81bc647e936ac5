#pragma once

#include "groundstate/error.hpp"

namespace groundstate {

/// 0 success, 1 configuration or input error, 2 solver failure, 3 condition
/// or verification failure.
int exit_code_for(ErrorKind kind);

int run_cli(int argc, char** argv);

}  // namespace groundstate
