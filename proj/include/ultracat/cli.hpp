#pragma once

namespace ultracat {

// Batch front end. Returns the process exit status: 0 success, 1 domain
// error (a {"error": ...} object is printed), 2 usage error.
int run_cli(int argc, char** argv);

}  // namespace ultracat
