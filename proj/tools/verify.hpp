#pragma once

#include <string>

namespace djcm::tools {

// Series-vs-verifier harness: evaluates the closed-form results against the
// truncated-basis evolution and reports per-check max deviations. Prints one
// line per check; writes a JSON report to out_path when nonempty. Returns
// the number of failed checks.
int run_verify(const std::string& out_path);

}  // namespace djcm::tools
