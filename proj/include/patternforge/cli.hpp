#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pf {

// Output schema tag carried by every JSON payload.
inline constexpr const char* kSchema = "patternforge/1";

// Exit codes: 0 completed, 1 oracle mismatch or failed verification, 2 usage
// or input error. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pf
