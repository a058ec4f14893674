#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcoh::cli {

/**
 * Runs one command line (program name excluded), writing the report to out
 * and diagnostics to err. Returns the process exit status: 0 on success,
 * 1 when the computation ran but a certificate failed, 2 when the flags or
 * the input were unusable.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcoh::cli
