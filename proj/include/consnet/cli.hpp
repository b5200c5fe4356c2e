#ifndef CONSNET_CLI_HPP
#define CONSNET_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace consnet {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitError = 2;

/// Runs one `consnet` command. `args` excludes the program name. The network
/// file argument "-" reads from `in`. Returns the process exit code:
/// 0 when the property holds or the command succeeded, 1 when it fails
/// (a WITNESS line follows the RESULT line), 2 for usage, parse and
/// capability errors (reported on `err` as "ERROR ...").
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

} // namespace consnet

#endif // CONSNET_CLI_HPP
