#ifndef CONSNET_NETFILE_HPP
#define CONSNET_NETFILE_HPP

#include "consnet/model.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace consnet {

/// Reads the line-oriented network format:
///
///   VAR <name> <value>+
///   CON <name> <var>+
///   T <value>+          (one per allowed tuple, scope order)
///   END
///   TREE root=<value> (<parent>:<child>)*
///   ORDER <var>+
///
/// '#' starts a comment. Throws ParseError carrying the offending line.
ConstraintNetwork parse_network(std::istream& in);
ConstraintNetwork parse_network(std::string_view text);

/// Canonical text: variables, then constraints with tuples in lexicographic
/// order, then TREE and ORDER when present. Re-parsing yields an equal
/// network and printing that again is byte-identical.
std::string print_network(const ConstraintNetwork& net);

/// Same structure, same names, same relations, same tree and ordering.
bool same_network(const ConstraintNetwork& a, const ConstraintNetwork& b);

} // namespace consnet

#endif // CONSNET_NETFILE_HPP
