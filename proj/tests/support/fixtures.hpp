#ifndef CONSNET_TESTS_FIXTURES_HPP
#define CONSNET_TESTS_FIXTURES_HPP

#include "consnet/model.hpp"

#include <string>

namespace consnet::testing {

/// Directory holding the .csn fixture files.
std::string data_path(const std::string& file);

/// Four constraints sharing x3 whose extension sets of (a,b,a) to x3 share d.
ConstraintNetwork n1();

/// All-different over x1,x2,x3 in {1,2,3} and x in {1..4}; declared in the
/// order x1, x2, x, x3.
ConstraintNetwork n2();

/// Staff member versus access right, tree convex under a star centred on b
/// for the access side.
ConstraintNetwork accessibility();

/// x <= y over 1..10.
ConstraintNetwork leq_1_to_10();

/// x,y over {a,b,c}: {(a,a),(a,b),(b,a),(b,b),(c,a),(c,c)}.
ConstraintNetwork c5();

/// Variables 1..5 over {0,1} with a constraint on every pair and triple,
/// ternary ones first, all universal.
ConstraintNetwork complete_five();

/// Variables y1..y4: y2 meets only y1 and y4 through non-tight constraints;
/// every other pair carries a properly 1-tight constraint.
ConstraintNetwork weakly_tight_counterexample();

/// x != y with both domains {v}.
ConstraintNetwork unsatisfiable_pair();

} // namespace consnet::testing

#endif // CONSNET_TESTS_FIXTURES_HPP
