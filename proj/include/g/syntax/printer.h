#ifndef G_SYNTAX_PRINTER_H_
#define G_SYNTAX_PRINTER_H_

#include <string>

#include "g/syntax/ast.h"

namespace g::syntax {

// Emits parseable G source. parse(pretty_print(p)) is AST-equal to p.
std::string pretty_print(const Program& program);

std::string print_type(const TypeExpr& t);
std::string print_expr(const Expr& e);
std::string print_constraint(const Constraint& c);

// Indented tree dump, one node per line. With `locations` each line ends
// with "@LINE:COL"; without, two dumps are equal iff the trees are equal.
std::string dump_ast(const Program& program, bool locations = false);

bool ast_equal(const Program& a, const Program& b);

}  // namespace g::syntax

#endif  // G_SYNTAX_PRINTER_H_
