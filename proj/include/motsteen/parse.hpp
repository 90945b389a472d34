#pragma once

// Text grammars shared by the CLI and module files.
//
//   coeff   := cterm (('+' | '-') cterm)*      cterm := factor ('*' factor)*
//   factor  := INT | 'tau' ('^' INT)? | 'rho' ('^' INT)?
//   dual    := term (('+' | '-') term)*        term := atom (('*' | WS) atom)*
//              atoms: coefficient factors, 't' INT, 'x' INT, each with optional '^' INT
//   op      := same shape; atoms: coefficient factors, Milnor basis literals
//              ('Q' INT | 'QE{' INT,... '}')? ('P' INT | 'P(' INT,... ')')?,
//              'Sq' INT, 'b', 'q' INT, 'M' INT.  Juxtaposed atoms multiply:
//              "A B" is the composite A after B.
//   bmu     := same shape; atoms: coefficient factors, 'u', 'v' with optional '^' INT
//
// Errors are ParseError carrying the byte offset and the expected tokens.

#include "motsteen/bmu.hpp"

#include <string_view>

namespace motsteen {

Coeff parse_coeff(std::string_view src, Ring ring);
DualElement parse_dual(std::string_view src, const DualSteenrod& dual);
OpElement parse_op(std::string_view src, const MilnorAlgebra& algebra);
BmuElement parse_bmu(std::string_view src, const BmuComodule& bmu);

}  // namespace motsteen
