#pragma once

#include <string>

#include "tadic/polytope/laurent.hpp"

namespace tadic {

/// poly := term (('+'|'-') term)*, term := coeff ('*' mono)? | mono,
/// mono := var('^'int)? ('*' var('^'int)?)*, var := 'x'digit+,
/// coeff := int | 'g^'int with g the generator of F_q. A leading sign is
/// accepted. With n == 0 the number of variables is the largest index used.
/// Errors are ParseError (with byte offset) or DomainError.
LaurentPoly parse_laurent(const std::string& text, const FieldPtr& field, int n = 0);

}  // namespace tadic
