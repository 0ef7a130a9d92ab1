#pragma once

#include "maxreg/order_io.hpp"
#include "maxreg/symbol.hpp"

namespace maxreg {

/// {n, radial, monomials: [{re, im, i, alpha | r}]}
PolySymbol poly_from_json(const json& j);
json to_json(const PolySymbol& p);

/// A builtin name ("D", "i*tau", "|xi|^2", "d0+", "d1+", "1", ...), a number,
/// {re, im}, or an inline polynomial object.
SymbolFn symbol_ref(const json& j);

/// {m, entries: [[ref...]...], rows: [order...], cols: [order...]} or a builtin name ("chg-L").
MatrixSymbol matrix_from_json(const json& j);

}  // namespace maxreg
