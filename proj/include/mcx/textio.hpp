#pragma once

#include <string>

#include "mcx/multicomplex.hpp"

namespace mcx {

/// Text format, one complex per document:
///   n <int>
///   face <id> : v1 v2 v2 ...     (non-singleton faces only; singletons are implicit)
///   rel <id> < <id>              (order pairs among non-singleton ids)
/// '#' starts a comment; blank lines are skipped. Face ids in a file are
/// arbitrary distinct integers; emission uses the canonical ids n+1..n+m and
/// the transitive reduction of the order.
MultiComplex parse_text(const std::string& text);
std::string emit_text(const MultiComplex& c);

/// JSON equivalent: {"n": int, "faces": [{"id": int, "multiset": [int,...]}],
/// "order": [[lo,hi],...]}.
MultiComplex parse_json(const std::string& text);
std::string emit_json(const MultiComplex& c);

/// Reads a file, dispatching on extension: .json anywhere in the suffix
/// selects JSON, anything else parses as text.
MultiComplex load_complex(const std::string& path);

} // namespace mcx
