#pragma once

#include <stdexcept>
#include <string>

namespace fanoqc {

/* Error taxonomy:
 *   TargetError      - the requested variety is outside the supported family
 *   QueryError       - indices or bounds of a query are out of range
 *   ConsistencyError - an internal cross-check failed; this always indicates
 *                      a bug, never bad user input (the recursions are
 *                      overdetermined and we verify the redundancy)
 *   CacheError       - persisted table file is malformed or mismatched
 */

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TargetError : Error {
    using Error::Error;
};

struct QueryError : Error {
    using Error::Error;
};

struct ConsistencyError : Error {
    using Error::Error;
};

struct CacheError : Error {
    using Error::Error;
};

} // namespace fanoqc
