#pragma once

#include <stdexcept>
#include <string>

namespace wheelq {

// Invalid arguments or malformed inputs: bad node IDs, undersized wheels,
// duplicate sites, unparseable files.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// An operation could not assemble its quorum. Expected under failures, so it
// is kept distinct from DomainError: callers can tell outage from misuse.
class QuorumUnavailable : public std::runtime_error {
public:
    explicit QuorumUnavailable(const std::string& what) : std::runtime_error(what) {}
};

// No accessible adjacent pair was found within the scan bound.
class ElectionFailed : public QuorumUnavailable {
public:
    explicit ElectionFailed(const std::string& what) : QuorumUnavailable(what) {}
};

}  // namespace wheelq
