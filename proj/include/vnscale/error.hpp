#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vnscale {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Two sample points coincide, so an edge would carry weight zero.
class DuplicatePoints : public Error {
public:
    explicit DuplicatePoints(std::vector<std::pair<long, long>> pairs);

    /// Offending (i, j) index pairs with i < j. Truncated to the first few hundred.
    const std::vector<std::pair<long, long>>& pairs() const noexcept { return pairs_; }

private:
    std::vector<std::pair<long, long>> pairs_;
};

/// Modified Gaussian elimination met a pivot too small to divide by.
class PivotUnderflow : public Error {
public:
    using Error::Error;
};

/// Fewer non-kernel eigenvectors exist than the requested embedding dimension.
class KTooLarge : public Error {
public:
    KTooLarge(long requested, long available);
    long requested() const noexcept { return requested_; }
    long available() const noexcept { return available_; }

private:
    long requested_;
    long available_;
};

}  // namespace vnscale
