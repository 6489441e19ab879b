#pragma once

#include <filesystem>
#include <iosfwd>

#include "zeig/tensor.hpp"

namespace zeig {

// Text format: the first non-comment line is "m n"; every following
// non-comment line is "i1 i2 ... im value" with 1-based indices. '#' starts a
// comment that runs to the end of the line. Parse failures throw
// Error(ParseError) naming the offending line; validation failures keep the
// Tensor constructor's code (NegativeEntry, ...) with the line number added.
Tensor read_tensor(std::istream& in);
Tensor load_tensor(const std::filesystem::path& path);

void write_tensor(std::ostream& out, const Tensor& a);

}  // namespace zeig
