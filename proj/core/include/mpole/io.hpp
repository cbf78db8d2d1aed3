#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "mpole/harmonics.hpp"
#include "mpole/solid.hpp"

namespace mpole {

/// Text format of a solid: a header line `SOLID <kind> <P>` followed by
/// P(P+1) decimal reals, whitespace separated, in storage order.
template <typename Real>
void write_solid(std::ostream& os, const solid<Real>& s);

/// Reads one solid. Returns nullopt at end of input (nothing but
/// whitespace left); throws std::runtime_error naming the line number
/// on malformed input.
template <typename Real>
std::optional<solid<Real>> read_solid(std::istream& is);

/// Reads concatenated solids until end of input.
template <typename Real>
std::vector<solid<Real>> read_solids(std::istream& is);

/// Point-charge text format: one `x y z q` line per charge. Blank lines
/// and lines starting with '#' are skipped.
template <typename Real>
std::vector<point_charge<Real>> read_charges(std::istream& is);

template <typename Real>
void write_charges(std::ostream& os,
                   std::span<const point_charge<Real>> charges);

}  // namespace mpole
