#pragma once

// Integer backend: row-style Hermite normal form with a unimodular transform.
// Generators are rows; U * G == H with H in reduced echelon form (positive
// pivots, entries above a pivot reduced into [0, pivot)).

#include <vector>

#include "hacert/ring.hpp"

namespace hacert::detail {

using IVec = std::vector<Integer>;

struct HermiteForm {
    std::size_t width = 0;
    std::vector<IVec> rows;          // nonzero rows of H
    std::vector<std::size_t> pivots; // pivot column of each row
    std::vector<IVec> transform;     // transform[k] * G == rows[k]
    std::vector<IVec> kernel;        // generators of {u : u * G == 0}, itself in Hermite form
};

HermiteForm hermite(const std::vector<IVec>& generators, std::size_t width, bool with_transform);

/// Reduces v against the form; returns the canonical remainder and, when
/// requested, coefficients c over the Hermite rows with v == c * rows + remainder.
IVec hermite_reduce(IVec v, const HermiteForm& form, IVec* coefficients);

IVec to_ivec(const FreeVector& v);
FreeVector from_ivec(const IVec& v, const RingPtr& ring);

}  // namespace hacert::detail
