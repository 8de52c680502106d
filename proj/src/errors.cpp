#include "padelab/errors.hpp"

#include "padelab/number.hpp"

namespace padelab {

RankDeficiency::RankDeficiency(std::size_t rank, std::vector<std::vector<QComplex>> basis)
    : Error("matrix is rank deficient: rank " + std::to_string(rank) + ", nullspace dimension " +
            std::to_string(basis.size())),
      rank_(rank),
      basis_(std::move(basis)) {}

NonUniqueDenominator::NonUniqueDenominator(std::size_t dimension)
    : Error("Pade denominator is not unique: nullspace dimension " + std::to_string(dimension)),
      dimension_(dimension) {}

}  // namespace padelab
