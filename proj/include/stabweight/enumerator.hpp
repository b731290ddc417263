#pragma once

#include <utility>

#include "stabweight/extint.hpp"
#include "stabweight/rational.hpp"
#include "stabweight/stabilizer.hpp"

namespace stabweight {

// P_j(z; n) = sum_{m=0}^{min(z,j)} (-1)^m 3^{j-m} C(n-z, j-m) C(z, m).
Integer krawtchouk(int j, int z, int n);

// M_{ij} = P_i(j; n) and the signed variant M~_{ij} = (-1)^j P_i(j; n),
// both (n+1) x (n+1). Built once per n and cached; the returned reference
// stays valid for the program lifetime.
const IntegerMatrix& krawtchouk_matrix(int n);
const IntegerMatrix& krawtchouk_matrix_signed(int n);

// A_j = number of group elements of weight j; length n+1, sum 2^{n-k}.
RationalVector enumerator_from_group(const StabilizerGenerators& g,
                                     std::size_t max_rank = kDefaultMaxRank);

// B = (K / 2^n) M A with K = 2^k. B_j counts weight-j elements of the
// normalizer mod phase when A comes from a stabilizer group.
RationalVector macwilliams(const RationalVector& a, const Integer& k_dimension);

// Sh = (K / 2^n) M~ A; entrywise nonnegative for every valid code.
RationalVector shadow(const RationalVector& a, const Integer& k_dimension);

// Largest d with A_j = B_j for all j < d; Infinity when equal everywhere.
ExtendedInt distance_from_enumerators(const RationalVector& a, const RationalVector& b);

// lhs: mean weight over all group elements. rhs: (3n - A_1)/4. The two are
// equal whenever the code distance is at least 2.
std::pair<Rational, Rational> average_group_weight_check(const StabilizerGenerators& g,
                                                         std::size_t max_rank = kDefaultMaxRank);

}  // namespace stabweight
