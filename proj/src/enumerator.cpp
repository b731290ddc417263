#include "stabweight/enumerator.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace stabweight {

Integer krawtchouk(int j, int z, int n) {
    if (j < 0 || z < 0 || j > n || z > n) throw std::invalid_argument("krawtchouk arguments out of range");
    Integer total = 0;
    int top = std::min(z, j);
    for (int m = 0; m <= top; ++m) {
        Integer term = pow3(static_cast<unsigned long>(j - m));
        term *= binomial(static_cast<unsigned long>(n - z), static_cast<unsigned long>(j - m));
        term *= binomial(static_cast<unsigned long>(z), static_cast<unsigned long>(m));
        if (m & 1)
            total -= term;
        else
            total += term;
    }
    return total;
}

namespace {

struct MatrixPair {
    IntegerMatrix plain;
    IntegerMatrix sign_flipped;
};

const MatrixPair& cached_matrices(int n) {
    static std::map<int, MatrixPair> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        MatrixPair pair;
        pair.plain.resize(n + 1, n + 1);
        pair.sign_flipped.resize(n + 1, n + 1);
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                Integer value = krawtchouk(i, j, n);
                pair.sign_flipped(i, j) = (j & 1) ? Integer(-value) : value;
                pair.plain(i, j) = std::move(value);
            }
        }
        it = cache.emplace(n, std::move(pair)).first;
    }
    return it->second;
}

}  // namespace

const IntegerMatrix& krawtchouk_matrix(int n) { return cached_matrices(n).plain; }
const IntegerMatrix& krawtchouk_matrix_signed(int n) { return cached_matrices(n).sign_flipped; }

RationalVector enumerator_from_group(const StabilizerGenerators& g, std::size_t max_rank) {
    RationalVector a = RationalVector::Zero(g.num_qubits() + 1);
    for_each_group_element(
        g, [&](const PauliOperator& p) { a[static_cast<Eigen::Index>(p.weight())] += 1; },
        max_rank);
    return a;
}

namespace {

RationalVector scaled_transform(const IntegerMatrix& m, const RationalVector& a,
                                const Integer& k_dimension) {
    if (m.cols() != a.size()) throw DimensionError("enumerator length does not match the matrix");
    int n = static_cast<int>(a.size()) - 1;
    Rational scale(k_dimension, pow2(static_cast<unsigned long>(n)));
    scale.canonicalize();
    RationalVector out(a.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Rational acc(0);
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (sgn(a[j]) != 0) acc += Rational(m(i, j)) * a[j];
        }
        out[i] = scale * acc;
    }
    return out;
}

}  // namespace

RationalVector macwilliams(const RationalVector& a, const Integer& k_dimension) {
    return scaled_transform(krawtchouk_matrix(static_cast<int>(a.size()) - 1), a, k_dimension);
}

RationalVector shadow(const RationalVector& a, const Integer& k_dimension) {
    return scaled_transform(krawtchouk_matrix_signed(static_cast<int>(a.size()) - 1), a,
                            k_dimension);
}

ExtendedInt distance_from_enumerators(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw DimensionError("enumerator lengths differ");
    for (Eigen::Index j = 0; j < a.size(); ++j) {
        if (a[j] != b[j]) return ExtendedInt(static_cast<long long>(j));
    }
    return ExtendedInt::infinity();
}

std::pair<Rational, Rational> average_group_weight_check(const StabilizerGenerators& g,
                                                         std::size_t max_rank) {
    RationalVector a = enumerator_from_group(g, max_rank);
    Rational total(0), mass(0);
    for (Eigen::Index j = 0; j < a.size(); ++j) {
        total += Rational(static_cast<long>(j)) * a[j];
        mass += a[j];
    }
    Rational lhs = total / mass;
    lhs.canonicalize();
    Rational rhs(3 * static_cast<long>(g.num_qubits()));
    rhs -= a[1];
    rhs /= 4;
    rhs.canonicalize();
    return {lhs, rhs};
}

}  // namespace stabweight
