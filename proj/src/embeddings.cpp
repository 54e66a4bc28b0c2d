#include "upacket/embeddings.hpp"

#include <algorithm>

namespace upacket {

bool EmbeddingClass::in_even(int id) const {
    return std::find(even_part.begin(), even_part.end(), id) != even_part.end();
}

std::vector<EmbeddingClass> enumerate_embeddings(const std::vector<int>& ids) {
    if (ids.empty())
        throw ValidationError("nonempty index set",
                              "no embeddings for an empty index set");
    const std::size_t k = ids.size();
    std::vector<EmbeddingClass> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        if (__builtin_popcountll(mask) % 2 != 0) continue;
        EmbeddingClass x;
        x.index_set = ids;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask & (std::uint64_t{1} << i))
                x.even_part.push_back(ids[i]);
            else
                x.odd_part.push_back(ids[i]);
        }
        out.push_back(std::move(x));
    }
    return out;
}

std::map<int, HermitianTwist> hermitian_twists(const EmbeddingClass& x) {
    std::map<int, HermitianTwist> m;
    for (int id : x.odd_part) m[id] = HermitianTwist::Unit;
    for (int id : x.even_part) m[id] = HermitianTwist::Uniformizer;
    return m;
}

namespace {

bool component_matches_up_to_galois(const SkewCharacterComponent& a,
                                    const SkewCharacterComponent& b,
                                    std::uint64_t q0) {
    if (a.n != b.n || a.level != b.level || a.omega != b.omega ||
        a.skew_sign != b.skew_sign)
        return false;
    for (int m = 0; m < a.n; ++m)
        if (galois_twist(a, q0, m) == b) return true;
    return false;
}

} // namespace

bool weyl_equivalent(const EmbeddingClass& x, const VeryCuspidalDatum& xi,
                     const EmbeddingClass& x2, const VeryCuspidalDatum& xi2) {
    if (!(x == x2)) return false;
    if (xi.q0 != xi2.q0 || xi.components.size() != xi2.components.size())
        return false;
    const std::size_t k = xi.components.size();

    // Permutations preserving degrees and the partition sides, times
    // per-component Galois twists.
    std::vector<int> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = static_cast<int>(i);
    std::sort(perm.begin(), perm.end());
    do {
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
            const int j = perm[i];
            const int id_i = x.index_set[i];
            const int id_j = x.index_set[static_cast<std::size_t>(j)];
            if (xi.components[i].n != xi2.components[static_cast<std::size_t>(j)].n)
                ok = false;
            else if (x.in_even(id_i) != x.in_even(id_j))
                ok = false;
            else if (!component_matches_up_to_galois(
                         xi.components[i],
                         xi2.components[static_cast<std::size_t>(j)], xi.q0))
                ok = false;
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

} // namespace upacket
