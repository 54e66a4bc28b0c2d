#ifndef UPACKET_EMBEDDINGS_HPP
#define UPACKET_EMBEDDINGS_HPP

#include <map>
#include <vector>

#include "upacket/characters.hpp"

namespace upacket {

/// A torus-embedding class: a partition of the component index set I into
/// I_o and I_e with #I_e even. Components are referred to by their position
/// in the datum's component list.
struct EmbeddingClass {
    std::vector<int> index_set;
    std::vector<int> odd_part;
    std::vector<int> even_part;

    bool in_even(int id) const;
    bool operator==(const EmbeddingClass& o) const {
        return index_set == o.index_set && even_part == o.even_part;
    }
};

/// All partitions of I with #I_e even; exactly 2^{#I-1} classes.
std::vector<EmbeddingClass> enumerate_embeddings(const std::vector<int>& ids);

enum class HermitianTwist { Unit, Uniformizer };

/// Unit scaling on I_o, uniformizer scaling on I_e.
std::map<int, HermitianTwist> hermitian_twists(const EmbeddingClass& x);

/// The Weyl-group equivalence on pairs (x, xi): equal partitions, together
/// with a degree- and side-preserving permutation of I and per-component
/// Galois twists carrying one datum to the other.
bool weyl_equivalent(const EmbeddingClass& x, const VeryCuspidalDatum& xi,
                     const EmbeddingClass& x2, const VeryCuspidalDatum& xi2);

} // namespace upacket

#endif
