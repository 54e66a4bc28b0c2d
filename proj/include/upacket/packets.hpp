#ifndef UPACKET_PACKETS_HPP
#define UPACKET_PACKETS_HPP

#include <cstdint>
#include <vector>

#include "upacket/amending.hpp"
#include "upacket/characters.hpp"
#include "upacket/embeddings.hpp"
#include "upacket/hecke.hpp"

namespace upacket {

struct PacketMember {
    EmbeddingClass x;
    /// Per-component correction tags applied on top of the sign-normalized
    /// character.
    std::vector<SignTag> amendments;
    /// The member's classifying character data after twisting and amending.
    std::vector<SkewCharacterComponent> amended_components;
};

struct PacketDescription {
    VeryCuspidalDatum parameter;
    std::vector<PacketMember> members;
    /// The linear-side cuspidal support shared by every member.
    std::vector<SkewCharacterComponent> base_change;
};

/// The sign-normalizing twist applied to every component before amending:
/// trivial for odd total degree, the unramified quadratic twist otherwise.
SkewCharacterComponent endoscopic_twist(const SkewCharacterComponent& c, int n);

/// Assembles the stable packet of a datum whose components all carry the
/// stable sign: one member per torus-embedding class, each corrected by the
/// rank-3-vertex amending character; the shared base change is the list of
/// original components.
PacketDescription assemble_packet(const VeryCuspidalDatum& datum);

/// The linear-side support of the plain (unamended) datum at the class x.
std::vector<SkewCharacterComponent>
base_change_of(const EmbeddingClass& x, const VeryCuspidalDatum& datum);

/// Whether two linear-side supports agree up to a permutation matching
/// componentwise Galois conjugates.
bool base_change_equivalent(const std::vector<SkewCharacterComponent>& a,
                            const std::vector<SkewCharacterComponent>& b,
                            std::uint64_t q0);

/// Over the tame-twist family of the datum, checks that amending is a
/// bijection and never identifies inequivalent data.
bool amending_unique(const VeryCuspidalDatum& datum);

struct EndoscopicDatum {
    int n1 = 0;
    int n2 = 0;
    int sign1 = 1;
    int sign2 = -1;
    std::vector<int> index_set1;
    std::vector<int> index_set2;
};

struct EndoscopicSplit {
    EndoscopicDatum datum;
    std::vector<PacketDescription> factors; // one per nonempty factor
};

/// Legal sign pairs: opposite signs iff n1 and n2 have equal parity.
bool endoscopic_signs_legal(int n1, int n2, int sign1, int sign2);

/// Splits a mixed-sign datum along the two skewness classes and assembles
/// the factor packets with factor-local twists. Equivalent data with
/// n1 == n2 are canonicalized to (+, -).
EndoscopicSplit endoscopic_split(const VeryCuspidalDatum& datum, int sign1,
                                 int sign2);

} // namespace upacket

#endif
