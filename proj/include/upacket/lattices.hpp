#ifndef UPACKET_LATTICES_HPP
#define UPACKET_LATTICES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "upacket/cyclic_field.hpp"
#include "upacket/embeddings.hpp"

namespace upacket {

// Block lattice sequences. Every sequence here is principal per block: the
// block-b lattice at integer index r is p^{ceil((r + offset_b)/scale_b)}
// times a fixed unit lattice, and scale_b equals the period. All structural
// questions (duality, filtration ideals, quotients) reduce to closed-form
// ceiling arithmetic on the offsets.

enum class BlockKind { Minus, Component, Plus };

struct BlockLabel {
    BlockKind kind = BlockKind::Component;
    int id = -1; // component id; for Minus/Plus, the id of the doubled slot

    bool operator==(const BlockLabel& o) const {
        return kind == o.kind && id == o.id;
    }
    std::string str() const;
};

struct Block {
    BlockLabel label;
    int degree = 1; // over F
    std::int64_t offset = 0;
    std::int64_t scale = 2;
};

/// Hermitian pairing bookkeeping: block a pairs with block b (a == b for
/// self-paired blocks) with the given valuation of the form on the unit
/// lattices.
struct PairingEntry {
    int a = 0;
    int b = 0;
    int valuation = 0;
};

struct DisplayGroup {
    std::string name;
    std::vector<int> block_indices;
};

class BlockLatticeSequence {
  public:
    BlockLatticeSequence() = default;

    std::int64_t period() const { return period_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    bool has_pairing() const { return has_pairing_; }
    const std::vector<PairingEntry>& pairing() const;
    const std::vector<DisplayGroup>& display_groups() const { return groups_; }

    /// Exponent of the block-b lattice at integer index r.
    std::int64_t exponent_at(int block, std::int64_t r) const;
    /// Index of the pairing partner of a block. Requires pairing data.
    int partner(int block) const;
    int pairing_valuation(int block) const;

    friend BlockLatticeSequence direct_sum(const BlockLatticeSequence&,
                                           const BlockLatticeSequence&);
    friend BlockLatticeSequence dual(const BlockLatticeSequence&);
    friend class SequenceBuilder;

  private:
    std::int64_t period_ = 2;
    std::vector<Block> blocks_;
    bool has_pairing_ = false;
    std::vector<PairingEntry> pairing_;
    std::vector<DisplayGroup> groups_;
};

BlockLatticeSequence direct_sum(const BlockLatticeSequence& a,
                                const BlockLatticeSequence& b);

/// The conjugate-dual sequence k -> (L(1-k))^*. Requires pairing data.
BlockLatticeSequence dual(const BlockLatticeSequence& L);

bool is_self_dual(const BlockLatticeSequence& L);

/// Equality of block data up to reordering (labels, degrees, offsets,
/// scales, periods).
bool equal_up_to_reorder(const BlockLatticeSequence& a,
                         const BlockLatticeSequence& b);

/// The standard self-dual rank-one chain o, p, p, p^2, ... in a component of
/// the given degree (jump between indices 0 and 1).
BlockLatticeSequence standard_chain(int component_id, int degree);

/// The self-dual period-2 sequence attached to a partition: components on
/// the odd side jump between indices 0 and 1, components on the even side
/// between 1 and 2.
BlockLatticeSequence build_Lambda_x(const EmbeddingClass& x,
                                    const std::vector<int>& degrees);

enum class HigherKind { Lambda, My, Mz };

/// The doubled-slot sequences in W = V_- (+) V (+) V_+: the period-6
/// sequence interleaving the three slots, and its two period-2 coarsenings
/// (vertex lattices), combining the minus/plus copies of component i0 with
/// the given partition sequence. When i0 lies on the even side, the basis
/// convention switches the roles of the two sides (the side containing i0 is
/// always the aligned one).
BlockLatticeSequence build_higher(const EmbeddingClass& x, int i0,
                                  HigherKind kind,
                                  const std::vector<int>& degrees);

/// The doubled-slot sequence for a single component (no partition data);
/// direct-summing the remaining component chains reproduces build_higher.
BlockLatticeSequence build_pm(int i0, int degree);

/// The period-2 chain of one component as it sits inside the partition
/// sequence: aligned on the odd side, shifted on the even side.
BlockLatticeSequence component_chain(int id, int degree, bool even_side);

/// Blocks of a W-sequence lying in End(V), rescaled to the period of the
/// partition sequence.
BlockLatticeSequence restrict_to_V(const BlockLatticeSequence& L);

struct ReductiveQuotientType {
    enum class Family { U1, U2, U3, GL1 };
    struct Factor {
        Family family;
        int degree; // residue-field degree over F of the component
        bool operator==(const Factor& o) const {
            return family == o.family && degree == o.degree;
        }
    };
    std::vector<Factor> factors;
};

ReductiveQuotientType reductive_quotient(const BlockLatticeSequence& L);

/// A displayed valuation matrix over the sequence's display groups.
/// BULLET marks entries excluded from comparison.
struct BlockValuationMatrix {
    static constexpr std::int64_t BULLET = INT64_MIN;
    std::vector<std::string> labels;
    std::vector<std::vector<std::int64_t>> entries;

    std::int64_t at(std::size_t j, std::size_t k) const { return entries[j][k]; }
    std::string format() const;
};

/// The ideal P^r of the sequence's hereditary order in displayed block form:
/// entry (J, K) = ceil((r + o_J - o_K)/e).
BlockValuationMatrix valuation_matrix(const BlockLatticeSequence& L,
                                      std::int64_t r);

enum class FiltrationGroup { H1, J1, J };

/// Filtration index of the U-part of the named subgroup: (e/2)*d for J1/J
/// and (e/2)*d + 1 for H1.
std::int64_t filtration_index(FiltrationGroup g, std::int64_t period, int d);

/// U/U^- block entries of the named compact subgroup, with BULLET on the
/// Levi blocks; reproduces the standard tables for both parities of d.
BlockValuationMatrix filtration_matrix(FiltrationGroup group, HigherKind base,
                                       int d, const EmbeddingClass& x, int i0,
                                       const std::vector<int>& degrees);

enum class Region { U, Uminus, M };

struct FiltrationSpec {
    FiltrationGroup group;
    HigherKind base;
};

struct QuotientConstituent {
    enum class Kind { CrossPair, Hermitian, Internal } kind;
    int component = -1;  // CrossPair: the component i; Internal: row component
    int component2 = -1; // Internal: column component
    int multiplicity = 0;
    TensorShape shape; // CrossPair: k_{E_i} (x) k_{E_{i0}}
};

/// The quotient numerator/denominator on the given region as a formal sum of
/// sigma-fixed block spaces. Requires denominator contained in the numerator
/// entry-wise on the region.
std::vector<QuotientConstituent>
quotient_space(const FiltrationSpec& numerator, const FiltrationSpec& denominator,
               Region region, int d, const EmbeddingClass& x, int i0,
               const std::vector<int>& degrees);

} // namespace upacket

#endif
