#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dcjx/genome.hpp"

namespace dcjx {

enum class Model : std::uint8_t { exemplar, matching };

const char* to_string(Model m);
std::optional<Model> parse_model(std::string_view s);

enum Side : int { kGamma = 0, kPi = 1 };

inline constexpr std::uint32_t kNoCopy = 0xFFFFFFFFu;

struct OccurrenceRef {
    std::uint32_t family_index = 0;
    std::uint32_t copy = 0;  // k-th occurrence of the family in this genome
    Strand strand = Strand::forward;
};

struct ChromosomeLayout {
    Topology topology = Topology::linear;
    std::vector<std::uint32_t> occurrences;  // indices into GenomeLayout::occurrences, in reading order
};

struct GenomeLayout {
    std::vector<OccurrenceRef> occurrences;
    std::vector<ChromosomeLayout> chromosomes;
    std::vector<std::vector<std::uint32_t>> by_family;  // [family_index][copy] -> occurrence
};

struct FamilyInfo {
    Family id = 0;
    std::array<std::uint32_t, 2> count{0, 0};
    std::uint32_t label_base = 0;  // first of count[0] + count[1] consecutive labels

    bool duplicated() const { return count[0] > 1 || count[1] > 1; }
    bool shared() const { return count[0] > 0 && count[1] > 0; }
};

/// How one family's occurrences are resolved.
///  - exemplar: a single pair (kept gamma copy, kept pi copy); kNoCopy on a
///    side where the family is absent.
///  - matching: the matched (gamma copy, pi copy) pairs sorted by gamma copy.
///    Unmatched copies stay as genome-private genes.
struct FamilyChoice {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    auto operator<=>(const FamilyChoice&) const = default;
};

/// Two genomes indexed by family and occurrence. Every occurrence can carry
/// a label; equal labels in the two genomes denote the same gene after an
/// exemplar or matching has been applied.
class PairInstance {
public:
    PairInstance(Genome gamma, Genome pi);

    const Genome& source(Side s) const { return sources_[s]; }
    const GenomeLayout& layout(Side s) const { return layouts_[s]; }
    const std::vector<FamilyInfo>& families() const { return families_; }
    std::optional<std::uint32_t> family_index(Family f) const;
    std::uint32_t label_count() const { return label_count_; }
    /// Family id used for `label` when the pair is materialized: the block's
    /// first label keeps the family id, the rest get fresh ids above every
    /// input family.
    Family output_family(std::int32_t label) const { return label_family_[static_cast<std::size_t>(label)]; }

private:
    std::array<Genome, 2> sources_;
    std::array<GenomeLayout, 2> layouts_;
    std::vector<FamilyInfo> families_;
    std::vector<Family> label_family_;
    std::uint32_t label_count_ = 0;
};

inline constexpr std::int32_t kDeleted = -1;

struct Labeling {
    std::array<std::vector<std::int32_t>, 2> labels;

    static Labeling deleted_all(const PairInstance& inst);
};

/// All resolutions of one family in lexicographic order, restricted to those
/// containing every pair in `required`.
std::vector<FamilyChoice> family_options(const FamilyInfo& family, Model model,
                                         const std::vector<std::pair<std::uint32_t, std::uint32_t>>& required = {});

/// Number of resolutions of one family, saturating at `cap`.
std::uint64_t family_option_count(const FamilyInfo& family, Model model, std::uint64_t cap);

/// Writes the labels of one family's occurrences; nullptr deletes them all.
void write_choice(const PairInstance& inst, std::uint32_t family_index, Model model, const FamilyChoice* choice,
                  Labeling& out);

/// Drops deleted occurrences and empty chromosomes and renames families by
/// label; names are kept from the inputs.
std::pair<Genome, Genome> materialize(const PairInstance& inst, const Labeling& labeling);

}  // namespace dcjx
