#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dcjx/distance.hpp"
#include "dcjx/genome.hpp"
#include "dcjx/random.hpp"

namespace dcjx {

/// Occurrence count of each family in the median. Families with count 0 are
/// not stored.
struct MedianContent {
    std::map<Family, std::uint32_t> counts;

    std::uint32_t gene_count() const;
    bool operator==(const MedianContent&) const = default;
};

/// Per family: a count shared by two or three inputs wins, otherwise the
/// middle one.
MedianContent init_median_content(const FamilyCensus& c1, const FamilyCensus& c2, const FamilyCensus& c3);

/// Twice the number of linear chromosomes.
std::uint32_t telomere_count(const Genome& genome);

using Trio = std::array<Genome, 3>;

/// Multiple breakpoint graph of three inputs and a median with fixed gene
/// content.
///
/// Vertices 0 .. 2M-1 are the extremities of the M median genes (head of
/// gene k is 2k, tail 2k+1; genes are ordered by family, then copy). The
/// remaining vertices are caps. The 0-matching pairs every vertex with
/// another one: an extremity paired with a cap is a telomere, and a cap
/// paired with a cap carries nothing.
///
/// Input adjacencies are kept at the family level: with duplicated families
/// one vertex of the graph may stand for several occurrences. Families that
/// occur anywhere are indexed 0 .. family_count()-1, and node 2f+e is end e
/// of family f.
class MultipleBreakpointGraph {
public:
    static constexpr std::int32_t kNone = -1;

    /// `caps` defaults to the largest telomere count among the inputs and
    /// must be even.
    MultipleBreakpointGraph(Trio inputs, MedianContent content, std::optional<std::uint32_t> caps = std::nullopt);

    const Trio& inputs() const { return inputs_; }
    const MedianContent& content() const { return content_; }

    std::uint32_t gene_count() const { return static_cast<std::uint32_t>(gene_family_.size()); }
    std::uint32_t extremity_count() const { return 2 * gene_count(); }
    std::uint32_t cap_count() const { return caps_; }
    std::uint32_t vertex_count() const { return extremity_count() + caps_; }
    bool is_cap(std::uint32_t v) const { return v >= extremity_count(); }
    Family gene_family(std::uint32_t gene) const { return gene_family_[gene]; }
    /// Family-level node of an extremity vertex.
    std::uint32_t family_node(std::uint32_t v) const { return vertex_node_[v]; }
    /// True if every input and the median hold exactly one copy of the family.
    bool regular(std::uint32_t v) const;

    std::uint32_t family_count() const { return static_cast<std::uint32_t>(families_.size()); }
    const std::vector<Family>& families() const { return families_; }
    /// Adjacencies of input `color` (0, 1, 2) between family-level nodes.
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& input_edges(int color) const {
        return input_edges_[color];
    }
    /// Family-level nodes at the ends of the linear chromosomes of input `color`.
    const std::vector<std::uint32_t>& input_telomeres(int color) const { return input_telomeres_[color]; }

    std::int32_t partner(std::uint32_t v) const { return partner_[v]; }
    const std::vector<std::int32_t>& matching() const { return partner_; }
    /// Throws std::invalid_argument unless `partner` is a perfect matching on
    /// all vertices that keeps every fixed edge.
    void set_matching(std::vector<std::int32_t> partner);
    /// 0-edges (u < v) sorted by u.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> zero_edges() const;
    bool is_valid_matching(const std::vector<std::int32_t>& partner) const;

    bool fixed(std::uint32_t v) const { return fixed_[v]; }
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& fixed_edges() const { return fixed_edges_; }
    /// Marks 0-edges that every matching must contain. The current matching is
    /// rewired to contain them.
    void fix_edges(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

    /// Telomere-aware identity of the current matching: caps are
    /// interchangeable, so only extremity partners (or "some cap") count.
    std::string key() const { return key_of(partner_); }
    std::string key_of(const std::vector<std::int32_t>& partner) const;

private:
    Trio inputs_;
    MedianContent content_;
    std::uint32_t caps_ = 0;
    std::vector<Family> families_;
    std::vector<std::array<std::uint32_t, 4>> family_counts_;  // three inputs, then the median
    std::vector<Family> gene_family_;
    std::vector<std::uint32_t> vertex_node_;
    std::array<std::vector<std::pair<std::uint32_t, std::uint32_t>>, 3> input_edges_;
    std::array<std::vector<std::uint32_t>, 3> input_telomeres_;
    std::vector<std::int32_t> partner_;
    std::vector<bool> fixed_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> fixed_edges_;
};

/// Uniformly random perfect matching over the non-fixed vertices; fixed
/// edges are kept.
std::vector<std::int32_t> init_zero_matching(const MultipleBreakpointGraph& mbg, std::uint64_t seed);

/// Genome spelled by a matching. Linear chromosomes are read from their
/// lowest telomere, circular ones from the head of their lowest gene.
Genome decode_median(const MultipleBreakpointGraph& mbg, const std::vector<std::int32_t>& partner,
                     const std::string& name = "median");
inline Genome decode_median(const MultipleBreakpointGraph& mbg) { return decode_median(mbg, mbg.matching()); }

struct MedianScore {
    int total = 0;
    std::array<int, 3> distances{};
};

/// Sum of distances from `median` to the three inputs. Results are cached
/// by the canonical form of the median. Not thread-safe.
class MedianScorer {
public:
    MedianScorer(Trio inputs, Model model, SolverOptions options = {});

    MedianScore score(const Genome& median);
    /// Distance-solver calls made so far (cache hits excluded).
    std::uint64_t evaluations() const { return evaluations_; }
    Model model() const { return model_; }

private:
    Trio inputs_;
    Model model_;
    SolverOptions options_;
    std::unordered_map<std::string, MedianScore> cache_;
    std::uint64_t evaluations_ = 0;
};

MedianScore median_score(const MultipleBreakpointGraph& mbg, Model model, const SolverOptions& options = {});

/// Two 0-edges and the way they are rejoined. With edges {a, b} and {c, d}
/// (a < b, c < d, first edge has the smaller lower end) variant 0 gives
/// {a, c}, {b, d} and variant 1 gives {a, d}, {b, c}.
struct DcjMove {
    std::pair<std::uint32_t, std::uint32_t> first;
    std::pair<std::uint32_t, std::uint32_t> second;
    int variant = 0;
    auto operator<=>(const DcjMove&) const = default;
};

/// Applies `move` to a partner array; throws std::invalid_argument if either
/// pair is not a 0-edge of it or the edges coincide.
std::vector<std::int32_t> dcj_neighbor(const std::vector<std::int32_t>& partner, const DcjMove& move);

/// Every move over pairs of non-fixed 0-edges, both variants, in
/// lexicographic order. Moves that only swap caps between telomeres (the
/// result spells the same genome) are left out.
std::vector<DcjMove> neighbor_moves(const MultipleBreakpointGraph& mbg, const std::vector<std::int32_t>& partner);

/// Connected components of the 0-i graphs for one matching. All caps of a
/// graph are one node: input telomeres and 0-edges to caps attach to it.
class ColorComponents {
public:
    ColorComponents(const MultipleBreakpointGraph& mbg, const std::vector<std::int32_t>& partner);

    /// Component of the 0-edge holding `v` in color `color`.
    std::uint32_t component(int color, std::uint32_t v) const;
    /// Colors in which both edges of the move share a component.
    int num_pair(const DcjMove& move) const;

private:
    const MultipleBreakpointGraph* mbg_;
    const std::vector<std::int32_t>* partner_;
    std::array<std::vector<std::uint32_t>, 3> root_;
};

int num_pair(const MultipleBreakpointGraph& mbg, const DcjMove& move);

enum class SearchMode { lk, kopt };

struct LKConfig {
    int L1 = 2;
    int L2 = 3;
    int delta = 2;
    SearchMode mode = SearchMode::lk;

    /// K-OPT with both levels equal to k.
    static LKConfig kopt(int k, int delta = 2) { return {k, k, delta, SearchMode::kopt}; }
    /// Throws std::invalid_argument unless 0 < L1 <= L2, and L1 == L2 for K-OPT.
    void validate() const;
};

struct LKResult {
    MedianScore score;
    /// Score of the start matching followed by every accepted score.
    std::vector<int> accepted_scores;
    std::uint64_t expanded_nodes = 0;
    std::uint64_t visited_nodes = 0;
};

/// Local search from the current matching of `mbg`, which is replaced by the
/// best matching found.
LKResult lk_search(MultipleBreakpointGraph& mbg, const LKConfig& config, MedianScorer& scorer);

struct ShrinkResult {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> fixed_edges;
    int rounds = 0;
};

/// Fixes 0-edges between regular vertices joined by at least two input
/// colors, contracts each fixed edge, and repeats until nothing changes.
/// The fixed edges are recorded on `mbg`.
ShrinkResult shrink_adequate_subgraphs(MultipleBreakpointGraph& mbg);

struct MedianOptions {
    LKConfig lk;
    bool shrink = true;
    std::uint64_t seed = 0;
    std::optional<std::uint32_t> caps;
    SolverOptions distance;
};

struct MedianResult {
    Genome median;
    MedianContent content;
    MedianScore score;
    int initial_score = 0;
    std::vector<int> accepted_scores;
    int fixed_edges = 0;
    std::uint64_t evaluations = 0;
    std::uint64_t expanded_nodes = 0;
};

MedianResult solve_median(const Trio& inputs, Model model, const MedianOptions& options = {});

struct ExhaustiveMedian {
    MedianScore score;
    Genome median;
    std::uint64_t matchings = 0;
};

/// Best median over every genome with the given content and at most
/// `max_telomeres` telomeres, optionally keeping the extremity pairs in
/// `required`. Throws AssignmentSpaceTooLarge when the number of matchings
/// exceeds `limit`.
ExhaustiveMedian exhaustive_median(const MultipleBreakpointGraph& mbg, Model model,
                                   const std::vector<std::pair<std::uint32_t, std::uint32_t>>& required = {},
                                   std::uint64_t limit = 2'000'000, const SolverOptions& options = {});

}  // namespace dcjx
