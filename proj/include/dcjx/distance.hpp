#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcjx/breakpoint_graph.hpp"
#include "dcjx/pair_instance.hpp"

namespace dcjx {

/// Chosen resolution per family. Families with a single possible resolution
/// may be omitted.
using Assignment = std::map<Family, FamilyChoice>;

/// A (gamma copy, pi copy) pair that every search node must contain.
struct FixedPair {
    Family family = 0;
    std::uint32_t gamma_copy = 0;
    std::uint32_t pi_copy = 0;
    auto operator<=>(const FixedPair&) const = default;
};

struct SolverOptions {
    bool fix_two_cycles = true;
    bool condense = true;
    bool decompose = true;
    /// Extra random completions tried for the initial upper bound.
    int random_restarts = 0;
    std::uint64_t seed = 0;
    /// Record (lb, ub) of every expanded node.
    bool record_trace = false;
};

struct TraceEntry {
    int group = 0;
    int lb = 0;
    int ub = 0;
};

struct SearchStats {
    std::uint64_t expanded_nodes = 0;
    std::uint64_t generated_nodes = 0;
    std::uint64_t pruned_nodes = 0;
    std::uint64_t evaluations = 0;
    int fixed_pairs = 0;
    int groups = 0;
    int decision_families = 0;
    bool early_exit = false;
    std::vector<TraceEntry> trace;
    /// Optimum of each sub-problem, indexed like TraceEntry::group.
    std::vector<int> group_optimum;
};

struct DistanceResult {
    int distance = 0;
    Model model = Model::exemplar;
    Assignment assignment;
    Genome gamma_resolved;
    Genome pi_resolved;
    SearchStats stats;
};

/// 2-cycles of the family-level breakpoint graph that may be fixed before
/// the search. A 2-cycle is an adjacency present in both genomes; one of its
/// families must occur exactly once in each genome and the other must still
/// need a decision. Candidates that disagree with another candidate on the
/// same family are dropped: fixing every 2-cycle can lose the optimum.
std::vector<FixedPair> fix_short_cycles(const PairInstance& inst, Model model);

struct ComponentGroup {
    std::vector<Family> families;
    /// Holds every decision family whose component can carry an open vertex.
    /// Such components interact through the path-balance terms of the
    /// distance formula and are searched together.
    bool coupled = false;
};

/// Splits the decision families into groups that can be searched one at a
/// time with the other groups left at their default resolution.
std::vector<ComponentGroup> decompose_components(const PairInstance& inst, Model model,
                                                 const std::vector<FixedPair>& fixed = {});

DistanceResult branch_and_bound(const Genome& gamma, const Genome& pi, Model model, const SolverOptions& options = {});
DistanceResult exemplar_distance(const Genome& gamma, const Genome& pi, const SolverOptions& options = {});
DistanceResult matching_distance(const Genome& gamma, const Genome& pi, const SolverOptions& options = {});

/// Relabels the pair according to `assignment`; unassigned families take
/// their first resolution.
std::pair<Genome, Genome> apply_assignment(const Genome& gamma, const Genome& pi, Model model,
                                           const Assignment& assignment);

class AssignmentSpaceTooLarge : public std::runtime_error {
public:
    AssignmentSpaceTooLarge(std::uint64_t size, std::uint64_t limit);
    std::uint64_t size() const { return size_; }

private:
    std::uint64_t size_;
};

/// Product of per-family resolution counts, saturating at `cap`.
std::uint64_t assignment_space_size(const PairInstance& inst, Model model, std::uint64_t cap);

/// Minimum distance over every resolution of every family, each evaluated by
/// materializing the genomes and building their breakpoint graph from scratch.
int oracle_distance(const Genome& gamma, const Genome& pi, Model model, std::uint64_t limit = 1'000'000);

}  // namespace dcjx
