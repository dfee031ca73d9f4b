#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dcjx/genome.hpp"

namespace dcjx {

struct EvolutionConfig {
    std::uint32_t n = 50;
    double theta = 0.0;  // inversions per gene
    double gamma = 0.0;  // indels per gene
    double phi = 0.0;    // duplications per gene
    std::uint64_t seed = 0;
    /// Share of indels that insert a gene.
    double insertion_fraction = 0.5;
    /// Genes copied by one duplication.
    std::uint32_t duplication_length = 1;

    std::uint32_t inversions() const;
    std::uint32_t indels() const;
    std::uint32_t duplications() const;
    std::uint32_t event_count() const { return inversions() + indels() + duplications(); }
    /// Throws std::invalid_argument for rates outside [0, 1], n == 0 or a
    /// zero duplication length.
    void validate() const;
};

enum class EventKind { inversion, insertion, deletion, duplication, skipped_deletion, skipped_duplication, skipped_inversion };

const char* to_string(EventKind kind);

struct EvolutionEvent {
    EventKind kind = EventKind::inversion;
    /// Chromosome index at the time of the event.
    std::uint32_t chromosome = 0;
    /// Affected positions [start, end) in that chromosome; for a duplication
    /// `start`/`end` is the copied segment and `target` the insertion point
    /// in chromosome `target_chromosome`.
    std::uint32_t start = 0;
    std::uint32_t end = 0;
    std::uint32_t target_chromosome = 0;
    std::uint32_t target = 0;
    std::vector<long long> genes;
};

/// Hands out family identifiers no genome has used yet. One allocator shared
/// by the genomes of a trio keeps inserted genes private to one genome.
class FamilyAllocator {
public:
    explicit FamilyAllocator(Family last_used) : next_(last_used + 1) {}
    Family next() { return next_++; }

private:
    Family next_;
};

struct EvolutionResult {
    Genome genome;
    std::vector<EvolutionEvent> events;
    std::vector<std::string> warnings;
};

/// Single linear chromosome 1 .. n.
Genome make_identity(std::uint32_t n, const std::string& name = "seed");

/// Applies the configured numbers of inversions, indels and duplications in a
/// random order. Without an allocator, inserted families start above the
/// largest family of `seed_genome`.
EvolutionResult evolve(const Genome& seed_genome, const EvolutionConfig& config, FamilyAllocator* families = nullptr);

struct SimulatedTrio {
    Genome seed_genome;
    std::array<EvolutionResult, 3> genomes;
};

/// Three independent runs from the identity on `config.n` genes, with
/// sub-seeds derived from `config.seed`.
SimulatedTrio make_trio(const EvolutionConfig& config);

/// Two runs, as for the pairwise distance experiments.
std::array<EvolutionResult, 2> make_pair(const EvolutionConfig& config);

/// Tab-separated event log with a header line.
std::string format_event_log(const std::vector<std::pair<std::string, std::vector<EvolutionEvent>>>& logs);

}  // namespace dcjx
