#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dcjx {

/// Gene family identifier. Families are positive; 0 is never a valid family.
using Family = std::uint32_t;

enum class Strand : std::uint8_t { forward, reverse };

inline Strand flip(Strand s) { return s == Strand::forward ? Strand::reverse : Strand::forward; }

struct GeneMarker {
    Family family = 1;
    Strand strand = Strand::forward;

    /// Builds a marker from its signed notation; throws std::invalid_argument on 0.
    static GeneMarker from_signed(long long value);
    long long to_signed() const {
        return strand == Strand::forward ? static_cast<long long>(family)
                                         : -static_cast<long long>(family);
    }
    GeneMarker flipped() const { return {family, flip(strand)}; }

    auto operator<=>(const GeneMarker&) const = default;
};

enum class Topology : std::uint8_t { linear, circular };

/// A non-empty sequence of gene markers, read left to right.
///
/// Equality is representation-invariant: a linear chromosome equals its
/// reversed, sign-flipped reading, and a circular chromosome additionally
/// equals any rotation of either reading.
class Chromosome {
public:
    Chromosome(std::vector<GeneMarker> genes, Topology topology);

    const std::vector<GeneMarker>& genes() const { return genes_; }
    Topology topology() const { return topology_; }
    bool is_circular() const { return topology_ == Topology::circular; }
    std::size_t size() const { return genes_.size(); }

    /// Smallest reading under the symmetries of the topology.
    Chromosome canonical() const;

    bool operator==(const Chromosome& other) const;
    /// Orders canonical forms; used to sort chromosomes inside a genome.
    bool canonical_less(const Chromosome& other) const;

private:
    std::vector<GeneMarker> genes_;
    Topology topology_;
};

struct Genome {
    std::string name;
    std::vector<Chromosome> chromosomes;

    std::size_t gene_count() const;
    /// Chromosomes canonicalized and sorted; chromosome order carries no meaning.
    Genome canonical() const;
    /// Same multiset of chromosomes (names are ignored).
    bool equivalent(const Genome& other) const;
};

/// Occurrence count per gene family within one genome. Only families that
/// occur are stored, so every count is at least one.
class FamilyCensus {
public:
    FamilyCensus() = default;
    explicit FamilyCensus(std::map<Family, std::size_t> counts);

    std::size_t count(Family family) const;
    const std::map<Family, std::size_t>& counts() const { return counts_; }
    std::size_t total() const;

    bool operator==(const FamilyCensus&) const = default;

private:
    std::map<Family, std::size_t> counts_;
};

FamilyCensus family_census(const Genome& genome);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Parses the genome file format:
///
///     >NAME
///     1 -2 3 $      (linear chromosome)
///     4 5 @         (circular chromosome)
///
/// Blank lines are ignored. Errors carry the 1-based line number.
std::vector<Genome> parse_genomes(std::string_view text);
std::string serialize_genomes(std::span<const Genome> genomes);

std::vector<Genome> read_genome_file(const std::filesystem::path& path);
void write_genome_file(const std::filesystem::path& path, std::span<const Genome> genomes);

std::string to_string(const Chromosome& chromosome);

}  // namespace dcjx
