#include "dcjx/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dcjx/random.hpp"

namespace dcjx {

namespace {

// Rates are decimal fractions; the slack keeps 0.29 * 100 from flooring to 28.
std::uint32_t scaled(double rate, std::uint32_t n) {
    return static_cast<std::uint32_t>(std::floor(rate * n + 1e-9));
}

std::size_t genome_size(const std::vector<std::vector<GeneMarker>>& chromosomes) {
    std::size_t n = 0;
    for (const auto& c : chromosomes) n += c.size();
    return n;
}

// Uniform gap among all chromosomes: chromosome c, position 0 .. size(c).
std::pair<std::uint32_t, std::uint32_t> random_gap(const std::vector<std::vector<GeneMarker>>& chromosomes, Rng& rng) {
    std::size_t total = 0;
    for (const auto& c : chromosomes) total += c.size() + 1;
    auto k = bounded(rng, total);
    for (std::uint32_t c = 0; c < chromosomes.size(); ++c) {
        if (k <= chromosomes[c].size()) return {c, static_cast<std::uint32_t>(k)};
        k -= chromosomes[c].size() + 1;
    }
    return {0, 0};
}

std::pair<std::uint32_t, std::uint32_t> random_occurrence(const std::vector<std::vector<GeneMarker>>& chromosomes,
                                                          Rng& rng) {
    auto k = bounded(rng, genome_size(chromosomes));
    for (std::uint32_t c = 0; c < chromosomes.size(); ++c) {
        if (k < chromosomes[c].size()) return {c, static_cast<std::uint32_t>(k)};
        k -= chromosomes[c].size();
    }
    return {0, 0};
}

std::vector<long long> signed_genes(std::vector<GeneMarker>::const_iterator first,
                                    std::vector<GeneMarker>::const_iterator last) {
    std::vector<long long> out;
    for (auto it = first; it != last; ++it) out.push_back(it->to_signed());
    return out;
}

}  // namespace

std::uint32_t EvolutionConfig::inversions() const { return scaled(theta, n); }
std::uint32_t EvolutionConfig::indels() const { return scaled(gamma, n); }
std::uint32_t EvolutionConfig::duplications() const { return scaled(phi, n); }

void EvolutionConfig::validate() const {
    if (n == 0) throw std::invalid_argument("n must be at least 1");
    for (double r : {theta, gamma, phi, insertion_fraction}) {
        if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("rates must lie in [0, 1]");
    }
    if (duplication_length == 0) throw std::invalid_argument("duplication length must be at least 1");
}

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::inversion: return "inversion";
        case EventKind::insertion: return "insertion";
        case EventKind::deletion: return "deletion";
        case EventKind::duplication: return "duplication";
        case EventKind::skipped_deletion: return "skipped-deletion";
        case EventKind::skipped_duplication: return "skipped-duplication";
        case EventKind::skipped_inversion: return "skipped-inversion";
    }
    return "?";
}

Genome make_identity(std::uint32_t n, const std::string& name) {
    if (n == 0) throw std::invalid_argument("identity genome needs at least one gene");
    std::vector<GeneMarker> genes;
    for (std::uint32_t f = 1; f <= n; ++f) genes.push_back({f, Strand::forward});
    Genome g{name, {}};
    g.chromosomes.emplace_back(std::move(genes), Topology::linear);
    return g;
}

EvolutionResult evolve(const Genome& seed_genome, const EvolutionConfig& config, FamilyAllocator* families) {
    config.validate();
    Family last = 0;
    std::vector<std::vector<GeneMarker>> chromosomes;
    std::vector<Topology> topology;
    for (const auto& c : seed_genome.chromosomes) {
        chromosomes.push_back(c.genes());
        topology.push_back(c.topology());
        for (const auto& g : c.genes()) last = std::max(last, g.family);
    }
    FamilyAllocator own(last);
    if (families == nullptr) families = &own;

    Rng rng(config.seed);
    enum class Slot { inversion, indel, duplication };
    std::vector<Slot> order;
    order.insert(order.end(), config.inversions(), Slot::inversion);
    order.insert(order.end(), config.indels(), Slot::indel);
    order.insert(order.end(), config.duplications(), Slot::duplication);
    shuffle(order, rng);

    EvolutionResult out;
    auto drop_empty = [&](std::uint32_t c) {
        if (!chromosomes[c].empty()) return;
        chromosomes.erase(chromosomes.begin() + c);
        topology.erase(topology.begin() + c);
    };
    for (const auto slot : order) {
        EvolutionEvent e;
        const bool empty = genome_size(chromosomes) == 0;
        if (slot == Slot::inversion) {
            if (empty) {
                e.kind = EventKind::skipped_inversion;
                out.warnings.push_back("inversion skipped: genome is empty");
            } else {
                std::uint32_t c;
                do {
                    c = static_cast<std::uint32_t>(bounded(rng, chromosomes.size()));
                } while (chromosomes[c].empty());
                auto& genes = chromosomes[c];
                auto i = static_cast<std::uint32_t>(bounded(rng, genes.size()));
                auto j = static_cast<std::uint32_t>(bounded(rng, genes.size()));
                if (i > j) std::swap(i, j);
                std::reverse(genes.begin() + i, genes.begin() + j + 1);
                for (auto k = i; k <= j; ++k) genes[k] = genes[k].flipped();
                e.kind = EventKind::inversion;
                e.chromosome = c;
                e.start = i;
                e.end = j + 1;
                e.genes = signed_genes(genes.begin() + i, genes.begin() + j + 1);
            }
        } else if (slot == Slot::indel) {
            const bool insert = unit(rng) < config.insertion_fraction;
            if (insert) {
                const GeneMarker g{families->next(), rng() % 2 ? Strand::reverse : Strand::forward};
                if (chromosomes.empty()) {
                    chromosomes.push_back({});
                    topology.push_back(Topology::linear);
                }
                const auto [c, p] = random_gap(chromosomes, rng);
                chromosomes[c].insert(chromosomes[c].begin() + p, g);
                e.kind = EventKind::insertion;
                e.chromosome = c;
                e.start = p;
                e.end = p + 1;
                e.genes = {g.to_signed()};
            } else if (empty) {
                e.kind = EventKind::skipped_deletion;
                out.warnings.push_back("deletion skipped: genome is empty");
            } else {
                const auto [c, p] = random_occurrence(chromosomes, rng);
                e.kind = EventKind::deletion;
                e.chromosome = c;
                e.start = p;
                e.end = p + 1;
                e.genes = {chromosomes[c][p].to_signed()};
                chromosomes[c].erase(chromosomes[c].begin() + p);
                drop_empty(c);
            }
        } else {
            if (empty) {
                e.kind = EventKind::skipped_duplication;
                out.warnings.push_back("duplication skipped: genome is empty");
            } else {
                const auto [c, p] = random_occurrence(chromosomes, rng);
                const auto len = std::min<std::uint32_t>(config.duplication_length,
                                                         static_cast<std::uint32_t>(chromosomes[c].size()) - p);
                const std::vector<GeneMarker> copy(chromosomes[c].begin() + p, chromosomes[c].begin() + p + len);
                const auto [tc, tp] = random_gap(chromosomes, rng);
                chromosomes[tc].insert(chromosomes[tc].begin() + tp, copy.begin(), copy.end());
                e.kind = EventKind::duplication;
                e.chromosome = c;
                e.start = p;
                e.end = p + len;
                e.target_chromosome = tc;
                e.target = tp;
                e.genes = signed_genes(copy.begin(), copy.end());
            }
        }
        out.events.push_back(std::move(e));
    }

    out.genome.name = seed_genome.name;
    for (std::size_t c = 0; c < chromosomes.size(); ++c) {
        if (!chromosomes[c].empty()) out.genome.chromosomes.emplace_back(std::move(chromosomes[c]), topology[c]);
    }
    return out;
}

SimulatedTrio make_trio(const EvolutionConfig& config) {
    config.validate();
    SimulatedTrio out;
    out.seed_genome = make_identity(config.n);
    FamilyAllocator families(config.n);
    for (int i = 0; i < 3; ++i) {
        auto sub = config;
        sub.seed = derive_seed(config.seed, static_cast<std::uint64_t>(i));
        out.genomes[i] = evolve(out.seed_genome, sub, &families);
        out.genomes[i].genome.name = "G" + std::to_string(i + 1);
    }
    return out;
}

std::array<EvolutionResult, 2> make_pair(const EvolutionConfig& config) {
    config.validate();
    const auto seed_genome = make_identity(config.n);
    FamilyAllocator families(config.n);
    std::array<EvolutionResult, 2> out;
    for (int i = 0; i < 2; ++i) {
        auto sub = config;
        sub.seed = derive_seed(config.seed, static_cast<std::uint64_t>(i));
        out[i] = evolve(seed_genome, sub, &families);
        out[i].genome.name = "G" + std::to_string(i + 1);
    }
    return out;
}

std::string format_event_log(const std::vector<std::pair<std::string, std::vector<EvolutionEvent>>>& logs) {
    std::ostringstream os;
    os << "genome\tindex\tkind\tchromosome\tstart\tend\ttarget_chromosome\ttarget\tgenes\n";
    for (const auto& [name, events] : logs) {
        for (std::size_t i = 0; i < events.size(); ++i) {
            const auto& e = events[i];
            os << name << '\t' << i << '\t' << to_string(e.kind) << '\t' << e.chromosome << '\t' << e.start << '\t'
               << e.end << '\t';
            if (e.kind == EventKind::duplication) {
                os << e.target_chromosome << '\t' << e.target;
            } else {
                os << "-\t-";
            }
            os << '\t';
            for (std::size_t k = 0; k < e.genes.size(); ++k) os << (k ? "," : "") << e.genes[k];
            if (e.genes.empty()) os << '-';
            os << '\n';
        }
    }
    return os.str();
}

}  // namespace dcjx
