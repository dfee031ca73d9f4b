#include "dcjx/genome.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace dcjx {

GeneMarker GeneMarker::from_signed(long long value) {
    if (value == 0) {
        throw std::invalid_argument("gene marker 0 is not a valid family");
    }
    const long long magnitude = value < 0 ? -value : value;
    if (magnitude > std::numeric_limits<Family>::max()) {
        throw std::invalid_argument("gene marker out of range: " + std::to_string(value));
    }
    return {static_cast<Family>(magnitude), value < 0 ? Strand::reverse : Strand::forward};
}

namespace {

std::vector<GeneMarker> reversed_reading(const std::vector<GeneMarker>& genes) {
    std::vector<GeneMarker> out;
    out.reserve(genes.size());
    for (auto it = genes.rbegin(); it != genes.rend(); ++it) {
        out.push_back(it->flipped());
    }
    return out;
}

// Lexicographically smallest rotation; quadratic, chromosomes here are short
// enough that Booth's algorithm is not worth the complexity.
std::vector<GeneMarker> min_rotation(const std::vector<GeneMarker>& genes) {
    const std::size_t n = genes.size();
    std::size_t best = 0;
    for (std::size_t start = 1; start < n; ++start) {
        for (std::size_t k = 0; k < n; ++k) {
            const auto& a = genes[(start + k) % n];
            const auto& b = genes[(best + k) % n];
            if (a != b) {
                if (a < b) best = start;
                break;
            }
        }
    }
    std::vector<GeneMarker> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.push_back(genes[(best + k) % n]);
    return out;
}

}  // namespace

Chromosome::Chromosome(std::vector<GeneMarker> genes, Topology topology)
    : genes_(std::move(genes)), topology_(topology) {
    if (genes_.empty()) {
        throw std::invalid_argument("a chromosome must contain at least one gene");
    }
    for (const auto& g : genes_) {
        if (g.family == 0) throw std::invalid_argument("gene family 0 is not valid");
    }
}

Chromosome Chromosome::canonical() const {
    auto forward = genes_;
    auto backward = reversed_reading(genes_);
    if (topology_ == Topology::circular) {
        forward = min_rotation(forward);
        backward = min_rotation(backward);
    }
    return Chromosome(std::min(forward, backward), topology_);
}

bool Chromosome::operator==(const Chromosome& other) const {
    if (topology_ != other.topology_ || genes_.size() != other.genes_.size()) return false;
    return canonical().genes_ == other.canonical().genes_;
}

bool Chromosome::canonical_less(const Chromosome& other) const {
    const auto a = canonical();
    const auto b = other.canonical();
    if (a.topology_ != b.topology_) return a.topology_ < b.topology_;
    return a.genes_ < b.genes_;
}

std::size_t Genome::gene_count() const {
    std::size_t n = 0;
    for (const auto& c : chromosomes) n += c.size();
    return n;
}

Genome Genome::canonical() const {
    Genome out{name, {}};
    out.chromosomes.reserve(chromosomes.size());
    for (const auto& c : chromosomes) out.chromosomes.push_back(c.canonical());
    std::sort(out.chromosomes.begin(), out.chromosomes.end(),
              [](const Chromosome& a, const Chromosome& b) { return a.canonical_less(b); });
    return out;
}

bool Genome::equivalent(const Genome& other) const {
    if (chromosomes.size() != other.chromosomes.size()) return false;
    const auto a = canonical();
    const auto b = other.canonical();
    for (std::size_t i = 0; i < a.chromosomes.size(); ++i) {
        if (a.chromosomes[i].topology() != b.chromosomes[i].topology() ||
            a.chromosomes[i].genes() != b.chromosomes[i].genes()) {
            return false;
        }
    }
    return true;
}

FamilyCensus::FamilyCensus(std::map<Family, std::size_t> counts) : counts_(std::move(counts)) {
    std::erase_if(counts_, [](const auto& kv) { return kv.second == 0; });
}

std::size_t FamilyCensus::count(Family family) const {
    auto it = counts_.find(family);
    return it == counts_.end() ? 0 : it->second;
}

std::size_t FamilyCensus::total() const {
    std::size_t n = 0;
    for (const auto& [family, count] : counts_) n += count;
    return n;
}

FamilyCensus family_census(const Genome& genome) {
    std::map<Family, std::size_t> counts;
    for (const auto& chromosome : genome.chromosomes) {
        for (const auto& gene : chromosome.genes()) ++counts[gene.family];
    }
    return FamilyCensus(std::move(counts));
}

std::string to_string(const Chromosome& chromosome) {
    std::ostringstream out;
    for (const auto& g : chromosome.genes()) out << g.to_signed() << ' ';
    out << (chromosome.is_circular() ? '@' : '$');
    return out.str();
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

bool is_blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

long long parse_marker(std::string_view token, std::size_t line) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < token.size() && (token[pos] == '-' || token[pos] == '+')) {
        negative = token[pos] == '-';
        ++pos;
    }
    if (pos == token.size()) throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
    long long value = 0;
    for (; pos < token.size(); ++pos) {
        const char c = token[pos];
        if (c < '0' || c > '9') {
            throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
        }
        value = value * 10 + (c - '0');
        if (value > std::numeric_limits<Family>::max()) {
            throw ParseError(line, "gene marker out of range: '" + std::string(token) + "'");
        }
    }
    if (value == 0) throw ParseError(line, "gene marker 0 is not allowed");
    return negative ? -value : value;
}

}  // namespace

std::vector<Genome> parse_genomes(std::string_view text) {
    std::vector<Genome> genomes;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const auto line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;

        if (is_blank(line)) {
            if (end == text.size()) break;
            continue;
        }
        const auto content = trim(line);
        if (content.front() == '>') {
            const auto name = trim(content.substr(1));
            if (name.empty()) throw ParseError(line_no, "malformed header: empty genome name");
            genomes.push_back(Genome{std::string(name), {}});
        } else {
            if (genomes.empty()) throw ParseError(line_no, "malformed header: chromosome before any '>NAME' line");
            std::vector<GeneMarker> genes;
            std::optional<Topology> topology;
            std::size_t pos = 0;
            while (pos < content.size()) {
                const auto tok_begin = content.find_first_not_of(" \t", pos);
                if (tok_begin == std::string_view::npos) break;
                auto tok_end = content.find_first_of(" \t", tok_begin);
                if (tok_end == std::string_view::npos) tok_end = content.size();
                const auto token = content.substr(tok_begin, tok_end - tok_begin);
                pos = tok_end;
                if (topology) throw ParseError(line_no, "tokens after chromosome terminator");
                if (token == "$") {
                    topology = Topology::linear;
                } else if (token == "@") {
                    topology = Topology::circular;
                } else {
                    genes.push_back(GeneMarker::from_signed(parse_marker(token, line_no)));
                }
            }
            if (!topology) throw ParseError(line_no, "missing chromosome terminator '$' or '@'");
            if (genes.empty()) throw ParseError(line_no, "empty chromosome");
            genomes.back().chromosomes.emplace_back(std::move(genes), *topology);
        }
        if (end == text.size()) break;
    }
    return genomes;
}

std::string serialize_genomes(std::span<const Genome> genomes) {
    std::string out;
    for (const auto& genome : genomes) {
        out += '>';
        out += genome.name;
        out += '\n';
        for (const auto& chromosome : genome.chromosomes) {
            for (const auto& gene : chromosome.genes()) {
                out += std::to_string(gene.to_signed());
                out += ' ';
            }
            out += chromosome.is_circular() ? '@' : '$';
            out += '\n';
        }
    }
    return out;
}

std::vector<Genome> read_genome_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open genome file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_genomes(buffer.str());
}

void write_genome_file(const std::filesystem::path& path, std::span<const Genome> genomes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write genome file: " + path.string());
    out << serialize_genomes(genomes);
}

}  // namespace dcjx
