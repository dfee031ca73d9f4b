#include <random>

#include "doctest.h"
#include "dcjx/genome.hpp"
#include "support/random_genomes.hpp"

using namespace dcjx;

namespace {

std::vector<long long> signed_genes(const Chromosome& c) {
    std::vector<long long> out;
    for (const auto& g : c.genes()) out.push_back(g.to_signed());
    return out;
}

Chromosome chrom(std::initializer_list<long long> genes, Topology t = Topology::linear) {
    std::vector<GeneMarker> m;
    for (auto v : genes) m.push_back(GeneMarker::from_signed(v));
    return Chromosome(std::move(m), t);
}

}  // namespace

TEST_CASE("parse circular genome") {
    const auto genomes = parse_genomes(">G\n1 -2 3 -6 5 @\n");
    REQUIRE(genomes.size() == 1);
    CHECK(genomes[0].name == "G");
    REQUIRE(genomes[0].chromosomes.size() == 1);
    CHECK(genomes[0].chromosomes[0].is_circular());
    CHECK(signed_genes(genomes[0].chromosomes[0]) == std::vector<long long>{1, -2, 3, -6, 5});
}

TEST_CASE("parse linear genome") {
    const auto genomes = parse_genomes(">P\n1 2 3 7 4 $\n");
    REQUIRE(genomes.size() == 1);
    CHECK(genomes[0].name == "P");
    CHECK(genomes[0].chromosomes[0].topology() == Topology::linear);
    CHECK(signed_genes(genomes[0].chromosomes[0]) == std::vector<long long>{1, 2, 3, 7, 4});
}

TEST_CASE("parse one-gene genome and blank lines") {
    const auto genomes = parse_genomes(">E\n1 $\n");
    REQUIRE(genomes.size() == 1);
    CHECK(genomes[0].gene_count() == 1);

    const auto two = parse_genomes("\n>A\n\n1 2 $\n3 @\n\n>B\n-1 $\n");
    REQUIRE(two.size() == 2);
    CHECK(two[0].chromosomes.size() == 2);
    CHECK(two[1].chromosomes[0].genes()[0].strand == Strand::reverse);
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const char* text) -> std::size_t {
        try {
            parse_genomes(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of(">\n1 $\n") == 1);          // empty header
    CHECK(line_of("1 2 $\n") == 1);           // chromosome before header
    CHECK(line_of(">A\n1 x $\n") == 2);       // non-integer
    CHECK(line_of(">A\n1 $\n1 0 2 $\n") == 3);  // zero marker
    CHECK(line_of(">A\n1 2 3\n") == 2);       // no terminator
    CHECK(line_of(">A\n1 $ 2\n") == 2);       // trailing tokens
    CHECK(line_of(">A\n$\n") == 2);           // empty chromosome
    CHECK_THROWS_AS(parse_genomes(">A\n99999999999 $\n"), ParseError);
}

TEST_CASE("serialize") {
    const auto g = parse_genomes(">G\n1 -2 3 -6 5 @\n");
    CHECK(serialize_genomes(g) == ">G\n1 -2 3 -6 5 @\n");
    CHECK(serialize_genomes(std::vector<Genome>{}).empty());
    const auto two = parse_genomes(">A\n1 $\n>B\n2 -1 @\n");
    CHECK(serialize_genomes(two) == ">A\n1 $\n>B\n2 -1 @\n");
}

TEST_CASE("round trip over random genomes") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        std::vector<Genome> gs{testing::random_multigenome(rng, 1 + static_cast<int>(rng() % 12), 8, 3, "X"),
                               testing::random_genome(rng, 1 + static_cast<int>(rng() % 10), 3, "Y")};
        const auto text = serialize_genomes(gs);
        const auto back = parse_genomes(text);
        REQUIRE(back.size() == 2);
        for (std::size_t k = 0; k < 2; ++k) {
            CHECK(back[k].name == gs[k].name);
            CHECK(back[k].equivalent(gs[k]));
            CHECK(serialize_genomes(std::vector<Genome>{back[k].canonical()}) ==
                  serialize_genomes(std::vector<Genome>{gs[k].canonical()}));
        }
        CHECK(serialize_genomes(back) == text);
    }
}

TEST_CASE("chromosome equality is representation invariant") {
    CHECK(chrom({1, -2, 3}) == chrom({-3, 2, -1}));
    CHECK_FALSE(chrom({1, -2, 3}) == chrom({1, 2, 3}));
    const auto c = Topology::circular;
    CHECK(chrom({1, -2, 3, -6, 5}, c) == chrom({3, -6, 5, 1, -2}, c));
    CHECK(chrom({1, -2, 3, -6, 5}, c) == chrom({-5, 6, -3, 2, -1}, c));
    CHECK(chrom({1, -2, 3, -6, 5}, c) == chrom({6, -3, 2, -1, -5}, c));
    CHECK_FALSE(chrom({1, 2, 3}, c) == chrom({1, 3, 2}, c));
    CHECK_FALSE(chrom({1, 2}, c) == chrom({1, 2}));
    CHECK_THROWS(Chromosome({}, Topology::linear));
}

TEST_CASE("genome equivalence ignores chromosome order") {
    const auto a = parse_genomes(">A\n1 2 $\n3 @\n")[0];
    const auto b = parse_genomes(">B\n3 @\n-2 -1 $\n")[0];
    CHECK(a.equivalent(b));
    const auto c = parse_genomes(">C\n1 2 3 $\n")[0];
    CHECK_FALSE(a.equivalent(c));
}

TEST_CASE("family census") {
    const auto g = parse_genomes(">G\n1 -2 3 2 -6 5 $\n")[0];
    const auto census = family_census(g);
    CHECK(census.counts() == std::map<Family, std::size_t>{{1, 1}, {2, 2}, {3, 1}, {5, 1}, {6, 1}});
    CHECK(census.count(4) == 0);
    CHECK(census.total() == g.gene_count());

    CHECK(family_census(parse_genomes(">A\n1 2 3 $\n")[0]).counts() ==
          std::map<Family, std::size_t>{{1, 1}, {2, 1}, {3, 1}});
    CHECK(family_census(parse_genomes(">A\n4 -4 4 @\n")[0]).counts() == std::map<Family, std::size_t>{{4, 3}});
}

TEST_CASE("census totals match gene counts") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto g = testing::random_multigenome(rng, 1 + static_cast<int>(rng() % 15), 6);
        const auto census = family_census(g);
        CHECK(census.total() == g.gene_count());
        for (const auto& [f, n] : census.counts()) CHECK(n >= 1);
    }
}

TEST_CASE("file io") {
    const auto path = std::filesystem::temp_directory_path() / "dcjx_test_genome.txt";
    const auto gs = parse_genomes(">A\n1 -2 $\n>B\n2 1 @\n");
    write_genome_file(path, gs);
    CHECK(serialize_genomes(read_genome_file(path)) == serialize_genomes(gs));
    std::filesystem::remove(path);
    CHECK_THROWS(read_genome_file(path));
}
