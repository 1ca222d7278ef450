#include "fixtures.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace linkbox::testsupport {

GraphBuilder& GraphBuilder::entity(const std::string& id) {
    entities_ << id << "\tentity\n";
    return *this;
}

GraphBuilder& GraphBuilder::category(const std::string& id) {
    entities_ << id << "\tcategory\n";
    return *this;
}

GraphBuilder& GraphBuilder::link(const std::string& source, const std::string& target) {
    links_ << source << '\t' << target << '\n';
    return *this;
}

GraphBuilder& GraphBuilder::isa(const std::string& node, const std::string& category) {
    categories_ << node << '\t' << category << '\n';
    return *this;
}

KnowledgeGraph GraphBuilder::build(bool strict) const {
    std::istringstream entities(entities_tsv());
    std::istringstream links(links_tsv());
    std::istringstream categories(categories_tsv());
    LoadOptions options;
    options.strict = strict;
    return load_graph(entities, links, categories, options);
}

void GraphBuilder::write_files(const std::string& dir) const {
    for (const auto& [name, text] :
         {std::pair{std::string("entities.tsv"), entities_tsv()},
          std::pair{std::string("links.tsv"), links_tsv()},
          std::pair{std::string("categories.tsv"), categories_tsv()}}) {
        std::ofstream out(dir + "/" + name);
        if (!out) throw std::runtime_error("cannot write " + dir + "/" + name);
        out << text;
    }
}

GraphBuilder taxonomy_idf_example() {
    GraphBuilder b;
    for (const char* e : {"e1", "e2", "e3", "e4"}) b.entity(e);
    for (const char* c : {"c1", "c2", "c3", "c4"}) b.category(c);
    b.isa("e1", "c1").isa("e2", "c1").isa("e3", "c2").isa("e4", "c3");
    b.isa("c1", "c2").isa("c1", "c4").isa("c2", "c4").isa("c3", "c4");
    return b;
}

std::string block_entity(std::size_t block, std::size_t index) {
    return "b" + std::to_string(block) + "_e" + std::to_string(index);
}

std::string block_category(std::size_t block) {
    // Blocks 0 and 5 intentionally share a topic.
    return "topic" + std::to_string(block == 5 ? 0 : block) + " things";
}

namespace {

std::string article_id(std::size_t k) {
    const std::string n = std::to_string(k);
    return "a" + std::string(n.size() < 2 ? 1 : 0, '0') + n;
}

}  // namespace

GraphBuilder reuse_fixture() {
    constexpr std::size_t kBlocks = 6;
    constexpr std::size_t kBlockSize = 10;
    constexpr std::size_t kArticles = 30;

    GraphBuilder b;
    for (std::size_t blk = 0; blk < kBlocks; ++blk) {
        b.category(block_category(blk));
        for (std::size_t i = 0; i < kBlockSize; ++i) {
            b.entity(block_entity(blk, i));
            b.isa(block_entity(blk, i), block_category(blk));
        }
    }
    for (std::size_t k = 1; k <= kArticles; ++k) b.entity(article_id(k));

    for (std::size_t k = 1; k <= kArticles; ++k) {
        for (std::size_t blk : {(k - 1) % 5, k % 5}) {
            for (std::size_t i = 0; i < kBlockSize; ++i)
                b.link(article_id(k), block_entity(blk, i));
        }
        // a16's tree parent a15 covers block 0 but not block 5, so block 5
        // lands in the fresh part and merges with the inherited block 0
        // cluster through their shared label.
        if (k == 16) {
            for (std::size_t i = 0; i < kBlockSize; ++i)
                b.link(article_id(k), block_entity(5, i));
        }
        if (k < kArticles) b.link(article_id(k), article_id(k + 1));
    }
    return b;
}

GraphBuilder two_topic_article() {
    GraphBuilder b;
    b.entity("w");
    b.category("film things");
    b.category("company things");
    for (std::size_t i = 0; i < 10; ++i) {
        const std::string film = "film" + std::to_string(i);
        const std::string company = "company" + std::to_string(i);
        b.entity(film).entity(company);
        b.isa(film, "film things").isa(company, "company things");
        b.link("w", film).link("w", company);
    }
    return b;
}

double normal_sample(Rng& rng) {
    const double u1 = 1.0 - rng.next_double();
    const double u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

std::vector<DataPoint> gaussian_line_blob(Rng& rng, std::size_t count, double x_base,
                                          double y_mean, double y_sigma,
                                          const std::string& id_prefix) {
    std::vector<DataPoint> points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        SparseVector v;
        v.set("x", x_base);
        v.set("y", y_mean + y_sigma * normal_sample(rng));
        points.push_back({id_prefix + std::to_string(i), std::move(v)});
    }
    return points;
}

}  // namespace linkbox::testsupport
