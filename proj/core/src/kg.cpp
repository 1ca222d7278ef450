#include "linkbox/kg.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace linkbox {

namespace {

const std::vector<std::string> kNoLinks;
const std::set<std::string> kNoCategories;

std::string trim_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

[[noreturn]] void fail_at(const std::string& source, std::size_t line_no,
                          const std::string& message) {
    std::ostringstream os;
    os << source << ":" << line_no << ": " << message;
    throw std::runtime_error(os.str());
}

void report(std::vector<std::string>* warnings, const std::string& source,
            std::size_t line_no, const std::string& message) {
    if (!warnings) return;
    std::ostringstream os;
    os << source << ":" << line_no << ": " << message;
    warnings->push_back(os.str());
}

// Splits `id<TAB>field`; rejects missing tabs and empty columns.
std::pair<std::string, std::string> split_record(const std::string& source,
                                                 std::size_t line_no,
                                                 const std::string& line) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos) fail_at(source, line_no, "expected two tab-separated columns");
    std::string left = line.substr(0, tab);
    std::string right = line.substr(tab + 1);
    if (right.find('\t') != std::string::npos)
        fail_at(source, line_no, "expected exactly two columns");
    if (left.empty() || right.empty()) fail_at(source, line_no, "empty column");
    return {std::move(left), std::move(right)};
}

template <typename Fn>
void for_each_record(std::istream& in, const std::string& source, Fn&& fn) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim_cr(line);
        if (line.empty() || line[0] == '#') continue;
        fn(line_no, line);
    }
}

}  // namespace

NodeKind KnowledgeGraph::kind(const std::string& id) const {
    auto it = nodes.find(id);
    if (it == nodes.end()) throw std::out_of_range("unknown node id: " + id);
    return it->second;
}

const std::vector<std::string>& KnowledgeGraph::linked_entities(const std::string& id) const {
    if (!has_node(id)) throw std::out_of_range("unknown node id: " + id);
    auto it = links.find(id);
    return it == links.end() ? kNoLinks : it->second;
}

const std::vector<std::string>& KnowledgeGraph::neighbors_sorted(const std::string& id) const {
    if (!has_node(id)) throw std::out_of_range("unknown node id: " + id);
    auto it = out_sorted.find(id);
    return it == out_sorted.end() ? kNoLinks : it->second;
}

std::vector<std::string> KnowledgeGraph::neighbors(const std::string& id,
                                                   NeighborMode mode) const {
    const std::vector<std::string>& out = neighbors_sorted(id);
    if (mode == NeighborMode::Out) return out;
    auto it = in_sorted.find(id);
    const std::vector<std::string>& in = it == in_sorted.end() ? kNoLinks : it->second;
    std::vector<std::string> merged;
    merged.reserve(out.size() + in.size());
    std::set_union(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(merged));
    return merged;
}

std::size_t KnowledgeGraph::degree(const std::string& id, DegreeMode mode) const {
    const std::size_t out = neighbors_sorted(id).size();
    if (mode == DegreeMode::Out) return out;
    return out + n_linking(id);
}

std::size_t KnowledgeGraph::n_linking(const std::string& id) const {
    if (!has_node(id)) throw std::out_of_range("unknown node id: " + id);
    auto it = link_count.find(id);
    return it == link_count.end() ? 0 : it->second;
}

const std::set<std::string>& KnowledgeGraph::categories(const std::string& id) const {
    if (!has_node(id)) throw std::out_of_range("unknown node id: " + id);
    auto it = category_map.find(id);
    return it == category_map.end() ? kNoCategories : it->second;
}

std::vector<std::string> KnowledgeGraph::entity_ids() const {
    std::vector<std::string> out;
    for (const auto& [id, kind] : nodes) {
        if (kind == NodeKind::Entity) out.push_back(id);
    }
    return out;
}

KnowledgeGraph load_graph(std::istream& entities, std::istream& links,
                          std::istream& categories, const LoadOptions& options,
                          std::vector<std::string>* warnings) {
    KnowledgeGraph g;

    for_each_record(entities, "entities", [&](std::size_t line_no, const std::string& line) {
        auto [id, kind] = split_record("entities", line_no, line);
        NodeKind k;
        if (kind == "entity") {
            k = NodeKind::Entity;
        } else if (kind == "category") {
            k = NodeKind::Category;
        } else {
            fail_at("entities", line_no, "unknown kind '" + kind + "'");
        }
        auto [it, inserted] = g.nodes.emplace(id, k);
        if (!inserted && it->second != k)
            fail_at("entities", line_no, "node '" + id + "' redeclared with a different kind");
    });

    for_each_record(links, "links", [&](std::size_t line_no, const std::string& line) {
        auto [source, target] = split_record("links", line_no, line);
        if (source == target) {
            if (options.strict) fail_at("links", line_no, "self-loop on '" + source + "'");
            report(warnings, "links", line_no, "skipping self-loop on '" + source + "'");
            return;
        }
        for (const std::string* id : {&source, &target}) {
            if (!g.has_node(*id)) {
                if (options.strict)
                    fail_at("links", line_no, "dangling reference to '" + *id + "'");
                report(warnings, "links", line_no, "skipping dangling reference to '" + *id + "'");
                return;
            }
            if (g.nodes.at(*id) != NodeKind::Entity) {
                if (options.strict)
                    fail_at("links", line_no, "link endpoint '" + *id + "' is not an entity");
                report(warnings, "links", line_no,
                       "skipping link with non-entity endpoint '" + *id + "'");
                return;
            }
        }
        auto& ordered = g.links[source];
        if (std::find(ordered.begin(), ordered.end(), target) == ordered.end())
            ordered.push_back(target);
    });

    for_each_record(categories, "categories", [&](std::size_t line_no, const std::string& line) {
        auto [node, category] = split_record("categories", line_no, line);
        if (!g.has_node(node) || !g.has_node(category)) {
            const std::string& missing = g.has_node(node) ? category : node;
            if (options.strict)
                fail_at("categories", line_no, "dangling reference to '" + missing + "'");
            report(warnings, "categories", line_no,
                   "skipping dangling reference to '" + missing + "'");
            return;
        }
        if (g.nodes.at(category) != NodeKind::Category) {
            if (options.strict)
                fail_at("categories", line_no, "'" + category + "' is not a category node");
            report(warnings, "categories", line_no,
                   "skipping assignment to non-category '" + category + "'");
            return;
        }
        if (node == category) {
            if (options.strict) fail_at("categories", line_no, "self-category on '" + node + "'");
            report(warnings, "categories", line_no, "skipping self-category on '" + node + "'");
            return;
        }
        g.category_map[node].insert(category);
    });

    for (const auto& [source, targets] : g.links) {
        std::vector<std::string> sorted = targets;
        std::sort(sorted.begin(), sorted.end());
        g.out_sorted[source] = std::move(sorted);
        for (const std::string& target : targets) {
            ++g.link_count[target];
            g.in_sorted[target].push_back(source);
        }
    }
    for (auto& [id, sources] : g.in_sorted) std::sort(sources.begin(), sources.end());

    for (const auto& [id, kind] : g.nodes) {
        if (kind == NodeKind::Entity) ++g.article_count;
    }
    return g;
}

KnowledgeGraph load_graph_files(const std::string& entities_path,
                                const std::string& links_path,
                                const std::string& categories_path,
                                const LoadOptions& options,
                                std::vector<std::string>* warnings) {
    std::ifstream ent(entities_path), lnk(links_path), cat(categories_path);
    if (!ent) throw std::runtime_error("cannot open " + entities_path);
    if (!lnk) throw std::runtime_error("cannot open " + links_path);
    if (!cat) throw std::runtime_error("cannot open " + categories_path);
    return load_graph(ent, lnk, cat, options, warnings);
}

void serialize_graph(const KnowledgeGraph& g, std::ostream& entities,
                     std::ostream& links, std::ostream& categories) {
    for (const auto& [id, kind] : g.nodes)
        entities << id << '\t' << (kind == NodeKind::Entity ? "entity" : "category") << '\n';
    for (const auto& [source, targets] : g.links) {
        for (const std::string& target : targets) links << source << '\t' << target << '\n';
    }
    for (const auto& [node, cats] : g.category_map) {
        for (const std::string& category : cats) categories << node << '\t' << category << '\n';
    }
}

std::size_t CoocStats::pairs(const std::string& x, const std::string& y) const {
    auto key = x < y ? std::make_pair(x, y) : std::make_pair(y, x);
    auto it = pair_count.find(key);
    return it == pair_count.end() ? 0 : it->second;
}

std::size_t CoocStats::occurrences(const std::string& x) const {
    auto it = occurrence_count.find(x);
    return it == occurrence_count.end() ? 0 : it->second;
}

CoocStats cooccurrence_stats(const KnowledgeGraph& g) {
    CoocStats stats;
    for (const auto& [article, targets] : g.links) {
        for (std::size_t i = 0; i < targets.size(); ++i) {
            for (std::size_t j = i + 1; j < targets.size(); ++j) {
                auto key = targets[i] < targets[j] ? std::make_pair(targets[i], targets[j])
                                                   : std::make_pair(targets[j], targets[i]);
                ++stats.pair_count[key];
                ++stats.total_pairs;
            }
        }
    }
    for (const auto& [pair, count] : stats.pair_count) {
        stats.occurrence_count[pair.first] += count;
        stats.occurrence_count[pair.second] += count;
    }
    return stats;
}

}  // namespace linkbox
