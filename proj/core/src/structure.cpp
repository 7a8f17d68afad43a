#include "succweave/structure.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace succweave {

Signature::Signature(std::vector<RelationSymbol> relations)
    : relations_(std::move(relations)) {
    std::set<std::string> seen;
    for (const auto& rel : relations_) {
        if (rel.name.empty())
            throw InputError("relation name must be non-empty");
        if (rel.name == "S")
            throw InputError("relation name \"S\" is reserved for the successor relation");
        if (rel.arity < 1)
            throw InputError("relation " + rel.name + " has arity 0");
        if (!seen.insert(rel.name).second)
            throw InputError("duplicate relation name " + rel.name);
    }
}

std::size_t Signature::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < relations_.size(); ++i)
        if (relations_[i].name == name) return i;
    throw InputError("unknown relation " + name);
}

bool Signature::has(const std::string& name) const {
    for (const auto& rel : relations_)
        if (rel.name == name) return true;
    return false;
}

Structure::Structure(Signature sig, std::size_t size,
                     std::vector<std::vector<Tuple>> tables,
                     std::optional<std::vector<SuccPair>> succ)
    : sig_(std::move(sig)), size_(size), tables_(std::move(tables)), succ_(std::move(succ)) {
    tables_.resize(sig_.size());
    for (auto& table : tables_) {
        std::sort(table.begin(), table.end());
        table.erase(std::unique(table.begin(), table.end()), table.end());
    }
    if (succ_) {
        std::sort(succ_->begin(), succ_->end());
        succ_->erase(std::unique(succ_->begin(), succ_->end()), succ_->end());
    }
    validate();
    build_adjacency();
}

Structure Structure::graph(std::size_t size, std::vector<SuccPair> edges) {
    std::vector<Tuple> table;
    table.reserve(edges.size());
    for (auto [a, b] : edges) table.push_back({a, b});
    return Structure(Signature({{"E", 2}}), size, {std::move(table)});
}

const std::vector<SuccPair>& Structure::succ() const {
    if (!succ_) throw InputError("structure has no successor relation");
    return *succ_;
}

Structure Structure::with_succ(std::vector<SuccPair> succ) const {
    return Structure(sig_, size_, tables_, std::move(succ));
}

Structure Structure::without_succ() const {
    return Structure(sig_, size_, tables_);
}

bool Structure::holds(std::size_t rel, const Tuple& t) const {
    const auto& table = tables_.at(rel);
    return std::binary_search(table.begin(), table.end(), t);
}

bool Structure::succ_holds(Element a, Element b) const {
    if (!succ_) return false;
    return std::binary_search(succ_->begin(), succ_->end(), SuccPair{a, b});
}

const std::vector<Element>& Structure::neighbors(Element x, bool include_succ) const {
    if (x >= size_) throw InputError("element out of range");
    return include_succ ? adj_full_[x] : adj_sigma_[x];
}

void Structure::validate() const {
    for (std::size_t rel = 0; rel < sig_.size(); ++rel) {
        const unsigned arity = sig_.at(rel).arity;
        for (const auto& t : tables_[rel]) {
            if (t.size() != arity)
                throw InputError("tuple arity mismatch in relation " + sig_.at(rel).name);
            for (Element e : t)
                if (e >= size_)
                    throw InputError("tuple entry out of range in relation " + sig_.at(rel).name);
        }
    }
    if (succ_) {
        for (auto [a, b] : *succ_)
            if (a >= size_ || b >= size_)
                throw InputError("successor pair out of range");
    }
}

void Structure::build_adjacency() {
    std::vector<std::set<Element>> sigma(size_);
    for (const auto& table : tables_) {
        for (const auto& t : table) {
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::size_t j = 0; j < t.size(); ++j)
                    if (t[i] != t[j]) sigma[t[i]].insert(t[j]);
        }
    }
    std::vector<std::set<Element>> full = sigma;
    if (succ_) {
        for (auto [a, b] : *succ_) {
            if (a != b) {
                full[a].insert(b);
                full[b].insert(a);
            }
        }
    }
    adj_sigma_.assign(size_, {});
    adj_full_.assign(size_, {});
    for (std::size_t x = 0; x < size_; ++x) {
        adj_sigma_[x].assign(sigma[x].begin(), sigma[x].end());
        adj_full_[x].assign(full[x].begin(), full[x].end());
    }
}

PointedStructure::PointedStructure(Structure s, Element c) : structure(std::move(s)), center(c) {
    if (center >= structure.size())
        throw InputError("center out of range");
}

std::vector<Element> gaifman_neighbors(const Structure& s, Element x, bool include_succ) {
    return s.neighbors(x, include_succ);
}

std::size_t gaifman_distance(const Structure& s, Element x, Element y, bool include_succ) {
    if (x >= s.size() || y >= s.size()) throw InputError("element out of range");
    if (x == y) return 0;
    std::vector<std::size_t> dist(s.size(), kUnreachable);
    std::queue<Element> queue;
    dist[x] = 0;
    queue.push(x);
    while (!queue.empty()) {
        Element u = queue.front();
        queue.pop();
        for (Element v : s.neighbors(u, include_succ)) {
            if (dist[v] != kUnreachable) continue;
            dist[v] = dist[u] + 1;
            if (v == y) return dist[v];
            queue.push(v);
        }
    }
    return kUnreachable;
}

std::vector<Element> ball(const Structure& s, Element x, unsigned radius, bool include_succ) {
    if (x >= s.size()) throw InputError("element out of range");
    std::vector<std::size_t> dist(s.size(), kUnreachable);
    std::queue<Element> queue;
    dist[x] = 0;
    queue.push(x);
    std::vector<Element> members{x};
    while (!queue.empty()) {
        Element u = queue.front();
        queue.pop();
        if (dist[u] == radius) continue;
        for (Element v : s.neighbors(u, include_succ)) {
            if (dist[v] != kUnreachable) continue;
            dist[v] = dist[u] + 1;
            members.push_back(v);
            queue.push(v);
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

PointedStructure neighborhood(const Structure& s, Element x, unsigned radius, bool include_succ) {
    if (x >= s.size()) throw InputError("element out of range");
    std::vector<std::size_t> dist(s.size(), kUnreachable);
    std::queue<Element> queue;
    dist[x] = 0;
    queue.push(x);
    while (!queue.empty()) {
        Element u = queue.front();
        queue.pop();
        if (dist[u] == radius) continue;
        for (Element v : s.neighbors(u, include_succ)) {
            if (dist[v] != kUnreachable) continue;
            dist[v] = dist[u] + 1;
            queue.push(v);
        }
    }
    std::vector<Element> members;
    for (Element v = 0; v < s.size(); ++v)
        if (dist[v] != kUnreachable) members.push_back(v);
    // Renumber in (distance, original index) order; the center becomes 0.
    std::stable_sort(members.begin(), members.end(),
                     [&](Element a, Element b) { return dist[a] < dist[b]; });
    std::vector<Element> position(s.size(), 0);
    for (std::size_t i = 0; i < members.size(); ++i) position[members[i]] = static_cast<Element>(i);
    std::vector<char> inside(s.size(), 0);
    for (Element v : members) inside[v] = 1;

    std::vector<std::vector<Tuple>> tables(s.signature().size());
    for (std::size_t rel = 0; rel < s.signature().size(); ++rel) {
        for (const auto& t : s.table(rel)) {
            bool keep = true;
            for (Element e : t)
                if (!inside[e]) { keep = false; break; }
            if (!keep) continue;
            Tuple mapped(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = position[t[i]];
            tables[rel].push_back(std::move(mapped));
        }
    }
    std::optional<std::vector<SuccPair>> succ;
    if (include_succ && s.has_succ()) {
        std::vector<SuccPair> pairs;
        for (auto [a, b] : s.succ())
            if (inside[a] && inside[b]) pairs.emplace_back(position[a], position[b]);
        succ = std::move(pairs);
    }
    return PointedStructure(Structure(s.signature(), members.size(), std::move(tables), std::move(succ)), 0);
}

unsigned structure_degree(const Structure& s, bool include_succ) {
    std::size_t degree = 0;
    for (Element x = 0; x < s.size(); ++x)
        degree = std::max(degree, s.neighbors(x, include_succ).size());
    return static_cast<unsigned>(degree);
}

std::uint64_t n_bound(unsigned d, unsigned r) {
    if (r == 0 || d == 0) return 1;
    if (d == 1) return 2;
    if (d == 2) return 2ull * r + 1;
    // d * ((d-1)^r - 1) / (d-2) + 1, guarded against overflow.
    unsigned __int128 power = 1;
    for (unsigned i = 0; i < r; ++i) {
        power *= (d - 1);
        if (power > (unsigned __int128)1 << 100)
            throw ResourceError("n_bound overflow");
    }
    unsigned __int128 value = (unsigned __int128)d * (power - 1) / (d - 2) + 1;
    if (value > std::numeric_limits<std::uint64_t>::max())
        throw ResourceError("n_bound overflow");
    return static_cast<std::uint64_t>(value);
}

} // namespace succweave
