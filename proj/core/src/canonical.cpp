#include "succweave/canonical.hpp"

#include "succweave/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace succweave {

namespace {

constexpr std::size_t kLeafBudget = 250000;

// Search state for minimum-encoding canonicalization. Relations are the
// signature tables plus, when present, the successor pairs as one extra
// binary pseudo-relation.
class CanonSearch {
public:
    CanonSearch(const Structure& s, std::optional<Element> center)
        : s_(s), center_(center), n_(s.size()) {
        for (std::size_t rel = 0; rel < s_.signature().size(); ++rel)
            tables_.push_back(s_.table(rel));
        if (s_.has_succ()) {
            std::vector<Tuple> pairs;
            for (auto [a, b] : s_.succ()) pairs.push_back({a, b});
            std::sort(pairs.begin(), pairs.end());
            tables_.push_back(std::move(pairs));
        }
        incidence_.assign(n_, {});
        for (std::size_t rel = 0; rel < tables_.size(); ++rel)
            for (std::size_t ti = 0; ti < tables_[rel].size(); ++ti)
                for (Element e : tables_[rel][ti])
                    incidence_[e].emplace_back(rel, ti);
        for (auto& inc : incidence_) {
            std::sort(inc.begin(), inc.end());
            inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
        }
    }

    CanonicalForm run() {
        if (n_ == 0) return {encode({}), {}};
        search(seed_colors());
        CanonicalForm form;
        form.bytes = std::move(best_);
        form.order.resize(n_);
        for (Element v = 0; v < n_; ++v) form.order[best_pos_[v]] = v;
        return form;
    }

private:
    using Colors = std::vector<std::uint32_t>;

    Colors seed_colors() const {
        // (center flag, per-relation/position incidence counts)
        std::vector<std::vector<std::uint32_t>> profile(n_);
        for (Element v = 0; v < n_; ++v) {
            auto& p = profile[v];
            p.push_back(center_ && *center_ == v ? 0 : 1);
            for (const auto& table : tables_) {
                const std::size_t arity = table.empty() ? 0 : table[0].size();
                std::vector<std::uint32_t> counts(arity, 0);
                for (const auto& t : table)
                    for (std::size_t pos = 0; pos < t.size(); ++pos)
                        if (t[pos] == v) ++counts[pos];
                p.push_back(static_cast<std::uint32_t>(counts.size()));
                for (auto c : counts) p.push_back(c);
            }
        }
        return colors_from_keys(profile);
    }

    static Colors colors_from_keys(const std::vector<std::vector<std::uint32_t>>& keys) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> rank;
        for (const auto& k : keys) rank.emplace(k, 0);
        std::uint32_t next = 0;
        for (auto& [k, r] : rank) r = next++;
        Colors colors(keys.size());
        for (std::size_t v = 0; v < keys.size(); ++v) colors[v] = rank.at(keys[v]);
        return colors;
    }

    std::uint32_t color_count(const Colors& colors) const {
        std::uint32_t maxc = 0;
        for (auto c : colors) maxc = std::max(maxc, c);
        return colors.empty() ? 0 : maxc + 1;
    }

    Colors refine(Colors colors) const {
        while (true) {
            const std::uint32_t before = color_count(colors);
            if (before == n_) return colors;
            std::vector<std::vector<std::uint32_t>> keys(n_);
            for (Element v = 0; v < n_; ++v) {
                std::vector<std::vector<std::uint32_t>> records;
                for (auto [rel, ti] : incidence_[v]) {
                    const Tuple& t = tables_[rel][ti];
                    for (std::size_t pos = 0; pos < t.size(); ++pos) {
                        if (t[pos] != v) continue;
                        std::vector<std::uint32_t> rec;
                        rec.push_back(static_cast<std::uint32_t>(rel));
                        rec.push_back(static_cast<std::uint32_t>(pos));
                        for (Element e : t) rec.push_back(colors[e]);
                        records.push_back(std::move(rec));
                    }
                }
                std::sort(records.begin(), records.end());
                auto& key = keys[v];
                key.push_back(colors[v]);
                for (const auto& rec : records) {
                    key.push_back(static_cast<std::uint32_t>(rec.size()));
                    key.insert(key.end(), rec.begin(), rec.end());
                }
            }
            colors = colors_from_keys(keys);
            if (color_count(colors) == before) return colors;
        }
    }

    // Transposing u and v maps every table to itself; such twins are
    // interchangeable under any coloring that already groups them.
    bool twins(Element u, Element v) const {
        auto swapped = [&](Element e) { return e == u ? v : e == v ? u : e; };
        auto check = [&](Element base) {
            for (auto [rel, ti] : incidence_[base]) {
                const Tuple& t = tables_[rel][ti];
                Tuple mapped(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = swapped(t[i]);
                if (!std::binary_search(tables_[rel].begin(), tables_[rel].end(), mapped))
                    return false;
            }
            return true;
        };
        return check(u) && check(v);
    }

    void search(Colors colors) {
        colors = refine(std::move(colors));
        if (color_count(colors) == n_) {
            if (++leaves_ > kLeafBudget)
                throw ResourceError("canonical labeling search exceeded its leaf budget");
            std::string candidate = encode(colors);
            if (best_.empty() || candidate < best_) {
                best_ = std::move(candidate);
                best_pos_ = colors;
            }
            return;
        }
        // First smallest non-singleton cell, then one branch per twin class.
        std::vector<std::vector<Element>> cells(color_count(colors));
        for (Element v = 0; v < n_; ++v) cells[colors[v]].push_back(v);
        std::size_t target = cells.size();
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (cells[c].size() < 2) continue;
            if (target == cells.size() || cells[c].size() < cells[target].size()) target = c;
        }
        const auto& cell = cells[target];
        std::vector<char> skip(cell.size(), 0);
        for (std::size_t i = 0; i < cell.size(); ++i) {
            if (skip[i]) continue;
            for (std::size_t j = i + 1; j < cell.size(); ++j)
                if (!skip[j] && twins(cell[i], cell[j])) skip[j] = 1;
            Colors child = colors;
            for (Element v = 0; v < n_; ++v)
                if (child[v] > colors[cell[i]] || (child[v] == colors[cell[i]] && v != cell[i]))
                    ++child[v];
            search(std::move(child));
        }
    }

    // Deterministic byte encoding of the structure relabeled by pos.
    // Relation names are length-prefixed so no name can fake a delimiter.
    std::string encode(const Colors& pos) const {
        std::ostringstream out;
        out << (center_ ? 'p' : 'u') << "sig{";
        for (const auto& rel : s_.signature().relations())
            out << rel.name.size() << ':' << rel.name << '/' << rel.arity << ';';
        out << "}n" << n_;
        for (std::size_t rel = 0; rel < tables_.size(); ++rel) {
            const bool is_succ = s_.has_succ() && rel == tables_.size() - 1;
            std::vector<Tuple> mapped;
            mapped.reserve(tables_[rel].size());
            for (const auto& t : tables_[rel]) {
                Tuple m(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) m[i] = pos[t[i]];
                mapped.push_back(std::move(m));
            }
            std::sort(mapped.begin(), mapped.end());
            if (is_succ && mapped.empty()) continue;
            out << ';' << (is_succ ? std::string("S") : std::to_string(rel)) << '{';
            for (std::size_t i = 0; i < mapped.size(); ++i) {
                if (i) out << ',';
                for (std::size_t j = 0; j < mapped[i].size(); ++j) {
                    if (j) out << ' ';
                    out << mapped[i][j];
                }
            }
            out << '}';
        }
        return out.str();
    }

    const Structure& s_;
    std::optional<Element> center_;
    std::uint32_t n_;
    std::vector<std::vector<Tuple>> tables_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incidence_;
    std::string best_;
    Colors best_pos_;
    std::size_t leaves_ = 0;
};

} // namespace

namespace {

// Induced substructure on a sorted member set; position maps original
// elements to local indices.
Structure induced_on(const Structure& s, const std::vector<Element>& members,
                     std::vector<Element>& position) {
    std::vector<char> inside(s.size(), 0);
    position.assign(s.size(), 0);
    for (std::size_t i = 0; i < members.size(); ++i) {
        inside[members[i]] = 1;
        position[members[i]] = static_cast<Element>(i);
    }
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
    if (s.has_succ()) {
        std::vector<SuccPair> pairs;
        for (auto [a, b] : s.succ())
            if (inside[a] && inside[b]) pairs.emplace_back(position[a], position[b]);
        succ = std::move(pairs);
    }
    return Structure(s.signature(), members.size(), std::move(tables), std::move(succ));
}

std::vector<std::vector<Element>> gaifman_components(const Structure& s) {
    std::vector<std::vector<Element>> components;
    std::vector<char> seen(s.size(), 0);
    for (Element root = 0; root < s.size(); ++root) {
        if (seen[root]) continue;
        std::vector<Element> comp{root};
        seen[root] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (Element v : s.neighbors(comp[i], true))
                if (!seen[v]) {
                    seen[v] = 1;
                    comp.push_back(v);
                }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

} // namespace

std::string NeighborhoodType::hex() const {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(id.size() * 2);
    for (unsigned char c : id) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

// Canonicalizes component by component: the individualization search never
// has to break the symmetry between identical components, which would blow
// up factorially on structures made of many equal pieces.
CanonicalForm canonical_form(const Structure& s, std::optional<Element> center) {
    if (center && *center >= s.size()) throw InputError("center out of range");

    struct Piece {
        std::string bytes;
        std::vector<Element> order; // canonical position -> original element
        bool has_center = false;
        Element least = 0;
    };
    std::vector<Piece> pieces;
    for (const auto& members : gaifman_components(s)) {
        std::vector<Element> position;
        Structure part = induced_on(s, members, position);
        const bool has_center =
            center && std::binary_search(members.begin(), members.end(), *center);
        CanonicalForm local =
            CanonSearch(part, has_center ? std::optional<Element>(position[*center])
                                         : std::nullopt)
                .run();
        Piece piece;
        piece.bytes = std::move(local.bytes);
        piece.order.reserve(members.size());
        for (Element local_pos : local.order) piece.order.push_back(members[local_pos]);
        piece.has_center = has_center;
        piece.least = members.front();
        pieces.push_back(std::move(piece));
    }
    // center component first, the rest sorted by encoding; equal encodings
    // tie-break on the least original element so the order stays a
    // permutation while the bytes stay label-independent
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
        if (a.has_center != b.has_center) return a.has_center;
        if (a.bytes != b.bytes) return a.bytes < b.bytes;
        return a.least < b.least;
    });

    CanonicalForm form;
    form.bytes = center ? "P" : "U";
    form.order.reserve(s.size());
    for (const auto& piece : pieces) {
        form.bytes += std::to_string(piece.bytes.size()) + "#" + piece.bytes;
        form.order.insert(form.order.end(), piece.order.begin(), piece.order.end());
    }
    return form;
}

NeighborhoodType canonical_type(const PointedStructure& p, unsigned radius) {
    CanonicalForm form = canonical_form(p.structure, p.center);
    return NeighborhoodType{std::move(form.bytes), radius, p.structure.has_succ()};
}

PointedStructure canonicalize_pointed(const PointedStructure& p) {
    CanonicalForm form = canonical_form(p.structure, p.center);
    std::vector<Element> pos(p.structure.size());
    for (std::size_t i = 0; i < form.order.size(); ++i) pos[form.order[i]] = static_cast<Element>(i);

    std::vector<std::vector<Tuple>> tables(p.structure.signature().size());
    for (std::size_t rel = 0; rel < p.structure.signature().size(); ++rel) {
        for (const auto& t : p.structure.table(rel)) {
            Tuple mapped(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = pos[t[i]];
            tables[rel].push_back(std::move(mapped));
        }
    }
    std::optional<std::vector<SuccPair>> succ;
    if (p.structure.has_succ()) {
        std::vector<SuccPair> pairs;
        for (auto [a, b] : p.structure.succ()) pairs.emplace_back(pos[a], pos[b]);
        succ = std::move(pairs);
    }
    return PointedStructure(
        Structure(p.structure.signature(), p.structure.size(), std::move(tables), std::move(succ)),
        pos[p.center]);
}

ElementTypes ElementTypes::compute(const Structure& s, unsigned radius, bool include_succ) {
    ElementTypes out;
    out.radius = radius;
    out.over_succ = include_succ && s.has_succ();
    out.idx.resize(s.size());
    std::map<NeighborhoodType, std::vector<Element>> groups;
    for (Element x = 0; x < s.size(); ++x)
        groups[canonical_type(neighborhood(s, x, radius, include_succ), radius)].push_back(x);
    out.distinct.reserve(groups.size());
    std::uint32_t next = 0;
    for (auto& [type, members] : groups) {
        out.distinct.push_back(type);
        for (Element x : members) out.idx[x] = next;
        ++next;
    }
    return out;
}

std::optional<std::uint32_t> ElementTypes::index_of(const NeighborhoodType& t) const {
    auto it = std::lower_bound(distinct.begin(), distinct.end(), t);
    if (it == distinct.end() || !(*it == t)) return std::nullopt;
    return static_cast<std::uint32_t>(it - distinct.begin());
}

TypeCensus ElementTypes::census() const {
    TypeCensus out;
    out.radius = radius;
    out.over_succ = over_succ;
    out.total = idx.size();
    for (auto i : idx) ++out.counts[distinct[i]];
    return out;
}

TypeCensus type_census(const Structure& s, unsigned radius, bool include_succ) {
    return ElementTypes::compute(s, radius, include_succ).census();
}

bool threshold_equivalent(const TypeCensus& c1, const TypeCensus& c2, std::uint64_t t) {
    if (c1.radius != c2.radius)
        throw InputError("threshold_equivalent: census radius mismatch");
    if (c1.over_succ != c2.over_succ)
        throw InputError("threshold_equivalent: census vocabulary mismatch");
    auto count_in = [](const TypeCensus& c, const NeighborhoodType& type) -> std::uint64_t {
        auto it = c.counts.find(type);
        return it == c.counts.end() ? 0 : it->second;
    };
    for (const auto& [type, count] : c1.counts) {
        std::uint64_t other = count_in(c2, type);
        if (count != other && !(count > t && other > t)) return false;
    }
    for (const auto& [type, count] : c2.counts) {
        std::uint64_t other = count_in(c1, type);
        if (count != other && !(count > t && other > t)) return false;
    }
    return true;
}

std::optional<std::vector<Element>> find_isomorphism(const Structure& a, const Structure& b) {
    if (!(a.signature() == b.signature()) || a.size() != b.size()) return std::nullopt;
    if (a.has_succ() != b.has_succ()) return std::nullopt;
    CanonicalForm fa = canonical_form(a, std::nullopt);
    CanonicalForm fb = canonical_form(b, std::nullopt);
    if (fa.bytes != fb.bytes) return std::nullopt;
    std::vector<Element> map(a.size());
    for (std::size_t i = 0; i < fa.order.size(); ++i) map[fa.order[i]] = fb.order[i];
    return map;
}

} // namespace succweave
