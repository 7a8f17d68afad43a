#include "succweave/io.hpp"

#include "succweave/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace succweave {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

ordered_json census_json(const TypeCensus& census) {
    ordered_json out;
    out["radius"] = census.radius;
    out["over_succ"] = census.over_succ;
    out["total"] = census.total;
    ordered_json counts = ordered_json::object();
    for (const auto& [type, count] : census.counts) counts[type.hex()] = count;
    out["counts"] = std::move(counts);
    return out;
}

} // namespace

bool LoadedStructure::identity_labels() const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != static_cast<std::int64_t>(i)) return false;
    return true;
}

LoadedStructure parse_structure_text(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw InputError(std::string("malformed structure document: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("structure document must be a JSON object");
    if (!doc.contains("signature") || !doc["signature"].is_object())
        throw InputError("structure document needs a \"signature\" object");
    if (!doc.contains("universe"))
        throw InputError("structure document needs a \"universe\" field");

    // Relation names sorted so that documents differing only in key order
    // load to the same signature.
    std::vector<RelationSymbol> symbols;
    for (auto& [name, arity] : doc["signature"].items()) {
        if (!arity.is_number_unsigned() || arity.get<std::uint64_t>() < 1)
            throw InputError("signature: arity of " + name + " must be a positive integer");
        symbols.push_back({name, static_cast<unsigned>(arity.get<std::uint64_t>())});
    }
    std::sort(symbols.begin(), symbols.end(),
              [](const RelationSymbol& a, const RelationSymbol& b) { return a.name < b.name; });
    Signature sig(symbols); // rejects the reserved name "S" and duplicates

    LoadedStructure out;
    std::map<std::int64_t, Element> position;
    if (doc["universe"].is_number_unsigned()) {
        const std::uint64_t n = doc["universe"].get<std::uint64_t>();
        out.labels.resize(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            out.labels[i] = static_cast<std::int64_t>(i);
            position[static_cast<std::int64_t>(i)] = static_cast<Element>(i);
        }
    } else if (doc["universe"].is_array()) {
        for (const auto& entry : doc["universe"]) {
            if (!entry.is_number_integer())
                throw InputError("universe: labels must be integers");
            std::int64_t label = entry.get<std::int64_t>();
            if (position.count(label)) throw InputError("universe: duplicate label");
            position[label] = static_cast<Element>(out.labels.size());
            out.labels.push_back(label);
        }
    } else {
        throw InputError("universe must be an integer or an array of integer labels");
    }

    auto to_element = [&](const ordered_json& v, const std::string& where) -> Element {
        if (!v.is_number_integer())
            throw InputError(where + ": tuple entries must be integers");
        auto it = position.find(v.get<std::int64_t>());
        if (it == position.end())
            throw InputError(where + ": element " + v.dump() + " is not in the universe");
        return it->second;
    };

    std::vector<std::vector<Tuple>> tables(sig.size());
    if (doc.contains("relations")) {
        if (!doc["relations"].is_object())
            throw InputError("\"relations\" must map relation names to tuple lists");
        for (auto& [name, tuples] : doc["relations"].items()) {
            std::size_t rel = sig.index_of(name);
            if (!tuples.is_array()) throw InputError("relation " + name + ": expected a list");
            for (const auto& tup : tuples) {
                if (!tup.is_array() || tup.size() != sig.at(rel).arity)
                    throw InputError("relation " + name + ": tuple arity mismatch");
                Tuple t;
                t.reserve(tup.size());
                for (const auto& entry : tup) t.push_back(to_element(entry, "relation " + name));
                tables[rel].push_back(std::move(t));
            }
        }
    }
    std::optional<std::vector<SuccPair>> succ;
    if (doc.contains("succ")) {
        if (!doc["succ"].is_array()) throw InputError("\"succ\" must be a list of pairs");
        std::vector<SuccPair> pairs;
        for (const auto& pair : doc["succ"]) {
            if (!pair.is_array() || pair.size() != 2)
                throw InputError("succ: expected pairs of elements");
            pairs.emplace_back(to_element(pair[0], "succ"), to_element(pair[1], "succ"));
        }
        succ = std::move(pairs);
    }
    out.structure = Structure(std::move(sig), out.labels.size(), std::move(tables), std::move(succ));
    return out;
}

LoadedStructure load_structure(const std::string& path) {
    return parse_structure_text(read_file(path));
}

std::string emit_structure(const Structure& s) {
    ordered_json doc;
    ordered_json sig = ordered_json::object();
    for (const auto& rel : s.signature().relations()) sig[rel.name] = rel.arity;
    doc["signature"] = std::move(sig);
    doc["universe"] = s.size();
    ordered_json relations = ordered_json::object();
    for (std::size_t rel = 0; rel < s.signature().size(); ++rel) {
        ordered_json tuples = ordered_json::array();
        for (const auto& t : s.table(rel)) tuples.push_back(t);
        relations[s.signature().at(rel).name] = std::move(tuples);
    }
    doc["relations"] = std::move(relations);
    if (s.has_succ()) {
        ordered_json pairs = ordered_json::array();
        for (auto [a, b] : s.succ()) pairs.push_back(ordered_json::array({a, b}));
        doc["succ"] = std::move(pairs);
    }
    return doc.dump(2) + "\n";
}

SuccessorFile SuccessorFile::from_result(const WeaveResult& result, int side) {
    SuccessorFile f;
    f.side = side;
    f.iso_branch = result.isomorphism_branch;
    const BuilderState& st = side == 1 ? result.state1 : result.state2;
    f.succ = side == 1 ? result.succ1 : result.succ2;
    f.n = f.succ.size();
    if (!st.r_sets.empty()) f.rare.assign(st.r_sets[0].begin(), st.r_sets[0].end());
    if (!st.p_sets.empty()) f.junction.assign(st.p_sets[0].begin(), st.p_sets[0].end());
    f.anchors = st.anchors;
    f.a_set = st.a_set;
    if (side == 2) {
        for (Element x : result.state1.a_set) {
            auto it = result.state1.h.find(x);
            if (it != result.state1.h.end()) f.h_pairs.emplace_back(x, it->second);
        }
    }
    return f;
}

std::string emit_successor(const SuccessorFile& f) {
    std::ostringstream out;
    out << "succweave successor v1\n";
    out << "side " << f.side << "\n";
    out << "n " << f.n << "\n";
    out << "branch " << (f.iso_branch ? "isomorphism" : "woven") << "\n";
    for (Element x = 0; x < f.succ.size(); ++x) out << x << " -> " << f.succ[x] << "\n";
    auto emit_list = [&](const char* key, const std::vector<Element>& list) {
        out << key;
        for (Element e : list) out << ' ' << e;
        out << "\n";
    };
    auto emit_pairs = [&](const char* key, const std::vector<std::pair<Element, Element>>& list) {
        out << key;
        for (auto [a, b] : list) out << ' ' << a << ':' << b;
        out << "\n";
    };
    emit_list("rare", f.rare);
    emit_list("junction", f.junction);
    emit_pairs("anchors", f.anchors);
    emit_list("aset", f.a_set);
    if (f.side == 2) emit_pairs("h", f.h_pairs);
    std::string body = out.str();
    return body + "hash " + hex64(fnv1a(body)) + "\n";
}

SuccessorFile parse_successor_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    SuccessorFile f;
    std::size_t hash_pos = text.rfind("hash ");
    if (hash_pos == std::string::npos) throw InputError("successor file: missing hash line");
    std::string body = text.substr(0, hash_pos);
    std::string stated = text.substr(hash_pos + 5);
    while (!stated.empty() && (stated.back() == '\n' || stated.back() == '\r')) stated.pop_back();
    if (stated != hex64(fnv1a(body)))
        throw InputError("successor file: content hash mismatch (file corrupted?)");

    if (!std::getline(in, line) || line != "succweave successor v1")
        throw InputError("successor file: bad header");

    auto parse_elements = [](std::istringstream& rest) {
        std::vector<Element> out;
        std::uint64_t v;
        while (rest >> v) out.push_back(static_cast<Element>(v));
        return out;
    };
    auto parse_number = [](const std::string& text) -> std::uint64_t {
        if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("successor file: expected a number, got " + text);
        return std::stoull(text);
    };
    auto parse_pairs = [&](std::istringstream& rest) {
        std::vector<std::pair<Element, Element>> out;
        std::string item;
        while (rest >> item) {
            auto colon = item.find(':');
            if (colon == std::string::npos)
                throw InputError("successor file: expected a:b pair, got " + item);
            out.emplace_back(static_cast<Element>(parse_number(item.substr(0, colon))),
                             static_cast<Element>(parse_number(item.substr(colon + 1))));
        }
        return out;
    };

    bool saw_n = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream rest(line);
        std::string key;
        rest >> key;
        if (key == "hash") break;
        if (key == "side") {
            rest >> f.side;
        } else if (key == "n") {
            rest >> f.n;
            f.succ.assign(f.n, 0);
            saw_n = true;
        } else if (key == "branch") {
            std::string branch;
            rest >> branch;
            f.iso_branch = branch == "isomorphism";
        } else if (key == "rare") {
            f.rare = parse_elements(rest);
        } else if (key == "junction") {
            f.junction = parse_elements(rest);
        } else if (key == "anchors") {
            f.anchors = parse_pairs(rest);
        } else if (key == "aset") {
            f.a_set = parse_elements(rest);
        } else if (key == "h") {
            f.h_pairs = parse_pairs(rest);
        } else {
            // permutation line: "<i> -> <succ>"
            if (!saw_n) throw InputError("successor file: permutation before n");
            std::uint64_t from = parse_number(key);
            std::string arrow, target;
            rest >> arrow >> target;
            std::uint64_t to = parse_number(target);
            if (arrow != "->" || from >= f.n || to >= f.n)
                throw InputError("successor file: bad permutation line: " + line);
            f.succ[from] = static_cast<Element>(to);
        }
    }
    if (!saw_n) throw InputError("successor file: missing n");
    return f;
}

SuccessorFile load_successor(const std::string& path) {
    return parse_successor_text(read_file(path));
}

WeaveResult result_from_files(const SuccessorFile& f1, const SuccessorFile& f2, unsigned r) {
    if (f1.iso_branch != f2.iso_branch)
        throw InputError("successor files disagree on the construction branch");
    WeaveResult result;
    result.isomorphism_branch = f1.iso_branch;
    result.succ1 = f1.succ;
    result.succ2 = f2.succ;
    auto restore = [&](const SuccessorFile& f, int side) {
        BuilderState st = BuilderState::make(f.n, r, side);
        st.r_sets[0].insert(f.rare.begin(), f.rare.end());
        st.p_sets[0].insert(f.junction.begin(), f.junction.end());
        st.anchors = f.anchors;
        st.a_set = f.a_set;
        return st;
    };
    result.state1 = restore(f1, 1);
    result.state2 = restore(f2, 2);
    for (auto [x, y] : f2.h_pairs) result.state1.h.emplace(x, y);
    return result;
}

std::string emit_report(const VerificationReport& report) {
    ordered_json doc;
    doc["report"] = "verification";
    doc["radius"] = report.radius;
    doc["threshold"] = report.threshold;
    if (report.ef_depth)
        doc["ef_depth"] = *report.ef_depth;
    else
        doc["ef_depth"] = nullptr;
    doc["branch"] = report.iso_branch ? "isomorphism" : "woven";
    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json entry;
        entry["name"] = c.name;
        entry["pass"] = c.pass;
        entry["witness"] = c.witness;
        checks.push_back(std::move(entry));
    }
    doc["checks"] = std::move(checks);
    doc["overall"] = report.overall();
    doc["census1"] = census_json(report.census1);
    doc["census2"] = census_json(report.census2);
    return doc.dump(2) + "\n";
}

std::string emit_census(const TypeCensus& census) {
    ordered_json doc;
    doc["report"] = "census";
    doc.update(census_json(census));
    return doc.dump(2) + "\n";
}

std::string emit_params(const ParamsBundle& params) {
    ordered_json doc;
    doc["report"] = "params";
    doc["alpha"] = params.alpha;
    doc["degree"] = params.degree;
    doc["radius"] = params.radius;
    doc["threshold"] = params.threshold;
    doc["n_occ"] = params.n_occ;
    if (params.g_const)
        doc["g_const"] = *params.g_const;
    else
        doc["g_const"] = nullptr;
    ordered_json g_examples = ordered_json::object();
    for (std::uint64_t beta : {0, 1, 2, 4, 8}) {
        try {
            g_examples["beta=" + std::to_string(beta)] = params.g(beta);
        } catch (const ResourceError&) {
            g_examples["beta=" + std::to_string(beta)] = "overflow";
        }
    }
    doc["g"] = std::move(g_examples);
    doc["binding_bound_at_beta0"] = params.binding_bound(0);
    ordered_json a_seq = ordered_json::array();
    try {
        for (std::uint64_t a : a_sequence([&](std::uint64_t b) { return params.g(b); }, 4))
            a_seq.push_back(a);
    } catch (const ResourceError&) {
        a_seq.push_back("overflow");
    }
    doc["a_sequence"] = std::move(a_seq);
    return doc.dump(2) + "\n";
}

namespace {

struct Token {
    enum class Kind { open, close, symbol } kind;
    std::string text;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    std::string current;
    auto flush = [&]() {
        if (!current.empty()) {
            tokens.push_back({Token::Kind::symbol, current});
            current.clear();
        }
    };
    for (char c : text) {
        if (c == '(') {
            flush();
            tokens.push_back({Token::Kind::open, "("});
        } else if (c == ')') {
            flush();
            tokens.push_back({Token::Kind::close, ")"});
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            current.push_back(c);
        }
    }
    flush();
    return tokens;
}

FormulaPtr parse_expr(const std::vector<Token>& tokens, std::size_t& pos) {
    if (pos >= tokens.size()) throw InputError("formula: unexpected end of input");
    if (tokens[pos].kind != Token::Kind::open)
        throw InputError("formula: expected '(' but got " + tokens[pos].text);
    ++pos;
    if (pos >= tokens.size() || tokens[pos].kind != Token::Kind::symbol)
        throw InputError("formula: expected an operator after '('");
    const std::string op = tokens[pos].text;
    ++pos;

    auto expect_symbol = [&]() {
        if (pos >= tokens.size() || tokens[pos].kind != Token::Kind::symbol)
            throw InputError("formula: expected a variable in " + op);
        return tokens[pos++].text;
    };
    auto expect_close = [&]() {
        if (pos >= tokens.size() || tokens[pos].kind != Token::Kind::close)
            throw InputError("formula: missing ')' in " + op);
        ++pos;
    };

    if (op == "exists" || op == "forall") {
        std::string var = expect_symbol();
        FormulaPtr body = parse_expr(tokens, pos);
        expect_close();
        return op == "exists" ? Formula::exists(var, body) : Formula::forall(var, body);
    }
    if (op == "and" || op == "or") {
        std::vector<FormulaPtr> children;
        while (pos < tokens.size() && tokens[pos].kind == Token::Kind::open)
            children.push_back(parse_expr(tokens, pos));
        expect_close();
        return op == "and" ? Formula::conj(std::move(children)) : Formula::disj(std::move(children));
    }
    if (op == "not") {
        FormulaPtr child = parse_expr(tokens, pos);
        expect_close();
        return Formula::neg(child);
    }
    if (op == "=") {
        std::string a = expect_symbol();
        std::string b = expect_symbol();
        expect_close();
        return Formula::equals(a, b);
    }
    // relation atom
    std::vector<std::string> args;
    while (pos < tokens.size() && tokens[pos].kind == Token::Kind::symbol) args.push_back(tokens[pos++].text);
    expect_close();
    return Formula::atom(op, std::move(args));
}

void print_formula(const Formula& f, std::ostringstream& out) {
    switch (f.kind) {
        case Formula::Kind::exists:
        case Formula::Kind::forall:
            out << '(' << (f.kind == Formula::Kind::exists ? "exists" : "forall") << ' ' << f.var
                << ' ';
            print_formula(*f.children[0], out);
            out << ')';
            return;
        case Formula::Kind::conj:
        case Formula::Kind::disj:
            out << '(' << (f.kind == Formula::Kind::conj ? "and" : "or");
            for (const auto& c : f.children) {
                out << ' ';
                print_formula(*c, out);
            }
            out << ')';
            return;
        case Formula::Kind::neg:
            out << "(not ";
            print_formula(*f.children[0], out);
            out << ')';
            return;
        case Formula::Kind::equals:
            out << "(= " << f.args[0] << ' ' << f.args[1] << ')';
            return;
        case Formula::Kind::atom:
            out << '(' << f.relation;
            for (const auto& a : f.args) out << ' ' << a;
            out << ')';
            return;
    }
}

} // namespace

FormulaPtr parse_formula_text(const std::string& text) {
    std::vector<Token> tokens = tokenize(text);
    std::size_t pos = 0;
    FormulaPtr f = parse_expr(tokens, pos);
    if (pos != tokens.size()) throw InputError("formula: trailing input after the sentence");
    return f;
}

FormulaPtr load_formula(const std::string& path) { return parse_formula_text(read_file(path)); }

std::string emit_formula(const FormulaPtr& f) {
    if (!f) throw InputError("null formula");
    std::ostringstream out;
    print_formula(*f, out);
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << content;
}

} // namespace succweave
