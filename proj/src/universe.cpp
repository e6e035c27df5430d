#include "motivic/universe.hpp"

#include <json.hpp>

#include <algorithm>
#include <regex>
#include <sstream>

#include "motivic/spectral.hpp"

namespace motivic {

using nlohmann::json;

FGAbelianGroup k0_of_assembler_presentation(const AssemblerPresentation& a) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < a.objects.size(); ++i) index[a.objects[i]] = i;
    IntMatrix rel(a.coverings.size(), a.objects.size());
    for (std::size_t r = 0; r < a.coverings.size(); ++r) {
        const auto& cov = a.coverings[r];
        auto pit = index.find(cov.parent);
        if (pit == index.end()) throw UnknownObject("assembler: unknown object " + cov.parent);
        rel.at(r, pit->second) += 1;
        for (const auto& child : cov.children) {
            auto cit = index.find(child);
            if (cit == index.end()) throw UnknownObject("assembler: unknown object " + child);
            rel.at(r, cit->second) -= 1;
        }
    }
    return FGAbelianGroup(a.objects, rel);
}

std::optional<int> ToyUniverse::dimension_of(const std::string& id) const {
    for (const auto& c : classes)
        if (c.id == id) return c.dimension;
    return std::nullopt;
}

std::vector<std::string> ToyUniverse::classes_of_dim(int n) const {
    std::vector<std::string> out;
    for (const auto& c : classes)
        if (c.dimension == n) out.push_back(c.id);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> ToyUniverse::classes_up_to_dim(int n) const {
    std::vector<std::string> out;
    for (int d = 0; d <= n; ++d) {
        auto bd = classes_of_dim(d);
        out.insert(out.end(), bd.begin(), bd.end());
    }
    return out;
}

AutPresentation ToyUniverse::aut_of(const std::string& id) const {
    if (auto it = aut.find(id); it != aut.end()) return it->second;
    return AutPresentation{id, {}, IntMatrix(0, 0)};
}

std::optional<std::string> ToyUniverse::l_image(const std::string& id) const {
    if (auto it = l_map.find(id); it != l_map.end()) return it->second;
    return std::nullopt;
}

std::vector<std::string> ToyUniverse::l_preimages(const std::string& id) const {
    std::vector<std::string> out;
    for (const auto& [src, dst] : l_map)
        if (dst == id) out.push_back(src);
    std::sort(out.begin(), out.end());
    return out;
}

const FormalSum* ToyUniverse::correction_of(const std::string& id) const {
    if (auto it = l_corrections.find(id); it != l_corrections.end()) return &it->second;
    return nullptr;
}

namespace {

const std::regex kIdPattern("[A-Za-z0-9_]+");

bool valid_id(const std::string& s) { return std::regex_match(s, kIdPattern); }

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
    throw SchemaError("schema: " + path + ": " + what);
}

void reject_unknown_fields(const json& obj, const std::vector<std::string>& known,
                           const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            schema_fail(path, "unknown field '" + it.key() + "'");
}

Int json_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) schema_fail(path, "expected integer");
    return Int(v.get<long long>());
}

FormalSum parse_formal_sum(const json& v, const std::string& path) {
    if (!v.is_object()) schema_fail(path, "expected object of id -> coefficient");
    FormalSum out;
    for (auto it = v.begin(); it != v.end(); ++it) out[it.key()] = json_int(it.value(), path);
    return out;
}

json formal_sum_to_json(const FormalSum& s) {
    json out = json::object();
    for (const auto& [id, c] : s) out[id] = c.convert_to<long long>();
    return out;
}

// Structural checks shared by parse and validate.  Returns violations; parse
// turns the first one into a SchemaError.
std::vector<Violation> structural_violations(const ToyUniverse& u) {
    std::vector<Violation> out;
    auto fail = [&](const std::string& rule, const std::string& subject, const std::string& what) {
        out.push_back({rule, subject, what});
    };
    if (u.max_dimension < 0) fail("dimension-bound", "max_dimension", "negative max_dimension");
    std::map<std::string, int> dim;
    for (const auto& c : u.classes) {
        if (!valid_id(c.id)) fail("id-charset", c.id, "class id must match [A-Za-z0-9_]+");
        if (dim.count(c.id)) fail("id-unique", c.id, "duplicate class id");
        dim[c.id] = c.dimension;
        if (c.dimension < 0 || c.dimension > u.max_dimension)
            fail("dimension-bound", c.id, "dimension outside [0, max_dimension]");
    }
    for (const auto& [src, dst] : u.l_map) {
        if (!dim.count(src)) fail("l-map", src, "unknown source class");
        if (!dim.count(dst)) fail("l-map", src, "unknown image class " + dst);
        if (dim.count(src) && dim.count(dst) && dim[dst] != dim[src] + 1)
            fail("l-map", src, "l must raise dimension by exactly 1");
    }
    for (const auto& c : u.classes)
        if (c.dimension < u.max_dimension && !u.l_map.count(c.id))
            fail("l-map-total", c.id, "l_map missing for class of dimension < max_dimension");
    for (const auto& [id, pres] : u.aut) {
        if (!dim.count(id)) fail("aut", id, "unknown class");
        std::map<std::string, bool> seen;
        for (const auto& g : pres.generators) {
            if (!valid_id(g)) fail("id-charset", id + "." + g, "generator name must match [A-Za-z0-9_]+");
            if (seen[g]) fail("id-unique", id + "." + g, "duplicate generator");
            seen[g] = true;
        }
        if (pres.relations.rows() > 0 && pres.relations.cols() != pres.generators.size())
            fail("aut", id, "relation rows must have one entry per generator");
    }
    for (const auto& [id, m] : u.aut_l_induced) {
        if (!dim.count(id)) {
            fail("aut-l-induced", id, "unknown class");
            continue;
        }
        auto img = u.l_image(id);
        if (!img) {
            fail("aut-l-induced", id, "class has no l image");
            continue;
        }
        std::size_t src_gens = u.aut_of(id).generators.size();
        std::size_t dst_gens = u.aut_of(*img).generators.size();
        if (m.rows() != dst_gens || m.cols() != src_gens)
            fail("aut-l-induced", id, "matrix shape must be Aut(l c) gens x Aut(c) gens");
    }
    for (const auto& [key, expr] : u.boundary) {
        const auto& [cid, gen] = key;
        if (!dim.count(cid)) {
            fail("boundary", cid + "." + gen, "unknown class");
            continue;
        }
        auto pres = u.aut_of(cid);
        if (std::find(pres.generators.begin(), pres.generators.end(), gen) == pres.generators.end())
            fail("boundary", cid + "." + gen, "unknown generator");
        for (const auto& [ref, coeff] : expr) {
            (void)coeff;
            if (!dim.count(ref))
                fail("boundary", cid + "." + gen, "unknown class " + ref + " in expression");
            else if (dim[ref] >= dim[cid])
                fail("boundary", cid + "." + gen, "expression must use strictly lower dimensions");
        }
    }
    for (const auto& [id, expr] : u.l_corrections) {
        if (!dim.count(id)) {
            fail("l-corrections", id, "unknown class");
            continue;
        }
        for (const auto& [ref, coeff] : expr) {
            (void)coeff;
            if (!dim.count(ref))
                fail("l-corrections", id, "unknown class " + ref + " in expression");
            else if (dim[ref] > dim[id])
                fail("l-corrections", id, "expression dimensions must not exceed the class's");
        }
    }
    return out;
}

}  // namespace

ToyUniverse parse_universe(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("parse: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("schema: top level must be an object");
    reject_unknown_fields(doc,
                          {"name", "max_dimension", "convenient", "classes", "l_map", "aut",
                           "aut_l_induced", "boundary", "l_corrections"},
                          "top level");
    ToyUniverse u;
    if (!doc.contains("max_dimension")) schema_fail("top level", "missing required field 'max_dimension'");
    u.max_dimension = static_cast<int>(json_int(doc["max_dimension"], "max_dimension").convert_to<long long>());
    if (!doc.contains("classes")) schema_fail("top level", "missing required field 'classes'");
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) schema_fail("name", "expected string");
        u.name = doc["name"].get<std::string>();
    }
    if (doc.contains("convenient")) {
        if (!doc["convenient"].is_boolean()) schema_fail("convenient", "expected boolean");
        u.convenient = doc["convenient"].get<bool>();
    }
    if (!doc["classes"].is_array()) schema_fail("classes", "expected array");
    for (const auto& entry : doc["classes"]) {
        if (!entry.is_object()) schema_fail("classes", "expected objects {id, dimension}");
        reject_unknown_fields(entry, {"id", "dimension"}, "classes entry");
        if (!entry.contains("id") || !entry["id"].is_string())
            schema_fail("classes", "entry needs a string 'id'");
        if (!entry.contains("dimension")) schema_fail("classes", "entry needs 'dimension'");
        BirationalClass c;
        c.id = entry["id"].get<std::string>();
        c.dimension = static_cast<int>(json_int(entry["dimension"], "classes." + c.id).convert_to<long long>());
        u.classes.push_back(std::move(c));
    }
    if (doc.contains("l_map")) {
        if (!doc["l_map"].is_object()) schema_fail("l_map", "expected object id -> id");
        for (auto it = doc["l_map"].begin(); it != doc["l_map"].end(); ++it) {
            if (!it.value().is_string()) schema_fail("l_map." + it.key(), "expected string id");
            u.l_map[it.key()] = it.value().get<std::string>();
        }
    }
    if (doc.contains("aut")) {
        if (!doc["aut"].is_object()) schema_fail("aut", "expected object");
        for (auto it = doc["aut"].begin(); it != doc["aut"].end(); ++it) {
            const std::string path = "aut." + it.key();
            if (!it.value().is_object()) schema_fail(path, "expected object");
            reject_unknown_fields(it.value(), {"generators", "relations"}, path);
            AutPresentation pres;
            pres.owner = it.key();
            if (it.value().contains("generators")) {
                if (!it.value()["generators"].is_array()) schema_fail(path, "generators: expected array");
                for (const auto& g : it.value()["generators"]) {
                    if (!g.is_string()) schema_fail(path, "generators: expected strings");
                    pres.generators.push_back(g.get<std::string>());
                }
            }
            std::vector<Vec> rows;
            if (it.value().contains("relations")) {
                if (!it.value()["relations"].is_array()) schema_fail(path, "relations: expected array of rows");
                for (const auto& row : it.value()["relations"]) {
                    if (!row.is_array()) schema_fail(path, "relations: expected rows of integers");
                    Vec r;
                    for (const auto& e : row) r.push_back(json_int(e, path + ".relations"));
                    if (r.size() != pres.generators.size())
                        schema_fail(path, "relation row width must equal generator count");
                    rows.push_back(std::move(r));
                }
            }
            pres.relations = IntMatrix::from_rows(rows, pres.generators.size());
            u.aut[it.key()] = std::move(pres);
        }
    }
    if (doc.contains("aut_l_induced")) {
        if (!doc["aut_l_induced"].is_object()) schema_fail("aut_l_induced", "expected object");
        for (auto it = doc["aut_l_induced"].begin(); it != doc["aut_l_induced"].end(); ++it) {
            const std::string path = "aut_l_induced." + it.key();
            if (!it.value().is_array()) schema_fail(path, "expected matrix (array of rows)");
            std::vector<Vec> rows;
            std::size_t width = 0;
            for (const auto& row : it.value()) {
                if (!row.is_array()) schema_fail(path, "expected rows of integers");
                Vec r;
                for (const auto& e : row) r.push_back(json_int(e, path));
                if (!rows.empty() && r.size() != width) schema_fail(path, "ragged matrix");
                width = r.size();
                rows.push_back(std::move(r));
            }
            u.aut_l_induced[it.key()] = IntMatrix::from_rows(rows, width);
        }
    }
    if (doc.contains("boundary")) {
        if (!doc["boundary"].is_object()) schema_fail("boundary", "expected object");
        for (auto it = doc["boundary"].begin(); it != doc["boundary"].end(); ++it) {
            const std::string& key = it.key();
            auto dot = key.find('.');
            if (dot == std::string::npos || key.find('.', dot + 1) != std::string::npos)
                schema_fail("boundary", "key must be 'classId.generator': " + key);
            u.boundary[{key.substr(0, dot), key.substr(dot + 1)}] =
                parse_formal_sum(it.value(), "boundary." + key);
        }
    }
    if (doc.contains("l_corrections")) {
        if (!doc["l_corrections"].is_object()) schema_fail("l_corrections", "expected object");
        for (auto it = doc["l_corrections"].begin(); it != doc["l_corrections"].end(); ++it)
            u.l_corrections[it.key()] = parse_formal_sum(it.value(), "l_corrections." + it.key());
    }

    // a rowless induced matrix carries no width; give it its forced shape
    for (auto& [id, m] : u.aut_l_induced) {
        if (m.rows() != 0) continue;
        auto img = u.l_image(id);
        if (!img || !u.dimension_of(id)) continue;  // structural check reports these
        m = IntMatrix(u.aut_of(*img).generators.size(), u.aut_of(id).generators.size());
    }

    auto violations = structural_violations(u);
    if (!violations.empty())
        throw SchemaError("schema: " + violations.front().subject + ": " + violations.front().detail);
    return u;
}

std::string serialize_universe(const ToyUniverse& u) {
    json doc;
    doc["name"] = u.name;
    doc["max_dimension"] = u.max_dimension;
    doc["convenient"] = u.convenient;
    doc["classes"] = json::array();
    for (const auto& c : u.classes) doc["classes"].push_back({{"id", c.id}, {"dimension", c.dimension}});
    doc["l_map"] = json::object();
    for (const auto& [s, d] : u.l_map) doc["l_map"][s] = d;
    doc["aut"] = json::object();
    for (const auto& [id, pres] : u.aut) {
        json rows = json::array();
        for (std::size_t i = 0; i < pres.relations.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < pres.relations.cols(); ++j)
                row.push_back(pres.relations.at(i, j).convert_to<long long>());
            rows.push_back(std::move(row));
        }
        doc["aut"][id] = {{"generators", pres.generators}, {"relations", rows}};
    }
    doc["aut_l_induced"] = json::object();
    for (const auto& [id, m] : u.aut_l_induced) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).convert_to<long long>());
            rows.push_back(std::move(row));
        }
        doc["aut_l_induced"][id] = std::move(rows);
    }
    doc["boundary"] = json::object();
    for (const auto& [key, expr] : u.boundary)
        doc["boundary"][key.first + "." + key.second] = formal_sum_to_json(expr);
    if (!u.l_corrections.empty()) {
        doc["l_corrections"] = json::object();
        for (const auto& [id, expr] : u.l_corrections)
            doc["l_corrections"][id] = formal_sum_to_json(expr);
    }
    return doc.dump(2);
}

std::vector<Violation> validate(const ToyUniverse& u) {
    std::vector<Violation> out = structural_violations(u);
    if (!out.empty()) return out;  // tower construction needs structural sanity

    // relation-respect: every Aut relation row must map to zero downstairs
    K0Tower tower = detail::build_k0_tower(u, &out);

    if (u.convenient) {
        // each boundary value must lie in the image of multiplication by the
        // Lefschetz class restricted to dimensions <= n-2
        detail::check_convenience(u, tower, out);
    }
    return out;
}

int line_degree(const ToyUniverse& u, const std::string& id) {
    if (!u.dimension_of(id)) throw UnknownClass("line_degree: unknown class " + id);
    // longest chain of l-preimages ending at id; dimensions strictly decrease,
    // so plain recursion terminates
    std::map<std::string, int> memo;
    auto degree = [&](auto&& self, const std::string& c) -> int {
        if (auto it = memo.find(c); it != memo.end()) return it->second;
        int best = 0;
        for (const auto& pre : u.l_preimages(c)) best = std::max(best, self(self, pre) + 1);
        memo[c] = best;
        return best;
    };
    return degree(degree, id);
}

namespace {

// Path-compressing union-find over class indices.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

Partition blocks_from_keys(const std::vector<std::string>& ids,
                           const std::vector<std::string>& keys) {
    std::map<std::string, std::vector<std::string>> by_key;
    for (std::size_t i = 0; i < ids.size(); ++i) by_key[keys[i]].push_back(ids[i]);
    Partition out;
    for (auto& [k, block] : by_key) {
        std::sort(block.begin(), block.end());
        out.push_back(std::move(block));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Partition sim_r_partition(const ToyUniverse& u, int n, int r) {
    if (r < 0) throw DimensionMismatch("sim_r_partition: r < 0");
    if (n < 0 || n > u.max_dimension) throw UnknownClass("sim_r_partition: dimension out of range");
    if (n + r > u.max_dimension)
        throw TruncationOverflow("sim_r_partition: cannot evaluate l^" + std::to_string(r) +
                                 " from dimension " + std::to_string(n));
    auto ids = u.classes_of_dim(n);
    std::vector<std::string> keys;
    keys.reserve(ids.size());
    for (const auto& id : ids) {
        std::string c = id;
        for (int s = 0; s < r; ++s) c = *u.l_image(c);  // total below max_dimension
        keys.push_back(c);
    }
    return blocks_from_keys(ids, keys);
}

Partition stable_partition(const ToyUniverse& u) {
    std::vector<std::string> ids;
    for (const auto& c : u.classes) ids.push_back(c.id);
    std::sort(ids.begin(), ids.end());
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
    UnionFind uf(ids.size());
    for (const auto& [s, d] : u.l_map) uf.unite(index[s], index[d]);
    std::vector<std::string> keys(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) keys[i] = ids[uf.find(i)];
    return blocks_from_keys(ids, keys);
}

}  // namespace motivic
