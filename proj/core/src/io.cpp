#include "opdcat/io.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace opdcat {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

namespace {

// hand rolled scanner for the arrow literals; the grammar is tiny and the
// error positions are worth more than a parser dependency
struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw std::invalid_argument("arrow literal: expected '" + std::string(1, c) +
                                        "' at position " + std::to_string(i) + " in '" + s +
                                        "'");
    }
    uint32_t number() {
        skip();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw std::invalid_argument("arrow literal: expected a number at position " +
                                        std::to_string(i) + " in '" + s + "'");
        uint32_t n = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            n = n * 10 + static_cast<uint32_t>(s[i++] - '0');
        return n;
    }
    void end() {
        skip();
        if (i != s.size())
            throw std::invalid_argument("arrow literal: trailing text at position " +
                                        std::to_string(i) + " in '" + s + "'");
    }
};

std::vector<uint32_t> bracket_list(Cursor& c) {
    c.expect('[');
    std::vector<uint32_t> out;
    if (c.eat(']')) return out;
    out.push_back(c.number());
    while (c.eat(',')) out.push_back(c.number());
    c.expect(']');
    return out;
}

SimplexMap simplex_at(Cursor& c) {
    c.expect('[');
    uint32_t dom = c.number();
    c.expect(']');
    c.expect('-');
    c.expect('>');
    c.expect('[');
    uint32_t cod = c.number();
    c.expect(']');
    c.expect(':');
    return SimplexMap(dom, cod, bracket_list(c));
}

Chain chain_at(Cursor& c) {
    std::vector<uint32_t> sizes{c.number()};
    while (c.eat('>')) sizes.push_back(c.number());
    if (sizes.size() == 1) return Chain(sizes[0]);
    c.expect(':');
    std::vector<FinMap> steps;
    for (size_t i = 0; i + 1 < sizes.size(); ++i) {
        if (i) c.eat(',');
        steps.emplace_back(sizes[i], sizes[i + 1], bracket_list(c));
    }
    return Chain(std::move(steps));
}

}  // namespace

SimplexMap parse_simplex(const std::string& text) {
    Cursor c{text};
    SimplexMap psi = simplex_at(c);
    c.end();
    return psi;
}

Chain parse_chain(const std::string& text) {
    Cursor c{text};
    Chain out = chain_at(c);
    c.end();
    return out;
}

ChainMorphism parse_chain_morphism(const std::string& text) {
    Cursor c{text};
    Chain src = chain_at(c);
    c.expect('=');
    c.expect('>');
    Chain dst = chain_at(c);
    c.expect(';');
    SimplexMap phi = simplex_at(c);
    c.expect('@');
    std::vector<FinMap> eta;
    for (uint32_t i = 0; i <= src.length(); ++i) {
        if (i) c.eat(',');
        eta.emplace_back(src.level(i), dst.level(phi(i)), bracket_list(c));
    }
    c.end();
    return ChainMorphism(std::move(src), std::move(dst), std::move(phi), std::move(eta));
}

std::string chain_morphism_literal(const ChainMorphism& m) {
    return m.src().str() + " => " + m.dst().str() + " ; " + m.str();
}

// ------------------------------------------------------------------ operads

namespace {

std::vector<std::string> color_list(const json& j) {
    std::vector<std::string> names;
    std::map<std::string, uint32_t> seen;
    for (const json& v : j.at("colors")) {
        std::string n = v.get<std::string>();
        if (!seen.emplace(n, 0).second)
            throw std::invalid_argument("duplicate color '" + n + "'");
        names.push_back(std::move(n));
    }
    if (names.empty()) throw std::invalid_argument("no colors");
    return names;
}

uint32_t lookup(const std::map<std::string, uint32_t>& table, const json& v,
                const char* what) {
    std::string n = v.get<std::string>();
    auto it = table.find(n);
    if (it == table.end())
        throw std::invalid_argument(std::string("unknown ") + what + " '" + n + "'");
    return it->second;
}

}  // namespace

std::shared_ptr<Operad> parse_operad_json(const std::string& text) {
    try {
        json j = json::parse(text);
        if (j.value("kind", "") != "operad")
            throw std::invalid_argument("kind must be \"operad\"");
        std::vector<std::string> colors = color_list(j);
        std::map<std::string, uint32_t> color_id;
        for (uint32_t c = 0; c < colors.size(); ++c) color_id[colors[c]] = c;
        uint32_t bound = j.at("arity_bound").get<uint32_t>();

        if (j.contains("generators")) {
            std::vector<FreeGenerator> gens;
            for (const json& g : j.at("generators")) {
                FreeGenerator fg;
                fg.name = g.at("name").get<std::string>();
                for (const json& v : g.at("inputs"))
                    fg.inputs.push_back(lookup(color_id, v, "color"));
                fg.output = lookup(color_id, g.at("output"), "color");
                std::string st = g.value("stabilizer", "trivial");
                uint32_t n = static_cast<uint32_t>(fg.inputs.size());
                if (st == "trivial")
                    fg.stab = FreeGenerator::Stab::trivial;
                else if (st == "full")
                    fg.stab = FreeGenerator::Stab::full;
                else if (st == "listed") {
                    fg.stab = FreeGenerator::Stab::listed;
                    for (const json& p : g.at("perms"))
                        fg.stab_gens.emplace_back(n, n, p.get<std::vector<uint32_t>>());
                } else
                    throw std::invalid_argument("stabilizer must be trivial, full or listed");
                gens.push_back(std::move(fg));
            }
            return std::make_shared<Operad>(
                free_operad(static_cast<uint32_t>(colors.size()), gens, bound));
        }

        auto O = std::make_shared<Operad>(bound);
        for (const std::string& n : colors) O->add_color(n);
        std::map<std::string, uint32_t> op_id;
        for (const json& p : j.at("operations")) {
            std::string name = p.at("name").get<std::string>();
            std::vector<uint32_t> in;
            for (const json& v : p.at("inputs")) in.push_back(lookup(color_id, v, "color"));
            uint32_t out = lookup(color_id, p.at("output"), "color");
            if (!op_id.emplace(name, O->add_op(std::move(in), out, name)).second)
                throw std::invalid_argument("duplicate operation '" + name + "'");
        }
        for (const auto& [cname, oname] : j.at("units").items())
            O->set_unit(lookup(color_id, json(cname), "color"), lookup(op_id, oname, "operation"));
        for (const json& e : j.at("composition")) {
            uint32_t q = lookup(op_id, e.at("op"), "operation");
            std::vector<uint32_t> ps;
            for (const json& v : e.at("with")) ps.push_back(lookup(op_id, v, "operation"));
            O->set_gamma(q, std::move(ps), lookup(op_id, e.at("result"), "operation"));
        }
        for (const json& e : j.at("symmetries")) {
            uint32_t p = lookup(op_id, e.at("op"), "operation");
            auto perm = e.at("perm").get<std::vector<uint32_t>>();
            uint32_t n = static_cast<uint32_t>(perm.size());
            O->set_act(p, FinMap(n, n, std::move(perm)),
                       lookup(op_id, e.at("result"), "operation"));
        }
        O->finalize();
        return O;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("operad file: ") + e.what());
    }
}

const std::vector<std::string>& operad_builtins() {
    static const std::vector<std::string> names{"com",       "trivial",   "trivial2",
                                               "free-binary", "free-pair", "parity",
                                               "two-color"};
    return names;
}

std::shared_ptr<Operad> load_operad(const std::string& what, const Bounds& b) {
    if (what.rfind("builtin:", 0) == 0) {
        std::string name = what.substr(8);
        if (name == "com") return std::make_shared<Operad>(make_commutative(b.arity));
        if (name == "trivial") return std::make_shared<Operad>(make_trivial(1, b.arity));
        if (name == "trivial2") return std::make_shared<Operad>(make_trivial(2, b.arity));
        if (name == "free-binary")
            return std::make_shared<Operad>(make_free_binary(b.arity));
        if (name == "free-pair") return std::make_shared<Operad>(make_free_pair(b.arity));
        if (name == "parity") return std::make_shared<Operad>(make_parity(b.arity));
        if (name == "two-color") {
            FreeGenerator f{"f", {0, 1}, 0, FreeGenerator::Stab::trivial, {}};
            return std::make_shared<Operad>(free_operad(2, {f}, b.arity));
        }
        std::string have;
        for (const std::string& n : operad_builtins()) have += (have.empty() ? "" : ", ") + n;
        throw std::invalid_argument("unknown builtin operad '" + name + "' (have: " + have +
                                    ")");
    }
    return parse_operad_json(read_text_file(what));
}

// -------------------------------------------------------------------- props

std::shared_ptr<PropOverF> parse_prop_json(const std::string& text) {
    try {
        json j = json::parse(text);
        if (j.value("kind", "") != "prop")
            throw std::invalid_argument("kind must be \"prop\"");
        std::vector<std::string> colors = color_list(j);
        std::map<std::string, uint32_t> color_id;
        for (uint32_t c = 0; c < colors.size(); ++c) color_id[colors[c]] = c;
        auto C = std::make_shared<PropOverF>(colors, j.at("tuple_bound").get<uint32_t>());
        auto word_of = [&](const json& arr) {
            std::vector<uint32_t> w;
            for (const json& v : arr) w.push_back(lookup(color_id, v, "color"));
            return C->object(w);
        };

        struct Rec {
            uint32_t src, dst;
            PropArrow f;
        };
        std::map<std::string, Rec> rec;
        for (const json& a : j.at("arrows")) {
            std::string name = a.at("name").get<std::string>();
            uint32_t src = word_of(a.at("src")), dst = word_of(a.at("dst"));
            PropArrow f;
            f.under = FinMap(C->length(src), C->length(dst),
                             a.at("map").get<std::vector<uint32_t>>());
            if (a.contains("ops")) f.ops = a.at("ops").get<std::vector<uint32_t>>();
            f.tag = a.value("tag", 0u);
            if (!rec.emplace(name, Rec{src, dst, f}).second)
                throw std::invalid_argument("duplicate arrow '" + name + "'");
            C->add_arrow(src, dst, std::move(f));
        }
        C->seal_homs();
        auto id_of = [&](const json& v) {
            std::string n = v.get<std::string>();
            auto it = rec.find(n);
            if (it == rec.end())
                throw std::invalid_argument("unknown arrow '" + n + "'");
            return C->find(it->second.src, it->second.dst, it->second.f);
        };
        for (const json& e : j.at("identities"))
            C->set_identity(word_of(e.at("object")), id_of(e.at("arrow")));
        for (const json& e : j.at("symmetries")) {
            uint32_t o = word_of(e.at("object"));
            auto perm = e.at("perm").get<std::vector<uint32_t>>();
            C->set_sym(o, FinMap(C->length(o), C->length(o), std::move(perm)),
                       id_of(e.at("arrow")));
        }
        for (const json& t : j.at("composition"))
            C->set_compose(id_of(t.at(0)), id_of(t.at(1)), id_of(t.at(2)));
        C->finalize();
        return C;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("prop file: ") + e.what());
    }
}

std::string dump_prop_json(const PropOverF& C) {
    json j;
    j["kind"] = "prop";
    for (uint32_t c = 0; c < C.color_count(); ++c) j["colors"].push_back(C.color_name(c));
    j["tuple_bound"] = C.tuple_bound();
    auto word_names = [&](uint32_t o) {
        json arr = json::array();
        for (uint32_t c : C.word(o)) arr.push_back(C.color_name(c));
        return arr;
    };
    auto arrow_name = [](uint32_t f) { return "a" + std::to_string(f); };
    j["arrows"] = json::array();
    for (uint32_t f = 0; f < C.arrow_count(); ++f) {
        const PropArrow& a = C.arrow(f);
        json e;
        e["name"] = arrow_name(f);
        e["src"] = word_names(C.src(f));
        e["dst"] = word_names(C.dst(f));
        e["map"] = a.under.values();
        if (!a.ops.empty()) e["ops"] = a.ops;
        if (a.tag) e["tag"] = a.tag;
        j["arrows"].push_back(std::move(e));
    }
    j["identities"] = json::array();
    j["symmetries"] = json::array();
    for (uint32_t o = 0; o < C.object_count(); ++o) {
        j["identities"].push_back(
            {{"object", word_names(o)}, {"arrow", arrow_name(C.identity(o))}});
        for (const FinMap& rho : all_bijections(C.length(o)))
            j["symmetries"].push_back({{"object", word_names(o)},
                                       {"perm", rho.values()},
                                       {"arrow", arrow_name(C.sym(o, rho))}});
    }
    j["composition"] = json::array();
    for (uint32_t g = 0; g < C.arrow_count(); ++g)
        for (uint32_t f = 0; f < C.arrow_count(); ++f)
            if (C.dst(f) == C.src(g))
                j["composition"].push_back(
                    {arrow_name(g), arrow_name(f), arrow_name(C.compose(g, f))});
    return j.dump() + "\n";
}

// --------------------------------------------------------------- presheaves

std::string dump_presheaf_json(const std::string& kind, const Bounds& b,
                               const SetPresheaf& X) {
    json j;
    j["kind"] = "presheaf";
    j["pattern"] = kind;
    j["bounds"] = b.describe();
    j["objects"] = json::array();
    for (uint32_t o = 0; o < X.cat->object_count(); ++o)
        j["objects"].push_back(X.cat->object_name(o));
    j["sizes"] = X.size;
    j["action"] = X.action;
    if (!X.elem_name.empty()) j["elements"] = X.elem_name;
    return j.dump() + "\n";
}

PresheafFile parse_presheaf_json(const std::string& text) {
    try {
        json j = json::parse(text);
        if (j.value("kind", "") != "presheaf")
            throw std::invalid_argument("kind must be \"presheaf\"");
        PresheafFile f;
        f.kind = j.at("pattern").get<std::string>();
        f.bounds = Bounds::parse(j.at("bounds").get<std::string>());
        f.objects = j.at("objects").get<std::vector<std::string>>();
        f.sizes = j.at("sizes").get<std::vector<uint32_t>>();
        f.action = j.at("action").get<std::vector<std::vector<uint32_t>>>();
        if (j.contains("elements"))
            f.elements = j.at("elements").get<std::vector<std::vector<std::string>>>();
        return f;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("presheaf file: ") + e.what());
    }
}

SetPresheaf attach_presheaf(const PresheafFile& f, std::shared_ptr<const FinCat> cat) {
    if (f.objects.size() != cat->object_count() || f.sizes.size() != cat->object_count())
        throw std::invalid_argument(
            "presheaf file: " + std::to_string(f.objects.size()) + " objects against " +
            std::to_string(cat->object_count()) + " in the category; check the bounds");
    for (uint32_t o = 0; o < cat->object_count(); ++o)
        if (f.objects[o] != cat->object_name(o))
            throw std::invalid_argument("presheaf file: object " + std::to_string(o) +
                                        " is '" + f.objects[o] + "' in the file but '" +
                                        cat->object_name(o) + "' in the category");
    if (f.action.size() != cat->arrow_count())
        throw std::invalid_argument(
            "presheaf file: " + std::to_string(f.action.size()) + " action tables against " +
            std::to_string(cat->arrow_count()) + " arrows");
    SetPresheaf X;
    X.cat = std::move(cat);
    X.size = f.sizes;
    X.action = f.action;
    X.elem_name = f.elements;
    return X;
}

// ------------------------------------------------------------- prop sources

std::shared_ptr<PropOverF> load_prop(const std::string& what, const Bounds& b) {
    if (what.rfind("builtin:", 0) == 0) {
        std::string name = what.substr(8);
        if (name == "absorbing") return absorbing_idempotent_prop();
        if (name == "fsets") return finite_sets_prop(b.tuple);
        throw std::invalid_argument("unknown builtin prop '" + name +
                                    "' (have: absorbing, fsets)");
    }
    if (what.rfind("env:", 0) == 0)
        return envelope(*load_operad(what.substr(4), b), b.tuple);
    return parse_prop_json(read_text_file(what));
}

}  // namespace opdcat
