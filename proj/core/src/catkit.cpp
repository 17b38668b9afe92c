#include "opdcat/catkit.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace opdcat {

// ------------------------------------------------------------ SimplexMap

SimplexMap::SimplexMap(uint32_t dom, uint32_t cod, std::vector<uint32_t> values)
    : dom_(dom), cod_(cod), values_(std::move(values)) {
    if (values_.size() != dom_ + 1)
        throw std::invalid_argument("SimplexMap: need n+1 values");
    for (size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] > cod_)
            throw std::invalid_argument("SimplexMap: value out of range");
        if (i > 0 && values_[i - 1] > values_[i])
            throw std::invalid_argument("SimplexMap: values must be weakly increasing");
    }
}

SimplexMap SimplexMap::identity(uint32_t n) {
    std::vector<uint32_t> v(n + 1);
    std::iota(v.begin(), v.end(), 0u);
    return SimplexMap(n, n, std::move(v));
}

SimplexMap SimplexMap::iota(uint32_t i, uint32_t j, uint32_t n) {
    if (i > j || j > n)
        throw std::invalid_argument("SimplexMap::iota: need i <= j <= n");
    std::vector<uint32_t> v(j - i + 1);
    std::iota(v.begin(), v.end(), i);
    return SimplexMap(j - i, n, std::move(v));
}

uint32_t SimplexMap::operator()(uint32_t t) const {
    if (t > dom_)
        throw std::out_of_range("SimplexMap: argument out of range");
    return values_[t];
}

bool SimplexMap::is_inert() const {
    for (uint32_t t = 0; t <= dom_; ++t)
        if (values_[t] != values_[0] + t)
            return false;
    return true;
}

bool SimplexMap::is_active() const { return values_[0] == 0 && values_[dom_] == cod_; }

bool SimplexMap::is_identity() const { return dom_ == cod_ && is_inert() && values_[0] == 0; }

std::string SimplexMap::str() const {
    std::ostringstream os;
    os << "[" << dom_ << "]->[" << cod_ << "]:[";
    for (size_t i = 0; i < values_.size(); ++i)
        os << (i ? "," : "") << values_[i];
    os << "]";
    return os.str();
}

bool SimplexMap::operator<(const SimplexMap& o) const {
    return std::tie(dom_, cod_, values_) < std::tie(o.dom_, o.cod_, o.values_);
}

SimplexMap compose(const SimplexMap& g, const SimplexMap& f) {
    if (f.cod() != g.dom())
        throw std::logic_error("compose(SimplexMap): levels do not match");
    std::vector<uint32_t> v(f.dom() + 1);
    for (uint32_t t = 0; t <= f.dom(); ++t)
        v[t] = g(f(t));
    return SimplexMap(f.dom(), g.cod(), std::move(v));
}

SimplexFactorization factor_simplex(const SimplexMap& phi) {
    uint32_t lo = phi(0), hi = phi(phi.dom());
    std::vector<uint32_t> av(phi.dom() + 1);
    for (uint32_t t = 0; t <= phi.dom(); ++t)
        av[t] = phi(t) - lo;
    return SimplexFactorization{SimplexMap(phi.dom(), hi - lo, std::move(av)),
                                SimplexMap::iota(lo, hi, phi.cod())};
}

std::vector<SimplexMap> all_simplex_maps(uint32_t dom, uint32_t cod) {
    std::vector<SimplexMap> out;
    std::vector<uint32_t> v(dom + 1, 0u);
    while (true) {
        bool mono = true;
        for (size_t i = 1; i < v.size(); ++i)
            if (v[i - 1] > v[i])
                mono = false;
        if (mono)
            out.push_back(SimplexMap(dom, cod, v));
        uint32_t i = dom + 1;
        while (i > 0 && v[i - 1] == cod)
            v[--i] = 0;
        if (i == 0)
            break;
        ++v[i - 1];
    }
    return out;
}

// ---------------------------------------------------------------- FinCat

uint32_t FinCat::add_object(std::string name) {
    objName_.push_back(std::move(name));
    identity_.push_back(UINT32_MAX);
    return static_cast<uint32_t>(objName_.size()) - 1;
}

uint32_t FinCat::add_arrow(uint32_t src, uint32_t dst, std::string name) {
    arrowSrc_.push_back(src);
    arrowDst_.push_back(dst);
    arrName_.push_back(std::move(name));
    return static_cast<uint32_t>(arrowSrc_.size()) - 1;
}

void FinCat::set_identity(uint32_t obj, uint32_t arrow) { identity_.at(obj) = arrow; }

void FinCat::set_compose(uint32_t g, uint32_t f, uint32_t gf) {
    auto& table = std::get<ComposeTable>(comp_);
    table.entries.emplace_back((static_cast<uint64_t>(g) << 32) | f, gf);
}

void FinCat::build_from_index() {
    uint32_t n = object_count(), a = arrow_count();
    fromStart_.assign(n + 1, 0u);
    for (uint32_t i = 0; i < a; ++i)
        ++fromStart_[arrowSrc_[i] + 1];
    for (uint32_t o = 0; o < n; ++o)
        fromStart_[o + 1] += fromStart_[o];
    fromIds_.assign(a, 0u);
    std::vector<uint32_t> cursor(fromStart_.begin(), fromStart_.end() - 1);
    for (uint32_t i = 0; i < a; ++i)
        fromIds_[cursor[arrowSrc_[i]]++] = i;
    // ids come out ascending within each source slot
}

void FinCat::finalize() {
    auto& table = std::get<ComposeTable>(comp_);
    std::sort(table.entries.begin(), table.entries.end());
    for (size_t i = 1; i < table.entries.size(); ++i)
        if (table.entries[i - 1].first == table.entries[i].first)
            throw std::logic_error("FinCat: duplicate composition entry");
    build_from_index();
    finalized_ = true;
}

void FinCat::finalize_lifted(std::shared_ptr<const FinCat> base, std::vector<uint32_t> pi_obj) {
    if (pi_obj.size() != object_count())
        throw std::logic_error("FinCat: projection has wrong length");
    build_from_index();
    // the builder must have added arrows grouped by source, one per base
    // arrow out of the projected object, in base order
    for (uint32_t o = 0; o < object_count(); ++o) {
        const auto& down = base->arrows_from(pi_obj[o]);
        if (fromStart_[o + 1] - fromStart_[o] != down.size())
            throw std::logic_error("FinCat: lifted arrows out of step with the base");
        for (size_t k = 0; k < down.size(); ++k)
            if (fromIds_[fromStart_[o] + k] != fromStart_[o] + k)
                throw std::logic_error("FinCat: lifted arrows must be added in order");
    }
    comp_ = LiftData{std::move(base), std::move(pi_obj)};
    finalized_ = true;
}

bool FinCat::lifted() const { return std::holds_alternative<LiftData>(comp_); }

const FinCat& FinCat::base() const { return *std::get<LiftData>(comp_).base; }

uint32_t FinCat::base_object(uint32_t obj) const {
    return std::get<LiftData>(comp_).pi_obj.at(obj);
}

uint32_t FinCat::base_arrow(uint32_t a) const {
    const auto& L = std::get<LiftData>(comp_);
    uint32_t o = arrowSrc_[a];
    return L.base->arrows_from(L.pi_obj[o])[a - fromStart_[o]];
}

uint32_t FinCat::lift(uint32_t obj, uint32_t down) const {
    const auto& L = std::get<LiftData>(comp_);
    uint32_t pos = L.base->from_position(L.pi_obj[obj], down);
    return fromStart_[obj] + pos;
}

uint32_t FinCat::from_position(uint32_t obj, uint32_t arrow) const {
    auto lo = fromIds_.begin() + fromStart_[obj];
    auto hi = fromIds_.begin() + fromStart_[obj + 1];
    auto it = std::lower_bound(lo, hi, arrow);
    if (it == hi || *it != arrow)
        throw std::logic_error("FinCat: arrow not out of this object");
    return static_cast<uint32_t>(it - lo);
}

uint32_t FinCat::compose(uint32_t g, uint32_t f) const {
    if (dst(f) != src(g))
        throw std::logic_error("FinCat::compose: arrows do not match");
    if (auto* table = std::get_if<ComposeTable>(&comp_)) {
        uint64_t key = (static_cast<uint64_t>(g) << 32) | f;
        auto it = std::lower_bound(table->entries.begin(), table->entries.end(),
                                   std::make_pair(key, 0u));
        if (it == table->entries.end() || it->first != key)
            throw std::logic_error("FinCat::compose: missing table entry");
        return it->second;
    }
    const auto& L = std::get<LiftData>(comp_);
    uint32_t down = L.base->compose(base_arrow(g), base_arrow(f));
    return lift(arrowSrc_[f], down);
}

ArrowRange FinCat::arrows_from(uint32_t obj) const {
    return ArrowRange{fromIds_.data() + fromStart_[obj], fromIds_.data() + fromStart_[obj + 1]};
}

std::vector<uint32_t> FinCat::hom(uint32_t x, uint32_t y) const {
    std::vector<uint32_t> out;
    for (uint32_t i = fromStart_[x]; i < fromStart_[x + 1]; ++i)
        if (arrowDst_[fromIds_[i]] == y)
            out.push_back(fromIds_[i]);
    return out;
}

std::optional<uint32_t> FinCat::find_inverse(uint32_t a) const {
    uint32_t x = src(a), y = dst(a);
    for (uint32_t b : hom(y, x))
        if (compose(b, a) == identity(x) && compose(a, b) == identity(y))
            return b;
    return std::nullopt;
}

std::optional<uint32_t> FinCat::object_by_name(const std::string& name) const {
    for (uint32_t o = 0; o < object_count(); ++o)
        if (objName_[o] == name)
            return o;
    return std::nullopt;
}

std::optional<uint32_t> FinCat::arrow_by_name(const std::string& name) const {
    for (uint32_t a = 0; a < arrow_count(); ++a)
        if (arrName_[a] == name)
            return a;
    return std::nullopt;
}

FinCat FinCat::opposite() const {
    if (lifted())
        throw std::logic_error("FinCat::opposite: not supported for lifted categories");
    FinCat op;
    for (uint32_t o = 0; o < object_count(); ++o)
        op.add_object(objName_[o]);
    for (uint32_t a = 0; a < arrow_count(); ++a)
        op.add_arrow(arrowDst_[a], arrowSrc_[a], arrName_[a]);
    for (uint32_t o = 0; o < object_count(); ++o)
        op.set_identity(o, identity_[o]);
    for (const auto& [key, gf] : std::get<ComposeTable>(comp_).entries) {
        uint32_t g = static_cast<uint32_t>(key >> 32);
        uint32_t f = static_cast<uint32_t>(key & 0xffffffffu);
        op.set_compose(f, g, gf);
    }
    op.finalize();
    return op;
}

CheckReport FinCat::validate(const std::string& name, uint64_t assoc_budget) const {
    CheckReport r;
    r.name = name;
    r.count("objects", object_count());
    r.count("arrows", arrow_count());
    for (uint32_t o = 0; o < object_count(); ++o) {
        uint32_t e = identity_[o];
        if (e == UINT32_MAX || src(e) != o || dst(e) != o) {
            r.fail("object " + objName_[o] + " has no identity");
            return r;
        }
    }
    int64_t idchecks = 0;
    for (uint32_t a = 0; a < arrow_count(); ++a) {
        if (compose(a, identity(src(a))) != a || compose(identity(dst(a)), a) != a)
            r.fail("identity law fails at arrow " + std::to_string(a) + " (" + arrName_[a] +
                   ")");
        idchecks += 2;
    }
    r.count("identity_compositions", idchecks);

    // count composable triples, then walk them with a deterministic stride
    uint64_t total = 0;
    std::vector<uint64_t> outdeg(object_count());
    for (uint32_t o = 0; o < object_count(); ++o)
        outdeg[o] = fromStart_[o + 1] - fromStart_[o];
    for (uint32_t f = 0; f < arrow_count(); ++f)
        for (uint32_t gi = fromStart_[dst(f)]; gi < fromStart_[dst(f) + 1]; ++gi)
            total += outdeg[dst(fromIds_[gi])];
    uint64_t stride = total > assoc_budget ? (total + assoc_budget - 1) / assoc_budget : 1;
    uint64_t seen = 0, next = 0;
    int64_t checked = 0;
    for (uint32_t f = 0; f < arrow_count() && r.passed; ++f) {
        for (uint32_t gi = fromStart_[dst(f)]; gi < fromStart_[dst(f) + 1] && r.passed; ++gi) {
            uint32_t g = fromIds_[gi];
            uint64_t run = outdeg[dst(g)];
            while (next < seen + run) {
                uint32_t h = fromIds_[fromStart_[dst(g)] + (next - seen)];
                if (compose(h, compose(g, f)) != compose(compose(h, g), f)) {
                    r.fail("associativity fails at (" + arrName_[f] + ", " + arrName_[g] +
                           ", " + arrName_[h] + ")");
                    break;
                }
                ++checked;
                next += stride;
            }
            seen += run;
        }
    }
    r.count("composable_triples", static_cast<int64_t>(total));
    r.count("associativity_checked", checked);
    if (stride > 1)
        r.note("associativity sampled with stride " + std::to_string(stride));
    return r;
}

// ------------------------------------------------------------ FinFunctor

CheckReport FinFunctor::validate(const std::string& name, uint64_t budget) const {
    CheckReport r;
    r.name = name;
    if (obj.size() != src->object_count() || arr.size() != src->arrow_count()) {
        r.fail("object or arrow map has the wrong length");
        return r;
    }
    for (uint32_t a = 0; a < src->arrow_count() && r.passed; ++a) {
        if (dst->src(arr[a]) != obj[src->src(a)] || dst->dst(arr[a]) != obj[src->dst(a)])
            r.fail("arrow " + std::to_string(a) + " lands between the wrong objects");
    }
    for (uint32_t o = 0; o < src->object_count() && r.passed; ++o)
        if (arr[src->identity(o)] != dst->identity(obj[o]))
            r.fail("identity of " + src->object_name(o) + " not preserved");

    uint64_t total = 0;
    for (uint32_t f = 0; f < src->arrow_count(); ++f)
        total += src->arrows_from(src->dst(f)).size();
    uint64_t stride = total > budget ? (total + budget - 1) / budget : 1;
    uint64_t seen = 0, next = 0;
    int64_t checked = 0;
    for (uint32_t f = 0; f < src->arrow_count() && r.passed; ++f) {
        auto gs = src->arrows_from(src->dst(f));
        for (size_t k = 0; k < gs.size(); ++k) {
            if (next == seen) {
                uint32_t g = gs[k];
                if (arr[src->compose(g, f)] != dst->compose(arr[g], arr[f])) {
                    r.fail("composition not preserved at (" + src->arrow_name(f) + ", " +
                           src->arrow_name(g) + ")");
                    break;
                }
                ++checked;
                next += stride;
            }
            ++seen;
        }
    }
    r.count("composable_pairs", static_cast<int64_t>(total));
    r.count("composition_checked", checked);
    if (stride > 1)
        r.note("composition sampled with stride " + std::to_string(stride));
    return r;
}

CheckReport check_equivalence(const std::string& name, const FinFunctor& F) {
    CheckReport r;
    r.name = name;
    auto rep = F.validate(name + ".functor");
    if (!rep.passed) {
        r.fail("not a functor: " + rep.witness);
        return r;
    }
    int64_t hit = 0;
    for (uint32_t y = 0; y < F.dst->object_count(); ++y) {
        bool found = false;
        for (uint32_t x = 0; x < F.src->object_count() && !found; ++x)
            for (uint32_t u : F.dst->hom(F.obj[x], y))
                if (F.dst->is_iso(u)) {
                    found = true;
                    break;
                }
        if (!found)
            r.fail("not essentially surjective at " + F.dst->object_name(y));
        else
            ++hit;
    }
    r.count("objects_hit", hit);
    int64_t pairs = 0;
    for (uint32_t x = 0; x < F.src->object_count(); ++x)
        for (uint32_t y = 0; y < F.src->object_count(); ++y) {
            auto up = F.src->hom(x, y);
            auto down = F.dst->hom(F.obj[x], F.obj[y]);
            std::vector<uint32_t> image;
            for (uint32_t a : up)
                image.push_back(F.arr[a]);
            std::sort(image.begin(), image.end());
            if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
                r.fail("not faithful on hom(" + F.src->object_name(x) + ", " +
                       F.src->object_name(y) + ")");
                continue;
            }
            if (image.size() != down.size())
                r.fail("not full on hom(" + F.src->object_name(x) + ", " +
                       F.src->object_name(y) + "): " + std::to_string(image.size()) + " vs " +
                       std::to_string(down.size()));
            ++pairs;
        }
    r.count("hom_pairs", pairs);
    return r;
}

// ----------------------------------------------------- AlgebraicPattern

CheckReport AlgebraicPattern::validate(const std::string& name, uint64_t factor_budget,
                                       uint64_t closure_budget) const {
    CheckReport r;
    r.name = name;
    const FinCat& C = *cat;
    if (inert.size() != C.arrow_count() || active.size() != C.arrow_count() ||
        elementary.size() != C.object_count()) {
        r.fail("marking vectors have the wrong length");
        return r;
    }
    for (uint32_t o = 0; o < C.object_count(); ++o)
        if (!inert[C.identity(o)] || !active[C.identity(o)])
            r.fail("identity of " + C.object_name(o) + " missing from a class");

    // closure of each class under composition
    for (int cls = 0; cls < 2 && r.passed; ++cls) {
        const std::vector<char>& mark = cls == 0 ? inert : active;
        uint64_t total = 0;
        for (uint32_t f = 0; f < C.arrow_count(); ++f) {
            if (!mark[f])
                continue;
            for (uint32_t g : C.arrows_from(C.dst(f)))
                if (mark[g])
                    ++total;
        }
        uint64_t stride = total > closure_budget ? (total + closure_budget - 1) / closure_budget
                                                 : 1;
        uint64_t seen = 0, next = 0;
        int64_t checked = 0;
        for (uint32_t f = 0; f < C.arrow_count() && r.passed; ++f) {
            if (!mark[f])
                continue;
            for (uint32_t g : C.arrows_from(C.dst(f))) {
                if (!mark[g])
                    continue;
                if (next == seen) {
                    if (!mark[C.compose(g, f)]) {
                        r.fail(std::string(cls == 0 ? "inert" : "active") +
                               " class not closed at (" + C.arrow_name(f) + ", " +
                               C.arrow_name(g) + ")");
                        break;
                    }
                    ++checked;
                    next += stride;
                }
                ++seen;
            }
        }
        r.count(cls == 0 ? "inert_pairs_checked" : "active_pairs_checked", checked);
        if (stride > 1)
            r.note(std::string(cls == 0 ? "inert" : "active") + " closure sampled with stride " +
                   std::to_string(stride));
    }

    // factorization: every arrow is active-after-inert, uniquely up to a
    // unique compatible iso between the middles
    std::vector<char> isoflag(C.arrow_count(), 0);
    for (uint32_t a = 0; a < C.arrow_count(); ++a)
        isoflag[a] = C.find_inverse(a).has_value() ? 1 : 0;
    uint64_t stride =
        C.arrow_count() > factor_budget ? (C.arrow_count() + factor_budget - 1) / factor_budget
                                        : 1;
    int64_t factored = 0;
    for (uint32_t f = 0; f < C.arrow_count() && r.passed; f += stride) {
        struct Fact {
            uint32_t i, a;
        };
        std::vector<Fact> facts;
        for (uint32_t i : C.arrows_from(C.src(f))) {
            if (!inert[i])
                continue;
            for (uint32_t a : C.arrows_from(C.dst(i))) {
                if (!active[a] || C.dst(a) != C.dst(f))
                    continue;
                if (C.compose(a, i) == f)
                    facts.push_back({i, a});
            }
        }
        if (facts.empty()) {
            r.fail("no inert/active factorization of " + C.arrow_name(f));
            break;
        }
        const Fact& c = facts.front();
        for (const Fact& o : facts) {
            uint32_t links = 0;
            for (uint32_t u : C.hom(C.dst(c.i), C.dst(o.i)))
                if (isoflag[u] && C.compose(u, c.i) == o.i && C.compose(o.a, u) == c.a)
                    ++links;
            if (links != 1) {
                r.fail("factorizations of " + C.arrow_name(f) + " related by " +
                       std::to_string(links) + " isos, want exactly 1");
                break;
            }
        }
        ++factored;
    }
    r.count("arrows_factored", factored);
    if (stride > 1)
        r.note("factorization sampled with stride " + std::to_string(stride));
    int64_t elems = 0;
    for (char e : elementary)
        elems += e ? 1 : 0;
    r.count("elementary_objects", elems);
    return r;
}

// ------------------------------------------------------------ SetPresheaf

CheckReport SetPresheaf::validate(const std::string& name, uint64_t budget) const {
    CheckReport r;
    r.name = name;
    const FinCat& C = *cat;
    if (size.size() != C.object_count() || action.size() != C.arrow_count()) {
        r.fail("value or action vectors have the wrong length");
        return r;
    }
    for (uint32_t a = 0; a < C.arrow_count() && r.passed; ++a) {
        if (action[a].size() != size[C.src(a)]) {
            r.fail("action table of " + C.arrow_name(a) + " has the wrong length");
            break;
        }
        for (uint32_t v : action[a])
            if (v >= size[C.dst(a)]) {
                r.fail("action of " + C.arrow_name(a) + " leaves the value set");
                break;
            }
    }
    for (uint32_t o = 0; o < C.object_count() && r.passed; ++o) {
        const auto& t = action[C.identity(o)];
        for (uint32_t i = 0; i < t.size(); ++i)
            if (t[i] != i) {
                r.fail("identity of " + C.object_name(o) + " does not act as identity");
                break;
            }
    }
    uint64_t total = 0;
    for (uint32_t f = 0; f < C.arrow_count(); ++f)
        total += C.arrows_from(C.dst(f)).size();
    uint64_t stride = total > budget ? (total + budget - 1) / budget : 1;
    uint64_t seen = 0, next = 0;
    int64_t checked = 0;
    for (uint32_t f = 0; f < C.arrow_count() && r.passed; ++f) {
        for (uint32_t g : C.arrows_from(C.dst(f))) {
            if (next == seen) {
                uint32_t gf = C.compose(g, f);
                const auto &tf = action[f], &tg = action[g], &tgf = action[gf];
                for (uint32_t t = 0; t < tf.size(); ++t)
                    if (tg[tf[t]] != tgf[t]) {
                        r.fail("functoriality fails at (" + C.arrow_name(f) + ", " +
                               C.arrow_name(g) + ") on element " + describe_elem(C.src(f), t));
                        break;
                    }
                ++checked;
                next += stride;
            }
            ++seen;
        }
    }
    r.count("composable_pairs", static_cast<int64_t>(total));
    r.count("pairs_checked", checked);
    if (stride > 1)
        r.note("functoriality sampled with stride " + std::to_string(stride));
    return r;
}

std::string SetPresheaf::describe_elem(uint32_t obj, uint32_t t) const {
    if (obj < elem_name.size() && t < elem_name[obj].size() && !elem_name[obj][t].empty())
        return elem_name[obj][t];
    return cat->object_name(obj) + "#" + std::to_string(t);
}

SetPresheaf terminal_presheaf(std::shared_ptr<const FinCat> cat) {
    SetPresheaf F;
    F.size.assign(cat->object_count(), 1u);
    F.action.assign(cat->arrow_count(), std::vector<uint32_t>{0u});
    F.cat = std::move(cat);
    return F;
}

SetPresheaf corepresentable_presheaf(std::shared_ptr<const FinCat> cat, uint32_t obj) {
    SetPresheaf F;
    F.cat = cat;
    uint32_t n = cat->object_count();
    std::vector<std::vector<uint32_t>> homs(n);
    for (uint32_t y = 0; y < n; ++y)
        homs[y] = cat->hom(obj, y);
    F.size.resize(n);
    F.elem_name.resize(n);
    for (uint32_t y = 0; y < n; ++y) {
        F.size[y] = static_cast<uint32_t>(homs[y].size());
        for (uint32_t a : homs[y])
            F.elem_name[y].push_back(cat->arrow_name(a));
    }
    F.action.resize(cat->arrow_count());
    for (uint32_t g = 0; g < cat->arrow_count(); ++g) {
        uint32_t y = cat->src(g), z = cat->dst(g);
        F.action[g].resize(homs[y].size());
        for (uint32_t t = 0; t < homs[y].size(); ++t) {
            uint32_t composite = cat->compose(g, homs[y][t]);
            auto it = std::lower_bound(homs[z].begin(), homs[z].end(), composite);
            F.action[g][t] = static_cast<uint32_t>(it - homs[z].begin());
        }
    }
    return F;
}

// --------------------------------------------------------- Segal checks

SliceDiagram elementary_slice(const AlgebraicPattern& P, uint32_t x) {
    SliceDiagram d;
    const FinCat& C = *P.cat;
    std::vector<uint32_t> cones;
    for (uint32_t u : C.arrows_from(x))
        if (P.inert[u] && P.elementary[C.dst(u)])
            cones.push_back(u);
    for (uint32_t u : cones) {
        uint32_t j = d.shape.add_object(C.arrow_name(u));
        (void)j;
        d.cone_arrow.push_back(u);
        d.vertex_object.push_back(C.dst(u));
    }
    for (uint32_t a = 0; a < cones.size(); ++a)
        for (uint32_t w : C.arrows_from(d.vertex_object[a])) {
            if (!P.inert[w] || !P.elementary[C.dst(w)])
                continue;
            uint32_t target = C.compose(w, cones[a]);
            for (uint32_t b = 0; b < cones.size(); ++b)
                if (cones[b] == target) {
                    d.shape.add_arrow(a, b, C.arrow_name(w));
                    d.edge_arrow.push_back(w);
                }
        }
    return d;
}

std::vector<std::vector<uint32_t>> set_limit(const std::vector<uint32_t>& sizes,
                                             const std::vector<DiagramEdge>& edges) {
    std::vector<std::vector<uint32_t>> out;
    size_t n = sizes.size();
    std::vector<uint32_t> family(n, 0u);
    // group constraints by the largest vertex they touch so partial
    // families can be rejected early
    std::vector<std::vector<const DiagramEdge*>> by_vertex(n);
    for (const auto& e : edges)
        by_vertex[std::max(e.src, e.dst)].push_back(&e);
    auto consistent = [&](size_t upto) {
        for (const DiagramEdge* e : by_vertex[upto])
            if ((*e->table)[family[e->src]] != family[e->dst])
                return false;
        return true;
    };
    size_t v = 0;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    std::vector<uint32_t> cursor(n, 0u);
    // lexicographic depth first walk
    while (true) {
        if (cursor[v] >= sizes[v]) {
            if (v == 0)
                break;
            cursor[v] = 0;
            --v;
            ++cursor[v];
            continue;
        }
        family[v] = cursor[v];
        if (!consistent(v)) {
            ++cursor[v];
            continue;
        }
        if (v + 1 == n) {
            out.push_back(family);
            ++cursor[v];
        } else {
            ++v;
            cursor[v] = 0;
        }
    }
    return out;
}

CheckReport check_segal(const std::string& name, const AlgebraicPattern& P,
                        const SetPresheaf& F) {
    CheckReport r;
    r.name = name;
    const FinCat& C = *P.cat;
    int64_t objects = 0;
    for (uint32_t x = 0; x < C.object_count() && r.passed; ++x) {
        SliceDiagram d = elementary_slice(P, x);
        std::vector<uint32_t> sizes;
        for (uint32_t e : d.vertex_object)
            sizes.push_back(F.size[e]);
        std::vector<DiagramEdge> edges;
        for (uint32_t a = 0; a < d.shape.arrow_count(); ++a)
            edges.push_back({d.shape.src(a), d.shape.dst(a), &F.action[d.edge_arrow[a]]});
        auto lim = set_limit(sizes, edges);
        // the comparison map sends s to its family of inert restrictions
        std::vector<std::vector<uint32_t>> image;
        for (uint32_t s = 0; s < F.size[x]; ++s) {
            std::vector<uint32_t> fam;
            for (uint32_t u : d.cone_arrow)
                fam.push_back(F.action[u][s]);
            image.push_back(std::move(fam));
        }
        std::vector<std::vector<uint32_t>> sorted = image;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            r.fail("Segal map not injective at " + C.object_name(x));
            break;
        }
        if (image.size() != lim.size()) {
            r.fail("Segal map at " + C.object_name(x) + ": " + std::to_string(image.size()) +
                   " elements vs limit of size " + std::to_string(lim.size()));
            break;
        }
        std::sort(lim.begin(), lim.end());
        for (const auto& fam : sorted)
            if (!std::binary_search(lim.begin(), lim.end(), fam)) {
                r.fail("Segal image leaves the limit at " + C.object_name(x));
                break;
            }
        ++objects;
    }
    r.count("objects_checked", objects);
    return r;
}

// --------------------------------------------------- elements and kan

std::optional<uint32_t> ElementsCategory::object_of(uint32_t base_obj, uint32_t elem) const {
    for (uint32_t o = 0; o < obj_elem.size(); ++o)
        if (obj_elem[o].first == base_obj && obj_elem[o].second == elem)
            return o;
    return std::nullopt;
}

ElementsCategory category_of_elements(const SetPresheaf& F) {
    ElementsCategory E;
    auto cat = std::make_shared<FinCat>();
    const FinCat& B = *F.cat;
    for (uint32_t c = 0; c < B.object_count(); ++c)
        for (uint32_t t = 0; t < F.size[c]; ++t) {
            cat->add_object("(" + B.object_name(c) + ", " + F.describe_elem(c, t) + ")");
            E.obj_elem.emplace_back(c, t);
        }
    std::vector<uint32_t> first(B.object_count() + 1, 0u);
    for (uint32_t c = 0; c < B.object_count(); ++c)
        first[c + 1] = first[c] + F.size[c];
    std::vector<uint32_t> pi_obj, pi_arr;
    for (uint32_t o = 0; o < E.obj_elem.size(); ++o) {
        auto [c, t] = E.obj_elem[o];
        pi_obj.push_back(c);
        for (uint32_t b : B.arrows_from(c)) {
            uint32_t o2 = first[B.dst(b)] + F.action[b][t];
            uint32_t a = cat->add_arrow(o, o2, "");
            pi_arr.push_back(b);
            if (b == B.identity(c))
                cat->set_identity(o, a);
        }
    }
    cat->finalize_lifted(F.cat, pi_obj);
    E.cat = cat;
    E.projection = FinFunctor{cat, F.cat, std::move(pi_obj), std::move(pi_arr)};
    return E;
}

CheckReport check_left_fibration(const std::string& name, const FinFunctor& pi) {
    CheckReport r;
    r.name = name;
    auto rep = pi.validate(name + ".functor");
    if (!rep.passed) {
        r.fail("projection is not a functor: " + rep.witness);
        return r;
    }
    int64_t pairs = 0;
    for (uint32_t e = 0; e < pi.src->object_count() && r.passed; ++e) {
        for (uint32_t b : pi.dst->arrows_from(pi.obj[e])) {
            uint32_t lifts = 0;
            for (uint32_t w : pi.src->arrows_from(e))
                if (pi.arr[w] == b)
                    ++lifts;
            if (lifts != 1) {
                r.fail(std::to_string(lifts) + " lifts of " + pi.dst->arrow_name(b) + " at " +
                       pi.src->object_name(e) + ", want exactly 1");
                break;
            }
            ++pairs;
        }
    }
    r.count("lift_pairs_checked", pairs);
    return r;
}

KanExtension left_kan_along_left_fibration(const FinFunctor& pi, const SetPresheaf& F) {
    KanExtension K;
    const FinCat& E = *pi.src;
    const FinCat& B = *pi.dst;
    K.fiber_objects.resize(B.object_count());
    K.block_offset.resize(B.object_count());
    for (uint32_t e = 0; e < E.object_count(); ++e)
        K.fiber_objects[pi.obj[e]].push_back(e);
    K.pre.cat = pi.dst;
    K.pre.size.resize(B.object_count());
    K.pre.elem_name.resize(B.object_count());
    for (uint32_t b = 0; b < B.object_count(); ++b) {
        uint32_t off = 0;
        for (uint32_t e : K.fiber_objects[b]) {
            K.block_offset[b].push_back(off);
            for (uint32_t t = 0; t < F.size[e]; ++t)
                K.pre.elem_name[b].push_back(E.object_name(e) + "#" + std::to_string(t));
            off += F.size[e];
        }
        K.pre.size[b] = off;
    }
    auto block_of = [&](uint32_t b, uint32_t e) {
        const auto& fo = K.fiber_objects[b];
        auto it = std::lower_bound(fo.begin(), fo.end(), e);
        return K.block_offset[b][static_cast<uint32_t>(it - fo.begin())];
    };
    K.pre.action.resize(B.arrow_count());
    for (uint32_t b = 0; b < B.object_count(); ++b) {
        for (uint32_t g : B.arrows_from(b)) {
            auto& table = K.pre.action[g];
            table.resize(K.pre.size[b]);
            for (size_t k = 0; k < K.fiber_objects[b].size(); ++k) {
                uint32_t e = K.fiber_objects[b][k];
                // the unique lift of g at e
                uint32_t w = UINT32_MAX;
                for (uint32_t cand : E.arrows_from(e))
                    if (pi.arr[cand] == g) {
                        w = cand;
                        break;
                    }
                if (w == UINT32_MAX)
                    throw std::logic_error("left_kan: no lift, projection is not a left fibration");
                uint32_t e2 = E.dst(w);
                uint32_t off = K.block_offset[b][k];
                uint32_t off2 = block_of(B.dst(g), e2);
                for (uint32_t t = 0; t < F.size[e]; ++t)
                    table[off + t] = off2 + F.action[w][t];
            }
        }
    }
    return K;
}

CheckReport check_kan_fiber_recovery(const std::string& name, const KanExtension& kan,
                                     const FinFunctor& pi, const SetPresheaf& F) {
    CheckReport r;
    r.name = name;
    const FinCat& E = *pi.src;
    const FinCat& B = *pi.dst;
    for (uint32_t b = 0; b < B.object_count() && r.passed; ++b) {
        uint32_t total = 0;
        for (uint32_t e : kan.fiber_objects[b])
            total += F.size[e];
        if (total != kan.pre.size[b])
            r.fail("blocks do not partition the value set at " + B.object_name(b));
    }
    int64_t arrows = 0;
    for (uint32_t w = 0; w < E.arrow_count() && r.passed; ++w) {
        uint32_t e = E.src(w), e2 = E.dst(w), g = pi.arr[w];
        uint32_t b = pi.obj[e], b2 = pi.obj[e2];
        auto offset_of = [&](uint32_t bb, uint32_t ee) {
            const auto& fo = kan.fiber_objects[bb];
            auto it = std::lower_bound(fo.begin(), fo.end(), ee);
            return kan.block_offset[bb][static_cast<uint32_t>(it - fo.begin())];
        };
        uint32_t off = offset_of(b, e), off2 = offset_of(b2, e2);
        for (uint32_t t = 0; t < F.size[e]; ++t)
            if (kan.pre.action[g][off + t] != off2 + F.action[w][t]) {
                r.fail("downstairs action does not restrict to the fiber at arrow " +
                       std::to_string(w));
                break;
            }
        ++arrows;
    }
    r.count("upstairs_arrows_checked", arrows);
    return r;
}

// ------------------------------------------------------------- simplicial

DeltaCat build_delta_cat(uint32_t max_level) {
    DeltaCat d;
    d.max_level = max_level;
    auto cat = std::make_shared<FinCat>();
    for (uint32_t n = 0; n <= max_level; ++n)
        cat->add_object("[" + std::to_string(n) + "]");
    for (uint32_t n = 0; n <= max_level; ++n)
        for (uint32_t m = 0; m <= max_level; ++m)
            for (const SimplexMap& f : all_simplex_maps(n, m)) {
                uint32_t a = cat->add_arrow(n, m, f.str());
                d.arrow_id[f] = a;
                d.simplex.push_back(f);
                if (f.is_identity())
                    cat->set_identity(n, a);
            }
    for (const auto& [f, fa] : d.arrow_id)
        for (const auto& [g, ga] : d.arrow_id)
            if (f.cod() == g.dom())
                cat->set_compose(ga, fa, d.arrow_id.at(compose(g, f)));
    cat->finalize();
    d.cat = cat;
    return d;
}

uint32_t DeltaCat::id_of(const SimplexMap& f) const {
    auto it = arrow_id.find(f);
    if (it == arrow_id.end())
        throw std::logic_error("DeltaCat: map outside the truncation: " + f.str());
    return it->second;
}

AlgebraicPattern deltaop_pattern(const DeltaCat& d) {
    AlgebraicPattern P;
    P.cat = std::make_shared<FinCat>(d.cat->opposite());
    P.inert.resize(d.cat->arrow_count());
    P.active.resize(d.cat->arrow_count());
    for (uint32_t a = 0; a < d.cat->arrow_count(); ++a) {
        P.inert[a] = d.simplex[a].is_inert();
        P.active[a] = d.simplex[a].is_active();
    }
    P.elementary.assign(d.cat->object_count(), 0);
    P.elementary[0] = 1;
    if (d.max_level >= 1)
        P.elementary[1] = 1;
    return P;
}

SetPresheaf nerve_presheaf(const DeltaCat& d, const std::shared_ptr<const FinCat>& C) {
    SetPresheaf X;
    X.cat = std::make_shared<FinCat>(d.cat->opposite());
    uint32_t L = d.max_level;
    // a level-n element is an object followed by n composable arrows
    std::vector<std::vector<std::vector<uint32_t>>> chains(L + 1);
    for (uint32_t o = 0; o < C->object_count(); ++o)
        chains[0].push_back({o});
    for (uint32_t n = 1; n <= L; ++n)
        for (const auto& c : chains[n - 1]) {
            uint32_t tail = n == 1 ? c[0] : C->dst(c[n - 1]);
            for (uint32_t f : C->arrows_from(tail)) {
                auto longer = c;
                longer.push_back(f);
                chains[n].push_back(std::move(longer));
            }
        }
    std::vector<std::map<std::vector<uint32_t>, uint32_t>> index(L + 1);
    X.size.resize(L + 1);
    X.elem_name.resize(L + 1);
    for (uint32_t n = 0; n <= L; ++n) {
        X.size[n] = static_cast<uint32_t>(chains[n].size());
        for (uint32_t t = 0; t < chains[n].size(); ++t) {
            const auto& c = chains[n][t];
            index[n][c] = t;
            std::string nm = C->object_name(c[0]);
            for (uint32_t k = 1; k < c.size(); ++k)
                nm += "-" + C->arrow_name(c[k]) + "->" + C->object_name(C->dst(c[k]));
            X.elem_name[n].push_back(nm);
        }
    }
    auto vertex = [&](const std::vector<uint32_t>& c, uint32_t n, uint32_t i) {
        if (i == 0)
            return c[0];
        (void)n;
        return C->dst(c[i]);
    };
    auto segment = [&](const std::vector<uint32_t>& c, uint32_t i, uint32_t j) {
        // composite of arrows i+1 .. j, identity when i == j
        if (i == j)
            return C->identity(vertex(c, 0, i));
        uint32_t f = c[i + 1];
        for (uint32_t k = i + 2; k <= j; ++k)
            f = C->compose(c[k], f);
        return f;
    };
    X.action.resize(d.cat->arrow_count());
    for (uint32_t a = 0; a < d.cat->arrow_count(); ++a) {
        const SimplexMap& psi = d.simplex[a];  // [m] -> [n] acting X_n -> X_m
        uint32_t n = psi.cod(), m = psi.dom();
        auto& table = X.action[a];
        table.resize(chains[n].size());
        for (uint32_t t = 0; t < chains[n].size(); ++t) {
            const auto& c = chains[n][t];
            std::vector<uint32_t> out{vertex(c, n, psi(0))};
            for (uint32_t j = 1; j <= m; ++j)
                out.push_back(segment(c, psi(j - 1), psi(j)));
            table[t] = index[m].at(out);
        }
    }
    return X;
}

CheckReport check_complete_segal_set(const std::string& name, const DeltaCat& d,
                                     const SetPresheaf& X) {
    CheckReport r;
    r.name = name;
    if (d.max_level < 3) {
        r.fail("needs levels up to [3]");
        return r;
    }
    auto act = [&](const SimplexMap& f) -> const std::vector<uint32_t>& {
        return X.action[d.id_of(f)];
    };
    const auto& d0 = act(SimplexMap(0, 1, {1}));  // target vertex
    const auto& d1 = act(SimplexMap(0, 1, {0}));  // source vertex
    const auto& s0 = act(SimplexMap(1, 0, {0, 0}));
    const auto& face2 = act(SimplexMap(1, 2, {0, 1}));
    const auto& face0 = act(SimplexMap(1, 2, {1, 2}));
    const auto& face1 = act(SimplexMap(1, 2, {0, 2}));
    uint32_t n0 = X.size[0], n1 = X.size[1], n2 = X.size[2];
    r.count("objects", n0);
    r.count("edges", n1);

    // compose through the unique filling 2 simplex
    std::vector<std::vector<int64_t>> comp(n1, std::vector<int64_t>(n1, -1));
    std::vector<std::vector<uint8_t>> fillers(n1, std::vector<uint8_t>(n1, 0));
    for (uint32_t s = 0; s < n2; ++s) {
        uint32_t f = face2[s], g = face0[s];
        if (fillers[f][g] != 0) {
            r.fail("two fillers for a composable pair, not Segal");
            return r;
        }
        fillers[f][g] = 1;
        comp[f][g] = face1[s];
    }
    for (uint32_t f = 0; f < n1; ++f)
        for (uint32_t g = 0; g < n1; ++g) {
            if (d0[f] == d1[g] && fillers[f][g] == 0) {
                r.fail("no filler for a composable pair, not Segal");
                return r;
            }
            if (d0[f] != d1[g] && fillers[f][g] != 0) {
                r.fail("filler over a non-composable pair");
                return r;
            }
        }
    for (uint32_t f = 0; f < n1 && r.passed; ++f) {
        if (comp[s0[d1[f]]][f] != f || comp[f][s0[d0[f]]] != f)
            r.fail("homotopy category identity laws fail at edge " + X.describe_elem(1, f));
    }
    for (uint32_t f = 0; f < n1 && r.passed; ++f)
        for (uint32_t g = 0; g < n1 && r.passed; ++g) {
            if (comp[f][g] < 0)
                continue;
            for (uint32_t h = 0; h < n1; ++h) {
                if (comp[g][h] < 0)
                    continue;
                if (comp[static_cast<uint32_t>(comp[f][g])][h] !=
                    comp[f][static_cast<uint32_t>(comp[g][h])]) {
                    r.fail("homotopy category associativity fails");
                    break;
                }
            }
        }
    if (!r.passed)
        return r;

    int64_t invertible = 0;
    std::string first_bad;
    for (uint32_t f = 0; f < n1; ++f) {
        bool inv = false;
        for (uint32_t g = 0; g < n1 && !inv; ++g)
            if (comp[f][g] >= 0 && comp[g][f] >= 0 && comp[f][g] == s0[d1[f]] &&
                comp[g][f] == s0[d0[f]])
                inv = true;
        if (inv) {
            ++invertible;
            bool degenerate = f == s0[d1[f]];
            if (!degenerate && first_bad.empty())
                first_bad = X.describe_elem(1, f);
        }
    }
    r.count("invertible_edges", invertible);
    if (invertible != n0)
        r.fail("not complete: " + std::to_string(invertible) + " invertible edges over " +
               std::to_string(n0) + " objects, first non-degenerate: " + first_bad);
    return r;
}

// ------------------------------------------------------------- pointed sets

FStarCat build_fstar_cat(uint32_t set_bound) {
    FStarCat fs;
    fs.set_bound = set_bound;
    auto cat = std::make_shared<FinCat>();
    for (uint32_t n = 0; n <= set_bound; ++n)
        cat->add_object("<" + std::to_string(n) + ">");
    for (uint32_t n = 0; n <= set_bound; ++n)
        for (uint32_t m = 0; m <= set_bound; ++m)
            for (const Span& s : all_spans(n, m)) {
                uint32_t a = cat->add_arrow(n, m, s.str());
                fs.arrow_id[s] = a;
                fs.spans.push_back(s);
                if (s.is_identity())
                    cat->set_identity(n, a);
            }
    for (uint32_t f = 0; f < fs.spans.size(); ++f)
        for (uint32_t g = 0; g < fs.spans.size(); ++g)
            if (fs.spans[f].dst() == fs.spans[g].src())
                cat->set_compose(g, f, fs.arrow_id.at(compose(fs.spans[g], fs.spans[f])));
    cat->finalize();
    fs.cat = cat;
    return fs;
}

uint32_t FStarCat::id_of(const Span& s) const {
    auto it = arrow_id.find(s);
    if (it == arrow_id.end())
        throw std::logic_error("FStarCat: span outside the truncation: " + s.str());
    return it->second;
}

const Span& FStarCat::span_of(uint32_t arrow) const { return spans.at(arrow); }

AlgebraicPattern fstar_pattern(const FStarCat& f) {
    AlgebraicPattern P;
    P.cat = f.cat;
    P.inert.resize(f.spans.size());
    P.active.resize(f.spans.size());
    for (uint32_t a = 0; a < f.spans.size(); ++a) {
        P.inert[a] = f.spans[a].is_inert();
        P.active[a] = f.spans[a].is_active();
    }
    P.elementary.assign(f.cat->object_count(), 0);
    if (f.set_bound >= 1)
        P.elementary[1] = 1;
    return P;
}

// --------------------------------------------------------------- products

uint32_t ProductPattern::object_of(uint32_t a, uint32_t b) const {
    return a * right_obj_count + b;
}

uint32_t ProductPattern::arrow_of(uint32_t a, uint32_t b) const {
    return a * right_arrow_count + b;
}

ProductPattern product_pattern(const AlgebraicPattern& A, const AlgebraicPattern& B) {
    ProductPattern P;
    const FinCat& CA = *A.cat;
    const FinCat& CB = *B.cat;
    P.left_obj_count = CA.object_count();
    P.right_obj_count = CB.object_count();
    P.left_arrow_count = CA.arrow_count();
    P.right_arrow_count = CB.arrow_count();
    auto cat = std::make_shared<FinCat>();
    for (uint32_t a = 0; a < CA.object_count(); ++a)
        for (uint32_t b = 0; b < CB.object_count(); ++b) {
            cat->add_object("(" + CA.object_name(a) + ", " + CB.object_name(b) + ")");
            P.obj_pair.emplace_back(a, b);
        }
    for (uint32_t fa = 0; fa < CA.arrow_count(); ++fa)
        for (uint32_t fb = 0; fb < CB.arrow_count(); ++fb) {
            uint32_t s = P.object_of(CA.src(fa), CB.src(fb));
            uint32_t t = P.object_of(CA.dst(fa), CB.dst(fb));
            cat->add_arrow(s, t, "(" + CA.arrow_name(fa) + ", " + CB.arrow_name(fb) + ")");
            P.arrow_pair.emplace_back(fa, fb);
        }
    for (uint32_t a = 0; a < CA.object_count(); ++a)
        for (uint32_t b = 0; b < CB.object_count(); ++b)
            cat->set_identity(P.object_of(a, b),
                              P.arrow_of(CA.identity(a), CB.identity(b)));
    for (uint32_t fa = 0; fa < CA.arrow_count(); ++fa)
        for (uint32_t ga : CA.arrows_from(CA.dst(fa)))
            for (uint32_t fb = 0; fb < CB.arrow_count(); ++fb)
                for (uint32_t gb : CB.arrows_from(CB.dst(fb)))
                    cat->set_compose(P.arrow_of(ga, gb), P.arrow_of(fa, fb),
                                     P.arrow_of(CA.compose(ga, fa), CB.compose(gb, fb)));
    cat->finalize();
    P.pattern.cat = cat;
    P.pattern.inert.resize(cat->arrow_count());
    P.pattern.active.resize(cat->arrow_count());
    P.pattern.elementary.resize(cat->object_count());
    for (uint32_t i = 0; i < cat->arrow_count(); ++i) {
        auto [fa, fb] = P.arrow_pair[i];
        P.pattern.inert[i] = A.inert[fa] && B.inert[fb];
        P.pattern.active[i] = A.active[fa] && B.active[fb];
    }
    for (uint32_t o = 0; o < cat->object_count(); ++o) {
        auto [a, b] = P.obj_pair[o];
        P.pattern.elementary[o] = A.elementary[a] && B.elementary[b];
    }
    return P;
}

// ---------------------------------------------------------------- monoids

bool FinMonoid::is_commutative() const {
    for (uint32_t a = 0; a < size; ++a)
        for (uint32_t b = 0; b < size; ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

bool FinMonoid::is_associative() const {
    for (uint32_t a = 0; a < size; ++a)
        for (uint32_t b = 0; b < size; ++b)
            for (uint32_t c = 0; c < size; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    return false;
    return true;
}

bool FinMonoid::is_unital() const {
    for (uint32_t a = 0; a < size; ++a)
        if (mul(unit, a) != a || mul(a, unit) != a)
            return false;
    return true;
}

FinMonoid FinMonoid::trivial() { return FinMonoid{1, 0, {0}, "1"}; }

FinMonoid FinMonoid::z2() {
    return FinMonoid{2, 0, {0, 1, 1, 0}, "Z2"};
}

FinMonoid FinMonoid::z4() {
    std::vector<uint32_t> t(16);
    for (uint32_t a = 0; a < 4; ++a)
        for (uint32_t b = 0; b < 4; ++b)
            t[a * 4 + b] = (a + b) % 4;
    return FinMonoid{4, 0, std::move(t), "Z4"};
}

FinMonoid FinMonoid::boolean_or() {
    return FinMonoid{2, 0, {0, 1, 1, 1}, "Bool"};
}

static uint32_t tuple_index(const std::vector<uint32_t>& w, uint32_t base) {
    uint32_t idx = 0;
    for (uint32_t v : w)
        idx = idx * base + v;
    return idx;
}

static std::vector<uint32_t> tuple_of(uint32_t idx, uint32_t n, uint32_t base) {
    std::vector<uint32_t> w(n);
    for (uint32_t i = n; i-- > 0;) {
        w[i] = idx % base;
        idx /= base;
    }
    return w;
}

SetPresheaf comm_monoid_presheaf(const FStarCat& fs, const FinMonoid& M) {
    if (!M.is_commutative() || !M.is_associative() || !M.is_unital())
        throw std::invalid_argument("comm_monoid_presheaf: not a commutative monoid");
    SetPresheaf F;
    F.cat = fs.cat;
    uint32_t nobj = fs.cat->object_count();
    F.size.resize(nobj);
    F.elem_name.resize(nobj);
    for (uint32_t n = 0; n < nobj; ++n) {
        uint32_t sz = 1;
        for (uint32_t i = 0; i < n; ++i)
            sz *= M.size;
        F.size[n] = sz;
        for (uint32_t t = 0; t < sz; ++t) {
            auto w = tuple_of(t, n, M.size);
            std::string nm = M.name + "(";
            for (uint32_t i = 0; i < n; ++i)
                nm += (i ? "," : "") + std::to_string(w[i]);
            nm += ")";
            F.elem_name[n].push_back(nm);
        }
    }
    F.action.resize(fs.cat->arrow_count());
    for (uint32_t a = 0; a < fs.cat->arrow_count(); ++a) {
        const Span& s = fs.span_of(a);
        uint32_t n = s.src(), m = s.dst();
        auto& table = F.action[a];
        table.resize(F.size[n]);
        for (uint32_t t = 0; t < F.size[n]; ++t) {
            auto w = tuple_of(t, n, M.size);
            std::vector<uint32_t> out(m, M.unit);
            for (uint32_t v = 1; v <= s.mid(); ++v) {
                uint32_t l = s.fwd()(v);
                out[l - 1] = M.mul(out[l - 1], w[s.back()(v) - 1]);
            }
            table[t] = tuple_index(out, M.size);
        }
    }
    return F;
}

SetPresheaf graded_presheaf(const FStarCat& fs, const ElementsCategory& elts,
                            const FinMonoid& N, const FinMonoid& M,
                            const std::vector<uint32_t>& theta) {
    if (theta.size() != N.size)
        throw std::invalid_argument("graded_presheaf: theta has the wrong length");
    for (uint32_t a = 0; a < N.size; ++a)
        for (uint32_t b = 0; b < N.size; ++b)
            if (theta[N.mul(a, b)] != M.mul(theta[a], theta[b]))
                throw std::invalid_argument("graded_presheaf: theta is not a homomorphism");
    if (theta[N.unit] != M.unit)
        throw std::invalid_argument("graded_presheaf: theta does not preserve the unit");

    std::vector<std::vector<uint32_t>> fiber(M.size);  // theta^{-1}(m), ascending
    for (uint32_t u = 0; u < N.size; ++u)
        fiber[theta[u]].push_back(u);
    std::vector<uint32_t> rank(N.size);
    for (uint32_t m = 0; m < M.size; ++m)
        for (uint32_t k = 0; k < fiber[m].size(); ++k)
            rank[fiber[m][k]] = k;

    const FinCat& E = *elts.cat;
    SetPresheaf F;
    F.cat = elts.cat;
    F.size.resize(E.object_count());
    // an elements object sits over <n> with a grading tuple w in M^n
    auto grade_of = [&](uint32_t o) {
        auto [n, t] = elts.obj_elem[o];
        return tuple_of(t, n, M.size);
    };
    for (uint32_t o = 0; o < E.object_count(); ++o) {
        uint32_t sz = 1;
        for (uint32_t wi : grade_of(o))
            sz *= static_cast<uint32_t>(fiber[wi].size());
        F.size[o] = sz;
    }
    F.action.resize(E.arrow_count());
    for (uint32_t a = 0; a < E.arrow_count(); ++a) {
        uint32_t o = E.src(a), o2 = E.dst(a);
        const Span& s = fs.span_of(elts.projection.arr[a]);
        auto w = grade_of(o), w2 = grade_of(o2);
        auto& table = F.action[a];
        table.resize(F.size[o]);
        for (uint32_t t = 0; t < F.size[o]; ++t) {
            // decode t into a tuple u with u_i in theta^{-1}(w_i)
            std::vector<uint32_t> u(w.size());
            uint32_t rem = t;
            for (uint32_t i = static_cast<uint32_t>(w.size()); i-- > 0;) {
                uint32_t fs_ = static_cast<uint32_t>(fiber[w[i]].size());
                u[i] = fiber[w[i]][rem % fs_];
                rem /= fs_;
            }
            // multiply along the span fibers, exactly as downstairs
            std::vector<uint32_t> out(w2.size(), N.unit);
            for (uint32_t v = 1; v <= s.mid(); ++v) {
                uint32_t l = s.fwd()(v);
                out[l - 1] = N.mul(out[l - 1], u[s.back()(v) - 1]);
            }
            uint32_t idx = 0;
            for (uint32_t l = 0; l < w2.size(); ++l)
                idx = idx * static_cast<uint32_t>(fiber[w2[l]].size()) + rank[out[l]];
            table[t] = idx;
        }
    }
    return F;
}

SetPresheaf pullback_presheaf(const FinFunctor& pi, const SetPresheaf& F) {
    SetPresheaf G;
    G.cat = pi.src;
    G.size.resize(pi.src->object_count());
    for (uint32_t o = 0; o < pi.src->object_count(); ++o)
        G.size[o] = F.size[pi.obj[o]];
    G.action.resize(pi.src->arrow_count());
    for (uint32_t a = 0; a < pi.src->arrow_count(); ++a)
        G.action[a] = F.action[pi.arr[a]];
    return G;
}

// ------------------------------------------------------- small categories

std::shared_ptr<FinCat> poset_chain_cat(uint32_t n) {
    auto cat = std::make_shared<FinCat>();
    for (uint32_t i = 0; i <= n; ++i)
        cat->add_object(std::to_string(i));
    std::vector<std::vector<uint32_t>> leq(n + 1, std::vector<uint32_t>(n + 1, UINT32_MAX));
    for (uint32_t i = 0; i <= n; ++i)
        for (uint32_t j = i; j <= n; ++j) {
            leq[i][j] = cat->add_arrow(i, j, std::to_string(i) + "<=" + std::to_string(j));
            if (i == j)
                cat->set_identity(i, leq[i][j]);
        }
    for (uint32_t i = 0; i <= n; ++i)
        for (uint32_t j = i; j <= n; ++j)
            for (uint32_t k = j; k <= n; ++k)
                cat->set_compose(leq[j][k], leq[i][j], leq[i][k]);
    cat->finalize();
    return cat;
}

std::shared_ptr<FinCat> walking_iso_cat() {
    auto cat = std::make_shared<FinCat>();
    uint32_t a = cat->add_object("a"), b = cat->add_object("b");
    uint32_t ia = cat->add_arrow(a, a, "id_a");
    uint32_t ib = cat->add_arrow(b, b, "id_b");
    uint32_t u = cat->add_arrow(a, b, "u");
    uint32_t v = cat->add_arrow(b, a, "v");
    cat->set_identity(a, ia);
    cat->set_identity(b, ib);
    cat->set_compose(ia, ia, ia);
    cat->set_compose(ib, ib, ib);
    cat->set_compose(u, ia, u);
    cat->set_compose(ib, u, u);
    cat->set_compose(v, ib, v);
    cat->set_compose(ia, v, v);
    cat->set_compose(v, u, ia);
    cat->set_compose(u, v, ib);
    cat->finalize();
    return cat;
}

std::shared_ptr<FinCat> monoid_cat(const FinMonoid& M) {
    auto cat = std::make_shared<FinCat>();
    uint32_t star = cat->add_object("*");
    for (uint32_t m = 0; m < M.size; ++m) {
        uint32_t a = cat->add_arrow(star, star, M.name + ":" + std::to_string(m));
        if (m == M.unit)
            cat->set_identity(star, a);
    }
    for (uint32_t f = 0; f < M.size; ++f)
        for (uint32_t g = 0; g < M.size; ++g)
            cat->set_compose(g, f, M.mul(g, f));
    cat->finalize();
    return cat;
}

}  // namespace opdcat
