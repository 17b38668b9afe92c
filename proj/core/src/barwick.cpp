#include "opdcat/barwick.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <utility>

namespace opdcat {

namespace {

std::string bracket(const FinMap& f) {
    std::string out = "[";
    for (uint32_t i = 1; i <= f.dom(); ++i) {
        if (i > 1) out += ",";
        out += std::to_string(f(i));
    }
    return out + "]";
}

std::string bounds_str(uint32_t set_bound, uint32_t chain_bound) {
    return "set<=" + std::to_string(set_bound) + ", chain<=" + std::to_string(chain_bound);
}

bool bijective_table(const std::vector<uint32_t>& tab, uint32_t cod) {
    if (tab.size() != cod) return false;
    std::vector<char> hit(cod, 0);
    for (uint32_t v : tab) {
        if (v >= cod || hit[v]) return false;
        hit[v] = 1;
    }
    return true;
}

}  // namespace

// ------------------------------------------------------------------ chains

Chain::Chain(uint32_t only) : first_(only) {}

Chain::Chain(std::vector<FinMap> steps) : steps_(std::move(steps)) {
    if (steps_.empty()) throw std::invalid_argument("Chain: no steps, use the set constructor");
    first_ = steps_[0].dom();
    for (size_t i = 0; i + 1 < steps_.size(); ++i)
        if (steps_[i].cod() != steps_[i + 1].dom())
            throw std::invalid_argument("Chain: steps do not meet");
}

Chain Chain::constant(uint32_t level_size, uint32_t length) {
    if (length == 0) return Chain(level_size);
    return Chain(std::vector<FinMap>(length, FinMap::identity(level_size)));
}

uint32_t Chain::level(uint32_t i) const {
    if (i > length()) throw std::invalid_argument("Chain::level: out of range");
    return i == 0 ? first_ : steps_[i - 1].cod();
}

FinMap Chain::composite(uint32_t i, uint32_t j) const {
    if (i > j || j > length()) throw std::invalid_argument("Chain::composite: bad levels");
    FinMap f = FinMap::identity(level(i));
    for (uint32_t k = i; k < j; ++k) f = compose(steps_[k], f);
    return f;
}

std::string Chain::str() const {
    std::string out = std::to_string(first_);
    for (const FinMap& s : steps_) out += ">" + std::to_string(s.cod());
    if (!steps_.empty()) {
        out += ":";
        for (const FinMap& s : steps_) out += bracket(s);
    }
    return out;
}

bool Chain::operator<(const Chain& o) const {
    if (length() != o.length()) return length() < o.length();
    if (first_ != o.first_) return first_ < o.first_;
    return steps_ < o.steps_;
}

// --------------------------------------------------------- chain morphisms

ChainMorphism::ChainMorphism(Chain src, Chain dst, SimplexMap phi, std::vector<FinMap> eta)
    : src_(std::move(src)), dst_(std::move(dst)), phi_(std::move(phi)), eta_(std::move(eta)) {
    uint32_t n = src_.length();
    if (phi_.dom() != n || phi_.cod() != dst_.length())
        throw std::invalid_argument("ChainMorphism: simplex map off the lengths");
    if (eta_.size() != n + 1) throw std::invalid_argument("ChainMorphism: one injection per level");
    for (uint32_t i = 0; i <= n; ++i) {
        if (eta_[i].dom() != src_.level(i) || eta_[i].cod() != dst_.level(phi_(i)))
            throw std::invalid_argument("ChainMorphism: injection off its levels");
        if (!eta_[i].is_injective()) throw std::invalid_argument("ChainMorphism: level map not injective");
    }
    for (uint32_t i = 0; i < n; ++i) {
        FinMap window = dst_.composite(phi_(i), phi_(i + 1));
        if (!(compose(eta_[i + 1], src_.step(i)) == compose(window, eta_[i])))
            throw std::invalid_argument("ChainMorphism: square does not commute");
        // pullback: the source level fills the window fibers over the image
        uint32_t total = 0;
        for (uint32_t p = 1; p <= src_.level(i + 1); ++p)
            total += static_cast<uint32_t>(window.fiber(eta_[i + 1](p)).size());
        if (total != src_.level(i))
            throw std::invalid_argument("ChainMorphism: square is not a pullback");
    }
}

ChainMorphism ChainMorphism::identity(const Chain& x) {
    std::vector<FinMap> eta;
    for (uint32_t i = 0; i <= x.length(); ++i) eta.push_back(FinMap::identity(x.level(i)));
    return ChainMorphism(x, x, SimplexMap::identity(x.length()), std::move(eta));
}

bool ChainMorphism::is_inert() const { return phi_.is_inert(); }

bool ChainMorphism::is_active() const {
    if (!phi_.is_active()) return false;
    for (const FinMap& e : eta_)
        if (!e.is_bijective()) return false;
    return true;
}

std::string ChainMorphism::str() const {
    std::string out = phi_.str() + " @ ";
    for (size_t i = 0; i < eta_.size(); ++i) {
        if (i) out += ",";
        out += bracket(eta_[i]);
    }
    return out;
}

bool ChainMorphism::operator<(const ChainMorphism& o) const {
    if (!(src_ == o.src_)) return src_ < o.src_;
    if (!(dst_ == o.dst_)) return dst_ < o.dst_;
    if (!(phi_ == o.phi_)) return phi_ < o.phi_;
    return eta_ < o.eta_;
}

ChainMorphism compose(const ChainMorphism& g, const ChainMorphism& f) {
    if (!(f.dst() == g.src())) throw std::invalid_argument("compose: chain morphisms do not meet");
    std::vector<FinMap> eta;
    for (uint32_t i = 0; i <= f.src().length(); ++i)
        eta.push_back(compose(g.eta(f.phi()(i)), f.eta(i)));
    return ChainMorphism(f.src(), g.dst(), compose(g.phi(), f.phi()), std::move(eta));
}

ChainFactorization factor_chain(const ChainMorphism& m) {
    const Chain& f = m.src();
    const Chain& g = m.dst();
    uint32_t n = f.length();
    SimplexFactorization sf = factor_simplex(m.phi());
    uint32_t lo = m.phi()(0), hi = m.phi()(n);
    uint32_t k = hi - lo;
    // which top point of the window each kept point sits over
    const FinMap& etop = m.eta(n);
    std::vector<uint32_t> jof(g.level(hi) + 1, 0);
    for (uint32_t j = 1; j <= f.top(); ++j) jof[etop(j)] = j;
    std::vector<std::vector<uint32_t>> kept(k + 1);
    for (uint32_t s = 0; s <= k; ++s) {
        FinMap comp = g.composite(lo + s, hi);
        for (uint32_t u = 1; u <= g.level(lo + s); ++u)
            if (jof[comp(u)]) kept[s].push_back(u);
    }
    std::vector<FinMap> midsteps;
    for (uint32_t s = 0; s < k; ++s) {
        std::vector<uint32_t> pos(g.level(lo + s + 1) + 1, 0);
        for (uint32_t w = 0; w < kept[s + 1].size(); ++w) pos[kept[s + 1][w]] = w + 1;
        std::vector<uint32_t> vals;
        for (uint32_t u : kept[s]) vals.push_back(pos[g.step(lo + s)(u)]);
        midsteps.emplace_back(static_cast<uint32_t>(kept[s].size()),
                              static_cast<uint32_t>(kept[s + 1].size()), std::move(vals));
    }
    Chain mid = k == 0 ? Chain(static_cast<uint32_t>(kept[0].size())) : Chain(std::move(midsteps));
    std::vector<FinMap> etaA;
    for (uint32_t t = 0; t <= n; ++t) {
        uint32_t s = sf.active(t);
        std::vector<uint32_t> pos(g.level(lo + s) + 1, 0);
        for (uint32_t w = 0; w < kept[s].size(); ++w) pos[kept[s][w]] = w + 1;
        std::vector<uint32_t> vals;
        for (uint32_t x = 1; x <= f.level(t); ++x) {
            uint32_t p = pos[m.eta(t)(x)];
            if (!p) throw std::logic_error("factor_chain: level point escapes the window");
            vals.push_back(p);
        }
        etaA.emplace_back(f.level(t), static_cast<uint32_t>(kept[s].size()), std::move(vals));
    }
    std::vector<FinMap> etaI;
    for (uint32_t s = 0; s <= k; ++s)
        etaI.emplace_back(static_cast<uint32_t>(kept[s].size()), g.level(lo + s), kept[s]);
    ChainMorphism act(f, mid, sf.active, std::move(etaA));
    ChainMorphism ine(std::move(mid), g, sf.inert, std::move(etaI));
    if (!act.is_active() || !ine.is_inert())
        throw std::logic_error("factor_chain: parts landed outside their classes");
    return {std::move(act), std::move(ine)};
}

std::vector<Chain> all_chains(uint32_t set_bound, uint32_t length) {
    std::vector<Chain> out;
    if (length == 0) {
        for (uint32_t a = 0; a <= set_bound; ++a) out.push_back(Chain(a));
        return out;
    }
    std::vector<FinMap> steps;
    auto rec = [&](auto&& self, uint32_t i, uint32_t from) -> void {
        if (i == length) {
            out.push_back(Chain(steps));
            return;
        }
        for (uint32_t to = 0; to <= set_bound; ++to)
            for (const FinMap& f : all_maps(from, to)) {
                steps.push_back(f);
                self(self, i + 1, to);
                steps.pop_back();
            }
    };
    for (uint32_t a = 0; a <= set_bound; ++a) rec(rec, 0, a);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ChainMorphism> all_chain_morphisms(const Chain& src, const Chain& dst) {
    std::vector<ChainMorphism> out;
    uint32_t n = src.length();
    for (const SimplexMap& phi : all_simplex_maps(n, dst.length())) {
        std::vector<std::vector<FinMap>> cand(n + 1);
        bool dead = false;
        for (uint32_t i = 0; i <= n && !dead; ++i) {
            cand[i] = all_injections(src.level(i), dst.level(phi(i)));
            dead = cand[i].empty();
        }
        if (dead) continue;
        std::vector<FinMap> eta;
        auto square_ok = [&](uint32_t i) {
            FinMap window = dst.composite(phi(i - 1), phi(i));
            if (!(compose(eta[i], src.step(i - 1)) == compose(window, eta[i - 1]))) return false;
            uint32_t total = 0;
            for (uint32_t p = 1; p <= src.level(i); ++p)
                total += static_cast<uint32_t>(window.fiber(eta[i](p)).size());
            return total == src.level(i - 1);
        };
        auto rec = [&](auto&& self, uint32_t i) -> void {
            if (i == n + 1) {
                out.emplace_back(src, dst, phi, eta);
                return;
            }
            for (const FinMap& e : cand[i]) {
                eta.push_back(e);
                if (i == 0 || square_ok(i)) self(self, i + 1);
                eta.pop_back();
            }
        };
        rec(rec, 0);
    }
    return out;
}

// ----------------------------------------------------- the chain category

uint32_t ChainCat::object_of(const Chain& c) const {
    auto it = chain_id.find(c);
    if (it == chain_id.end()) throw std::invalid_argument("chain out of bounds: " + c.str());
    return it->second;
}

uint32_t ChainCat::id_of(const ChainMorphism& m) const {
    auto it = morphism_id.find(m);
    if (it == morphism_id.end())
        throw std::invalid_argument("chain morphism out of bounds: " + m.str());
    return it->second;
}

ChainCat build_chain_cat(uint32_t set_bound, uint32_t chain_bound) {
    ChainCat d;
    d.set_bound = set_bound;
    d.chain_bound = chain_bound;
    auto C = std::make_shared<FinCat>();
    for (uint32_t m = 0; m <= chain_bound; ++m)
        for (const Chain& c : all_chains(set_bound, m)) {
            uint32_t id = C->add_object(c.str());
            d.chains.push_back(c);
            d.chain_id[c] = id;
        }
    std::vector<std::vector<uint32_t>> outs(d.chains.size());
    for (uint32_t s = 0; s < d.chains.size(); ++s)
        for (uint32_t t = 0; t < d.chains.size(); ++t)
            for (ChainMorphism& m : all_chain_morphisms(d.chains[s], d.chains[t])) {
                uint32_t id = C->add_arrow(s, t, "");
                outs[s].push_back(id);
                d.morphism_id[m] = id;
                d.morphisms.push_back(std::move(m));
            }
    for (uint32_t o = 0; o < d.chains.size(); ++o)
        C->set_identity(o, d.morphism_id.at(ChainMorphism::identity(d.chains[o])));
    for (uint32_t f = 0; f < d.morphisms.size(); ++f)
        for (uint32_t g : outs[C->dst(f)])
            C->set_compose(g, f, d.morphism_id.at(compose(d.morphisms[g], d.morphisms[f])));
    C->finalize();
    d.cat = C;
    d.op = std::make_shared<FinCat>(C->opposite());
    return d;
}

AlgebraicPattern chainop_pattern(const ChainCat& d) {
    AlgebraicPattern P;
    P.cat = d.op;
    for (const ChainMorphism& m : d.morphisms) {
        P.inert.push_back(m.is_inert());
        P.active.push_back(m.is_active());
    }
    for (const Chain& c : d.chains)
        P.elementary.push_back((c.length() == 0 && c.level(0) == 1) ||
                               (c.length() == 1 && c.level(1) == 1));
    return P;
}

// -------------------------------------------------------- augmented chains

std::string AugChain::str() const {
    return chain.str() + " | " + std::to_string(target()) + ":" + bracket(aug);
}

bool AugChain::operator<(const AugChain& o) const {
    if (!(chain == o.chain)) return chain < o.chain;
    return aug < o.aug;
}

AugTransport transport_aug_chain(const AugChain& x, const Span& s, const SimplexMap& psi) {
    uint32_t m = x.chain.length();
    if (psi.cod() != m) throw std::invalid_argument("transport_aug_chain: simplex map off the length");
    if (s.src() != x.target())
        throw std::invalid_argument("transport_aug_chain: span off the target");
    uint32_t mp = psi.dom();
    const FinMap& back = s.back();
    std::vector<uint32_t> apex_of(s.src() + 1, 0);
    for (uint32_t u = 1; u <= s.mid(); ++u) apex_of[back(u)] = u;
    // keep the points whose augmented image survives the back leg
    std::vector<std::vector<uint32_t>> kept(mp + 1);
    std::vector<FinMap> topmap;
    for (uint32_t i = 0; i <= mp; ++i) {
        FinMap comp = x.chain.composite(psi(i), m);
        for (uint32_t p = 1; p <= x.chain.level(psi(i)); ++p)
            if (apex_of[x.aug(comp(p))]) kept[i].push_back(p);
        topmap.push_back(std::move(comp));
    }
    Chain c(static_cast<uint32_t>(kept[0].size()));
    if (mp > 0) {
        std::vector<FinMap> steps;
        for (uint32_t i = 0; i < mp; ++i) {
            FinMap window = x.chain.composite(psi(i), psi(i + 1));
            std::vector<uint32_t> pos(x.chain.level(psi(i + 1)) + 1, 0);
            for (uint32_t w = 0; w < kept[i + 1].size(); ++w) pos[kept[i + 1][w]] = w + 1;
            std::vector<uint32_t> vals;
            for (uint32_t p : kept[i]) vals.push_back(pos[window(p)]);
            steps.emplace_back(static_cast<uint32_t>(kept[i].size()),
                               static_cast<uint32_t>(kept[i + 1].size()), std::move(vals));
        }
        c = Chain(std::move(steps));
    }
    std::vector<uint32_t> augvals;
    for (uint32_t p : kept[mp]) augvals.push_back(s.fwd()(apex_of[x.aug(topmap[mp](p))]));
    std::vector<FinMap> incl;
    for (uint32_t i = 0; i <= mp; ++i)
        incl.emplace_back(static_cast<uint32_t>(kept[i].size()), x.chain.level(psi(i)), kept[i]);
    return {AugChain{std::move(c),
                     FinMap(static_cast<uint32_t>(kept[mp].size()), s.dst(), std::move(augvals))},
            std::move(incl)};
}

namespace {

// every augmented chain over (<n>, [m]), in chain then augmentation order
std::vector<AugChain> aug_chains_over(uint32_t set_bound, uint32_t n, uint32_t m) {
    std::vector<AugChain> out;
    for (const Chain& c : all_chains(set_bound, m))
        for (const FinMap& u : all_maps(c.top(), n)) out.push_back(AugChain{c, u});
    return out;
}

}  // namespace

uint32_t AugChainCat::object_of(const AugChain& a) const {
    auto it = object_id.find(a);
    if (it == object_id.end())
        throw std::invalid_argument("augmented chain out of bounds: " + a.str());
    return it->second;
}

uint32_t AugChainCat::arrow_over(uint32_t obj, const Span& s, const SimplexMap& psi) const {
    return cat->lift(obj, base.arrow_of(fstar.id_of(s), delta.id_of(psi)));
}

AugChainCat build_aug_chain_cat(uint32_t set_bound, uint32_t chain_bound) {
    AugChainCat F;
    F.set_bound = set_bound;
    F.chain_bound = chain_bound;
    F.fstar = build_fstar_cat(set_bound);
    F.delta = build_delta_cat(chain_bound);
    F.base = product_pattern(fstar_pattern(F.fstar), deltaop_pattern(F.delta));
    auto C = std::make_shared<FinCat>();
    std::vector<uint32_t> pi_obj;
    for (uint32_t bo = 0; bo < F.base.pattern.cat->object_count(); ++bo) {
        auto [n, m] = F.base.obj_pair[bo];
        for (AugChain& a : aug_chains_over(set_bound, n, m)) {
            uint32_t id = C->add_object(a.str());
            F.object_id[a] = id;
            F.objects.push_back(std::move(a));
            pi_obj.push_back(bo);
        }
    }
    for (uint32_t x = 0; x < F.objects.size(); ++x)
        for (uint32_t b : F.base.pattern.cat->arrows_from(pi_obj[x])) {
            auto [fa, da] = F.base.arrow_pair[b];
            AugTransport t =
                transport_aug_chain(F.objects[x], F.fstar.span_of(fa), F.delta.simplex[da]);
            uint32_t a = C->add_arrow(x, F.object_id.at(t.target), "");
            if (b == F.base.pattern.cat->identity(pi_obj[x])) C->set_identity(x, a);
        }
    C->finalize_lifted(F.base.pattern.cat, pi_obj);
    F.cat = C;
    std::vector<uint32_t> pi_arr(C->arrow_count());
    for (uint32_t a = 0; a < C->arrow_count(); ++a) pi_arr[a] = C->base_arrow(a);
    F.projection = FinFunctor{F.cat, F.base.pattern.cat, std::move(pi_obj), std::move(pi_arr)};
    F.pattern.cat = F.cat;
    for (uint32_t a = 0; a < C->arrow_count(); ++a) {
        uint32_t b = C->base_arrow(a);
        F.pattern.inert.push_back(F.base.pattern.inert[b]);
        F.pattern.active.push_back(F.base.pattern.active[b]);
    }
    for (uint32_t x = 0; x < F.objects.size(); ++x)
        F.pattern.elementary.push_back(F.base.pattern.elementary[C->base_object(x)]);
    return F;
}

SetPresheaf aug_chain_presheaf(const AugChainCat& F) {
    SetPresheaf Psi;
    Psi.cat = F.base.pattern.cat;
    uint32_t B = Psi.cat->object_count();
    std::vector<std::vector<AugChain>> val(B);
    for (uint32_t bo = 0; bo < B; ++bo) {
        auto [n, m] = F.base.obj_pair[bo];
        val[bo] = aug_chains_over(F.set_bound, n, m);
        Psi.size.push_back(static_cast<uint32_t>(val[bo].size()));
    }
    for (uint32_t b = 0; b < Psi.cat->arrow_count(); ++b) {
        auto [fa, da] = F.base.arrow_pair[b];
        uint32_t dbo = Psi.cat->dst(b);
        std::vector<uint32_t> tab;
        for (const AugChain& x : val[Psi.cat->src(b)]) {
            AugTransport t =
                transport_aug_chain(x, F.fstar.span_of(fa), F.delta.simplex[da]);
            auto it = std::lower_bound(val[dbo].begin(), val[dbo].end(), t.target);
            tab.push_back(static_cast<uint32_t>(it - val[dbo].begin()));
        }
        Psi.action.push_back(std::move(tab));
    }
    for (uint32_t bo = 0; bo < B; ++bo) {
        std::vector<std::string> names;
        for (const AugChain& x : val[bo]) names.push_back(x.str());
        Psi.elem_name.push_back(std::move(names));
    }
    return Psi;
}

CheckReport check_elements_match(const std::string& name, const AugChainCat& F) {
    CheckReport r;
    r.name = name;
    r.bounds = bounds_str(F.set_bound, F.chain_bound);
    SetPresheaf Psi = aug_chain_presheaf(F);
    CheckReport pv = Psi.validate(name + " (presheaf)");
    if (!pv.passed) {
        r.fail("presheaf of augmented chains fails to validate: " + pv.witness);
        return r;
    }
    ElementsCategory E = category_of_elements(Psi);
    if (E.cat->object_count() != F.cat->object_count() ||
        E.cat->arrow_count() != F.cat->arrow_count()) {
        r.fail("element and transport categories differ in size");
        return r;
    }
    // objects match by value: position inside the block over the base object
    uint32_t B = F.base.pattern.cat->object_count();
    std::vector<uint32_t> start(B + 1, 0);
    for (uint32_t x = 0; x < F.objects.size(); ++x) ++start[F.cat->base_object(x) + 1];
    for (uint32_t bo = 0; bo < B; ++bo) start[bo + 1] += start[bo];
    std::vector<uint32_t> J_obj(F.cat->object_count());
    for (uint32_t x = 0; x < F.objects.size(); ++x) {
        uint32_t bo = F.cat->base_object(x);
        auto e = E.object_of(bo, x - start[bo]);
        if (!e) {
            r.fail("no element object for " + F.objects[x].str());
            return r;
        }
        J_obj[x] = *e;
    }
    std::vector<uint32_t> J_arr(F.cat->arrow_count());
    int64_t fiber_arrows = 0;
    for (uint32_t a = 0; a < F.cat->arrow_count(); ++a) {
        uint32_t b = F.cat->base_arrow(a);
        uint32_t ea = E.cat->lift(J_obj[F.cat->src(a)], b);
        if (E.cat->dst(ea) != J_obj[F.cat->dst(a)])
            r.fail("transport and element actions disagree at " +
                   F.objects[F.cat->src(a)].str());
        J_arr[a] = ea;
        if (F.delta.simplex[F.base.arrow_pair[b].second].is_identity()) ++fiber_arrows;
        r.bump("arrows");
    }
    r.count("objects", F.cat->object_count());
    r.count("arrows over simplex identities", fiber_arrows);
    FinFunctor J{F.cat, E.cat, J_obj, J_arr};
    CheckReport jv = J.validate(name + " (comparison)");
    if (!jv.passed) r.fail("comparison is not a functor: " + jv.witness);
    for (uint32_t x = 0; x < F.cat->object_count(); ++x)
        if (E.projection.obj[J_obj[x]] != F.projection.obj[x])
            r.fail("comparison moves " + F.objects[x].str() + " off its base object");
    for (uint32_t a = 0; a < F.cat->arrow_count(); ++a)
        if (E.projection.arr[J_arr[a]] != F.projection.arr[a])
            r.fail("comparison moves an arrow off its base arrow");
    CheckReport lf1 = check_left_fibration(name + " (transport)", F.projection);
    if (!lf1.passed) r.fail("transport projection is not a left fibration: " + lf1.witness);
    CheckReport lf2 = check_left_fibration(name + " (elements)", E.projection);
    if (!lf2.passed) r.fail("element projection is not a left fibration: " + lf2.witness);
    return r;
}

// ------------------------------------------------------------ localization

FinFunctor forget_augmentation(const AugChainCat& F, const ChainCat& D) {
    if (D.set_bound < F.set_bound || D.chain_bound < F.chain_bound)
        throw std::invalid_argument("forget_augmentation: chain category too small");
    std::vector<uint32_t> obj(F.cat->object_count());
    for (uint32_t x = 0; x < F.cat->object_count(); ++x)
        obj[x] = D.object_of(F.objects[x].chain);
    std::vector<uint32_t> arr(F.cat->arrow_count());
    for (uint32_t a = 0; a < F.cat->arrow_count(); ++a) {
        uint32_t x = F.cat->src(a);
        auto [fa, da] = F.base.arrow_pair[F.cat->base_arrow(a)];
        const SimplexMap& psi = F.delta.simplex[da];
        AugTransport t = transport_aug_chain(F.objects[x], F.fstar.span_of(fa), psi);
        arr[a] = D.id_of(ChainMorphism(t.target.chain, F.objects[x].chain, psi, t.incl));
    }
    return {F.cat, D.op, std::move(obj), std::move(arr)};
}

uint32_t section_object(const AugChainCat& F, const ChainCat& D, uint32_t chain_obj) {
    const Chain& c = D.chains.at(chain_obj);
    return F.object_of(AugChain{c, FinMap::identity(c.top())});
}

std::optional<uint32_t> section_arrow(const AugChainCat& F, const ChainCat& D,
                                      uint32_t chain_arrow) {
    const ChainMorphism& m = D.morphisms.at(chain_arrow);
    if (!m.phi().is_identity()) return std::nullopt;
    uint32_t n = m.src().length();
    for (uint32_t i = 0; i <= n; ++i)
        if (!m.eta(i).is_strictly_monotone()) return std::nullopt;
    uint32_t so = section_object(F, D, D.object_of(m.dst()));
    return F.arrow_over(so, Span(m.eta(n), FinMap::identity(m.src().top())),
                        SimplexMap::identity(n));
}

uint32_t section_counit(const AugChainCat& F, uint32_t obj) {
    const AugChain& x = F.objects.at(obj);
    uint32_t sx = F.object_of(AugChain{x.chain, FinMap::identity(x.chain.top())});
    return F.arrow_over(sx, Span(FinMap::identity(x.chain.top()), x.aug),
                        SimplexMap::identity(x.chain.length()));
}

CheckReport check_localization(const std::string& name, const AugChainCat& F,
                               const ChainCat& D) {
    if (F.set_bound != D.set_bound || F.chain_bound != D.chain_bound)
        throw std::invalid_argument("check_localization: mismatched bounds");
    CheckReport r;
    r.name = name;
    r.bounds = bounds_str(F.set_bound, F.chain_bound);
    FinFunctor P = forget_augmentation(F, D);
    CheckReport fv = P.validate(name + " (forgetful)");
    if (!fv.passed) {
        r.fail("forgetting the augmentation is not a functor: " + fv.witness);
        return r;
    }
    for (uint32_t o = 0; o < D.chains.size(); ++o) {
        if (P.obj[section_object(F, D, o)] != o)
            r.fail("forget after section moves the chain " + D.chains[o].str());
        r.bump("section objects");
    }
    int64_t reached = 0;
    for (uint32_t a = 0; a < D.morphisms.size(); ++a) {
        auto sa = section_arrow(F, D, a);
        if (!sa) continue;
        ++reached;
        if (P.arr[*sa] != a)
            r.fail("forget after section moves " + D.morphisms[a].str());
    }
    r.count("morphisms the section reaches", reached);
    std::vector<uint32_t> counit(F.objects.size());
    for (uint32_t x = 0; x < F.objects.size(); ++x) {
        uint32_t c = section_counit(F, x);
        counit[x] = c;
        uint32_t sx = section_object(F, D, D.object_of(F.objects[x].chain));
        if (F.cat->src(c) != sx || F.cat->dst(c) != x)
            r.fail("counit misplaced at " + F.objects[x].str());
        if (!D.op->is_identity(P.arr[c]))
            r.fail("counit does not project to an identity at " + F.objects[x].str());
        if (x == sx && !F.cat->is_identity(c))
            r.fail("counit not the identity at the section object " + F.objects[x].str());
        r.bump("counit arrows");
    }
    // naturality against section-after-forget, over every arrow that keeps
    // the simplex level
    for (uint32_t w = 0; w < F.cat->arrow_count(); ++w) {
        uint32_t da = F.base.arrow_pair[F.cat->base_arrow(w)].second;
        if (!F.delta.simplex[da].is_identity()) continue;
        auto sw = section_arrow(F, D, P.arr[w]);
        if (!sw) {
            r.fail("no section lift over a level keeping arrow at " +
                   F.objects[F.cat->src(w)].str());
            continue;
        }
        uint32_t x = F.cat->src(w), y = F.cat->dst(w);
        if (F.cat->compose(counit[y], *sw) != F.cat->compose(w, counit[x]))
            r.fail("counit square breaks at " + F.objects[x].str());
        r.bump("naturality squares");
    }
    return r;
}

CheckReport check_section_roundtrip(const std::string& name, const AugChainCat& F,
                                    const ChainCat& D, const SetPresheaf& X) {
    CheckReport r;
    r.name = name;
    r.bounds = bounds_str(F.set_bound, F.chain_bound);
    FinFunctor P = forget_augmentation(F, D);
    SetPresheaf Phi = pullback_presheaf(P, X);
    for (uint32_t o = 0; o < D.chains.size(); ++o) {
        if (Phi.size[section_object(F, D, o)] != X.size[o])
            r.fail("round trip changes the value at " + D.chains[o].str());
        r.bump("objects");
    }
    int64_t reached = 0;
    for (uint32_t a = 0; a < D.morphisms.size(); ++a) {
        auto sa = section_arrow(F, D, a);
        if (!sa) continue;
        ++reached;
        if (!(Phi.action[*sa] == X.action[a]))
            r.fail("round trip changes the action of " + D.morphisms[a].str());
    }
    r.count("morphisms the section reaches", reached);
    for (uint32_t x = 0; x < F.objects.size(); ++x) {
        uint32_t c = section_counit(F, x);
        if (Phi.size[F.cat->src(c)] != Phi.size[x] ||
            !bijective_table(Phi.action[c], Phi.size[x]))
            r.fail("counit does not act bijectively at " + F.objects[x].str());
        r.bump("counit arrows");
    }
    return r;
}

// ------------------------------------------------------------ Segal checks

namespace {

/* A value set against the product of its factors, cut down by equalities
 * between neighbouring factors, compared through the leg tables: the
 * combined map must be injective and hit exactly the constrained tuples. */
struct FormulaCheck {
    uint32_t value_size = 0;
    std::vector<const std::vector<uint32_t>*> legs;
    std::vector<uint32_t> factor_size;
    struct Glue {
        uint32_t a, b;  // a < b
        const std::vector<uint32_t>* ta;
        const std::vector<uint32_t>* tb;
    };
    std::vector<Glue> glue;

    std::string run(const std::string& where) const {
        std::set<std::vector<uint32_t>> seen;
        for (uint32_t t = 0; t < value_size; ++t) {
            std::vector<uint32_t> tup;
            for (const auto* l : legs) tup.push_back((*l)[t]);
            for (const Glue& g : glue)
                if ((*g.ta)[tup[g.a]] != (*g.tb)[tup[g.b]])
                    return "restrictions leave the fiber product at " + where;
            if (!seen.insert(std::move(tup)).second)
                return "restrictions do not separate the values at " + where;
        }
        uint64_t total = 0;
        std::vector<uint32_t> tup(factor_size.size(), 0);
        auto rec = [&](auto&& self, size_t i) -> void {
            if (i == factor_size.size()) {
                ++total;
                return;
            }
            for (uint32_t v = 0; v < factor_size[i]; ++v) {
                bool ok = true;
                for (const Glue& g : glue)
                    if (g.b == i && (*g.ta)[tup[g.a]] != (*g.tb)[v]) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                tup[i] = v;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
        if (total != value_size)
            return "value differs from its formula at " + where + ": " +
                   std::to_string(value_size) + " vs " + std::to_string(total);
        return "";
    }
};

}  // namespace

CheckReport check_chain_segal(const std::string& name, const ChainCat& D,
                              const SetPresheaf& X) {
    CheckReport r;
    r.name = name;
    r.bounds = bounds_str(D.set_bound, D.chain_bound);
    CheckReport gen = check_segal(name + " (generic)", chainop_pattern(D), X);
    bool formulas = true;
    std::string why;
    auto ffail = [&](std::string w) {
        if (formulas) why = std::move(w);
        formulas = false;
    };
    auto tab = [&](const ChainMorphism& m) { return &X.action[D.id_of(m)]; };
    for (uint32_t o = 0; o < D.chains.size(); ++o) {
        const Chain& c = D.chains[o];
        FormulaCheck fc;
        fc.value_size = X.size[o];
        if (c.length() == 0) {
            for (uint32_t i = 1; i <= c.level(0); ++i) {
                fc.legs.push_back(tab(ChainMorphism(Chain(1), c, SimplexMap::identity(0),
                                                    {FinMap(1, c.level(0), {i})})));
                fc.factor_size.push_back(X.size[D.object_of(Chain(1))]);
            }
        } else if (c.length() == 1) {
            for (uint32_t i = 1; i <= c.level(1); ++i) {
                std::vector<uint32_t> fib = c.step(0).fiber(i);
                uint32_t k = static_cast<uint32_t>(fib.size());
                Chain fx(std::vector<FinMap>{FinMap::constant(k, 1, 1)});
                fc.legs.push_back(tab(ChainMorphism(fx, c, SimplexMap::identity(1),
                                                    {FinMap(k, c.level(0), std::move(fib)),
                                                     FinMap(1, c.level(1), {i})})));
                fc.factor_size.push_back(X.size[D.object_of(fx)]);
            }
        } else {
            for (uint32_t i = 0; i < c.length(); ++i) {
                Chain arc(std::vector<FinMap>{c.step(i)});
                fc.legs.push_back(
                    tab(ChainMorphism(arc, c, SimplexMap::iota(i, i + 1, c.length()),
                                      {FinMap::identity(c.level(i)),
                                       FinMap::identity(c.level(i + 1))})));
                fc.factor_size.push_back(X.size[D.object_of(arc)]);
                if (i) {
                    Chain prev(std::vector<FinMap>{c.step(i - 1)});
                    fc.glue.push_back(
                        {i - 1, i,
                         tab(ChainMorphism(Chain(c.level(i)), prev, SimplexMap(0, 1, {1}),
                                           {FinMap::identity(c.level(i))})),
                         tab(ChainMorphism(Chain(c.level(i)), arc, SimplexMap(0, 1, {0}),
                                           {FinMap::identity(c.level(i))}))});
                }
            }
        }
        std::string w = fc.run(c.str());
        if (!w.empty()) ffail(std::move(w));
        r.bump("objects checked");
    }
    if (static_cast<bool>(gen.passed) != formulas) {
        r.fail("generic and formula verdicts disagree");
        r.note(formulas ? "generic: " + gen.witness : "formula: " + why);
    } else if (!formulas) {
        r.fail(why);
        r.note("generic check agrees: " + gen.witness);
    }
    return r;
}

CheckReport check_aug_segal(const std::string& name, const AugChainCat& F,
                            const SetPresheaf& Phi) {
    CheckReport r;
    r.name = name;
    r.bounds = bounds_str(F.set_bound, F.chain_bound);
    CheckReport gen = check_segal(name + " (generic)", F.pattern, Phi);
    bool formulas = true;
    std::string why;
    auto ffail = [&](std::string w) {
        if (formulas) why = std::move(w);
        formulas = false;
    };
    for (uint32_t x = 0; x < F.objects.size(); ++x) {
        const AugChain& A = F.objects[x];
        uint32_t m = A.chain.length();
        uint32_t n = A.target();
        FormulaCheck fc;
        fc.value_size = Phi.size[x];
        if (m <= 1) {
            for (uint32_t i = 1; i <= n; ++i) {
                uint32_t w = F.arrow_over(x, Span::rho(n, i), SimplexMap::identity(m));
                fc.legs.push_back(&Phi.action[w]);
                fc.factor_size.push_back(Phi.size[F.cat->dst(w)]);
            }
        } else {
            std::vector<uint32_t> arcobj;
            for (uint32_t i = 0; i < m; ++i) {
                uint32_t w = F.arrow_over(x, Span::identity(n), SimplexMap::iota(i, i + 1, m));
                fc.legs.push_back(&Phi.action[w]);
                fc.factor_size.push_back(Phi.size[F.cat->dst(w)]);
                arcobj.push_back(F.cat->dst(w));
            }
            for (uint32_t i = 1; i < m; ++i)
                fc.glue.push_back(
                    {i - 1, i,
                     &Phi.action[F.arrow_over(arcobj[i - 1], Span::identity(n),
                                              SimplexMap(0, 1, {1}))],
                     &Phi.action[F.arrow_over(arcobj[i], Span::identity(n),
                                              SimplexMap(0, 1, {0}))]});
        }
        std::string w = fc.run(A.str());
        if (!w.empty()) ffail(std::move(w));
        r.bump("objects checked");
    }
    if (static_cast<bool>(gen.passed) != formulas) {
        r.fail("generic and formula verdicts disagree");
        r.note(formulas ? "generic: " + gen.witness : "formula: " + why);
    } else if (!formulas) {
        r.fail(why);
        r.note("generic check agrees: " + gen.witness);
    }
    return r;
}

// ---------------------------------------------- invariance and completeness

CheckReport check_aug_invariance(const std::string& name, const AugChainCat& F,
                                 const SetPresheaf& Phi) {
    CheckReport r;
    r.name = name;
    r.bounds = bounds_str(F.set_bound, F.chain_bound);
    for (uint32_t x = 0; x < F.objects.size(); ++x) {
        const AugChain& a = F.objects[x];
        uint32_t n = a.target();
        for (uint32_t np = 0; np <= F.set_bound; ++np)
            for (const FinMap& th : all_maps(n, np)) {
                uint32_t w = F.arrow_over(x, Span(FinMap::identity(n), th),
                                          SimplexMap::identity(a.chain.length()));
                if (Phi.size[F.cat->dst(w)] != Phi.size[x] ||
                    !bijective_table(Phi.action[w], Phi.size[x]))
                    r.fail("values see the augmentation at " + a.str() +
                           " pushed along " + th.str());
                r.bump("arrows checked");
            }
    }
    bool full = r.passed;
    // the two small families: bare sets and one step chains over themselves,
    // both pushed to the point
    bool small = true;
    auto small_check = [&](const Chain& c) {
        uint32_t x = F.object_of(AugChain{c, FinMap::identity(c.top())});
        uint32_t w = F.arrow_over(x, Span(FinMap::identity(c.top()),
                                          FinMap::constant(c.top(), 1, 1)),
                                  SimplexMap::identity(c.length()));
        if (Phi.size[F.cat->dst(w)] != Phi.size[x] ||
            !bijective_table(Phi.action[w], Phi.size[x]))
            small = false;
        r.bump("small family arrows");
    };
    for (uint32_t b = 0; b <= F.set_bound; ++b) small_check(Chain(b));
    for (const Chain& c : all_chains(F.set_bound, 1)) small_check(c);
    if (small && !full)
        r.note("small families pass although the full family fails; the input "
               "cannot be Segal");
    if (!small && full) r.fail("small family fails although the full family passes");
    return r;
}

CheckReport check_aug_complete(const std::string& name, const AugChainCat& F,
                               const SetPresheaf& Phi) {
    if (F.set_bound < 1 || F.chain_bound < 2)
        throw std::invalid_argument("check_aug_complete needs set bound 1 and chains of length 2");
    CheckReport r;
    r.name = name;
    r.bounds = bounds_str(F.set_bound, F.chain_bound);
    DeltaCat d3 = build_delta_cat(3);
    std::vector<char> verdict(F.set_bound + 1, 0);
    std::vector<std::array<uint32_t, 3>> sizes(F.set_bound + 1);
    for (uint32_t a = 0; a <= F.set_bound; ++a) {
        // the loop simplicial set at size a: constant chains over the point
        uint32_t obj[3];
        for (uint32_t m = 0; m < 3; ++m)
            obj[m] = F.object_of(AugChain{Chain::constant(a, m), FinMap::constant(a, 1, 1)});
        SetPresheaf Y;
        Y.cat = d3.cat;
        Y.size = {Phi.size[obj[0]], Phi.size[obj[1]], Phi.size[obj[2]], 0};
        Y.action.assign(d3.cat->arrow_count(), {});
        for (uint32_t da = 0; da < d3.cat->arrow_count(); ++da) {
            const SimplexMap& psi = d3.simplex[da];
            if (psi.dom() > 2 || psi.cod() > 2) continue;
            Y.action[da] = Phi.action[F.arrow_over(obj[psi.cod()], Span::identity(1), psi)];
        }
        if (!Phi.elem_name.empty()) {
            Y.elem_name.assign(4, {});
            for (uint32_t m = 0; m < 3; ++m)
                if (obj[m] < Phi.elem_name.size()) Y.elem_name[m] = Phi.elem_name[obj[m]];
        }
        CheckReport cr =
            check_complete_segal_set(name + " (size " + std::to_string(a) + ")", d3, Y);
        verdict[a] = cr.passed;
        sizes[a] = {Y.size[0], Y.size[1], Y.size[2]};
        if (a == 1) {
            for (const auto& [what, count] : cr.counts) r.count(what, count);
            if (!cr.passed) r.fail("size one loops: " + cr.witness);
        }
    }
    for (uint32_t a = 0; a <= F.set_bound; ++a) {
        if (verdict[a] != verdict[1])
            r.fail("size " + std::to_string(a) + " loops disagree with size one");
        for (uint32_t m = 0; m < 3; ++m) {
            uint64_t expect = 1;
            for (uint32_t i = 0; i < a; ++i) expect *= sizes[1][m];
            if (sizes[a][m] != expect)
                r.fail("loop sizes do not multiply at size " + std::to_string(a) +
                       ", level " + std::to_string(m));
        }
    }
    return r;
}

// ------------------------------------------------------------------- nerve

OperadNerve::OperadNerve(std::shared_ptr<const Operad> O) : O_(std::move(O)) {
    if (!O_) throw std::invalid_argument("OperadNerve: missing operad");
}

const std::vector<OperadNerve::Elem>& OperadNerve::values(const Chain& c) const {
    auto it = values_.find(c);
    if (it != values_.end()) return it->second;
    std::vector<Elem> out;
    uint32_t L = c.length();
    Elem e;
    e.color.resize(L + 1);
    for (uint32_t i = 0; i <= L; ++i) e.color[i].assign(c.level(i), 0);
    e.op.resize(L);
    for (uint32_t i = 0; i < L; ++i) e.op[i].assign(c.level(i + 1), 0);
    auto rec_ops = [&](auto&& self, uint32_t i, uint32_t q) -> void {
        if (i == L) {
            out.push_back(e);
            return;
        }
        if (q == c.level(i + 1)) {
            self(self, i + 1, 0);
            return;
        }
        std::vector<uint32_t> in;
        for (uint32_t p : c.step(i).fiber(q + 1)) in.push_back(e.color[i][p - 1]);
        for (uint32_t p : O_->ops_with(in, e.color[i + 1][q])) {
            e.op[i][q] = p;
            self(self, i, q + 1);
        }
    };
    auto rec_col = [&](auto&& self, uint32_t i, uint32_t p) -> void {
        if (i == L + 1) {
            rec_ops(rec_ops, 0, 0);
            return;
        }
        if (p == c.level(i)) {
            self(self, i + 1, 0);
            return;
        }
        for (uint32_t col = 0; col < O_->color_count(); ++col) {
            e.color[i][p] = col;
            self(self, i, p + 1);
        }
    };
    rec_col(rec_col, 0, 0);
    return values_.emplace(c, std::move(out)).first->second;
}

uint32_t OperadNerve::value_count(const Chain& c) const {
    return static_cast<uint32_t>(values(c).size());
}

const OperadNerve::Elem& OperadNerve::element(const Chain& c, uint32_t t) const {
    return values(c).at(t);
}

uint32_t OperadNerve::index_of(const Chain& c, const Elem& e) const {
    const auto& vals = values(c);
    auto it = std::find(vals.begin(), vals.end(), e);
    if (it == vals.end()) throw std::invalid_argument("no such nerve element over " + c.str());
    return static_cast<uint32_t>(it - vals.begin());
}

std::string OperadNerve::elem_name(const Chain& c, uint32_t t) const {
    const Elem& e = element(c, t);
    std::string out;
    for (uint32_t i = 0; i <= c.length(); ++i) {
        if (i) out += ">";
        out += "(";
        for (uint32_t p = 0; p < c.level(i); ++p) {
            if (p) out += ",";
            out += O_->color_name(e.color[i][p]);
        }
        out += ")";
    }
    for (uint32_t i = 0; i < c.length(); ++i) {
        out += i ? "|" : ";";
        for (uint32_t q = 0; q < c.level(i + 1); ++q) {
            if (q) out += ",";
            out += O_->op_name(e.op[i][q]);
        }
    }
    return out;
}

uint32_t OperadNerve::transport(const ChainMorphism& m, uint32_t t) const {
    const Elem& e = element(m.dst(), t);
    const Chain& A = m.src();
    const Chain& B = m.dst();
    const Operad& O = *O_;
    Elem r;
    r.color.resize(A.length() + 1);
    for (uint32_t i = 0; i <= A.length(); ++i) {
        r.color[i].resize(A.level(i));
        for (uint32_t p = 1; p <= A.level(i); ++p)
            r.color[i][p - 1] = e.color[m.phi()(i)][m.eta(i)(p) - 1];
    }
    /* The label over a window of the target is the iterated composite of the
     * step labels; its inputs are the bottom window level in increasing
     * order, which the permutation below compares against the source fiber
     * carried over by the level injections. */
    struct Comp {
        uint32_t op;
        std::vector<uint32_t> in;
    };
    auto comp = [&](auto&& self, uint32_t lo, uint32_t l, uint32_t v) -> Comp {
        std::vector<uint32_t> fib = B.step(l - 1).fiber(v);
        if (l == lo + 1) return {e.op[l - 1][v - 1], std::move(fib)};
        std::vector<uint32_t> ops;
        std::vector<uint32_t> in;
        for (uint32_t c : fib) {
            Comp u = self(self, lo, l - 1, c);
            ops.push_back(u.op);
            in.insert(in.end(), u.in.begin(), u.in.end());
        }
        return {O.gamma(e.op[l - 1][v - 1], ops), std::move(in)};
    };
    r.op.resize(A.length());
    for (uint32_t i = 0; i < A.length(); ++i) {
        r.op[i].resize(A.level(i + 1));
        uint32_t lo = m.phi()(i), hi = m.phi()(i + 1);
        for (uint32_t q = 1; q <= A.level(i + 1); ++q) {
            uint32_t top = m.eta(i + 1)(q);
            Comp cu = hi == lo ? Comp{O.unit(e.color[lo][top - 1]), {top}}
                               : comp(comp, lo, hi, top);
            std::vector<uint32_t> pos(B.level(lo) + 1, 0);
            for (uint32_t w = 0; w < cu.in.size(); ++w) pos[cu.in[w]] = w + 1;
            std::vector<uint32_t> pi;
            for (uint32_t x : A.step(i).fiber(q)) pi.push_back(pos[m.eta(i)(x)]);
            uint32_t k = static_cast<uint32_t>(pi.size());
            r.op[i][q - 1] = O.act(cu.op, FinMap(k, k, std::move(pi)));
        }
    }
    return index_of(A, r);
}

SetPresheaf operad_nerve(const ChainCat& D, const OperadNerve& N) {
    if (N.operad().arity_bound() < D.set_bound)
        throw std::invalid_argument("operad_nerve: arity bound below the level bound");
    SetPresheaf X;
    X.cat = D.op;
    for (const Chain& c : D.chains) X.size.push_back(N.value_count(c));
    for (const ChainMorphism& m : D.morphisms) {
        std::vector<uint32_t> tab;
        for (uint32_t t = 0; t < N.value_count(m.dst()); ++t)
            tab.push_back(N.transport(m, t));
        X.action.push_back(std::move(tab));
    }
    for (const Chain& c : D.chains) {
        std::vector<std::string> names;
        for (uint32_t t = 0; t < N.value_count(c); ++t) names.push_back(N.elem_name(c, t));
        X.elem_name.push_back(std::move(names));
    }
    return X;
}

std::shared_ptr<Operad> operad_from_segal(const ChainCat& D, const SetPresheaf& X) {
    if (D.set_bound < 1 || D.chain_bound < 2)
        throw std::invalid_argument("operad_from_segal needs set bound 1 and chains of length 2");
    auto one_step = [](uint32_t n) {
        return Chain(std::vector<FinMap>{FinMap::constant(n, 1, 1)});
    };
    auto O = std::make_shared<Operad>(D.set_bound);
    uint32_t colors = X.size[D.object_of(Chain(1))];
    for (uint32_t c = 0; c < colors; ++c) O->add_color("c" + std::to_string(c));
    // one operation per element of a one step chain value, profile read off
    // through the vertex restrictions
    std::vector<std::vector<uint32_t>> op_of(D.set_bound + 1);
    std::vector<std::pair<uint32_t, uint32_t>> profile;
    for (uint32_t n = 0; n <= D.set_bound; ++n) {
        Chain cn = one_step(n);
        std::vector<const std::vector<uint32_t>*> vert;
        for (uint32_t j = 1; j <= n; ++j)
            vert.push_back(&X.action[D.id_of(ChainMorphism(
                Chain(1), cn, SimplexMap(0, 1, {0}), {FinMap(1, n, {j})}))]);
        const auto& out_tab = X.action[D.id_of(ChainMorphism(
            Chain(1), cn, SimplexMap(0, 1, {1}), {FinMap::identity(1)}))];
        for (uint32_t t = 0; t < X.size[D.object_of(cn)]; ++t) {
            std::vector<uint32_t> in;
            for (uint32_t j = 0; j < n; ++j) in.push_back((*vert[j])[t]);
            op_of[n].push_back(O->add_op(in, out_tab[t],
                                         "v" + std::to_string(n) + "." + std::to_string(t)));
            profile.emplace_back(n, t);
        }
    }
    // units through the degenerate step on a single point
    const auto& degen = X.action[D.id_of(ChainMorphism(
        Chain::constant(1, 1), Chain(1), SimplexMap(1, 0, {0, 0}),
        {FinMap::identity(1), FinMap::identity(1)}))];
    for (uint32_t c = 0; c < colors; ++c) O->set_unit(c, op_of[1][degen[c]]);
    // symmetries through the chain automorphisms
    for (uint32_t p = 0; p < O->op_count(); ++p) {
        auto [n, t] = profile[p];
        for (const FinMap& pi : all_bijections(n)) {
            const auto& tab = X.action[D.id_of(ChainMorphism(
                one_step(n), one_step(n), SimplexMap::identity(1),
                {pi, FinMap::identity(1)}))];
            O->set_act(p, pi, op_of[n][tab[t]]);
        }
    }
    // composition: fill a two step chain over the tuple and push it down the
    // long edge
    for (uint32_t q = 0; q < O->op_count(); ++q) {
        uint32_t m = O->arity(q);
        for (const auto& ps : O->gamma_tuples(q)) {
            std::vector<uint32_t> lam;
            for (uint32_t j = 0; j < m; ++j)
                lam.insert(lam.end(), O->arity(ps[j]), j + 1);
            uint32_t n = static_cast<uint32_t>(lam.size());
            FinMap lambda(n, m, std::move(lam));
            Chain c2(std::vector<FinMap>{lambda, FinMap::constant(m, 1, 1)});
            const auto& arc12 = X.action[D.id_of(ChainMorphism(
                one_step(m), c2, SimplexMap::iota(1, 2, 2),
                {FinMap::identity(m), FinMap::identity(1)}))];
            std::vector<const std::vector<uint32_t>*> fib;
            for (uint32_t j = 1; j <= m; ++j) {
                std::vector<uint32_t> block = lambda.fiber(j);
                uint32_t k = static_cast<uint32_t>(block.size());
                fib.push_back(&X.action[D.id_of(ChainMorphism(
                    one_step(k), c2, SimplexMap::iota(0, 1, 2),
                    {FinMap(k, n, std::move(block)), FinMap(1, m, {j})}))]);
            }
            uint32_t found = 0, filler = 0;
            for (uint32_t s = 0; s < X.size[D.object_of(c2)]; ++s) {
                if (arc12[s] != profile[q].second) continue;
                bool ok = true;
                for (uint32_t j = 0; j < m && ok; ++j)
                    ok = (*fib[j])[s] == profile[ps[j]].second;
                if (ok) {
                    ++found;
                    filler = s;
                }
            }
            if (found != 1)
                throw std::invalid_argument("operad_from_segal: filler missing or ambiguous");
            const auto& d1 = X.action[D.id_of(ChainMorphism(
                one_step(n), c2, SimplexMap(1, 2, {0, 2}),
                {FinMap::identity(n), FinMap::identity(1)}))];
            O->set_gamma(q, ps, op_of[n][d1[filler]]);
        }
    }
    O->finalize();
    return O;
}

CheckReport check_nerve_reconstruction(const std::string& name, const ChainCat& D,
                                       std::shared_ptr<const Operad> O) {
    OperadNerve N(O);
    SetPresheaf X = operad_nerve(D, N);
    auto R = operad_from_segal(D, X);
    // the reconstruction names colors and operations by nerve index, so the
    // comparison reads the originals back off the nerve elements
    OperadMorphism J;
    J.src = R;
    J.dst = O;
    for (uint32_t c = 0; c < R->color_count(); ++c)
        J.color.push_back(N.element(Chain(1), c).color[0][0]);
    for (uint32_t n = 0; n <= D.set_bound; ++n) {
        Chain step(std::vector<FinMap>{FinMap::constant(n, 1, 1)});
        for (uint32_t t = 0; t < N.value_count(step); ++t)
            J.op.push_back(N.element(step, t).op[0][0]);
    }
    return check_operad_iso(name, J);
}

}  // namespace opdcat
