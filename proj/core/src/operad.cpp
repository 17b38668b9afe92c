#include "opdcat/operad.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace opdcat {

namespace {

std::string op_list(const Operad& O, const std::vector<uint32_t>& ps) {
    std::string s;
    for (size_t i = 0; i < ps.size(); ++i) {
        if (i) s += ",";
        s += O.op_name(ps[i]);
    }
    return s;
}

}  // namespace

Operad::Operad(uint32_t arity_bound) : arityBound_(arity_bound) {
    if (arity_bound < 1) throw std::invalid_argument("arity bound must be at least 1");
}

uint32_t Operad::add_color(std::string name) {
    if (finalized_) throw std::logic_error("operad is finalized");
    colorName_.push_back(std::move(name));
    unit_.push_back(UINT32_MAX);
    return static_cast<uint32_t>(colorName_.size() - 1);
}

uint32_t Operad::add_op(std::vector<uint32_t> inputs, uint32_t output, std::string name) {
    if (finalized_) throw std::logic_error("operad is finalized");
    if (inputs.size() > arityBound_) throw std::invalid_argument("op arity above the bound");
    for (uint32_t c : inputs)
        if (c >= colorName_.size()) throw std::invalid_argument("op input color out of range");
    if (output >= colorName_.size()) throw std::invalid_argument("op output color out of range");
    opIn_.push_back(std::move(inputs));
    opOut_.push_back(output);
    opName_.push_back(std::move(name));
    return static_cast<uint32_t>(opIn_.size() - 1);
}

void Operad::set_unit(uint32_t color, uint32_t op) {
    if (finalized_) throw std::logic_error("operad is finalized");
    if (color >= colorName_.size() || op >= opIn_.size())
        throw std::invalid_argument("unit indices out of range");
    if (opIn_[op] != std::vector<uint32_t>{color} || opOut_[op] != color)
        throw std::invalid_argument("a unit must have profile (c; c)");
    unit_[color] = op;
}

void Operad::set_gamma(uint32_t q, std::vector<uint32_t> ps, uint32_t result) {
    if (finalized_) throw std::logic_error("operad is finalized");
    if (q >= opIn_.size() || result >= opIn_.size())
        throw std::invalid_argument("gamma indices out of range");
    if (ps.size() != opIn_[q].size()) throw std::invalid_argument("gamma arity mismatch");
    std::vector<uint32_t> cat;
    for (size_t i = 0; i < ps.size(); ++i) {
        if (ps[i] >= opIn_.size()) throw std::invalid_argument("gamma indices out of range");
        if (opOut_[ps[i]] != opIn_[q][i]) throw std::invalid_argument("gamma color mismatch");
        cat.insert(cat.end(), opIn_[ps[i]].begin(), opIn_[ps[i]].end());
    }
    if (opIn_[result] != cat || opOut_[result] != opOut_[q])
        throw std::invalid_argument("gamma result has the wrong profile");
    gamma_[{q, std::move(ps)}] = result;
}

void Operad::set_act(uint32_t p, const FinMap& pi, uint32_t result) {
    if (finalized_) throw std::logic_error("operad is finalized");
    if (p >= opIn_.size() || result >= opIn_.size())
        throw std::invalid_argument("act indices out of range");
    uint32_t n = arity(p);
    if (pi.dom() != n || pi.cod() != n || !pi.is_bijective())
        throw std::invalid_argument("act needs a permutation of the inputs");
    if (opOut_[result] != opOut_[p]) throw std::invalid_argument("act result has the wrong output");
    for (uint32_t t = 1; t <= n; ++t)
        if (opIn_[result][t - 1] != opIn_[p][pi(t) - 1])
            throw std::invalid_argument("act result has the wrong inputs");
    act_[{p, pi.values()}] = result;
}

void Operad::finalize() {
    if (finalized_) throw std::logic_error("operad is finalized");
    for (size_t c = 0; c < unit_.size(); ++c)
        if (unit_[c] == UINT32_MAX)
            throw std::invalid_argument("missing unit for color " + colorName_[c]);
    size_t need = 0;
    for (uint32_t q = 0; q < op_count(); ++q)
        for (const auto& ps : gamma_tuples(q)) {
            ++need;
            if (!gamma_.count({q, ps}))
                throw std::invalid_argument("gamma missing at " + opName_[q] + "(" +
                                            op_list(*this, ps) + ")");
        }
    if (need != gamma_.size()) throw std::invalid_argument("gamma table has stray entries");
    size_t acts = 0;
    for (uint32_t p = 0; p < op_count(); ++p)
        for (const FinMap& pi : all_bijections(arity(p))) {
            ++acts;
            if (!act_.count({p, pi.values()}))
                throw std::invalid_argument("act missing at " + opName_[p]);
        }
    if (acts != act_.size()) throw std::invalid_argument("act table has stray entries");
    finalized_ = true;
}

uint32_t Operad::unit(uint32_t color) const {
    uint32_t u = unit_.at(color);
    if (u == UINT32_MAX) throw std::logic_error("unit not set");
    return u;
}

uint32_t Operad::color_by_name(const std::string& name) const {
    for (uint32_t c = 0; c < color_count(); ++c)
        if (colorName_[c] == name) return c;
    throw std::invalid_argument("no color named " + name);
}

uint32_t Operad::op_by_name(const std::string& name) const {
    for (uint32_t p = 0; p < op_count(); ++p)
        if (opName_[p] == name) return p;
    throw std::invalid_argument("no op named " + name);
}

std::vector<uint32_t> Operad::ops_with(const std::vector<uint32_t>& in, uint32_t out) const {
    std::vector<uint32_t> hits;
    for (uint32_t p = 0; p < op_count(); ++p)
        if (opIn_[p] == in && opOut_[p] == out) hits.push_back(p);
    return hits;
}

std::vector<uint32_t> Operad::ops_of_arity(uint32_t n) const {
    std::vector<uint32_t> hits;
    for (uint32_t p = 0; p < op_count(); ++p)
        if (arity(p) == n) hits.push_back(p);
    return hits;
}

std::vector<std::vector<uint32_t>> Operad::gamma_tuples(uint32_t q) const {
    const auto& in = opIn_.at(q);
    uint32_t m = static_cast<uint32_t>(in.size());
    std::vector<std::vector<uint32_t>> cands(m);
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t p = 0; p < op_count(); ++p)
            if (opOut_[p] == in[i]) cands[i].push_back(p);
    // minRest[i]: the least total arity slots i.. can still contribute
    std::vector<uint32_t> minRest(m + 1, 0);
    for (uint32_t i = m; i-- > 0;) {
        if (cands[i].empty()) return {};
        uint32_t mn = UINT32_MAX;
        for (uint32_t p : cands[i]) mn = std::min(mn, arity(p));
        minRest[i] = minRest[i + 1] + mn;
    }
    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> pick(m);
    auto rec = [&](auto&& self, uint32_t i, uint32_t used) -> void {
        if (i == m) {
            out.push_back(pick);
            return;
        }
        for (uint32_t p : cands[i]) {
            uint32_t a = arity(p);
            if (used + a + minRest[i + 1] > arityBound_) continue;
            pick[i] = p;
            self(self, i + 1, used + a);
        }
    };
    if (minRest[0] <= arityBound_) rec(rec, 0, 0);
    return out;
}

uint32_t Operad::gamma(uint32_t q, const std::vector<uint32_t>& ps) const {
    auto it = gamma_.find({q, ps});
    if (it == gamma_.end())
        throw std::invalid_argument("gamma undefined at " + opName_.at(q) + "(" +
                                    op_list(*this, ps) + ")");
    return it->second;
}

uint32_t Operad::act(uint32_t p, const FinMap& pi) const {
    auto it = act_.find({p, pi.values()});
    if (it == act_.end()) throw std::invalid_argument("act undefined at " + opName_.at(p));
    return it->second;
}

CheckReport Operad::validate(const std::string& name) const {
    CheckReport r(name);
    if (!finalized_) {
        r.fail("operad not finalized");
        return r;
    }
    r.count("colors", color_count());
    r.count("ops", op_count());
    r.count("gamma entries", gamma_.size());
    r.count("act entries", act_.size());

    for (uint32_t p = 0; p < op_count() && r.passed; ++p) {
        if (gamma(unit(opOut_[p]), {p}) != p) r.fail("left unit law fails at " + op_name(p));
        r.bump("unit checks");
    }
    for (uint32_t q = 0; q < op_count() && r.passed; ++q) {
        std::vector<uint32_t> us;
        for (uint32_t c : opIn_[q]) us.push_back(unit(c));
        if (gamma(q, us) != q) r.fail("right unit law fails at " + op_name(q));
        r.bump("unit checks");
    }

    for (uint32_t p = 0; p < op_count() && r.passed; ++p) {
        uint32_t n = arity(p);
        if (act(p, FinMap::identity(n)) != p) {
            r.fail("identity permutation moves " + op_name(p));
            break;
        }
        auto perms = all_bijections(n);
        for (const FinMap& pi : perms) {
            for (const FinMap& tau : perms) {
                if (act(act(p, pi), tau) != act(p, compose(pi, tau))) {
                    r.fail("permutation action not associative at " + op_name(p));
                    break;
                }
                r.bump("action checks");
            }
            if (!r.passed) break;
        }
    }

    // both ways of collapsing a two-stage composite
    for (uint32_t q = 0; q < op_count() && r.passed; ++q)
        for (const auto& ps : gamma_tuples(q)) {
            uint32_t big = gamma(q, ps);
            for (const auto& rs : gamma_tuples(big)) {
                std::vector<uint32_t> inner;
                size_t at = 0;
                for (uint32_t p : ps) {
                    std::vector<uint32_t> block(rs.begin() + at, rs.begin() + at + arity(p));
                    at += arity(p);
                    inner.push_back(gamma(p, block));
                }
                if (gamma(big, rs) != gamma(q, inner)) {
                    r.fail("associativity fails at " + op_name(q));
                    break;
                }
                r.bump("associativity checks");
            }
            if (!r.passed) break;
        }

    // reshuffling the slots of q against the induced block permutation
    for (uint32_t q = 0; q < op_count() && r.passed; ++q) {
        auto perms = all_bijections(arity(q));
        for (const auto& ps : gamma_tuples(q)) {
            uint32_t big = gamma(q, ps);
            std::vector<uint32_t> ar;
            for (uint32_t p : ps) ar.push_back(arity(p));
            for (const FinMap& pi : perms) {
                std::vector<uint32_t> shuffled(ps.size());
                for (uint32_t j = 1; j <= pi.dom(); ++j) shuffled[j - 1] = ps[pi(j) - 1];
                if (gamma(act(q, pi), shuffled) != act(big, block_perm(pi, ar))) {
                    r.fail("reshuffling the slots of " + op_name(q) + " breaks equivariance");
                    break;
                }
                r.bump("equivariance checks");
            }
            if (!r.passed) break;
        }
    }

    // permuting inside the slots against the block diagonal
    for (uint32_t q = 0; q < op_count() && r.passed; ++q)
        for (const auto& ps : gamma_tuples(q)) {
            uint32_t big = gamma(q, ps);
            std::vector<std::vector<FinMap>> taus;
            for (uint32_t p : ps) taus.push_back(all_bijections(arity(p)));
            std::vector<uint32_t> pick(ps.size(), 0);
            bool more = true;
            while (more && r.passed) {
                std::vector<FinMap> ts;
                std::vector<uint32_t> acted(ps.size());
                for (size_t i = 0; i < ps.size(); ++i) {
                    ts.push_back(taus[i][pick[i]]);
                    acted[i] = act(ps[i], ts[i]);
                }
                if (gamma(q, acted) != act(big, direct_sum(ts)))
                    r.fail("permuting inside a slot of " + op_name(q) + " breaks equivariance");
                r.bump("equivariance checks");
                more = false;
                for (size_t i = 0; i < ps.size(); ++i) {
                    if (++pick[i] < taus[i].size()) {
                        more = true;
                        break;
                    }
                    pick[i] = 0;
                }
            }
            if (!r.passed) break;
        }

    return r;
}

FinMap block_perm(const FinMap& pi, const std::vector<uint32_t>& arities) {
    uint32_t m = static_cast<uint32_t>(arities.size());
    if (pi.dom() != m || pi.cod() != m || !pi.is_bijective())
        throw std::invalid_argument("block_perm needs a permutation of the blocks");
    std::vector<uint32_t> start(m + 1, 0);
    for (uint32_t i = 0; i < m; ++i) start[i + 1] = start[i] + arities[i];
    std::vector<uint32_t> values;
    for (uint32_t j = 1; j <= m; ++j)
        for (uint32_t s = 1; s <= arities[pi(j) - 1]; ++s)
            values.push_back(start[pi(j) - 1] + s);
    return FinMap(start[m], start[m], std::move(values));
}

FinMap direct_sum(const std::vector<FinMap>& taus) {
    uint32_t total = 0;
    std::vector<uint32_t> values;
    for (const FinMap& t : taus) {
        if (t.dom() != t.cod()) throw std::invalid_argument("direct_sum needs endomaps");
        for (uint32_t s = 1; s <= t.dom(); ++s) values.push_back(total + t(s));
        total += t.dom();
    }
    return FinMap(total, total, std::move(values));
}

CheckReport OperadMorphism::validate(const std::string& name) const {
    CheckReport r(name);
    if (!src || !dst) {
        r.fail("missing operads");
        return r;
    }
    const Operad& A = *src;
    const Operad& B = *dst;
    if (color.size() != A.color_count() || op.size() != A.op_count()) {
        r.fail("map tables have the wrong size");
        return r;
    }
    for (uint32_t c : color)
        if (c >= B.color_count()) {
            r.fail("color image out of range");
            return r;
        }
    for (uint32_t p : op)
        if (p >= B.op_count()) {
            r.fail("op image out of range");
            return r;
        }
    if (B.arity_bound() < A.arity_bound()) {
        r.fail("target arity bound too small");
        return r;
    }
    r.count("colors", A.color_count());
    r.count("ops", A.op_count());

    for (uint32_t p = 0; p < A.op_count() && r.passed; ++p) {
        const auto& in = A.inputs(p);
        const auto& im = B.inputs(op[p]);
        if (B.output(op[p]) != color[A.output(p)] || im.size() != in.size()) {
            r.fail("profile of " + A.op_name(p) + " not preserved");
            break;
        }
        for (size_t i = 0; i < in.size(); ++i)
            if (im[i] != color[in[i]]) {
                r.fail("profile of " + A.op_name(p) + " not preserved");
                break;
            }
    }
    for (uint32_t c = 0; c < A.color_count() && r.passed; ++c)
        if (op[A.unit(c)] != B.unit(color[c])) r.fail("unit of " + A.color_name(c) + " not preserved");

    for (uint32_t q = 0; q < A.op_count() && r.passed; ++q)
        for (const auto& ps : A.gamma_tuples(q)) {
            std::vector<uint32_t> im;
            for (uint32_t p : ps) im.push_back(op[p]);
            if (B.gamma(op[q], im) != op[A.gamma(q, ps)]) {
                r.fail("gamma not preserved at " + A.op_name(q));
                break;
            }
            r.bump("gamma checks");
        }
    for (uint32_t p = 0; p < A.op_count() && r.passed; ++p)
        for (const FinMap& pi : all_bijections(A.arity(p))) {
            if (B.act(op[p], pi) != op[A.act(p, pi)]) {
                r.fail("action not preserved at " + A.op_name(p));
                break;
            }
            r.bump("action checks");
        }
    return r;
}

CheckReport check_operad_iso(const std::string& name, const OperadMorphism& F) {
    CheckReport r(name);
    CheckReport fwd = F.validate(name);
    if (!fwd.passed) {
        r.fail("forward map: " + fwd.witness);
        return r;
    }
    const Operad& A = *F.src;
    const Operad& B = *F.dst;
    if (A.arity_bound() != B.arity_bound()) {
        r.fail("different arity bounds");
        return r;
    }
    if (A.color_count() != B.color_count() || A.op_count() != B.op_count()) {
        r.fail("different numbers of colors or ops");
        return r;
    }
    std::vector<uint32_t> cinv(B.color_count(), UINT32_MAX), oinv(B.op_count(), UINT32_MAX);
    for (uint32_t c = 0; c < A.color_count(); ++c) {
        if (cinv[F.color[c]] != UINT32_MAX) {
            r.fail("two colors land on " + B.color_name(F.color[c]));
            return r;
        }
        cinv[F.color[c]] = c;
    }
    for (uint32_t p = 0; p < A.op_count(); ++p) {
        if (oinv[F.op[p]] != UINT32_MAX) {
            r.fail("two ops land on " + B.op_name(F.op[p]));
            return r;
        }
        oinv[F.op[p]] = p;
    }
    OperadMorphism G{F.dst, F.src, cinv, oinv};
    CheckReport bwd = G.validate(name);
    if (!bwd.passed) {
        r.fail("inverse map: " + bwd.witness);
        return r;
    }
    r.count("colors", A.color_count());
    r.count("ops", A.op_count());
    return r;
}

Operad suboperad(const Operad& O, const std::vector<char>& keep) {
    if (keep.size() != O.op_count()) throw std::invalid_argument("keep mask has the wrong size");
    Operad S(O.arity_bound());
    std::vector<uint32_t> remap(O.op_count(), UINT32_MAX);
    for (uint32_t c = 0; c < O.color_count(); ++c) S.add_color(O.color_name(c));
    for (uint32_t p = 0; p < O.op_count(); ++p)
        if (keep[p]) remap[p] = S.add_op(O.inputs(p), O.output(p), O.op_name(p));
    for (uint32_t c = 0; c < O.color_count(); ++c) {
        if (remap[O.unit(c)] == UINT32_MAX)
            throw std::invalid_argument("the units must be kept");
        S.set_unit(c, remap[O.unit(c)]);
    }
    for (uint32_t q = 0; q < O.op_count(); ++q) {
        if (!keep[q]) continue;
        for (const auto& ps : O.gamma_tuples(q)) {
            bool all = true;
            for (uint32_t p : ps) all = all && keep[p];
            if (!all) continue;
            uint32_t g = O.gamma(q, ps);
            if (remap[g] == UINT32_MAX)
                throw std::invalid_argument("kept ops do not close under gamma");
            std::vector<uint32_t> mapped;
            for (uint32_t p : ps) mapped.push_back(remap[p]);
            S.set_gamma(remap[q], mapped, remap[g]);
        }
        for (const FinMap& pi : all_bijections(O.arity(q))) {
            uint32_t a = O.act(q, pi);
            if (remap[a] == UINT32_MAX)
                throw std::invalid_argument("kept ops do not close under the actions");
            S.set_act(remap[q], pi, remap[a]);
        }
    }
    S.finalize();
    return S;
}

Operad make_commutative(uint32_t arity_bound) {
    Operad O(arity_bound);
    O.add_color("x");
    std::vector<uint32_t> m(arity_bound + 1);
    for (uint32_t n = 0; n <= arity_bound; ++n)
        m[n] = O.add_op(std::vector<uint32_t>(n, 0), 0, "m" + std::to_string(n));
    O.set_unit(0, m[1]);
    // gamma adds the arities, the actions do nothing
    for (uint32_t q = 0; q <= arity_bound; ++q) {
        std::vector<uint32_t> ks(q);
        auto rec = [&](auto&& self, uint32_t i, uint32_t sum) -> void {
            if (i == q) {
                std::vector<uint32_t> ps;
                for (uint32_t k : ks) ps.push_back(m[k]);
                O.set_gamma(m[q], ps, m[sum]);
                return;
            }
            for (uint32_t k = 0; sum + k <= arity_bound; ++k) {
                ks[i] = k;
                self(self, i + 1, sum + k);
            }
        };
        rec(rec, 0, 0);
    }
    for (uint32_t n = 0; n <= arity_bound; ++n)
        for (const FinMap& pi : all_bijections(n)) O.set_act(m[n], pi, m[n]);
    O.finalize();
    return O;
}

Operad make_trivial(uint32_t colors, uint32_t arity_bound) {
    if (colors == 0) throw std::invalid_argument("need at least one color");
    Operad O(arity_bound);
    for (uint32_t c = 0; c < colors; ++c) O.add_color("c" + std::to_string(c));
    for (uint32_t c = 0; c < colors; ++c) {
        uint32_t u = O.add_op({c}, c, "u" + std::to_string(c));
        O.set_unit(c, u);
        O.set_gamma(u, {u}, u);
        O.set_act(u, FinMap::identity(1), u);
    }
    O.finalize();
    return O;
}

Operad make_parity(uint32_t arity_bound) {
    Operad O(arity_bound);
    O.add_color("x");
    // z[n][e]: the op of arity n with parity e
    std::vector<std::vector<uint32_t>> z(arity_bound + 1, std::vector<uint32_t>(2));
    for (uint32_t n = 0; n <= arity_bound; ++n)
        for (uint32_t e = 0; e < 2; ++e)
            z[n][e] = O.add_op(std::vector<uint32_t>(n, 0), 0,
                               std::string(e ? "o" : "e") + std::to_string(n));
    O.set_unit(0, z[1][0]);
    std::vector<uint32_t> opAr, opPar;
    for (uint32_t n = 0; n <= arity_bound; ++n)
        for (uint32_t e = 0; e < 2; ++e) {
            opAr.push_back(n);
            opPar.push_back(e);
        }
    for (uint32_t q = 0; q < O.op_count(); ++q)
        for (const auto& ps : O.gamma_tuples(q)) {
            uint32_t total = 0, par = opPar[q];
            for (uint32_t p : ps) {
                total += opAr[p];
                par ^= opPar[p];
            }
            O.set_gamma(q, ps, z[total][par]);
        }
    for (uint32_t p = 0; p < O.op_count(); ++p)
        for (const FinMap& pi : all_bijections(opAr[p])) O.set_act(p, pi, p);
    O.finalize();
    return O;
}

/* Free operads.  An op is a leaf-labeled tree of generators, taken up to
 * the stabilizer shuffles at each vertex; the canonical representative is
 * recursively code-minimal. */
namespace {

struct Tree {
    int32_t gen = -1;    // -1: leaf
    uint32_t label = 0;  // leaf slot, 1-based
    std::vector<Tree> kids;
};

// leaves sort before generator nodes: leaf -> +label, vertex -> -(gen+1)
using Code = std::vector<int32_t>;

void encode_into(const Tree& t, Code& out) {
    if (t.gen < 0) {
        out.push_back(static_cast<int32_t>(t.label));
        return;
    }
    out.push_back(-(t.gen + 1));
    for (const Tree& k : t.kids) encode_into(k, out);
}

Code encode(const Tree& t) {
    Code c;
    encode_into(t, c);
    return c;
}

uint32_t leaf_count(const Tree& t) {
    if (t.gen < 0) return 1;
    uint32_t n = 0;
    for (const Tree& k : t.kids) n += leaf_count(k);
    return n;
}

uint32_t vertex_count(const Tree& t) {
    if (t.gen < 0) return 0;
    uint32_t n = 1;
    for (const Tree& k : t.kids) n += vertex_count(k);
    return n;
}

void assign_positions(Tree& t, uint32_t& next) {
    if (t.gen < 0) {
        t.label = ++next;
        return;
    }
    for (Tree& k : t.kids) assign_positions(k, next);
}

void relabel(Tree& t, const FinMap& f) {
    if (t.gen < 0) {
        t.label = f(t.label);
        return;
    }
    for (Tree& k : t.kids) relabel(k, f);
}

void shift_labels(Tree& t, uint32_t offset) {
    if (t.gen < 0) {
        t.label += offset;
        return;
    }
    for (Tree& k : t.kids) shift_labels(k, offset);
}

Tree canon(const Tree& t, const std::vector<std::vector<FinMap>>& stab) {
    if (t.gen < 0) return t;
    Tree base = t;
    for (Tree& k : base.kids) k = canon(k, stab);
    Tree best = base;
    Code bestCode = encode(best);
    for (const FinMap& tau : stab[t.gen]) {
        Tree cand = base;
        for (uint32_t j = 1; j <= tau.dom(); ++j) cand.kids[j - 1] = base.kids[tau(j) - 1];
        Code c = encode(cand);
        if (c < bestCode) {
            bestCode = std::move(c);
            best = std::move(cand);
        }
    }
    return best;
}

// input color of each slot, read off the leaves
void word_into(const Tree& t, uint32_t color, const std::vector<FreeGenerator>& gens,
               std::vector<uint32_t>& word) {
    if (t.gen < 0) {
        word[t.label - 1] = color;
        return;
    }
    for (size_t i = 0; i < t.kids.size(); ++i)
        word_into(t.kids[i], gens[t.gen].inputs[i], gens, word);
}

std::string pretty(const Tree& t, const std::vector<FreeGenerator>& gens) {
    if (t.gen < 0) return std::to_string(t.label);
    std::string s = gens[t.gen].name + "(";
    for (size_t i = 0; i < t.kids.size(); ++i) {
        if (i) s += ",";
        s += pretty(t.kids[i], gens);
    }
    return s + ")";
}

std::vector<FinMap> close_group(uint32_t m, const std::vector<FinMap>& gens) {
    std::set<FinMap> elems;
    elems.insert(FinMap::identity(m));
    for (const FinMap& g : gens) elems.insert(g);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<FinMap> now(elems.begin(), elems.end());
        for (const FinMap& a : now)
            for (const FinMap& b : now)
                if (elems.insert(compose(a, b)).second) grew = true;
    }
    return {elems.begin(), elems.end()};
}

std::vector<std::vector<FinMap>> stabilizers(uint32_t colors,
                                             const std::vector<FreeGenerator>& gens) {
    std::vector<std::vector<FinMap>> stab;
    for (const FreeGenerator& g : gens) {
        uint32_t m = static_cast<uint32_t>(g.inputs.size());
        for (uint32_t c : g.inputs)
            if (c >= colors) throw std::invalid_argument("generator input color out of range");
        if (g.output >= colors) throw std::invalid_argument("generator output color out of range");
        switch (g.stab) {
            case FreeGenerator::Stab::trivial:
                stab.push_back({FinMap::identity(m)});
                break;
            case FreeGenerator::Stab::full:
                for (uint32_t i = 1; i < m; ++i)
                    if (g.inputs[i] != g.inputs[0])
                        throw std::invalid_argument("full stabilizer needs equal input colors");
                stab.push_back(all_bijections(m));
                break;
            case FreeGenerator::Stab::listed:
                for (const FinMap& tau : g.stab_gens) {
                    if (tau.dom() != m || tau.cod() != m || !tau.is_bijective())
                        throw std::invalid_argument("stabilizer generator is not a permutation");
                    for (uint32_t t = 1; t <= m; ++t)
                        if (g.inputs[tau(t) - 1] != g.inputs[t - 1])
                            throw std::invalid_argument(
                                "stabilizer generator does not preserve the inputs");
                }
                stab.push_back(close_group(m, g.stab_gens));
                break;
        }
    }
    return stab;
}

// all planar shapes with output color c, at most L leaves and V vertices;
// leaf labels are not yet assigned
std::vector<Tree> shapes(const std::vector<FreeGenerator>& gens, uint32_t c, uint32_t L,
                         uint32_t V) {
    std::vector<Tree> out;
    if (L >= 1) out.push_back(Tree{});
    if (V == 0) return out;
    for (size_t g = 0; g < gens.size(); ++g) {
        if (gens[g].output != c) continue;
        uint32_t m = static_cast<uint32_t>(gens[g].inputs.size());
        std::vector<Tree> kids(m);
        auto rec = [&](auto&& self, uint32_t i, uint32_t lRem, uint32_t vRem) -> void {
            if (i == m) {
                Tree t;
                t.gen = static_cast<int32_t>(g);
                t.kids = kids;
                out.push_back(std::move(t));
                return;
            }
            for (Tree& k : shapes(gens, gens[g].inputs[i], lRem, vRem)) {
                uint32_t lk = leaf_count(k), vk = vertex_count(k);
                kids[i] = std::move(k);
                self(self, i + 1, lRem - lk, vRem - vk);
            }
        };
        rec(rec, 0, L, V - 1);
    }
    return out;
}

using ClassKey = std::tuple<uint32_t, uint32_t, Code>;  // arity, output color, code

std::map<ClassKey, Tree> free_classes(uint32_t colors, const std::vector<FreeGenerator>& gens,
                                      const std::vector<std::vector<FinMap>>& stab,
                                      uint32_t leaf_bound, uint32_t vertex_bound) {
    std::map<ClassKey, Tree> classes;
    for (uint32_t c = 0; c < colors; ++c)
        for (Tree& shape : shapes(gens, c, leaf_bound, vertex_bound)) {
            uint32_t n = leaf_count(shape);
            uint32_t next = 0;
            assign_positions(shape, next);
            for (const FinMap& pi : all_bijections(n)) {
                Tree lab = shape;
                relabel(lab, pi);
                Tree cn = canon(lab, stab);
                classes.try_emplace(ClassKey{n, c, encode(cn)}, cn);
            }
        }
    return classes;
}

}  // namespace

Operad free_operad(uint32_t colors, const std::vector<FreeGenerator>& gens,
                   uint32_t arity_bound) {
    if (colors == 0) throw std::invalid_argument("need at least one color");
    for (const FreeGenerator& g : gens)
        if (g.inputs.size() < 2)
            throw std::invalid_argument("free generators must have arity at least 2");
    auto stab = stabilizers(colors, gens);
    // arity >= 2 everywhere, so the vertex count never exceeds the leaves
    auto classes = free_classes(colors, gens, stab, arity_bound, arity_bound);

    Operad O(arity_bound);
    for (uint32_t c = 0; c < colors; ++c) O.add_color("c" + std::to_string(c));
    std::vector<Tree> tree;
    std::map<std::pair<uint32_t, Code>, uint32_t> lookup;  // (output color, code)
    for (const auto& [key, t] : classes) {
        auto [n, c, code] = key;
        std::vector<uint32_t> word(n);
        word_into(t, c, gens, word);
        std::string name = pretty(t, gens);
        if (colors > 1) name += "@" + O.color_name(c);
        uint32_t id = O.add_op(std::move(word), c, std::move(name));
        tree.push_back(t);
        lookup[{c, code}] = id;
    }
    for (uint32_t c = 0; c < colors; ++c) O.set_unit(c, lookup.at({c, Code{1}}));

    for (uint32_t q = 0; q < O.op_count(); ++q)
        for (const auto& ps : O.gamma_tuples(q)) {
            // graft each argument tree into the leaf with its slot number
            std::vector<uint32_t> offset(ps.size() + 1, 0);
            for (size_t i = 0; i < ps.size(); ++i) offset[i + 1] = offset[i] + O.arity(ps[i]);
            auto graft = [&](auto&& self, const Tree& t) -> Tree {
                if (t.gen < 0) {
                    Tree sub = tree[ps[t.label - 1]];
                    shift_labels(sub, offset[t.label - 1]);
                    return sub;
                }
                Tree out = t;
                for (Tree& k : out.kids) k = self(self, k);
                return out;
            };
            Tree cn = canon(graft(graft, tree[q]), stab);
            O.set_gamma(q, ps, lookup.at({O.output(q), encode(cn)}));
        }
    for (uint32_t p = 0; p < O.op_count(); ++p)
        for (const FinMap& pi : all_bijections(O.arity(p))) {
            Tree t = tree[p];
            if (O.arity(p) > 0) relabel(t, pi.inverse());
            Tree cn = canon(t, stab);
            O.set_act(p, pi, lookup.at({O.output(p), encode(cn)}));
        }
    O.finalize();
    return O;
}

int64_t count_free_ops(uint32_t colors, const std::vector<FreeGenerator>& gens, uint32_t arity,
                       uint32_t output, uint32_t max_vertices) {
    if (colors == 0) throw std::invalid_argument("need at least one color");
    if (output >= colors) throw std::invalid_argument("output color out of range");
    auto stab = stabilizers(colors, gens);
    auto classes = free_classes(colors, gens, stab, arity, max_vertices);
    int64_t n = 0;
    for (const auto& [key, t] : classes)
        if (std::get<0>(key) == arity && std::get<1>(key) == output) ++n;
    return n;
}

Operad make_free_binary(uint32_t arity_bound) {
    FreeGenerator b{"b", {0, 0}, 0, FreeGenerator::Stab::full, {}};
    return free_operad(1, {b}, arity_bound);
}

Operad make_free_pair(uint32_t arity_bound) {
    FreeGenerator b{"b", {0, 0}, 0, FreeGenerator::Stab::trivial, {}};
    FreeGenerator s{"s", {0, 0}, 0, FreeGenerator::Stab::full, {}};
    return free_operad(1, {b, s}, arity_bound);
}

}  // namespace opdcat
