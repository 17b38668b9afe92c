#include "opdcat/envelope.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>

namespace opdcat {

namespace {

// disjoint sum of maps, the second shifted past the first
FinMap disjoint(const FinMap& f, const FinMap& g) {
    std::vector<uint32_t> values;
    values.reserve(f.dom() + g.dom());
    for (uint32_t i = 1; i <= f.dom(); ++i) values.push_back(f(i));
    for (uint32_t i = 1; i <= g.dom(); ++i) values.push_back(f.cod() + g(i));
    return FinMap(f.dom() + g.dom(), f.cod() + g.cod(), std::move(values));
}

uint64_t factorial(uint32_t n) {
    uint64_t r = 1;
    for (uint32_t k = 2; k <= n; ++k) r *= k;
    return r;
}

// position of rho among the permutations of its size in lexicographic order
uint32_t perm_rank(const FinMap& rho) {
    uint32_t n = rho.dom(), rank = 0;
    for (uint32_t i = 1; i <= n; ++i) {
        uint32_t smaller = 0;
        for (uint32_t j = i + 1; j <= n; ++j)
            if (rho(j) < rho(i)) ++smaller;
        rank = rank * (n - i + 1) + smaller;
    }
    return rank;
}

// the permutation moving a leading block of size p past a block of size q
FinMap block_swap(uint32_t p, uint32_t q) {
    std::vector<uint32_t> values;
    for (uint32_t j = 1; j <= p; ++j) values.push_back(q + j);
    for (uint32_t j = 1; j <= q; ++j) values.push_back(j);
    return FinMap(p + q, p + q, std::move(values));
}

std::string arrow_desc(const PropOverF& C, uint32_t f) {
    uint32_t a = C.src(f), b = C.dst(f);
    return C.object_name(a) + "->" + C.object_name(b) + "#" +
           std::to_string(f - C.hom_first(a, b));
}

/* Walks a run of blocks and visits every stride-th point, counting across
 * block boundaries, so a budget spreads evenly over uneven blocks. */
struct StridedScan {
    uint64_t stride = 1;
    uint64_t offset = 0;

    template <class F>
    void block(uint64_t size, F&& visit) {
        uint64_t u = (stride - offset % stride) % stride;
        for (; u < size; u += stride) visit(u);
        offset += size;
    }
};

uint64_t pick_stride(uint64_t total, uint64_t budget) {
    return total <= budget ? 1 : total / budget + 1;
}

}  // namespace

bool operator==(const PropArrow& a, const PropArrow& b) {
    return a.under == b.under && a.ops == b.ops && a.tag == b.tag;
}

bool operator<(const PropArrow& a, const PropArrow& b) {
    if (!(a.under == b.under)) return a.under < b.under;
    if (a.ops != b.ops) return a.ops < b.ops;
    return a.tag < b.tag;
}

PropOverF::PropOverF(std::vector<std::string> colors, uint32_t tuple_bound)
    : colorName_(std::move(colors)), bound_(tuple_bound) {
    if (colorName_.empty()) throw std::invalid_argument("need at least one color");
    if (bound_ == 0) throw std::invalid_argument("tuple bound must be positive");
    std::vector<uint32_t> word;
    auto rec = [&](auto&& self, uint32_t len) -> void {
        if (word.size() == len) {
            objIndex_.emplace(word, static_cast<uint32_t>(objWord_.size()));
            objWord_.push_back(word);
            return;
        }
        for (uint32_t c = 0; c < colorName_.size(); ++c) {
            word.push_back(c);
            self(self, len);
            word.pop_back();
        }
    };
    for (uint32_t len = 0; len <= bound_; ++len) rec(rec, len);
    pending_.resize(static_cast<size_t>(object_count()) * object_count());
}

uint32_t PropOverF::color_by_name(const std::string& name) const {
    for (uint32_t c = 0; c < colorName_.size(); ++c)
        if (colorName_[c] == name) return c;
    throw std::invalid_argument("unknown color " + name);
}

uint32_t PropOverF::object(const std::vector<uint32_t>& word) const {
    auto it = objIndex_.find(word);
    if (it == objIndex_.end()) throw std::invalid_argument("no such object");
    return it->second;
}

std::string PropOverF::object_name(uint32_t o) const {
    std::string s = "(";
    const auto& w = objWord_.at(o);
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += colorName_[w[i]];
    }
    return s + ")";
}

uint32_t PropOverF::pair_index(uint32_t a, uint32_t b) const {
    return a * object_count() + b;
}

void PropOverF::add_arrow(uint32_t src, uint32_t dst, PropArrow f) {
    if (sealed_) throw std::logic_error("homs are sealed");
    if (src >= object_count() || dst >= object_count())
        throw std::invalid_argument("no such object");
    if (f.under.dom() != length(src) || f.under.cod() != length(dst))
        throw std::invalid_argument("underlying map does not match the objects");
    if (!f.ops.empty() && f.ops.size() != length(dst))
        throw std::invalid_argument("operation count does not match the target");
    pending_[pair_index(src, dst)].push_back(std::move(f));
}

void PropOverF::seal_homs() {
    if (sealed_) throw std::logic_error("homs are sealed");
    uint32_t nobj = object_count();
    homBase_.assign(static_cast<size_t>(nobj) * nobj + 1, 0);
    for (uint32_t a = 0; a < nobj; ++a)
        for (uint32_t b = 0; b < nobj; ++b) {
            auto& hom = pending_[pair_index(a, b)];
            std::sort(hom.begin(), hom.end());
            for (size_t i = 1; i < hom.size(); ++i)
                if (hom[i - 1] == hom[i]) throw std::invalid_argument("duplicate arrow");
            homBase_[pair_index(a, b) + 1] =
                homBase_[pair_index(a, b)] + static_cast<uint32_t>(hom.size());
            for (auto& f : hom) {
                arrVal_.push_back(std::move(f));
                arrSrc_.push_back(a);
                arrDst_.push_back(b);
            }
        }
    pending_.clear();
    pending_.shrink_to_fit();
    sealed_ = true;
    comp_.resize(static_cast<size_t>(nobj) * nobj * nobj);
    for (uint32_t a = 0; a < nobj; ++a)
        for (uint32_t b = 0; b < nobj; ++b)
            for (uint32_t c = 0; c < nobj; ++c) {
                uint64_t cells = static_cast<uint64_t>(hom_size(a, b)) * hom_size(b, c);
                if (cells)
                    comp_[(static_cast<size_t>(a) * nobj + b) * nobj + c].assign(
                        cells, UINT32_MAX);
            }
    idIdx_.assign(nobj, UINT32_MAX);
    symIdx_.resize(nobj);
    for (uint32_t o = 0; o < nobj; ++o)
        symIdx_[o].assign(factorial(length(o)), UINT32_MAX);
    sealed_ = true;
}

uint32_t PropOverF::hom_first(uint32_t a, uint32_t b) const {
    if (!sealed_) throw std::logic_error("homs are not sealed");
    return homBase_.at(pair_index(a, b));
}

uint32_t PropOverF::hom_size(uint32_t a, uint32_t b) const {
    if (!sealed_) throw std::logic_error("homs are not sealed");
    return homBase_.at(pair_index(a, b) + 1) - homBase_.at(pair_index(a, b));
}

int64_t PropOverF::locate(uint32_t a, uint32_t b, const PropArrow& f) const {
    uint32_t lo = hom_first(a, b), hi = lo + hom_size(a, b);
    auto it = std::lower_bound(arrVal_.begin() + lo, arrVal_.begin() + hi, f);
    if (it == arrVal_.begin() + hi || !(*it == f)) return -1;
    return it - arrVal_.begin();
}

bool PropOverF::contains(uint32_t a, uint32_t b, const PropArrow& f) const {
    return locate(a, b, f) >= 0;
}

uint32_t PropOverF::find(uint32_t a, uint32_t b, const PropArrow& f) const {
    int64_t at = locate(a, b, f);
    if (at < 0) throw std::invalid_argument("no such arrow");
    return static_cast<uint32_t>(at);
}

void PropOverF::set_compose(uint32_t g, uint32_t f, uint32_t gf) {
    if (!sealed_ || finalized_) throw std::logic_error("prop is not open for tables");
    uint32_t a = arrSrc_.at(f), b = arrDst_.at(f), c = arrDst_.at(g);
    if (arrSrc_.at(g) != b) throw std::invalid_argument("arrows do not compose");
    if (arrSrc_.at(gf) != a || arrDst_.at(gf) != c)
        throw std::invalid_argument("composite endpoints are wrong");
    uint32_t nobj = object_count();
    auto& table = comp_[(static_cast<size_t>(a) * nobj + b) * nobj + c];
    table.at(static_cast<uint64_t>(g - hom_first(b, c)) * hom_size(a, b) +
             (f - hom_first(a, b))) = gf;
}

void PropOverF::set_identity(uint32_t o, uint32_t f) {
    if (!sealed_ || finalized_) throw std::logic_error("prop is not open for tables");
    if (arrSrc_.at(f) != o || arrDst_.at(f) != o)
        throw std::invalid_argument("identity must be an endomorphism");
    idIdx_.at(o) = f;
}

void PropOverF::set_sym(uint32_t o, const FinMap& rho, uint32_t f) {
    if (!sealed_ || finalized_) throw std::logic_error("prop is not open for tables");
    if (rho.dom() != length(o) || !rho.is_bijective())
        throw std::invalid_argument("symmetry index must be a permutation");
    if (arrSrc_.at(f) != o || arrDst_.at(f) != permuted_object(o, rho))
        throw std::invalid_argument("symmetry endpoints are wrong");
    if (!(arrVal_.at(f).under == rho))
        throw std::invalid_argument("symmetry arrow must lie over its permutation");
    symIdx_.at(o).at(perm_rank(rho)) = f;
}

void PropOverF::finalize() {
    if (!sealed_) throw std::logic_error("homs are not sealed");
    if (finalized_) throw std::logic_error("prop is finalized");
    for (const auto& table : comp_)
        for (uint32_t v : table)
            if (v == UINT32_MAX) throw std::logic_error("composition table incomplete");
    for (uint32_t v : idIdx_)
        if (v == UINT32_MAX) throw std::logic_error("missing identity");
    for (const auto& row : symIdx_)
        for (uint32_t v : row)
            if (v == UINT32_MAX) throw std::logic_error("missing symmetry arrow");
    finalized_ = true;
}

uint32_t PropOverF::compose(uint32_t g, uint32_t f) const {
    if (!finalized_) throw std::logic_error("prop is not finalized");
    uint32_t a = arrSrc_.at(f), b = arrDst_.at(f), c = arrDst_.at(g);
    if (arrSrc_.at(g) != b) throw std::invalid_argument("arrows do not compose");
    uint32_t nobj = object_count();
    return comp_[(static_cast<size_t>(a) * nobj + b) * nobj + c]
                [static_cast<uint64_t>(g - hom_first(b, c)) * hom_size(a, b) +
                 (f - hom_first(a, b))];
}

uint32_t PropOverF::identity(uint32_t o) const {
    if (!finalized_) throw std::logic_error("prop is not finalized");
    return idIdx_.at(o);
}

uint32_t PropOverF::sym(uint32_t o, const FinMap& rho) const {
    if (!finalized_) throw std::logic_error("prop is not finalized");
    if (rho.dom() != length(o) || !rho.is_bijective())
        throw std::invalid_argument("symmetry index must be a permutation");
    return symIdx_.at(o).at(perm_rank(rho));
}

bool PropOverF::tensor_defined(uint32_t a, uint32_t b) const {
    return length(a) + length(b) <= bound_;
}

uint32_t PropOverF::tensor_object(uint32_t a, uint32_t b) const {
    if (!tensor_defined(a, b))
        throw std::invalid_argument("tensor is above the tuple bound");
    std::vector<uint32_t> w = objWord_.at(a);
    w.insert(w.end(), objWord_.at(b).begin(), objWord_.at(b).end());
    return object(w);
}

uint32_t PropOverF::permuted_object(uint32_t o, const FinMap& rho) const {
    const auto& w = objWord_.at(o);
    if (rho.dom() != w.size() || !rho.is_bijective())
        throw std::invalid_argument("need a permutation of the slots");
    std::vector<uint32_t> out(w.size());
    for (uint32_t i = 1; i <= w.size(); ++i) out[rho(i) - 1] = w[i - 1];
    return object(out);
}

uint32_t PropOverF::tensor(uint32_t f, uint32_t g) const {
    uint32_t a = tensor_object(arrSrc_.at(f), arrSrc_.at(g));
    uint32_t b = tensor_object(arrDst_.at(f), arrDst_.at(g));
    const PropArrow& x = arrVal_[f];
    const PropArrow& y = arrVal_[g];
    PropArrow out{disjoint(x.under, y.under), x.ops, x.tag + y.tag};
    out.ops.insert(out.ops.end(), y.ops.begin(), y.ops.end());
    return find(a, b, out);
}

CheckReport PropOverF::validate(const std::string& name, uint64_t budget) const {
    if (!finalized_) throw std::logic_error("prop is not finalized");
    CheckReport r(name);
    uint32_t nobj = object_count();
    r.count("objects", nobj);
    r.count("arrows", arrow_count());

    // identities
    for (uint32_t o = 0; o < nobj && r.passed; ++o) {
        uint32_t e = idIdx_[o];
        if (!arrVal_[e].under.is_identity())
            r.fail("identity of " + object_name(o) + " is not over the identity");
    }
    int64_t idLaws = 0;
    for (uint32_t f = 0; f < arrow_count() && r.passed; ++f) {
        if (compose(identity(arrDst_[f]), f) != f || compose(f, identity(arrSrc_[f])) != f)
            r.fail("identity law fails at " + arrow_desc(*this, f));
        idLaws += 2;
    }
    r.count("identity_laws", idLaws);
    if (!r.passed) return r;

    // composition respects the underlying maps
    uint64_t pairTotal = 0;
    for (uint32_t a = 0; a < nobj; ++a)
        for (uint32_t b = 0; b < nobj; ++b)
            for (uint32_t c = 0; c < nobj; ++c)
                pairTotal += static_cast<uint64_t>(hom_size(a, b)) * hom_size(b, c);
    int64_t pairChecks = 0;
    StridedScan pairs{pick_stride(pairTotal, budget), 0};
    for (uint32_t a = 0; a < nobj; ++a)
        for (uint32_t b = 0; b < nobj; ++b)
            for (uint32_t c = 0; c < nobj && r.passed; ++c) {
                uint64_t s1 = hom_size(a, b);
                pairs.block(s1 * hom_size(b, c), [&](uint64_t u) {
                    uint32_t g = hom_first(b, c) + static_cast<uint32_t>(u / s1);
                    uint32_t f = hom_first(a, b) + static_cast<uint32_t>(u % s1);
                    uint32_t gf = compose(g, f);
                    if (!(arrVal_[gf].under ==
                          opdcat::compose(arrVal_[g].under, arrVal_[f].under)))
                        r.fail("underlying maps do not compose at (" +
                               arrow_desc(*this, f) + ", " + arrow_desc(*this, g) + ")");
                    ++pairChecks;
                });
            }
    r.count("underlying_pairs", pairChecks);
    if (!r.passed) return r;

    // associativity
    uint64_t tripleTotal = 0;
    for (uint32_t a = 0; a < nobj; ++a)
        for (uint32_t b = 0; b < nobj; ++b)
            for (uint32_t c = 0; c < nobj; ++c) {
                uint64_t left = static_cast<uint64_t>(hom_size(a, b)) * hom_size(b, c);
                if (!left) continue;
                for (uint32_t d = 0; d < nobj; ++d)
                    tripleTotal += left * hom_size(c, d);
            }
    int64_t assocChecks = 0;
    StridedScan triples{pick_stride(tripleTotal, budget), 0};
    for (uint32_t a = 0; a < nobj; ++a)
        for (uint32_t b = 0; b < nobj; ++b)
            for (uint32_t c = 0; c < nobj; ++c) {
                uint64_t s1 = hom_size(a, b), s2 = hom_size(b, c);
                if (!s1 || !s2) continue;
                for (uint32_t d = 0; d < nobj && r.passed; ++d) {
                    triples.block(s1 * s2 * hom_size(c, d), [&](uint64_t u) {
                        uint32_t h = hom_first(c, d) + static_cast<uint32_t>(u / (s1 * s2));
                        uint64_t v = u % (s1 * s2);
                        uint32_t g = hom_first(b, c) + static_cast<uint32_t>(v / s1);
                        uint32_t f = hom_first(a, b) + static_cast<uint32_t>(v % s1);
                        if (compose(h, compose(g, f)) != compose(compose(h, g), f))
                            r.fail("associativity fails at (" + arrow_desc(*this, f) +
                                   ", " + arrow_desc(*this, g) + ", " +
                                   arrow_desc(*this, h) + ")");
                        ++assocChecks;
                    });
                }
            }
    r.count("associativity_checks", assocChecks);
    if (!r.passed) return r;

    // every tensor of arrows lands in its hom
    int64_t tensorPairs = 0;
    for (uint32_t f = 0; f < arrow_count() && r.passed; ++f)
        for (uint32_t g = 0; g < arrow_count() && r.passed; ++g) {
            if (!tensor_defined(arrSrc_[f], arrSrc_[g]) ||
                !tensor_defined(arrDst_[f], arrDst_[g]))
                continue;
            uint32_t a = tensor_object(arrSrc_[f], arrSrc_[g]);
            uint32_t b = tensor_object(arrDst_[f], arrDst_[g]);
            const PropArrow& x = arrVal_[f];
            const PropArrow& y = arrVal_[g];
            PropArrow out{disjoint(x.under, y.under), x.ops, x.tag + y.tag};
            out.ops.insert(out.ops.end(), y.ops.begin(), y.ops.end());
            if (!contains(a, b, out))
                r.fail("tensor of " + arrow_desc(*this, f) + " and " +
                       arrow_desc(*this, g) + " is missing");
            ++tensorPairs;
        }
    r.count("tensor_pairs", tensorPairs);
    if (!r.passed) return r;

    // tensor of identities and functoriality of the tensor product
    for (uint32_t a = 0; a < nobj && r.passed; ++a)
        for (uint32_t b = 0; b < nobj; ++b) {
            if (!tensor_defined(a, b)) continue;
            if (tensor(identity(a), identity(b)) != identity(tensor_object(a, b))) {
                r.fail("identity tensors disagree at (" + object_name(a) + ", " +
                       object_name(b) + ")");
                break;
            }
        }
    if (!r.passed) return r;
    uint64_t funcTotal = 0;
    std::vector<std::array<uint32_t, 6>> funcBlocks;
    for (uint32_t a = 0; a < nobj; ++a)
        for (uint32_t b = 0; b < nobj; ++b)
            for (uint32_t c = 0; c < nobj; ++c) {
                uint64_t left = static_cast<uint64_t>(hom_size(a, b)) * hom_size(b, c);
                if (!left) continue;
                for (uint32_t a2 = 0; a2 < nobj; ++a2) {
                    if (!tensor_defined(a, a2)) continue;
                    for (uint32_t b2 = 0; b2 < nobj; ++b2) {
                        if (!tensor_defined(b, b2)) continue;
                        for (uint32_t c2 = 0; c2 < nobj; ++c2) {
                            if (!tensor_defined(c, c2)) continue;
                            uint64_t right =
                                static_cast<uint64_t>(hom_size(a2, b2)) * hom_size(b2, c2);
                            if (!right) continue;
                            funcBlocks.push_back({a, b, c, a2, b2, c2});
                            funcTotal += left * right;
                        }
                    }
                }
            }
    int64_t funcChecks = 0;
    StridedScan func{pick_stride(funcTotal, budget), 0};
    for (const auto& [a, b, c, a2, b2, c2] : funcBlocks) {
        if (!r.passed) break;
        uint64_t s1 = hom_size(a, b), s2 = hom_size(b, c), s3 = hom_size(a2, b2);
        func.block(s1 * s2 * s3 * hom_size(b2, c2), [&](uint64_t u) {
            uint32_t g2 = hom_first(b2, c2) + static_cast<uint32_t>(u / (s1 * s2 * s3));
            uint64_t v = u % (s1 * s2 * s3);
            uint32_t f2 = hom_first(a2, b2) + static_cast<uint32_t>(v / (s1 * s2));
            uint64_t w = v % (s1 * s2);
            uint32_t g = hom_first(b, c) + static_cast<uint32_t>(w / s1);
            uint32_t f = hom_first(a, b) + static_cast<uint32_t>(w % s1);
            if (tensor(compose(g, f), compose(g2, f2)) !=
                compose(tensor(g, g2), tensor(f, f2)))
                r.fail("tensor functoriality fails at (" + arrow_desc(*this, f) + ", " +
                       arrow_desc(*this, g) + ") x (" + arrow_desc(*this, f2) + ", " +
                       arrow_desc(*this, g2) + ")");
            ++funcChecks;
        });
    }
    r.count("tensor_functoriality", funcChecks);
    if (!r.passed) return r;

    // symmetry: unit, group law, block sums, naturality
    int64_t symChecks = 0;
    for (uint32_t o = 0; o < nobj && r.passed; ++o) {
        uint32_t n = length(o);
        if (sym(o, FinMap::identity(n)) != identity(o))
            r.fail("symmetry over the identity is not the identity at " + object_name(o));
        for (const FinMap& rho : all_bijections(n)) {
            uint32_t mid = permuted_object(o, rho);
            for (const FinMap& rho2 : all_bijections(n)) {
                if (compose(sym(mid, rho2), sym(o, rho)) !=
                    sym(o, opdcat::compose(rho2, rho))) {
                    r.fail("symmetry group law fails at " + object_name(o) + " with " +
                           rho.str() + " then " + rho2.str());
                    break;
                }
                ++symChecks;
            }
            if (!r.passed) break;
        }
    }
    r.count("symmetry_pairs", symChecks);
    if (!r.passed) return r;
    int64_t blockChecks = 0;
    for (uint32_t a = 0; a < nobj && r.passed; ++a)
        for (uint32_t b = 0; b < nobj; ++b) {
            if (!tensor_defined(a, b)) continue;
            uint32_t ab = tensor_object(a, b);
            bool bad = false;
            for (const FinMap& rho : all_bijections(length(a))) {
                for (const FinMap& tau : all_bijections(length(b))) {
                    if (tensor(sym(a, rho), sym(b, tau)) !=
                        sym(ab, direct_sum({rho, tau}))) {
                        r.fail("symmetry block sum fails at (" + object_name(a) + ", " +
                               object_name(b) + ")");
                        bad = true;
                        break;
                    }
                    ++blockChecks;
                }
                if (bad) break;
            }
            if (bad) break;
        }
    r.count("symmetry_blocks", blockChecks);
    if (!r.passed) return r;
    uint64_t natTotal = 0;
    for (uint32_t f = 0; f < arrow_count(); ++f)
        for (uint32_t g = 0; g < arrow_count(); ++g)
            if (tensor_defined(arrSrc_[f], arrSrc_[g]) &&
                tensor_defined(arrDst_[f], arrDst_[g]))
                ++natTotal;
    int64_t natChecks = 0;
    StridedScan nat{pick_stride(natTotal, budget), 0};
    for (uint32_t f = 0; f < arrow_count() && r.passed; ++f)
        for (uint32_t g = 0; g < arrow_count() && r.passed; ++g) {
            if (!tensor_defined(arrSrc_[f], arrSrc_[g]) ||
                !tensor_defined(arrDst_[f], arrDst_[g]))
                continue;
            nat.block(1, [&](uint64_t) {
                uint32_t srcSwap = sym(tensor_object(arrSrc_[f], arrSrc_[g]),
                                       block_swap(length(arrSrc_[f]), length(arrSrc_[g])));
                uint32_t dstSwap = sym(tensor_object(arrDst_[f], arrDst_[g]),
                                       block_swap(length(arrDst_[f]), length(arrDst_[g])));
                if (compose(dstSwap, tensor(f, g)) != compose(tensor(g, f), srcSwap))
                    r.fail("symmetry naturality fails at (" + arrow_desc(*this, f) +
                           ", " + arrow_desc(*this, g) + ")");
                ++natChecks;
            });
        }
    r.count("symmetry_naturality", natChecks);
    return r;
}

namespace {

/* Composition of envelope arrows: graft each middle operation into the
 * outer one along its fiber, then reorder the inputs of the graft, which
 * come grouped fiber by fiber, into increasing slot order. */
PropArrow envelope_compose(const Operad& O, const PropArrow& g, const PropArrow& f) {
    const FinMap& phi = f.under;
    const FinMap& psi = g.under;
    std::vector<uint32_t> ops;
    for (uint32_t l = 1; l <= psi.cod(); ++l) {
        std::vector<uint32_t> mids = psi.fiber(l);
        std::vector<uint32_t> args;
        std::vector<uint32_t> concat;
        for (uint32_t j : mids) {
            args.push_back(f.ops.at(j - 1));
            for (uint32_t i : phi.fiber(j)) concat.push_back(i);
        }
        uint32_t res = O.gamma(g.ops.at(l - 1), args);
        uint32_t k = static_cast<uint32_t>(concat.size());
        std::vector<uint32_t> pos(phi.dom() + 1, 0);
        for (uint32_t s = 0; s < k; ++s) pos[concat[s]] = s + 1;
        std::vector<uint32_t> sorted = concat;
        std::sort(sorted.begin(), sorted.end());
        std::vector<uint32_t> pi(k);
        for (uint32_t t = 0; t < k; ++t) pi[t] = pos[sorted[t]];
        FinMap reorder(k, k, std::move(pi));
        if (!reorder.is_identity()) res = O.act(res, reorder);
        ops.push_back(res);
    }
    return PropArrow{opdcat::compose(psi, phi), std::move(ops), 0};
}

std::vector<uint32_t> unit_ops(const Operad& O, const std::vector<uint32_t>& word) {
    std::vector<uint32_t> ops;
    for (uint32_t c : word) ops.push_back(O.unit(c));
    return ops;
}

}  // namespace

std::shared_ptr<PropOverF> envelope(const Operad& O, uint32_t tuple_bound) {
    if (O.arity_bound() < tuple_bound)
        throw std::invalid_argument("operad arity bound is below the tuple bound");
    std::vector<std::string> names;
    for (uint32_t c = 0; c < O.color_count(); ++c) names.push_back(O.color_name(c));
    auto E = std::make_shared<PropOverF>(names, tuple_bound);
    uint32_t nobj = E->object_count();
    for (uint32_t a = 0; a < nobj; ++a)
        for (uint32_t b = 0; b < nobj; ++b) {
            const auto& xs = E->word(a);
            const auto& ys = E->word(b);
            for (const FinMap& phi : all_maps(E->length(a), E->length(b))) {
                std::vector<std::vector<uint32_t>> cand(ys.size());
                bool dead = false;
                for (uint32_t i = 0; i < ys.size() && !dead; ++i) {
                    std::vector<uint32_t> w;
                    for (uint32_t j : phi.fiber(i + 1)) w.push_back(xs[j - 1]);
                    cand[i] = O.ops_with(w, ys[i]);
                    dead = cand[i].empty();
                }
                if (dead) continue;
                std::vector<uint32_t> pick(ys.size(), 0);
                while (true) {
                    std::vector<uint32_t> ops;
                    for (uint32_t i = 0; i < ys.size(); ++i) ops.push_back(cand[i][pick[i]]);
                    E->add_arrow(a, b, PropArrow{phi, std::move(ops), 0});
                    size_t i = ys.size();
                    while (i > 0 && ++pick[i - 1] == cand[i - 1].size()) pick[--i] = 0;
                    if (i == 0) break;
                }
            }
        }
    E->seal_homs();
    for (uint32_t o = 0; o < nobj; ++o) {
        uint32_t n = E->length(o);
        E->set_identity(
            o, E->find(o, o, PropArrow{FinMap::identity(n), unit_ops(O, E->word(o)), 0}));
        for (const FinMap& rho : all_bijections(n)) {
            uint32_t p = E->permuted_object(o, rho);
            E->set_sym(o, rho, E->find(o, p, PropArrow{rho, unit_ops(O, E->word(p)), 0}));
        }
    }
    for (uint32_t a = 0; a < nobj; ++a)
        for (uint32_t b = 0; b < nobj; ++b) {
            if (!E->hom_size(a, b)) continue;
            for (uint32_t c = 0; c < nobj; ++c)
                for (uint32_t g = E->hom_first(b, c);
                     g < E->hom_first(b, c) + E->hom_size(b, c); ++g)
                    for (uint32_t f = E->hom_first(a, b);
                         f < E->hom_first(a, b) + E->hom_size(a, b); ++f)
                        E->set_compose(
                            g, f,
                            E->find(a, c, envelope_compose(O, E->arrow(g), E->arrow(f))));
        }
    E->finalize();
    return E;
}

std::shared_ptr<PropOverF> finite_sets_prop(uint32_t bound) {
    auto F = std::make_shared<PropOverF>(std::vector<std::string>{"*"}, bound);
    uint32_t nobj = F->object_count();
    for (uint32_t a = 0; a < nobj; ++a)
        for (uint32_t b = 0; b < nobj; ++b)
            for (const FinMap& phi : all_maps(F->length(a), F->length(b)))
                F->add_arrow(a, b, PropArrow{phi, {}, 0});
    F->seal_homs();
    for (uint32_t o = 0; o < nobj; ++o) {
        uint32_t n = F->length(o);
        F->set_identity(o, F->find(o, o, PropArrow{FinMap::identity(n), {}, 0}));
        for (const FinMap& rho : all_bijections(n))
            F->set_sym(o, rho, F->find(o, F->permuted_object(o, rho), PropArrow{rho, {}, 0}));
    }
    for (uint32_t a = 0; a < nobj; ++a)
        for (uint32_t b = 0; b < nobj; ++b)
            for (uint32_t c = 0; c < nobj; ++c)
                for (uint32_t g = F->hom_first(b, c);
                     g < F->hom_first(b, c) + F->hom_size(b, c); ++g)
                    for (uint32_t f = F->hom_first(a, b);
                         f < F->hom_first(a, b) + F->hom_size(a, b); ++f)
                        F->set_compose(
                            g, f,
                            F->find(a, c,
                                    PropArrow{opdcat::compose(F->arrow(g).under,
                                                              F->arrow(f).under),
                                              {},
                                              0}));
    F->finalize();
    return F;
}

std::shared_ptr<PropOverF> absorbing_extension(const PropOverF& C, uint32_t obj) {
    uint32_t nobj = C.object_count();
    for (uint32_t o = 0; o < nobj; ++o)
        if (o != obj && (C.hom_size(o, obj) || C.hom_size(obj, o)))
            throw std::invalid_argument("object is not isolated");
    if (C.length(obj) != C.tuple_bound())
        throw std::invalid_argument("object must have the maximal length");
    std::map<FinMap, uint32_t> oldOver;
    for (uint32_t f = C.hom_first(obj, obj);
         f < C.hom_first(obj, obj) + C.hom_size(obj, obj); ++f) {
        const FinMap& rho = C.arrow(f).under;
        if (!rho.is_bijective() || !oldOver.emplace(rho, f).second)
            throw std::invalid_argument("endomorphisms must sit once over each permutation");
    }
    std::vector<std::string> names;
    for (uint32_t c = 0; c < C.color_count(); ++c) names.push_back(C.color_name(c));
    auto P = std::make_shared<PropOverF>(names, C.tuple_bound());
    for (uint32_t f = 0; f < C.arrow_count(); ++f)
        P->add_arrow(C.src(f), C.dst(f), C.arrow(f));
    // a parallel absorbing copy: any composite touching it stays in the copy
    for (const auto& [rho, f] : oldOver) P->add_arrow(obj, obj, PropArrow{rho, {}, 1});
    P->seal_homs();
    // old arrows keep their values, so find recovers their new ids
    std::vector<uint32_t> to(C.arrow_count());
    for (uint32_t f = 0; f < C.arrow_count(); ++f)
        to[f] = P->find(C.src(f), C.dst(f), C.arrow(f));
    for (uint32_t o = 0; o < nobj; ++o) {
        P->set_identity(o, to[C.identity(o)]);
        for (const FinMap& rho : all_bijections(C.length(o)))
            P->set_sym(o, rho, to[C.sym(o, rho)]);
    }
    for (uint32_t f = 0; f < C.arrow_count(); ++f)
        for (uint32_t g = 0; g < C.arrow_count(); ++g)
            if (C.dst(f) == C.src(g)) P->set_compose(to[g], to[f], to[C.compose(g, f)]);
    for (uint32_t f = P->hom_first(obj, obj);
         f < P->hom_first(obj, obj) + P->hom_size(obj, obj); ++f)
        for (uint32_t g = P->hom_first(obj, obj);
             g < P->hom_first(obj, obj) + P->hom_size(obj, obj); ++g) {
            if (P->arrow(f).tag == 0 && P->arrow(g).tag == 0) continue;
            FinMap rho = opdcat::compose(P->arrow(g).under, P->arrow(f).under);
            P->set_compose(g, f, P->find(obj, obj, PropArrow{rho, {}, 1}));
        }
    P->finalize();
    return P;
}

std::shared_ptr<PropOverF> absorbing_idempotent_prop() {
    auto C = std::make_shared<PropOverF>(std::vector<std::string>{"x"}, 2);
    uint32_t u = C->unit_object(), x = C->object({0}), xx = C->object({0, 0});
    C->add_arrow(u, u, PropArrow{FinMap(0, 0, {}), {}, 0});
    C->add_arrow(x, x, PropArrow{FinMap::identity(1), {}, 0});
    C->add_arrow(xx, xx, PropArrow{FinMap::identity(2), {}, 0});
    C->add_arrow(xx, xx, PropArrow{FinMap::identity(2), {}, 1});
    C->add_arrow(xx, xx, PropArrow{FinMap(2, 2, {2, 1}), {}, 0});
    C->seal_homs();
    uint32_t idu = C->find(u, u, PropArrow{FinMap(0, 0, {}), {}, 0});
    uint32_t idx = C->find(x, x, PropArrow{FinMap::identity(1), {}, 0});
    uint32_t one = C->find(xx, xx, PropArrow{FinMap::identity(2), {}, 0});
    uint32_t tau = C->find(xx, xx, PropArrow{FinMap::identity(2), {}, 1});
    uint32_t s = C->find(xx, xx, PropArrow{FinMap(2, 2, {2, 1}), {}, 0});
    C->set_identity(u, idu);
    C->set_identity(x, idx);
    C->set_identity(xx, one);
    C->set_sym(u, FinMap(0, 0, {}), idu);
    C->set_sym(x, FinMap::identity(1), idx);
    C->set_sym(xx, FinMap::identity(2), one);
    C->set_sym(xx, FinMap(2, 2, {2, 1}), s);
    C->set_compose(idu, idu, idu);
    C->set_compose(idx, idx, idx);
    for (uint32_t g : {one, tau, s})
        for (uint32_t f : {one, tau, s}) {
            if (g == tau || f == tau)
                C->set_compose(g, f, tau);
            else
                C->set_compose(g, f, g == f ? one : (g == one ? f : g));
        }
    C->finalize();
    return C;
}

UnderlyingOperad underlying_operad(const PropOverF& C) {
    auto O = std::make_shared<Operad>(C.tuple_bound());
    for (uint32_t c = 0; c < C.color_count(); ++c) O->add_color(C.color_name(c));
    std::vector<uint32_t> arrowOf;
    std::vector<uint32_t> opOf(C.arrow_count(), UINT32_MAX);
    for (uint32_t c = 0; c < C.color_count(); ++c) {
        uint32_t tgt = C.object({c});
        for (uint32_t o = 0; o < C.object_count(); ++o)
            for (uint32_t f = C.hom_first(o, tgt);
                 f < C.hom_first(o, tgt) + C.hom_size(o, tgt); ++f) {
                opOf[f] = O->add_op(C.word(o), c, "a" + std::to_string(f));
                arrowOf.push_back(f);
            }
    }
    for (uint32_t c = 0; c < C.color_count(); ++c)
        O->set_unit(c, opOf.at(C.identity(C.object({c}))));
    for (uint32_t q = 0; q < O->op_count(); ++q) {
        for (const auto& ps : O->gamma_tuples(q)) {
            uint32_t t = C.identity(C.unit_object());
            for (uint32_t p : ps) t = C.tensor(t, arrowOf[p]);
            O->set_gamma(q, ps, opOf.at(C.compose(arrowOf[q], t)));
        }
        uint32_t src = C.src(arrowOf[q]);
        for (const FinMap& pi : all_bijections(O->arity(q))) {
            uint32_t shuffled = C.permuted_object(src, pi.inverse());
            uint32_t s = C.sym(shuffled, pi);
            O->set_act(q, pi, opOf.at(C.compose(arrowOf[q], s)));
        }
    }
    O->finalize();
    return UnderlyingOperad{std::move(O), std::move(arrowOf)};
}

OperadMorphism envelope_unit(std::shared_ptr<const Operad> O, const PropOverF& E,
                             const UnderlyingOperad& U) {
    OperadMorphism h;
    h.src = O;
    h.dst = U.operad;
    for (uint32_t c = 0; c < O->color_count(); ++c) h.color.push_back(c);
    std::vector<uint32_t> opOf(E.arrow_count(), UINT32_MAX);
    for (uint32_t p = 0; p < U.arrow.size(); ++p) opOf[U.arrow[p]] = p;
    for (uint32_t p = 0; p < O->op_count(); ++p) {
        uint32_t src = E.object(O->inputs(p));
        uint32_t tgt = E.object({O->output(p)});
        uint32_t f = E.find(src, tgt,
                            PropArrow{FinMap::constant(O->arity(p), 1, 1), {p}, 0});
        h.op.push_back(opOf.at(f));
    }
    return h;
}

CheckReport PropFunctor::validate(const std::string& name, uint64_t budget) const {
    CheckReport r(name);
    if (!src || !dst) {
        r.fail("missing props");
        return r;
    }
    const PropOverF& A = *src;
    const PropOverF& B = *dst;
    if (obj.size() != A.object_count() || arr.size() != A.arrow_count()) {
        r.fail("object or arrow table has the wrong size");
        return r;
    }
    r.count("objects", A.object_count());
    r.count("arrows", A.arrow_count());
    for (uint32_t f = 0; f < A.arrow_count() && r.passed; ++f) {
        if (B.src(arr[f]) != obj[A.src(f)] || B.dst(arr[f]) != obj[A.dst(f)])
            r.fail("image endpoints are wrong at " + arrow_desc(A, f));
        else if (!(B.arrow(arr[f]).under == A.arrow(f).under))
            r.fail("underlying map changes at " + arrow_desc(A, f));
    }
    for (uint32_t o = 0; o < A.object_count() && r.passed; ++o)
        if (arr[A.identity(o)] != B.identity(obj[o]))
            r.fail("identity is not preserved at " + A.object_name(o));
    if (!r.passed) return r;

    uint32_t nobj = A.object_count();
    uint64_t total = 0;
    for (uint32_t a = 0; a < nobj; ++a)
        for (uint32_t b = 0; b < nobj; ++b)
            for (uint32_t c = 0; c < nobj; ++c)
                total += static_cast<uint64_t>(A.hom_size(a, b)) * A.hom_size(b, c);
    int64_t compChecks = 0;
    StridedScan scan{pick_stride(total, budget), 0};
    for (uint32_t a = 0; a < nobj; ++a)
        for (uint32_t b = 0; b < nobj; ++b)
            for (uint32_t c = 0; c < nobj && r.passed; ++c) {
                uint64_t s1 = A.hom_size(a, b);
                scan.block(s1 * A.hom_size(b, c), [&](uint64_t u) {
                    uint32_t g = A.hom_first(b, c) + static_cast<uint32_t>(u / s1);
                    uint32_t f = A.hom_first(a, b) + static_cast<uint32_t>(u % s1);
                    if (arr[A.compose(g, f)] != B.compose(arr[g], arr[f]))
                        r.fail("composition is not preserved at (" + arrow_desc(A, f) +
                               ", " + arrow_desc(A, g) + ")");
                    ++compChecks;
                });
            }
    r.count("composition_checks", compChecks);
    if (!r.passed) return r;

    int64_t tensorChecks = 0;
    for (uint32_t f = 0; f < A.arrow_count() && r.passed; ++f)
        for (uint32_t g = 0; g < A.arrow_count() && r.passed; ++g) {
            if (!A.tensor_defined(A.src(f), A.src(g)) ||
                !A.tensor_defined(A.dst(f), A.dst(g)))
                continue;
            if (arr[A.tensor(f, g)] != B.tensor(arr[f], arr[g]))
                r.fail("tensor is not preserved at (" + arrow_desc(A, f) + ", " +
                       arrow_desc(A, g) + ")");
            ++tensorChecks;
        }
    r.count("tensor_checks", tensorChecks);
    if (!r.passed) return r;

    int64_t symChecks = 0;
    for (uint32_t o = 0; o < nobj && r.passed; ++o)
        for (const FinMap& rho : all_bijections(A.length(o))) {
            if (arr[A.sym(o, rho)] != B.sym(obj[o], rho)) {
                r.fail("symmetry is not preserved at " + A.object_name(o) + " with " +
                       rho.str());
                break;
            }
            ++symChecks;
        }
    r.count("symmetry_checks", symChecks);
    return r;
}

CheckReport check_prop_equivalence(const std::string& name, const PropFunctor& F) {
    CheckReport r = F.validate(name);
    if (!r.passed) return r;
    const PropOverF& A = *F.src;
    const PropOverF& B = *F.dst;
    std::vector<char> hit(B.object_count(), 0);
    for (uint32_t o : F.obj) hit[o] = 1;
    for (uint32_t d = 0; d < B.object_count() && r.passed; ++d) {
        if (hit[d]) continue;
        bool reached = false;
        for (uint32_t o = 0; o < B.object_count() && !reached; ++o)
            if (hit[o] && !iso_arrows(B, o, d).empty()) reached = true;
        if (!reached) r.fail("object " + B.object_name(d) + " misses the image");
    }
    if (!r.passed) return r;
    int64_t homPairs = 0;
    for (uint32_t a = 0; a < A.object_count() && r.passed; ++a)
        for (uint32_t b = 0; b < A.object_count() && r.passed; ++b) {
            std::vector<uint32_t> image;
            for (uint32_t f = A.hom_first(a, b); f < A.hom_first(a, b) + A.hom_size(a, b);
                 ++f)
                image.push_back(F.arr[f]);
            std::sort(image.begin(), image.end());
            uint32_t distinct = static_cast<uint32_t>(
                std::unique(image.begin(), image.end()) - image.begin());
            uint32_t target = B.hom_size(F.obj[a], F.obj[b]);
            if (distinct < A.hom_size(a, b))
                r.fail("functor identifies two arrows at hom(" + A.object_name(a) + ", " +
                       A.object_name(b) + ")");
            else if (distinct != target)
                r.fail("functor reaches " + std::to_string(distinct) + " of " +
                       std::to_string(target) + " arrows at hom(" + A.object_name(a) +
                       ", " + A.object_name(b) + ")");
            ++homPairs;
        }
    r.count("hom_pairs", homPairs);
    return r;
}

PropFunctor envelope_functor(const OperadMorphism& h, std::shared_ptr<const PropOverF> A,
                             std::shared_ptr<const PropOverF> B) {
    if (!h.src || !h.dst) throw std::invalid_argument("missing operads");
    if (A->tuple_bound() != B->tuple_bound())
        throw std::invalid_argument("tuple bounds differ");
    PropFunctor F;
    F.src = A;
    F.dst = B;
    for (uint32_t o = 0; o < A->object_count(); ++o) {
        std::vector<uint32_t> w;
        for (uint32_t c : A->word(o)) w.push_back(h.color.at(c));
        F.obj.push_back(B->object(w));
    }
    for (uint32_t f = 0; f < A->arrow_count(); ++f) {
        const PropArrow& x = A->arrow(f);
        std::vector<uint32_t> ops;
        for (uint32_t q : x.ops) ops.push_back(h.op.at(q));
        F.arr.push_back(B->find(F.obj[A->src(f)], F.obj[A->dst(f)],
                                PropArrow{x.under, std::move(ops), x.tag}));
    }
    return F;
}

namespace {

/* The splitting map underlying both the hereditary condition and the
 * counit: tensor one arrow per target slot and precompose with the
 * symmetry that groups the source slots fiber by fiber. */
uint32_t split_arrow(const PropOverF& C, uint32_t a, const FinMap& phi,
                     const std::vector<uint32_t>& parts) {
    uint32_t t = C.identity(C.unit_object());
    for (uint32_t f : parts) t = C.tensor(t, f);
    return C.compose(t, C.sym(a, monotone_factor(phi).sigma));
}

}  // namespace

PropFunctor counit_functor(std::shared_ptr<const PropOverF> C) {
    UnderlyingOperad U = underlying_operad(*C);
    auto E = envelope(*U.operad, C->tuple_bound());
    PropFunctor F;
    F.src = E;
    F.dst = C;
    for (uint32_t o = 0; o < E->object_count(); ++o) F.obj.push_back(o);
    for (uint32_t f = 0; f < E->arrow_count(); ++f) {
        const PropArrow& x = E->arrow(f);
        std::vector<uint32_t> parts;
        for (uint32_t q : x.ops) parts.push_back(U.arrow[q]);
        F.arr.push_back(split_arrow(*C, E->src(f), x.under, parts));
    }
    return F;
}

CheckReport check_generation(const std::string& name, const PropOverF& C) {
    CheckReport r(name);
    for (uint32_t o = 0; o < C.object_count() && r.passed; ++o) {
        uint32_t t = C.unit_object();
        for (uint32_t c : C.word(o)) t = C.tensor_object(t, C.object({c}));
        if (t != o) r.fail("object " + C.object_name(o) + " is not a tensor of slots");
    }
    r.count("objects", C.object_count());
    if (r.passed) r.note("every object is the tensor of its one-color slots");
    return r;
}

CheckReport check_hereditary(const std::string& name, const PropOverF& C) {
    CheckReport r(name);
    uint32_t nobj = C.object_count();
    uint32_t L = C.tuple_bound();

    // objects by length, and total single-target hom sizes per source length
    std::vector<std::vector<uint32_t>> byLen(L + 1);
    for (uint32_t o = 0; o < nobj; ++o) byLen[C.length(o)].push_back(o);
    std::vector<int64_t> singles(L + 1, 0);
    for (uint32_t o = 0; o < nobj; ++o)
        for (uint32_t c = 0; c < C.color_count(); ++c)
            singles[C.length(o)] += C.hom_size(o, C.object({c}));

    int64_t pairsChecked = 0, mapsChecked = 0, splittings = 0, arrows = 0;
    int64_t idFiberPairs = 0, isoOverId = 0;
    bool totalOk = true, fiberOk = true, idOk = true, isoOk = true;
    std::string firstBad;
    for (uint32_t a = 0; a < nobj; ++a)
        for (uint32_t b = 0; b < nobj; ++b) {
            uint32_t n = C.length(a), m = C.length(b);
            const auto& xs = C.word(a);
            const auto& ys = C.word(b);
            arrows += C.hom_size(a, b);
            std::vector<uint32_t> image;
            for (const FinMap& phi : all_maps(n, m)) {
                ++mapsChecked;
                std::vector<std::vector<uint32_t>> cand(m);
                bool dead = false;
                int64_t prod = 1;
                for (uint32_t i = 0; i < m && !dead; ++i) {
                    std::vector<uint32_t> w;
                    for (uint32_t j : phi.fiber(i + 1)) w.push_back(xs[j - 1]);
                    uint32_t fo = C.object(w);
                    uint32_t ft = C.object({ys[i]});
                    cand[i].clear();
                    for (uint32_t f = C.hom_first(fo, ft);
                         f < C.hom_first(fo, ft) + C.hom_size(fo, ft); ++f)
                        cand[i].push_back(f);
                    dead = cand[i].empty();
                    prod *= static_cast<int64_t>(cand[i].size());
                }
                if (dead) prod = 0;
                int64_t overPhi = 0;
                for (uint32_t f = C.hom_first(a, b);
                     f < C.hom_first(a, b) + C.hom_size(a, b); ++f)
                    if (C.arrow(f).under == phi) ++overPhi;
                if (prod != overPhi) fiberOk = false;
                if (phi.is_identity() && n == m) {
                    ++idFiberPairs;
                    if (prod != overPhi) idOk = false;
                }
                if (!prod) continue;
                splittings += prod;
                std::vector<uint32_t> pick(m, 0);
                while (true) {
                    std::vector<uint32_t> parts;
                    for (uint32_t i = 0; i < m; ++i) parts.push_back(cand[i][pick[i]]);
                    image.push_back(split_arrow(C, a, phi, parts));
                    size_t i = m;
                    while (i > 0 && ++pick[i - 1] == cand[i - 1].size()) pick[--i] = 0;
                    if (i == 0) break;
                }
            }
            ++pairsChecked;
            std::sort(image.begin(), image.end());
            int64_t distinct = std::unique(image.begin(), image.end()) - image.begin();
            if (distinct != static_cast<int64_t>(image.size()) ||
                distinct != C.hom_size(a, b)) {
                totalOk = false;
                if (firstBad.empty()) {
                    if (distinct != static_cast<int64_t>(image.size()))
                        firstBad = "hereditary splittings collide at hom(" +
                                   C.object_name(a) + ", " + C.object_name(b) + ")";
                    else
                        firstBad = "hereditary map reaches " + std::to_string(distinct) +
                                   " of " + std::to_string(C.hom_size(a, b)) +
                                   " arrows at hom(" + C.object_name(a) + ", " +
                                   C.object_name(b) + ")";
                }
            }
            // isomorphisms over the identity against products of color isos
            if (n == m) {
                std::vector<uint32_t> isos = iso_arrows(C, a, b);
                int64_t overId = 0;
                for (uint32_t f : isos)
                    if (C.arrow(f).under.is_identity()) ++overId;
                int64_t prod = 1;
                for (uint32_t i = 0; i < n; ++i)
                    prod *= static_cast<int64_t>(
                        iso_arrows(C, C.object({xs[i]}), C.object({ys[i]})).size());
                isoOverId += overId;
                if (prod != overId) isoOk = false;
            }
        }

    // arrowwise recount: all sources and targets at once, one map at a time
    bool arrowOk = true;
    for (uint32_t n = 0; n <= L && arrowOk; ++n)
        for (uint32_t m = 0; m <= L && arrowOk; ++m)
            for (const FinMap& phi : all_maps(n, m)) {
                int64_t lhs = 1;
                for (uint32_t i = 1; i <= m; ++i)
                    lhs *= singles[static_cast<uint32_t>(phi.fiber(i).size())];
                int64_t rhs = 0;
                for (uint32_t a : byLen[n])
                    for (uint32_t b : byLen[m])
                        for (uint32_t f = C.hom_first(a, b);
                             f < C.hom_first(a, b) + C.hom_size(a, b); ++f)
                            if (C.arrow(f).under == phi) ++rhs;
                if (lhs != rhs) arrowOk = false;
            }

    r.count("pairs", pairsChecked);
    r.count("maps", mapsChecked);
    r.count("splittings", splittings);
    r.count("arrows", arrows);
    r.count("identity_fiber_maps", idFiberPairs);
    r.count("iso_over_identity", isoOverId);
    if (totalOk != fiberOk || totalOk != arrowOk)
        r.fail("splitting routes disagree across the recounts");
    else if (!totalOk)
        r.fail(firstBad);
    else
        r.note("fiberwise and arrowwise recounts agree with the totals");
    r.note(std::string("isomorphisms over identities ") +
           (isoOk ? "split as products" : "do not split as products"));
    r.note(std::string("identity fibers ") +
           (idOk ? "match the slotwise homs" : "break the slotwise homs"));
    return r;
}

CheckReport check_core_free(const std::string& name, const PropOverF& C) {
    CheckReport r(name);
    uint32_t nobj = C.object_count();
    // isomorphisms between single colors, reused across all object pairs
    std::vector<std::vector<std::vector<uint32_t>>> colorIso(
        C.color_count(), std::vector<std::vector<uint32_t>>(C.color_count()));
    for (uint32_t c = 0; c < C.color_count(); ++c)
        for (uint32_t d = 0; d < C.color_count(); ++d)
            colorIso[c][d] = iso_arrows(C, C.object({c}), C.object({d}));

    int64_t pairsChecked = 0, isoTotal = 0, splittings = 0;
    for (uint32_t a = 0; a < nobj; ++a)
        for (uint32_t b = 0; b < nobj && r.passed; ++b) {
            uint32_t n = C.length(a), m = C.length(b);
            std::vector<uint32_t> isos = iso_arrows(C, a, b);
            isoTotal += static_cast<int64_t>(isos.size());
            std::vector<uint32_t> image;
            if (n == m) {
                const auto& xs = C.word(a);
                const auto& ys = C.word(b);
                for (const FinMap& sigma : all_bijections(n)) {
                    FinMap inv = sigma.inverse();
                    std::vector<const std::vector<uint32_t>*> cand(n);
                    bool dead = false;
                    for (uint32_t j = 0; j < n && !dead; ++j) {
                        cand[j] = &colorIso[xs[inv(j + 1) - 1]][ys[j]];
                        dead = cand[j]->empty();
                    }
                    if (dead) continue;
                    std::vector<uint32_t> pick(n, 0);
                    while (true) {
                        std::vector<uint32_t> parts;
                        for (uint32_t j = 0; j < n; ++j) parts.push_back((*cand[j])[pick[j]]);
                        image.push_back(split_arrow(C, a, sigma, parts));
                        ++splittings;
                        size_t j = n;
                        while (j > 0 && ++pick[j - 1] == cand[j - 1]->size()) pick[--j] = 0;
                        if (j == 0) break;
                    }
                }
            }
            std::sort(image.begin(), image.end());
            image.erase(std::unique(image.begin(), image.end()), image.end());
            if (image != isos)
                r.fail("free core map reaches " + std::to_string(image.size()) + " of " +
                       std::to_string(isos.size()) + " isomorphisms at hom(" +
                       C.object_name(a) + ", " + C.object_name(b) + ")");
            ++pairsChecked;
        }
    r.count("pairs", pairsChecked);
    r.count("isomorphisms", isoTotal);
    r.count("splittings", splittings);
    return r;
}

CheckReport check_counit(const std::string& name, std::shared_ptr<const PropOverF> C) {
    CheckReport r(name);
    UnderlyingOperad U = underlying_operad(*C);
    CheckReport ov = U.operad->validate("underlying operad");
    if (!ov.passed) {
        r.fail("the underlying operad breaks: " + ov.witness);
        return r;
    }
    r.count("operations", U.operad->op_count());
    PropFunctor F = counit_functor(C);
    CheckReport fv = F.validate("counit functor");
    r.count("arrows", F.src->arrow_count());
    r.count("composition_checks", fv.get_count("composition_checks"));
    if (!fv.passed) {
        r.fail("the counit is not functorial: " + fv.witness);
        return r;
    }
    const PropOverF& E = *F.src;
    int64_t homPairs = 0;
    for (uint32_t a = 0; a < E.object_count() && r.passed; ++a)
        for (uint32_t b = 0; b < E.object_count() && r.passed; ++b) {
            std::vector<uint32_t> image;
            for (uint32_t f = E.hom_first(a, b); f < E.hom_first(a, b) + E.hom_size(a, b);
                 ++f)
                image.push_back(F.arr[f]);
            std::sort(image.begin(), image.end());
            int64_t distinct = std::unique(image.begin(), image.end()) - image.begin();
            if (distinct != static_cast<int64_t>(image.size()))
                r.fail("counit identifies two arrows at hom(" + C->object_name(a) + ", " +
                       C->object_name(b) + ")");
            else if (distinct != C->hom_size(a, b))
                r.fail("counit reaches " + std::to_string(distinct) + " of " +
                       std::to_string(C->hom_size(a, b)) + " arrows at hom(" +
                       C->object_name(a) + ", " + C->object_name(b) + ")");
            ++homPairs;
        }
    r.count("hom_pairs", homPairs);
    return r;
}

CheckReport check_commutative_envelope(const std::string& name, uint32_t bound) {
    CheckReport r(name);
    auto E = envelope(make_commutative(bound), bound);
    auto F = finite_sets_prop(bound);
    if (E->object_count() != F->object_count()) {
        r.fail("object ladders differ");
        return r;
    }
    uint32_t nobj = E->object_count();
    int64_t arrows = 0;
    for (uint32_t a = 0; a < nobj && r.passed; ++a)
        for (uint32_t b = 0; b < nobj && r.passed; ++b) {
            uint64_t expect = 1;
            for (uint32_t i = 0; i < E->length(a); ++i) expect *= E->length(b);
            if (E->hom_size(a, b) != F->hom_size(a, b) || E->hom_size(a, b) != expect) {
                r.fail("hom(" + std::to_string(E->length(a)) + ", " +
                       std::to_string(E->length(b)) + ") has " +
                       std::to_string(E->hom_size(a, b)) + " arrows against " +
                       std::to_string(expect) + " maps");
                break;
            }
            for (uint32_t f = E->hom_first(a, b);
                 f < E->hom_first(a, b) + E->hom_size(a, b); ++f) {
                if (!(E->arrow(f).under == F->arrow(f).under)) {
                    r.fail("arrow order differs at " + arrow_desc(*E, f));
                    break;
                }
                ++arrows;
            }
        }
    if (!r.passed) return r;
    int64_t compositions = 0;
    for (uint32_t f = 0; f < E->arrow_count() && r.passed; ++f)
        for (uint32_t g = 0; g < E->arrow_count(); ++g) {
            if (E->dst(f) != E->src(g)) continue;
            if (E->compose(g, f) != F->compose(g, f)) {
                r.fail("composition tables disagree at (" + arrow_desc(*E, f) + ", " +
                       arrow_desc(*E, g) + ")");
                break;
            }
            ++compositions;
        }
    for (uint32_t o = 0; o < nobj && r.passed; ++o) {
        if (E->identity(o) != F->identity(o)) r.fail("identity tables disagree");
        for (const FinMap& rho : all_bijections(E->length(o)))
            if (E->sym(o, rho) != F->sym(o, rho)) {
                r.fail("symmetry tables disagree");
                break;
            }
    }
    r.count("arrows", arrows);
    r.count("compositions", compositions);
    return r;
}

std::vector<uint32_t> iso_arrows(const PropOverF& C, uint32_t a, uint32_t b) {
    std::vector<uint32_t> out;
    uint32_t ida = C.identity(a), idb = C.identity(b);
    for (uint32_t f = C.hom_first(a, b); f < C.hom_first(a, b) + C.hom_size(a, b); ++f)
        for (uint32_t g = C.hom_first(b, a); g < C.hom_first(b, a) + C.hom_size(b, a);
             ++g)
            if (C.compose(g, f) == ida && C.compose(f, g) == idb) {
                out.push_back(f);
                break;
            }
    return out;
}

Operad random_free_operad(uint64_t seed, uint32_t arity_bound, bool spare_color) {
    if (arity_bound < 2) throw std::invalid_argument("need arity bound at least 2");
    std::mt19937_64 rng(seed);
    uint32_t colors = 1 + static_cast<uint32_t>(rng() % 2);
    uint32_t count = 1 + static_cast<uint32_t>(rng() % 3);
    std::vector<FreeGenerator> gens;
    for (uint32_t g = 0; g < count; ++g) {
        uint32_t arity = 2;
        if (arity_bound >= 3 && rng() % 2) arity = 3;
        std::vector<uint32_t> in(arity);
        for (auto& c : in) c = static_cast<uint32_t>(rng() % colors);
        uint32_t out = static_cast<uint32_t>(rng() % colors);
        bool constant = std::all_of(in.begin(), in.end(),
                                    [&](uint32_t c) { return c == in[0]; });
        auto stab = FreeGenerator::Stab::trivial;
        if (constant && rng() % 2) stab = FreeGenerator::Stab::full;
        gens.push_back({"g" + std::to_string(g), std::move(in), out, stab, {}});
    }
    return free_operad(colors + (spare_color ? 1 : 0), gens, arity_bound);
}

}  // namespace opdcat
