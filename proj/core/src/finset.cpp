#include "opdcat/finset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace opdcat {

// ---------------------------------------------------------------- FinMap

FinMap::FinMap(uint32_t dom, uint32_t cod, std::vector<uint32_t> values)
    : dom_(dom), cod_(cod), values_(std::move(values)) {
    if (values_.size() != dom_)
        throw std::invalid_argument("FinMap: value list has wrong length");
    for (uint32_t v : values_)
        if (v < 1 || v > cod_)
            throw std::invalid_argument("FinMap: value out of range");
}

FinMap FinMap::identity(uint32_t n) {
    std::vector<uint32_t> v(n);
    std::iota(v.begin(), v.end(), 1u);
    return FinMap(n, n, std::move(v));
}

FinMap FinMap::constant(uint32_t dom, uint32_t cod, uint32_t value) {
    return FinMap(dom, cod, std::vector<uint32_t>(dom, value));
}

uint32_t FinMap::operator()(uint32_t i) const {
    if (i < 1 || i > dom_)
        throw std::out_of_range("FinMap: argument out of range");
    return values_[i - 1];
}

bool FinMap::is_injective() const {
    std::vector<bool> seen(cod_ + 1, false);
    for (uint32_t v : values_) {
        if (seen[v])
            return false;
        seen[v] = true;
    }
    return true;
}

bool FinMap::is_surjective() const {
    std::vector<bool> seen(cod_ + 1, false);
    for (uint32_t v : values_)
        seen[v] = true;
    for (uint32_t j = 1; j <= cod_; ++j)
        if (!seen[j])
            return false;
    return true;
}

bool FinMap::is_bijective() const { return dom_ == cod_ && is_injective(); }

bool FinMap::is_monotone() const {
    for (size_t i = 1; i < values_.size(); ++i)
        if (values_[i - 1] > values_[i])
            return false;
    return true;
}

bool FinMap::is_strictly_monotone() const {
    for (size_t i = 1; i < values_.size(); ++i)
        if (values_[i - 1] >= values_[i])
            return false;
    return true;
}

bool FinMap::is_identity() const {
    if (dom_ != cod_)
        return false;
    for (uint32_t i = 0; i < dom_; ++i)
        if (values_[i] != i + 1)
            return false;
    return true;
}

std::vector<uint32_t> FinMap::fiber(uint32_t j) const {
    std::vector<uint32_t> out;
    for (uint32_t i = 1; i <= dom_; ++i)
        if (values_[i - 1] == j)
            out.push_back(i);
    return out;
}

FinMap FinMap::inverse() const {
    if (!is_bijective())
        throw std::logic_error("FinMap::inverse: not bijective");
    std::vector<uint32_t> v(dom_);
    for (uint32_t i = 1; i <= dom_; ++i)
        v[values_[i - 1] - 1] = i;
    return FinMap(dom_, dom_, std::move(v));
}

std::string FinMap::str() const {
    std::ostringstream os;
    os << dom_ << " -> " << cod_ << " : [";
    for (size_t i = 0; i < values_.size(); ++i)
        os << (i ? "," : "") << values_[i];
    os << "]";
    return os.str();
}

bool FinMap::operator<(const FinMap& o) const {
    return std::tie(dom_, cod_, values_) < std::tie(o.dom_, o.cod_, o.values_);
}

// shared by FinMap::parse and PointedMap::parse: "n->m:[v1,...,vn]",
// whitespace anywhere
static void parse_arrow_text(const std::string& text, uint32_t& dom, uint32_t& cod,
                             std::vector<uint32_t>& values) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    auto arrow = s.find("->");
    auto colon = s.find(':', arrow == std::string::npos ? 0 : arrow + 2);
    if (arrow == std::string::npos || colon == std::string::npos)
        throw std::invalid_argument("map parse: want \"n->m:[v1,...,vn]\", got '" + text + "'");
    auto num = [&text](const std::string& part) -> uint32_t {
        try {
            size_t used = 0;
            long v = std::stol(part, &used);
            if (used != part.size() || v < 0 || v > 1000000)
                throw std::invalid_argument("");
            return static_cast<uint32_t>(v);
        } catch (...) {
            throw std::invalid_argument("map parse: bad number in '" + text + "'");
        }
    };
    dom = num(s.substr(0, arrow));
    cod = num(s.substr(arrow + 2, colon - arrow - 2));
    std::string list = s.substr(colon + 1);
    if (list.size() < 2 || list.front() != '[' || list.back() != ']')
        throw std::invalid_argument("map parse: missing [..] in '" + text + "'");
    list = list.substr(1, list.size() - 2);
    values.clear();
    if (!list.empty()) {
        std::stringstream ss(list);
        std::string item;
        while (std::getline(ss, item, ','))
            values.push_back(num(item));
    }
    if (values.size() != dom)
        throw std::invalid_argument("map parse: expected " + std::to_string(dom) +
                                    " values in '" + text + "'");
}

FinMap FinMap::parse(const std::string& text) {
    uint32_t dom, cod;
    std::vector<uint32_t> values;
    parse_arrow_text(text, dom, cod, values);
    return FinMap(dom, cod, std::move(values));
}

FinMap compose(const FinMap& g, const FinMap& f) {
    if (f.cod() != g.dom())
        throw std::logic_error("compose(FinMap): domains do not match");
    std::vector<uint32_t> v(f.dom());
    for (uint32_t i = 1; i <= f.dom(); ++i)
        v[i - 1] = g(f(i));
    return FinMap(f.dom(), g.cod(), std::move(v));
}

Pullback pullback(const FinMap& f, const FinMap& g) {
    if (f.cod() != g.cod())
        throw std::logic_error("pullback: maps must share a codomain");
    std::vector<uint32_t> lv, rv;
    for (uint32_t i = 1; i <= f.dom(); ++i)
        for (uint32_t j = 1; j <= g.dom(); ++j)
            if (f(i) == g(j)) {
                lv.push_back(i);
                rv.push_back(j);
            }
    uint32_t k = static_cast<uint32_t>(lv.size());
    return Pullback{FinMap(k, f.dom(), std::move(lv)), FinMap(k, g.dom(), std::move(rv))};
}

// ------------------------------------------------------------ PointedMap

PointedMap::PointedMap(uint32_t dom, uint32_t cod, std::vector<uint32_t> values)
    : dom_(dom), cod_(cod), values_(std::move(values)) {
    if (values_.size() != dom_)
        throw std::invalid_argument("PointedMap: value list has wrong length");
    for (uint32_t v : values_)
        if (v > cod_)
            throw std::invalid_argument("PointedMap: value out of range");
}

PointedMap PointedMap::identity(uint32_t n) {
    std::vector<uint32_t> v(n);
    std::iota(v.begin(), v.end(), 1u);
    return PointedMap(n, n, std::move(v));
}

PointedMap PointedMap::rho(uint32_t n, uint32_t i) {
    if (i < 1 || i > n)
        throw std::invalid_argument("rho: index out of range");
    std::vector<uint32_t> v(n, 0u);
    v[i - 1] = 1;
    return PointedMap(n, 1, std::move(v));
}

uint32_t PointedMap::operator()(uint32_t i) const {
    if (i == 0)
        return 0;
    if (i > dom_)
        throw std::out_of_range("PointedMap: argument out of range");
    return values_[i - 1];
}

bool PointedMap::is_inert() const {
    std::vector<bool> seen(cod_ + 1, false);
    uint32_t hits = 0;
    for (uint32_t v : values_) {
        if (v == 0)
            continue;
        if (seen[v])
            return false;
        seen[v] = true;
        ++hits;
    }
    return hits == cod_;
}

bool PointedMap::is_active() const {
    for (uint32_t v : values_)
        if (v == 0)
            return false;
    return true;
}

bool PointedMap::is_identity() const {
    if (dom_ != cod_)
        return false;
    for (uint32_t i = 0; i < dom_; ++i)
        if (values_[i] != i + 1)
            return false;
    return true;
}

std::string PointedMap::str() const {
    std::ostringstream os;
    os << dom_ << "->" << cod_ << ":[";
    for (size_t i = 0; i < values_.size(); ++i)
        os << (i ? "," : "") << values_[i];
    os << "]";
    return os.str();
}

PointedMap PointedMap::parse(const std::string& text) {
    uint32_t dom, cod;
    std::vector<uint32_t> values;
    parse_arrow_text(text, dom, cod, values);
    return PointedMap(dom, cod, std::move(values));
}

bool PointedMap::operator<(const PointedMap& o) const {
    return std::tie(dom_, cod_, values_) < std::tie(o.dom_, o.cod_, o.values_);
}

PointedMap compose(const PointedMap& g, const PointedMap& f) {
    if (f.cod() != g.dom())
        throw std::logic_error("compose(PointedMap): domains do not match");
    std::vector<uint32_t> v(f.dom());
    for (uint32_t i = 1; i <= f.dom(); ++i)
        v[i - 1] = g(f(i));
    return PointedMap(f.dom(), g.cod(), std::move(v));
}

PointedFactorization factor_pointed(const PointedMap& phi) {
    std::vector<uint32_t> kept;  // elements not sent to the basepoint, in order
    for (uint32_t i = 1; i <= phi.dom(); ++i)
        if (phi(i) != 0)
            kept.push_back(i);
    uint32_t k = static_cast<uint32_t>(kept.size());
    std::vector<uint32_t> iv(phi.dom(), 0u), av(k);
    for (uint32_t t = 0; t < k; ++t) {
        iv[kept[t] - 1] = t + 1;
        av[t] = phi(kept[t]);
    }
    return PointedFactorization{PointedMap(phi.dom(), k, std::move(iv)),
                                PointedMap(k, phi.cod(), std::move(av))};
}

// ------------------------------------------------------------------ Span

Span::Span(FinMap back, FinMap fwd) : back_(std::move(back)), fwd_(std::move(fwd)) {
    if (back_.dom() != fwd_.dom())
        throw std::invalid_argument("Span: legs must share a domain");
    if (!back_.is_strictly_monotone())
        throw std::invalid_argument("Span: back leg must be strictly increasing");
}

Span Span::identity(uint32_t n) { return Span(FinMap::identity(n), FinMap::identity(n)); }

Span Span::rho(uint32_t n, uint32_t i) {
    return Span(FinMap(1, n, {i}), FinMap(1, 1, {1}));
}

bool Span::is_inert() const { return fwd_.is_bijective(); }

bool Span::is_active() const { return back_.is_identity(); }

bool Span::is_identity() const { return back_.is_identity() && fwd_.is_identity(); }

std::string Span::str() const {
    std::ostringstream os;
    auto list = [&os](const std::vector<uint32_t>& v) {
        os << "[";
        for (size_t i = 0; i < v.size(); ++i)
            os << (i ? "," : "") << v[i];
        os << "]";
    };
    os << src() << " <-";
    list(back_.values());
    os << "- " << mid() << " -";
    list(fwd_.values());
    os << "-> " << dst();
    return os.str();
}

bool Span::operator<(const Span& o) const {
    auto key = [](const Span& s) { return std::make_tuple(s.src(), s.dst(), s.back_, s.fwd_); };
    return key(*this) < key(o);
}

Span compose(const Span& t, const Span& s) {
    if (s.dst() != t.src())
        throw std::logic_error("compose(Span): spans do not match");
    Pullback p = pullback(s.fwd(), t.back());
    FinMap back = compose(s.back(), p.left);
    FinMap fwd = compose(t.fwd(), p.right);
    // the pullback is listed lexicographically and t.back is injective, so
    // the composite back leg is automatically strictly increasing
    if (!back.is_strictly_monotone())
        throw std::logic_error("compose(Span): canonical form violated");
    return Span(std::move(back), std::move(fwd));
}

SpanFactorization factor_span(const Span& s) {
    uint32_t x = s.mid();
    Span inert(s.back(), FinMap::identity(x));
    Span active(FinMap::identity(x), s.fwd());
    return SpanFactorization{inert, active};
}

Span to_span(const PointedMap& phi) {
    std::vector<uint32_t> bv, fv;
    for (uint32_t i = 1; i <= phi.dom(); ++i)
        if (phi(i) != 0) {
            bv.push_back(i);
            fv.push_back(phi(i));
        }
    uint32_t x = static_cast<uint32_t>(bv.size());
    return Span(FinMap(x, phi.dom(), std::move(bv)), FinMap(x, phi.cod(), std::move(fv)));
}

PointedMap to_pointed(const Span& s) {
    std::vector<uint32_t> v(s.src(), 0u);
    for (uint32_t t = 1; t <= s.mid(); ++t)
        v[s.back()(t) - 1] = s.fwd()(t);
    return PointedMap(s.src(), s.dst(), std::move(v));
}

// -------------------------------------------------- monotone factorization

MonotoneFibreFactorization monotone_factor(const FinMap& f) {
    uint32_t n = f.dom(), m = f.cod();
    std::vector<uint32_t> fibre_size(m + 1, 0u);
    for (uint32_t i = 1; i <= n; ++i)
        ++fibre_size[f(i)];
    std::vector<uint32_t> start(m + 2, 0u);
    for (uint32_t j = 1; j <= m; ++j)
        start[j + 1] = start[j] + fibre_size[j];
    std::vector<uint32_t> lv(n), sv(n), placed(m + 1, 0u);
    for (uint32_t j = 1; j <= m; ++j)
        for (uint32_t t = start[j]; t < start[j + 1]; ++t)
            lv[t] = j;
    for (uint32_t i = 1; i <= n; ++i) {
        uint32_t j = f(i);
        sv[i - 1] = start[j] + (placed[j]++) + 1;
    }
    return MonotoneFibreFactorization{FinMap(n, n, std::move(sv)), FinMap(n, m, std::move(lv))};
}

// ----------------------------------------------------------- enumerators

std::vector<FinMap> all_maps(uint32_t dom, uint32_t cod) {
    std::vector<FinMap> out;
    if (dom == 0) {
        out.push_back(FinMap(0, cod, {}));
        return out;
    }
    if (cod == 0)
        return out;
    std::vector<uint32_t> v(dom, 1u);
    while (true) {
        out.push_back(FinMap(dom, cod, v));
        uint32_t i = dom;
        while (i > 0 && v[i - 1] == cod)
            v[--i] = 1;
        if (i == 0)
            break;
        ++v[i - 1];
    }
    return out;
}

std::vector<FinMap> all_injections(uint32_t dom, uint32_t cod) {
    std::vector<FinMap> out;
    for (const FinMap& f : all_maps(dom, cod))
        if (f.is_injective())
            out.push_back(f);
    return out;
}

std::vector<FinMap> all_bijections(uint32_t n) { return all_injections(n, n); }

std::vector<FinMap> all_monotone_maps(uint32_t dom, uint32_t cod) {
    std::vector<FinMap> out;
    for (const FinMap& f : all_maps(dom, cod))
        if (f.is_monotone())
            out.push_back(f);
    return out;
}

std::vector<PointedMap> all_pointed_maps(uint32_t dom, uint32_t cod) {
    std::vector<PointedMap> out;
    if (dom == 0) {
        out.push_back(PointedMap(0, cod, {}));
        return out;
    }
    std::vector<uint32_t> v(dom, 0u);
    while (true) {
        out.push_back(PointedMap(dom, cod, v));
        uint32_t i = dom;
        while (i > 0 && v[i - 1] == cod)
            v[--i] = 0;
        if (i == 0)
            break;
        ++v[i - 1];
    }
    return out;
}

std::vector<Span> all_spans(uint32_t src, uint32_t dst) {
    std::vector<Span> out;
    for (uint32_t x = 0; x <= src; ++x) {
        std::vector<FinMap> backs;
        for (const FinMap& b : all_maps(x, src))
            if (b.is_strictly_monotone())
                backs.push_back(b);
        for (const FinMap& b : backs)
            for (const FinMap& f : all_maps(x, dst))
                out.push_back(Span(b, f));
    }
    return out;
}

}  // namespace opdcat
