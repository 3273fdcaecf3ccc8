#pragma once

// Schema-checked reading of JSON job configurations and JSON encodings of the domain types.

#include <holocomp/analytic.hpp>
#include <holocomp/capacity.hpp>
#include <holocomp/carleson.hpp>
#include <holocomp/errors.hpp>
#include <holocomp/symbols.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace holocomp::io {

using json = nlohmann::json;

/// 1-based line of a byte offset in text.
inline int line_at(const std::string& text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

/// Parses config text; malformed JSON raises SchemaError anchored at the offending line.
inline json parse_config_text(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::string what = e.what();
        if (const auto p = what.find("parse error"); p != std::string::npos) what = what.substr(p);
        throw SchemaError("config:" + std::to_string(line_at(text, e.byte == 0 ? 0 : e.byte - 1)) + ": malformed JSON: " + what);
    }
}

/// View of one JSON object in a config. Every key read is recorded; finish() rejects the rest.
/// Error messages carry the source line of the key.
class ConfigNode {
public:
    ConfigNode(const json& value, std::shared_ptr<const std::string> source, std::string path = "", std::size_t offset = 0)
        : j_(&value), src_(std::move(source)), path_(std::move(path)), offset_(offset)
    {
        if (!j_->is_object()) fail_here("expected an object");
    }

    bool has(const std::string& key) const { return j_->contains(key); }

    const json& raw(const std::string& key)
    {
        if (!has(key)) fail_here("missing required key \"" + key + "\"");
        used_.insert(key);
        return (*j_)[key];
    }

    double number(const std::string& key)
    {
        const json& v = raw(key);
        if (!v.is_number()) fail(key, "expected a number");
        return v.get<double>();
    }
    double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

    long long integer(const std::string& key, long long lo = std::numeric_limits<long long>::min())
    {
        const json& v = raw(key);
        if (!v.is_number_integer()) fail(key, "expected an integer");
        const long long x = v.get<long long>();
        if (x < lo) fail(key, "must be at least " + std::to_string(lo));
        return x;
    }
    long long integer_or(const std::string& key, long long fallback, long long lo = std::numeric_limits<long long>::min())
    {
        return has(key) ? integer(key, lo) : fallback;
    }

    std::uint64_t seed_or(const std::string& key, std::uint64_t fallback)
    {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) fail(key, "expected a nonnegative integer");
        return v.get<std::uint64_t>();
    }

    std::string string(const std::string& key)
    {
        const json& v = raw(key);
        if (!v.is_string()) fail(key, "expected a string");
        return v.get<std::string>();
    }
    std::string string_or(const std::string& key, const std::string& fallback) { return has(key) ? string(key) : fallback; }

    bool boolean_or(const std::string& key, bool fallback)
    {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_boolean()) fail(key, "expected true or false");
        return v.get<bool>();
    }

    cplx complex(const std::string& key) { return to_complex(raw(key), key); }
    cplx complex_or(const std::string& key, cplx fallback) { return has(key) ? complex(key) : fallback; }

    std::vector<double> numbers(const std::string& key, std::size_t count = 0)
    {
        const json& v = raw(key);
        if (!v.is_array()) fail(key, "expected an array of numbers");
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number()) fail(key, "expected an array of numbers");
            out.push_back(x.get<double>());
        }
        if (count != 0 && out.size() != count) fail(key, "expected exactly " + std::to_string(count) + " numbers");
        return out;
    }

    std::vector<cplx> complexes(const std::string& key)
    {
        const json& v = raw(key);
        if (!v.is_array()) fail(key, "expected an array of complex numbers");
        std::vector<cplx> out;
        for (const auto& x : v) out.push_back(to_complex(x, key));
        return out;
    }

    ConfigNode child(const std::string& key)
    {
        const json& v = raw(key);
        if (!v.is_object()) fail(key, "expected an object");
        return ConfigNode(v, src_, qualified(key), key_offset(key));
    }

    std::vector<ConfigNode> children(const std::string& key)
    {
        const json& v = raw(key);
        if (!v.is_array()) fail(key, "expected an array of objects");
        std::vector<ConfigNode> out;
        const std::size_t off = key_offset(key);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_object()) fail(key, "expected an array of objects");
            out.emplace_back(v[i], src_, qualified(key) + "[" + std::to_string(i) + "]", off);
        }
        return out;
    }

    /// Rejects keys that were never read.
    void finish() const
    {
        for (const auto& item : j_->items())
            if (!used_.count(item.key()))
                throw SchemaError(prefix(key_offset(item.key())) + "unknown key \"" + qualified(item.key()) + "\"");
    }

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const
    {
        throw SchemaError(prefix(key_offset(key)) + "key \"" + qualified(key) + "\": " + msg);
    }
    [[noreturn]] void fail_here(const std::string& msg) const
    {
        throw SchemaError(prefix(offset_) + (path_.empty() ? "" : "\"" + path_ + "\": ") + msg);
    }

    const json& value() const { return *j_; }

private:
    cplx to_complex(const json& v, const std::string& key) const
    {
        if (v.is_number()) return v.get<double>();
        if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) return {v[0].get<double>(), v[1].get<double>()};
        fail(key, "expected a complex number (a number or [re, im])");
    }

    std::string qualified(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    /// First occurrence of "key": at or after this node's own position.
    std::size_t key_offset(const std::string& key) const
    {
        if (!src_) return offset_;
        const std::string needle = "\"" + key + "\"";
        std::size_t pos = src_->find(needle, offset_);
        while (pos != std::string::npos) {
            std::size_t k = pos + needle.size();
            while (k < src_->size() && std::isspace(static_cast<unsigned char>((*src_)[k]))) ++k;
            if (k < src_->size() && (*src_)[k] == ':') return pos;
            pos = src_->find(needle, pos + 1);
        }
        return offset_;
    }

    std::string prefix(std::size_t offset) const
    {
        return "config:" + std::to_string(src_ ? line_at(*src_, offset) : 1) + ": ";
    }

    const json* j_;
    std::shared_ptr<const std::string> src_;
    std::string path_;
    std::size_t offset_;
    mutable std::set<std::string> used_;
};

// Domain types from config nodes

/// {"type": "identity" | "poly" (coeffs) | "moebius" (alpha) | "blaschke" (zeros, factor)}.
inline DiscSymbol parse_disc_symbol(ConfigNode n)
{
    const std::string type = n.string("type");
    DiscSymbol out = DiscSymbol::identity();
    try {
        if (type == "identity") {
        } else if (type == "poly") {
            out = DiscSymbol::polynomial(n.complexes("coeffs"));
        } else if (type == "moebius") {
            out = DiscSymbol::moebius(n.complex("alpha"));
        } else if (type == "blaschke") {
            out = DiscSymbol::blaschke(n.complexes("zeros"), n.complex_or("factor", 1.0));
        } else {
            n.fail("type", "unknown symbol type \"" + type + "\" (identity, poly, moebius, blaschke)");
        }
    } catch (const DomainError& e) {
        n.fail_here(e.what());
    }
    n.finish();
    return out;
}

/// Rows k of coefficients of z1^k z2^l; rows may differ in length.
inline TaylorGrid2D parse_grid2d(ConfigNode& n, const std::string& key)
{
    const json& v = n.raw(key);
    if (!v.is_array() || v.empty()) n.fail(key, "expected a nonempty array of coefficient rows");
    std::size_t width = 0;
    for (const auto& row : v) {
        if (!row.is_array() || row.empty()) n.fail(key, "expected a nonempty array of coefficient rows");
        width = std::max(width, row.size());
    }
    TaylorGrid2D g(static_cast<int>(v.size()) - 1, static_cast<int>(width) - 1);
    for (std::size_t k = 0; k < v.size(); ++k)
        for (std::size_t l = 0; l < v[k].size(); ++l) {
            const json& c = v[k][l];
            if (c.is_number()) g(static_cast<int>(k), static_cast<int>(l)) = c.get<double>();
            else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number())
                g(static_cast<int>(k), static_cast<int>(l)) = cplx(c[0].get<double>(), c[1].get<double>());
            else n.fail(key, "coefficients must be numbers or [re, im]");
        }
    return g;
}

inline TaylorGrid1D parse_grid1d(ConfigNode& n, const std::string& key)
{
    TaylorGrid1D f{n.complexes(key)};
    if (f.coeffs.empty()) n.fail(key, "expected a nonempty coefficient list");
    return f;
}

/// "phi1"/"phi2" (separated) or "poly_pair": {"p1": rows, "p2": rows}.
inline BidiscSymbol parse_bidisc_symbol(ConfigNode& n)
{
    if (n.has("poly_pair")) {
        if (n.has("phi1") || n.has("phi2")) n.fail("poly_pair", "give either phi1/phi2 or poly_pair, not both");
        ConfigNode p = n.child("poly_pair");
        TaylorGrid2D p1 = parse_grid2d(p, "p1"), p2 = parse_grid2d(p, "p2");
        p.finish();
        try {
            return BidiscSymbol::poly_pair(std::move(p1), std::move(p2));
        } catch (const DomainError& e) {
            n.fail("poly_pair", e.what());
        }
    }
    return BidiscSymbol::separated(parse_disc_symbol(n.child("phi1")), parse_disc_symbol(n.child("phi2")));
}

inline WeightPair parse_weight_pair(ConfigNode& n, const std::string& key)
{
    const auto a = n.numbers(key, 2);
    try {
        return WeightPair(a[0], a[1]);
    } catch (const DomainError& e) {
        n.fail(key, e.what());
    }
}

/// {"zeta": [theta1, theta2], "delta": [d1, d2]}
inline CarlesonBox parse_box(ConfigNode n)
{
    const auto z = n.numbers("zeta", 2), d = n.numbers("delta", 2);
    n.finish();
    CarlesonBox b{z[0], z[1], d[0], d[1]};
    try {
        b.validate();
    } catch (const DomainError& e) {
        n.fail_here(e.what());
    }
    return b;
}

inline BoxUnion parse_boxes(ConfigNode& n, const std::string& key)
{
    BoxUnion u;
    for (auto& c : n.children(key)) u.boxes.push_back(parse_box(c));
    if (u.boxes.empty()) n.fail(key, "at least one box required");
    return u;
}

/// {"a": [alpha1, alpha2], "b": [b1, b2]}
inline Rect parse_rect(ConfigNode n)
{
    const auto a = n.numbers("a", 2), b = n.numbers("b", 2);
    n.finish();
    Rect r{a[0], a[1], b[0], b[1]};
    try {
        r.validate();
    } catch (const DomainError& e) {
        n.fail_here(e.what());
    }
    return r;
}

inline RectUnion parse_rects(ConfigNode& n, const std::string& key)
{
    RectUnion u;
    for (auto& c : n.children(key)) u.rects.push_back(parse_rect(c));
    return u;
}

/// {"type": "power", "p": x} for psi(t) = t^p.
inline std::pair<PsiFunction, json> parse_psi(ConfigNode n)
{
    const std::string type = n.string("type");
    if (type != "power") n.fail("type", "unknown psi type \"" + type + "\" (power)");
    const double p = n.number("p");
    n.finish();
    if (!(p >= 0.0)) n.fail("p", "exponent must be nonnegative");
    return {psi_power(p), json{{"type", "power"}, {"p", p}}};
}

// JSON encodings

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const BidiscPoint& w) { return json::array({to_json(w.z1), to_json(w.z2)}); }

inline json to_json(const McEstimate& e)
{
    return json{{"value", e.value}, {"std_error", e.std_error}, {"hits", e.hits}};
}

inline json to_json(const CarlesonBox& b)
{
    return json{{"zeta", {b.theta1, b.theta2}}, {"delta", {b.delta1, b.delta2}}};
}

inline json to_json(const Rect& r) { return json{{"a", {r.a1, r.a2}}, {"b", {r.b1, r.b2}}}; }

inline json to_json(const RectUnion& u)
{
    json a = json::array();
    for (const auto& r : u.rects) a.push_back(to_json(r));
    return a;
}

inline json to_json(const BoxUnion& u)
{
    json a = json::array();
    for (const auto& b : u.boxes) a.push_back(to_json(b));
    return a;
}

inline json to_json(const EnergyTerms& t)
{
    return json{{"point", t.point}, {"slice1", t.slice1}, {"slice2", t.slice2}, {"mixed", t.mixed}, {"total", t.total()}};
}

inline json to_json(const CapacityResult& r)
{
    return json{{"value", r.value},         {"lower_bound", r.lower_bound}, {"converged", r.converged},
                {"max_violation", r.max_violation}, {"iterations", r.iterations}, {"M", r.M},
                {"cells", r.cells},         {"kernel", to_string(r.kernel)}};
}

} // namespace holocomp::io
