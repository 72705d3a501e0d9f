#pragma once

// JSON forms of rings, elements and derivations, and textual ring /
// endomorphism names used by the command line.

#include "sigtau/algebra.hpp"
#include "sigtau/derivations.hpp"
#include "sigtau/integer.hpp"
#include "sigtau/number_rings.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sigtau {

using json = nlohmann::json;

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numbers that fit in 64 bits are emitted as JSON numbers, others as strings.
inline json integer_to_json(const Integer& v)
{
    if (v >= Integer(INT64_MIN) && v <= Integer(INT64_MAX)) {
        return static_cast<std::int64_t>(v);
    }
    return v.str();
}

inline Integer integer_from_json(const json& j)
{
    if (j.is_number_integer()) {
        return Integer(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        return parse_integer(j.get<std::string>());
    }
    throw ParseError("expected an integer, got " + j.dump());
}

inline json element_to_json(const Element& e)
{
    json a = json::array();
    for (const auto& c : e.coords()) {
        a.push_back(integer_to_json(c));
    }
    return a;
}

inline Element element_from_json(const json& j)
{
    if (!j.is_array()) {
        throw ParseError("expected an array of integers, got " + j.dump());
    }
    std::vector<Integer> c;
    for (const auto& v : j) {
        c.push_back(integer_from_json(v));
    }
    return Element(std::move(c));
}

inline json spec_to_json(const AlgebraSpec& spec)
{
    json table = json::array();
    for (std::size_t i = 0; i < spec.rank(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < spec.rank(); ++j) {
            row.push_back(element_to_json(spec.product(i, j)));
        }
        table.push_back(row);
    }
    return {{"rank", spec.rank()},
            {"structure_constants", table},
            {"unity", element_to_json(spec.unity())},
            {"labels", spec.labels()}};
}

inline AlgebraSpec spec_from_json(const json& j)
{
    std::vector<std::vector<Element>> table;
    for (const auto& row : j.at("structure_constants")) {
        std::vector<Element> r;
        for (const auto& e : row) {
            r.push_back(element_from_json(e));
        }
        table.push_back(std::move(r));
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        labels = j.at("labels").get<std::vector<std::string>>();
    }
    AlgebraSpec spec(std::move(table), element_from_json(j.at("unity")), std::move(labels));
    if (j.contains("rank") && j.at("rank").get<std::size_t>() != spec.rank()) {
        throw ParseError("declared rank does not match the structure constants");
    }
    return spec;
}

/// One of the three ring families, with named endomorphisms.
class RingHandle {
public:
    using Variant = std::variant<CyclotomicRing, QuadraticRing, BiquadraticRing>;

    explicit RingHandle(Variant r) : ring_(std::move(r)) {}

    /// "cyclotomic:5", "quadratic:-1", "biquadratic:2,3".
    static RingHandle parse(std::string_view text)
    {
        const auto colon = text.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError("ring must look like cyclotomic:P, quadratic:D or biquadratic:M,N; got '" +
                             std::string(text) + "'");
        }
        const std::string_view family = text.substr(0, colon);
        const auto args = parse_integer_list(text.substr(colon + 1));
        auto want = [&](std::size_t count) {
            if (args.size() != count) {
                throw ParseError(std::string(family) + " takes " + std::to_string(count) + " parameter(s)");
            }
        };
        if (family == "cyclotomic") {
            want(1);
            return RingHandle(CyclotomicRing(to_int64(args[0])));
        }
        if (family == "quadratic") {
            want(1);
            return RingHandle(QuadraticRing(to_int64(args[0])));
        }
        if (family == "biquadratic") {
            want(2);
            return RingHandle(BiquadraticRing(to_int64(args[0]), to_int64(args[1])));
        }
        throw ParseError("unknown ring family '" + std::string(family) + "'");
    }

    static RingHandle from_descriptor(const json& d)
    {
        const std::string family = d.at("family").get<std::string>();
        if (family == "cyclotomic") {
            return RingHandle(CyclotomicRing(d.at("p").get<std::int64_t>()));
        }
        if (family == "quadratic") {
            return RingHandle(QuadraticRing(d.at("d").get<std::int64_t>()));
        }
        if (family == "biquadratic") {
            return RingHandle(BiquadraticRing(d.at("m").get<std::int64_t>(), d.at("n").get<std::int64_t>()));
        }
        throw ParseError("unknown ring family '" + family + "'");
    }

    json descriptor() const
    {
        return std::visit(
            [](const auto& r) -> json {
                using R = std::decay_t<decltype(r)>;
                if constexpr (std::is_same_v<R, CyclotomicRing>) {
                    return {{"family", "cyclotomic"}, {"p", r.p()}};
                } else if constexpr (std::is_same_v<R, QuadraticRing>) {
                    return {{"family", "quadratic"}, {"d", r.d()}};
                } else {
                    return {{"family", "biquadratic"}, {"m", r.m()}, {"n", r.n()}};
                }
            },
            ring_);
    }

    const AlgebraSpec& spec() const
    {
        return std::visit([](const auto& r) -> const AlgebraSpec& { return r.spec(); }, ring_);
    }

    std::string name() const
    {
        return std::visit([](const auto& r) { return r.name(); }, ring_);
    }

    const Variant& variant() const noexcept { return ring_; }
    template <class R>
    const R* get() const
    {
        return std::get_if<R>(&ring_);
    }

    /// Names of all endomorphisms in canonical order.
    std::vector<std::string> endomorphism_names() const
    {
        std::vector<std::string> out;
        if (const auto* c = get<CyclotomicRing>()) {
            for (std::int64_t u = 1; u < c->p(); ++u) {
                out.push_back(std::to_string(u));
            }
        } else if (get<QuadraticRing>()) {
            out = {"id", "conj"};
        } else {
            out = {"phi1", "phi2", "phi3", "phi4"};
        }
        return out;
    }

    /// Cyclotomic: exponent u; quadratic: id | conj; biquadratic: phi1..phi4.
    Endomorphism endomorphism(const std::string& name) const
    {
        if (const auto* c = get<CyclotomicRing>()) {
            Integer u;
            try {
                u = parse_integer(name);
            } catch (const std::invalid_argument&) {
                throw ParseError("cyclotomic endomorphisms are named by exponent 1.." + std::to_string(c->p() - 1) +
                                 ", got '" + name + "'");
            }
            if (u < 1 || u >= c->p()) {
                throw ParseError("exponent " + u.str() + " outside 1.." + std::to_string(c->p() - 1));
            }
            return c->endomorphism(to_int64(u));
        }
        if (const auto* q = get<QuadraticRing>()) {
            if (name == "id") {
                return q->identity();
            }
            if (name == "conj") {
                return q->conjugation();
            }
            throw ParseError("quadratic endomorphisms are 'id' and 'conj', got '" + name + "'");
        }
        const auto* b = get<BiquadraticRing>();
        if (name.size() == 4 && name.starts_with("phi") && name[3] >= '1' && name[3] <= '4') {
            return b->phi(name[3] - '0');
        }
        throw ParseError("biquadratic endomorphisms are phi1..phi4, got '" + name + "'");
    }

private:
    Variant ring_;
};

inline json ring_to_json(const RingHandle& ring)
{
    json j = spec_to_json(ring.spec());
    j["kind"] = "ring";
    j["ring"] = ring.descriptor();
    j["endomorphisms"] = ring.endomorphism_names();
    return j;
}

inline json map_to_json(const LinearMap& m)
{
    json a = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        a.push_back(element_to_json(m.image(i)));
    }
    return a;
}

inline LinearMap map_from_json(const json& j)
{
    std::vector<Element> im;
    for (const auto& e : j) {
        im.push_back(element_from_json(e));
    }
    return LinearMap(std::move(im));
}

inline json derivation_to_json(const RingHandle& ring, const std::string& sigma, const std::string& tau,
                               const LinearMap& d)
{
    return {{"kind", "derivation"},
            {"ring", ring.descriptor()},
            {"sigma", sigma},
            {"tau", tau},
            {"labels", ring.spec().labels()},
            {"images", map_to_json(d)}};
}

inline json verdict_to_json(const InnernessVerdict& v)
{
    json j{{"inner", v.inner}};
    j["witness"] = v.witness ? element_to_json(*v.witness) : json(nullptr);
    j["obstruction"] = v.obstruction ? json(*v.obstruction) : json(nullptr);
    return j;
}

} // namespace sigtau
