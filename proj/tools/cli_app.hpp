#pragma once

// The sigtau command line. run_cli() is kept separate from main() so the
// test suite can drive it in-process.

#include "sigtau/codes.hpp"
#include "sigtau/conjecture.hpp"
#include "sigtau/derivations.hpp"
#include "sigtau/fixtures.hpp"
#include "sigtau/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef SIGTAU_DATA_DIR
#define SIGTAU_DATA_DIR "data"
#endif

namespace sigtau::cli {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a recomputation disagrees with what was expected.
class CheckFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { table, json, csv };

struct Global {
    Format format = Format::table;
    std::uint64_t seed = 20240917;
    unsigned jobs = 1;
};

/// How the user described a map D.
struct MapInput {
    std::string ring;
    std::string sigma;
    std::string tau;
    std::vector<std::string> gen_images; // generator images, family specific
    std::string full_images;             // "c,c,..;c,c,..;..." one block per basis element
    std::string coeffs;                  // coefficients against the derivation basis
    bool random = false;
};

inline Element parse_element(const AlgebraSpec& spec, const std::string& text)
{
    Element e(parse_integer_list(text));
    if (e.size() != spec.rank()) {
        throw UsageError("element '" + text + "' has " + std::to_string(e.size()) + " coordinates, ring rank is " +
                         std::to_string(spec.rank()));
    }
    return e;
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        out.push_back(cur);
    }
    return out;
}

struct ResolvedMap {
    RingHandle ring;
    std::string sigma_name;
    std::string tau_name;
    Endomorphism sigma;
    Endomorphism tau;
    LinearMap d;
};

inline DerivationSpace derivation_basis(const RingHandle& ring, const Endomorphism& sigma, const Endomorphism& tau)
{
    if (const auto* c = ring.get<CyclotomicRing>()) {
        return cyclotomic_basis(*c, sigma, tau);
    }
    if (const auto* q = ring.get<QuadraticRing>()) {
        return quadratic_basis(*q, sigma, tau);
    }
    return biquadratic_basis(*ring.get<BiquadraticRing>(), sigma, tau);
}

inline ResolvedMap resolve_map(const MapInput& in, const Global& g)
{
    if (in.ring.empty() || in.sigma.empty() || in.tau.empty()) {
        throw UsageError("--ring, --sigma and --tau are required");
    }
    RingHandle ring = RingHandle::parse(in.ring);
    Endomorphism sigma = ring.endomorphism(in.sigma);
    Endomorphism tau = ring.endomorphism(in.tau);
    if (sigma == tau) {
        throw UsageError("sigma and tau must differ");
    }
    const AlgebraSpec& spec = ring.spec();
    const int sources = (!in.gen_images.empty()) + (!in.full_images.empty()) + (!in.coeffs.empty()) + in.random;
    if (sources != 1) {
        throw UsageError("give exactly one of --dgen, --images, --coeffs or --random");
    }
    LinearMap d;
    if (!in.full_images.empty()) {
        std::vector<Element> im;
        for (const auto& part : split(in.full_images, ';')) {
            im.push_back(parse_element(spec, part));
        }
        if (im.size() != spec.rank()) {
            throw UsageError("--images needs " + std::to_string(spec.rank()) + " ';'-separated images");
        }
        d = LinearMap(std::move(im));
    } else if (!in.coeffs.empty() || in.random) {
        const DerivationSpace space = derivation_basis(ring, sigma, tau);
        std::vector<Integer> c;
        if (in.random) {
            std::mt19937_64 rng(g.seed);
            std::uniform_int_distribution<int> dist(-9, 9);
            for (std::size_t i = 0; i < space.basis_maps.size(); ++i) {
                c.emplace_back(dist(rng));
            }
        } else {
            c = parse_integer_list(in.coeffs);
            if (c.size() != space.basis_maps.size()) {
                throw UsageError("--coeffs needs " + std::to_string(space.basis_maps.size()) + " values");
            }
        }
        d = combine(space, c);
    } else {
        std::vector<Element> gens;
        for (const auto& s : in.gen_images) {
            gens.push_back(parse_element(spec, s));
        }
        if (const auto* c = ring.get<CyclotomicRing>()) {
            if (gens.size() != 1) {
                throw UsageError("cyclotomic derivations take one image, D(zeta)");
            }
            d = build_cyclotomic_derivation(*c, sigma, tau, gens[0]);
        } else if (const auto* q = ring.get<QuadraticRing>()) {
            if (gens.size() != 1) {
                throw UsageError("quadratic derivations take one image, D(" + spec.labels()[1] + ")");
            }
            d = build_quadratic_derivation(*q, gens[0]);
        } else {
            const auto* b = ring.get<BiquadraticRing>();
            const auto kind = classify_biquadratic(*b, sigma, tau).kind;
            const std::size_t want = kind == BiquadraticCase::Kind::III ? 2 : 1;
            if (gens.size() != want) {
                throw UsageError(want == 2 ? "this pair takes two images: --dgen D(sqrt m) --dgen D(sqrt n)"
                                           : (kind == BiquadraticCase::Kind::I ? "this pair takes one image, D(sqrt n)"
                                                                               : "this pair takes one image, D(sqrt m)"));
            }
            d = build_biquadratic_derivation(*b, sigma, tau, gens);
        }
    }
    return {std::move(ring), in.sigma, in.tau, std::move(sigma), std::move(tau), std::move(d)};
}

inline void add_map_options(CLI::App* sub, MapInput& in, bool with_full_images = true)
{
    sub->add_option("--ring", in.ring, "cyclotomic:P | quadratic:D | biquadratic:M,N")->required();
    sub->add_option("--sigma", in.sigma, "sigma: exponent u, id|conj, or phi1..phi4")->required();
    sub->add_option("--tau", in.tau, "tau, named like --sigma")->required();
    sub->add_option("--dgen,--dzeta", in.gen_images,
                    "generator image(s) as comma lists: D(zeta); D(sqrt d) or D(theta); "
                    "D(sqrt n), D(sqrt m), or both (m first)");
    if (with_full_images) {
        sub->add_option("--images", in.full_images, "all basis images, ';'-separated comma lists");
    }
    sub->add_option("--coeffs", in.coeffs, "coefficients against the derivation-module basis");
    sub->add_flag("--random", in.random, "random basis coefficients in [-9,9] from --seed");
}

// ------------------------------------------------------------------ output

inline std::string csv_join(const Element& e)
{
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        s += (i ? "," : "") + e[i].str();
    }
    return s;
}

inline void print_map_table(std::ostream& out, const AlgebraSpec& spec, const LinearMap& d)
{
    std::size_t w = 0;
    for (const auto& l : spec.labels()) {
        w = std::max(w, l.size());
    }
    for (std::size_t i = 0; i < spec.rank(); ++i) {
        out << "D(" << spec.labels()[i] << ")" << std::string(w - spec.labels()[i].size(), ' ') << " = "
            << spec.describe(d.image(i)) << "\n";
    }
}

inline std::string verdict_line(const AlgebraSpec& spec, const InnernessVerdict& v)
{
    if (v.inner) {
        return "inner, beta = " + spec.describe(*v.witness);
    }
    return "not inner (" + v.obstruction.value_or("no witness") + ")";
}

inline std::string read_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open '" + path + "'");
    }
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

// -------------------------------------------------------------- commands

inline int cmd_ring(const std::string& ring_text, const Global& g, std::ostream& out)
{
    const RingHandle ring = RingHandle::parse(ring_text);
    const AlgebraSpec& spec = ring.spec();
    switch (g.format) {
    case Format::json:
        out << ring_to_json(ring).dump(2) << "\n";
        break;
    case Format::csv:
        out << "i,j,product\n";
        for (std::size_t i = 0; i < spec.rank(); ++i) {
            for (std::size_t j = 0; j < spec.rank(); ++j) {
                out << i << "," << j << ",\"" << csv_join(spec.product(i, j)) << "\"\n";
            }
        }
        break;
    case Format::table:
        out << ring.name() << "  rank " << spec.rank() << "\n";
        out << "basis:";
        for (const auto& l : spec.labels()) {
            out << " " << l;
        }
        out << "\nproducts:\n";
        for (std::size_t i = 1; i < spec.rank(); ++i) {
            for (std::size_t j = i; j < spec.rank(); ++j) {
                out << "  " << spec.labels()[i] << " * " << spec.labels()[j] << " = " << spec.describe(spec.product(i, j))
                    << "\n";
            }
        }
        out << "endomorphisms:\n";
        for (const auto& name : ring.endomorphism_names()) {
            const Endomorphism e = ring.endomorphism(name);
            out << "  " << name << ":";
            for (std::size_t i = 1; i < spec.rank(); ++i) {
                out << (i > 1 ? "," : "") << " " << spec.labels()[i] << " -> " << spec.describe(e.image(i));
                if (ring.get<CyclotomicRing>()) {
                    break;
                }
            }
            out << "\n";
        }
        break;
    }
    return 0;
}

inline int cmd_derive(const MapInput& in, const Global& g, std::ostream& out)
{
    const ResolvedMap r = resolve_map(in, g);
    const AlgebraSpec& spec = r.ring.spec();
    if (auto bad = derivation_defect(spec, r.d, r.sigma, r.tau)) {
        throw NotADerivation("built map fails the derivation law at " + bad->str());
    }
    switch (g.format) {
    case Format::json:
        out << derivation_to_json(r.ring, r.sigma_name, r.tau_name, r.d).dump(2) << "\n";
        break;
    case Format::csv:
        out << "basis,image\n";
        for (std::size_t i = 0; i < spec.rank(); ++i) {
            out << spec.labels()[i] << ",\"" << csv_join(r.d.image(i)) << "\"\n";
        }
        break;
    case Format::table:
        print_map_table(out, spec, r.d);
        break;
    }
    return 0;
}

struct InnerResults {
    std::map<std::string, InnernessVerdict> by_method;
};

inline InnerResults compute_inner(const ResolvedMap& r, const std::string& method)
{
    const AlgebraSpec& spec = r.ring.spec();
    require_derivation(spec, r.d, r.sigma, r.tau);
    InnerResults res;
    const bool all = method == "all";
    if (all || method == "generic") {
        res.by_method["generic"] = GenericInnernessSolver(spec, r.sigma, r.tau).decide_unchecked(r.d);
    }
    if (all || method == "closed") {
        if (const auto* q = r.ring.get<QuadraticRing>()) {
            res.by_method["closed"] = quadratic_inner(*q, r.sigma, r.tau, r.d);
        } else if (const auto* b = r.ring.get<BiquadraticRing>()) {
            res.by_method["closed"] = biquadratic_inner(*b, r.sigma, r.tau, r.d);
        } else if (!all) {
            throw UsageError("no closed-form criterion for cyclotomic rings; use --method conjectural");
        }
    }
    if (all || method == "conjectural") {
        if (const auto* c = r.ring.get<CyclotomicRing>()) {
            res.by_method["conjectural"] = cyclotomic_inner_conjectural(*c, r.sigma, r.tau, r.d);
        } else if (!all) {
            throw UsageError("the adjugate criterion applies to cyclotomic rings only");
        }
    }
    return res;
}

inline int cmd_inner(const MapInput& in, const std::string& method, const Global& g, std::ostream& out)
{
    const ResolvedMap r = resolve_map(in, g);
    const AlgebraSpec& spec = r.ring.spec();
    const InnerResults res = compute_inner(r, method);
    bool agree = true;
    for (const auto& [name, v] : res.by_method) {
        agree = agree && v.inner == res.by_method.begin()->second.inner;
        if (v.witness && inner_map(spec, r.sigma, r.tau, *v.witness) != r.d) {
            throw CheckFailed(name + " witness does not reproduce D");
        }
    }
    switch (g.format) {
    case Format::json: {
        json j = derivation_to_json(r.ring, r.sigma_name, r.tau_name, r.d);
        j["kind"] = "inner-verdict";
        json v = json::object();
        for (const auto& [name, verdict] : res.by_method) {
            v[name] = verdict_to_json(verdict);
        }
        j["verdicts"] = v;
        j["agree"] = agree;
        out << j.dump(2) << "\n";
        break;
    }
    case Format::csv:
        out << "method,inner,witness,obstruction\n";
        for (const auto& [name, v] : res.by_method) {
            out << name << "," << (v.inner ? "true" : "false") << ",\""
                << (v.witness ? csv_join(*v.witness) : std::string()) << "\",\"" << v.obstruction.value_or("")
                << "\"\n";
        }
        break;
    case Format::table:
        for (const auto& [name, v] : res.by_method) {
            out << std::left << std::setw(12) << name << verdict_line(spec, v) << "\n";
        }
        break;
    }
    if (!agree) {
        throw CheckFailed("innerness deciders disagree");
    }
    return 0;
}

inline json sweep_to_json(const SweepReport& rep)
{
    auto cases_json = [](const std::vector<ConjectureCase>& cs) {
        json a = json::array();
        for (const auto& c : cs) {
            a.push_back({{"p", c.p}, {"u", c.u}, {"w", c.w}, {"det", integer_to_json(c.det)}});
        }
        return a;
    };
    return {{"kind", "sweep-summary"},
            {"range", {{"min", rep.p_min}, {"max", rep.p_max}}},
            {"primes", odd_primes_between(rep.p_min, rep.p_max)},
            {"cases", rep.total()},
            {"failures", cases_json(rep.failures)},
            {"sign_mismatches", cases_json(rep.sign_mismatches)},
            {"seconds", std::round(rep.seconds * 1000.0) / 1000.0}};
}

inline int cmd_sweep(std::int64_t min_p, std::int64_t max_p, const Global& g, std::ostream& out)
{
    const SweepReport rep = sweep(min_p, max_p, g.jobs);
    switch (g.format) {
    case Format::csv:
        out << "p,u,w,det,pass\n";
        for (const auto& c : rep.cases) {
            out << c.p << "," << c.u << "," << c.w << "," << c.det << "," << (c.pass() ? "true" : "false") << "\n";
        }
        break;
    case Format::json:
        out << sweep_to_json(rep).dump(2) << "\n";
        break;
    case Format::table: {
        out << std::left << std::setw(6) << "p" << std::setw(8) << "cases" << std::setw(10) << "failures"
            << "sign-mismatches\n";
        for (std::int64_t p : odd_primes_between(min_p, max_p)) {
            std::size_t n = 0;
            std::size_t f = 0;
            std::size_t s = 0;
            for (const auto& c : rep.cases) {
                if (c.p == p) {
                    ++n;
                    f += !c.pass() && !c.sign_mismatch();
                    s += c.sign_mismatch();
                }
            }
            out << std::setw(6) << p << std::setw(8) << n << std::setw(10) << f << s << "\n";
        }
        out << "total " << rep.total() << " cases, " << rep.failures.size() << " failures, "
            << rep.sign_mismatches.size() << " sign mismatches, " << std::fixed << std::setprecision(2)
            << rep.seconds << " s\n";
        break;
    }
    }
    return rep.failures.empty() && rep.sign_mismatches.empty() ? 0 : 1;
}

struct CodeJob {
    ResolvedMap map;
    std::vector<std::pair<std::string, std::vector<std::size_t>>> subsets;
    std::int64_t q = 2;
};

inline std::vector<CodeReport> run_code_job(const CodeJob& job, std::uint64_t budget, unsigned jobs)
{
    require_derivation(job.map.ring.spec(), job.map.d, job.map.sigma, job.map.tau);
    const IddMatrix b = idd_matrix(job.map.ring.spec(), job.map.d);
    std::vector<CodeReport> rows;
    for (const auto& [label, t] : job.subsets) {
        rows.push_back(code_report(label, b, t, job.q, budget, jobs));
    }
    return rows;
}

inline json code_job_to_json(const CodeJob& job, const std::vector<CodeReport>& rows)
{
    json j = derivation_to_json(job.map.ring, job.map.sigma_name, job.map.tau_name, job.map.d);
    j["kind"] = "code-report";
    j["q"] = job.q;
    json a = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const CodeReport& r = rows[i];
        auto opt = [](const std::optional<std::size_t>& d) { return d ? json(*d) : json(nullptr); };
        a.push_back({{"subset", r.subset},
                     {"indices", job.subsets[i].second},
                     {"n", r.n},
                     {"k", r.k},
                     {"d", opt(r.d)},
                     {"lcd", r.lcd},
                     {"subset_size", r.subset_size},
                     {"rank_dropped", r.rank_dropped()},
                     {"dual", {{"n", r.dual_n}, {"k", r.dual_k}, {"d", opt(r.dual_d)}}}});
    }
    j["rows"] = a;
    return j;
}

inline void print_code_rows(std::ostream& out, const std::vector<CodeReport>& rows, Format f, std::ostream& err)
{
    for (const auto& r : rows) {
        if (r.rank_dropped()) {
            err << "warning: " << r.subset << " has " << r.subset_size << " generators but rank " << r.k
                << " mod q\n";
        }
    }
    if (f == Format::csv) {
        out << code_csv_header() << "\n";
        for (const auto& r : rows) {
            out << r.csv_row() << "\n";
        }
        return;
    }
    out << std::left << std::setw(8) << "subset" << std::setw(14) << "code" << std::setw(10) << "property"
        << "dual\n";
    for (const auto& r : rows) {
        out << std::setw(8) << r.subset << std::setw(14) << r.params() << std::setw(10) << r.property()
            << r.dual_params() << "\n";
    }
}

inline CodeJob p17_job()
{
    const auto f = fixtures::p17_code_example();
    MapInput in;
    in.ring = f.ring.name();
    in.sigma = std::to_string(f.u);
    in.tau = std::to_string(f.w);
    in.gen_images = {csv_join(f.d_zeta)};
    return {resolve_map(in, Global{}), fixtures::p17_subsets(), 2};
}

// ------------------------------------------------------------ round trip

inline void expect(bool ok, const std::string& what)
{
    if (!ok) {
        throw CheckFailed(what);
    }
}

inline ResolvedMap map_from_artifact(const json& j)
{
    RingHandle ring = RingHandle::from_descriptor(j.at("ring"));
    const std::string s = j.at("sigma").get<std::string>();
    const std::string t = j.at("tau").get<std::string>();
    Endomorphism sigma = ring.endomorphism(s);
    Endomorphism tau = ring.endomorphism(t);
    LinearMap d = map_from_json(j.at("images"));
    check_map(ring.spec(), d);
    return {std::move(ring), s, t, std::move(sigma), std::move(tau), std::move(d)};
}

/// Recomputes whatever a JSON artifact claims; returns a one-line summary.
inline std::string check_artifact(const json& j)
{
    const std::string kind = j.value("kind", "");
    if (kind == "ring") {
        const RingHandle ring = RingHandle::from_descriptor(j.at("ring"));
        expect(spec_from_json(j) == ring.spec(), "structure constants differ from the rebuilt ring");
        expect(!ring.spec().first_associativity_failure(), "ring is not associative");
        return "ring " + ring.name() + ": structure constants verified";
    }
    if (kind == "derivation") {
        const ResolvedMap r = map_from_artifact(j);
        if (auto bad = derivation_defect(r.ring.spec(), r.d, r.sigma, r.tau)) {
            throw CheckFailed("not a derivation: " + bad->str());
        }
        return "derivation on " + r.ring.name() + " (" + r.sigma_name + "," + r.tau_name + "): law holds";
    }
    if (kind == "inner-verdict") {
        const ResolvedMap r = map_from_artifact(j);
        for (const auto& [method, v] : j.at("verdicts").items()) {
            const InnernessVerdict now = compute_inner(r, method).by_method.at(method);
            expect(now.inner == v.at("inner").get<bool>(), method + " verdict changed");
            if (!v.at("witness").is_null()) {
                const Element beta = element_from_json(v.at("witness"));
                expect(inner_map(r.ring.spec(), r.sigma, r.tau, beta) == r.d, method + " witness does not give D");
            }
        }
        return "inner verdicts on " + r.ring.name() + ": reproduced";
    }
    if (kind == "sweep-summary") {
        const auto lo = j.at("range").at("min").get<std::int64_t>();
        const auto hi = j.at("range").at("max").get<std::int64_t>();
        const SweepReport rep = sweep(lo, hi, 0);
        expect(rep.total() == j.at("cases").get<std::size_t>(), "case count differs");
        expect(rep.failures.size() == j.at("failures").size(), "failure count differs");
        expect(rep.sign_mismatches.size() == j.at("sign_mismatches").size(), "sign mismatch count differs");
        return "sweep " + std::to_string(lo) + ".." + std::to_string(hi) + ": " + std::to_string(rep.total()) +
               " cases reproduced";
    }
    if (kind == "code-report") {
        CodeJob job{map_from_artifact(j), {}, j.at("q").get<std::int64_t>()};
        for (const auto& row : j.at("rows")) {
            job.subsets.emplace_back(row.at("subset").get<std::string>(),
                                     row.at("indices").get<std::vector<std::size_t>>());
        }
        const auto rows = run_code_job(job, default_distance_budget, 1);
        const json again = code_job_to_json(job, rows);
        expect(again.at("rows") == j.at("rows"), "code parameters differ on recomputation");
        return "code report: " + std::to_string(rows.size()) + " rows reproduced";
    }
    if (kind == "conjecture-matrix") {
        const auto p = j.at("p").get<std::int64_t>();
        const IntMatrix a = build_A(p, j.at("u").get<std::int64_t>(), j.at("w").get<std::int64_t>());
        std::vector<std::vector<Integer>> rows;
        for (const auto& row : j.at("A")) {
            rows.push_back(element_from_json(row).coords());
        }
        expect(IntMatrix::from_rows(rows) == a, "matrix differs");
        expect(det_bareiss(a) == integer_from_json(j.at("det")), "determinant differs");
        return "matrix for p=" + std::to_string(p) + ": entries and determinant reproduced";
    }
    throw UsageError("unrecognised artifact kind '" + kind + "'");
}

inline json conjecture_matrix_json(std::int64_t p, std::int64_t u, std::int64_t w)
{
    const IntMatrix a = build_A(p, u, w);
    json rows = json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        rows.push_back(element_to_json(Element(a.row(i))));
    }
    return {{"kind", "conjecture-matrix"}, {"p", p}, {"u", u}, {"w", w}, {"A", rows},
            {"det", integer_to_json(det_bareiss(a))}};
}

inline int cmd_check(const MapInput& in, const std::string& from_file, const Global& g, std::ostream& out)
{
    if (!from_file.empty()) {
        json j;
        try {
            j = json::parse(read_file(from_file));
        } catch (const json::parse_error& e) {
            throw UsageError("'" + from_file + "' is not valid JSON: " + e.what());
        }
        out << check_artifact(j) << "\n";
        return 0;
    }
    if (in.full_images.empty()) {
        throw UsageError("check needs --images or --from-file");
    }
    const ResolvedMap r = resolve_map(in, g);
    const auto bad = derivation_defect(r.ring.spec(), r.d, r.sigma, r.tau);
    if (g.format == Format::json) {
        json j{{"kind", "derivation-check"}, {"derivation", !bad}};
        j["failure"] = bad ? json(bad->str()) : json(nullptr);
        out << j.dump(2) << "\n";
    } else {
        out << (bad ? "not a derivation: " + bad->str() : std::string("derivation: law holds on all basis pairs"))
            << "\n";
    }
    return bad ? 1 : 0;
}

inline int cmd_code(const MapInput& in, bool example, const std::vector<std::string>& subsets,
                    const std::vector<std::string>& labels, std::int64_t q, std::uint64_t budget, const Global& g,
                    std::ostream& out, std::ostream& err)
{
    auto build = [&]() -> CodeJob {
        if (example) {
            if (!subsets.empty()) {
                throw UsageError("--example already fixes the subsets");
            }
            return p17_job();
        }
        if (subsets.empty()) {
            throw UsageError("give --example or at least one --subset");
        }
        CodeJob j{resolve_map(in, g), {}, q};
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            std::vector<std::size_t> t;
            for (const auto& v : parse_integer_list(subsets[i])) {
                if (v < 0) {
                    throw UsageError("subset indices must be non-negative");
                }
                t.push_back(static_cast<std::size_t>(v));
            }
            j.subsets.emplace_back(i < labels.size() ? labels[i] : "T" + std::to_string(i + 1), std::move(t));
        }
        return j;
    };
    const CodeJob job = build();
    require_prime_modulus(job.q);
    for (const auto& [label, t] : job.subsets) {
        for (std::size_t i : t) {
            if (i >= job.map.ring.spec().rank()) {
                throw UsageError("subset " + label + " index " + std::to_string(i) + " outside 0.." +
                                 std::to_string(job.map.ring.spec().rank() - 1));
            }
        }
    }
    const auto rows = run_code_job(job, budget, g.jobs);
    if (g.format == Format::json) {
        out << code_job_to_json(job, rows).dump(2) << "\n";
    } else {
        print_code_rows(out, rows, g.format, err);
    }
    return 0;
}

inline std::string codes_csv(const std::vector<CodeReport>& rows)
{
    std::ostringstream s;
    s << code_csv_header() << "\n";
    for (const auto& r : rows) {
        s << r.csv_row() << "\n";
    }
    return s.str();
}

inline int cmd_reproduce(const std::string& section, const std::string& golden_dir, const Global& g,
                         std::ostream& out, std::ostream& err)
{
    const bool all = section == "all";
    bool ok = true;
    auto verdict = [&](const std::string& what, bool good) {
        err << (good ? "match    " : "MISMATCH ") << what << "\n";
        ok = ok && good;
    };
    if (all || section == "p5-matrix") {
        const json j = conjecture_matrix_json(5, 1, 2);
        out << j.dump(2) << "\n";
        const json golden = json::parse(read_file(golden_dir + "/paper_p5_matrix.json"));
        verdict("p5-matrix vs paper_p5_matrix.json", j == golden);
    }
    if (all || section == "p5-inner") {
        const auto ex = fixtures::p5_example();
        const LinearMap d = ex.derivation();
        const auto gen = is_inner_generic(ex.ring, ex.sigma(), ex.tau(), d);
        const auto conj = cyclotomic_inner_conjectural(ex.ring, ex.sigma(), ex.tau(), d);
        out << "p=5 sigma:zeta->zeta tau:zeta->zeta^2 D(zeta)=zeta\n";
        out << "  generic      " << verdict_line(ex.ring.spec(), gen) << "\n";
        out << "  conjectural  " << verdict_line(ex.ring.spec(), conj) << "\n";
        verdict("p5-inner: both deciders report not inner", !gen.inner && !conj.inner);
    }
    if (all || section == "codes") {
        const auto rows = run_code_job(p17_job(), default_distance_budget, g.jobs);
        const std::string text = codes_csv(rows);
        out << text;
        verdict("codes vs paper_s17_codes.csv", text == read_file(golden_dir + "/paper_s17_codes.csv"));
    }
    if (all || section == "sweep") {
        const SweepReport rep = sweep(3, 49, g.jobs);
        out << sweep_to_json(rep).dump(2) << "\n";
        verdict("sweep p<50: det(A) = p in all " + std::to_string(rep.total()) + " cases",
                rep.failures.empty() && rep.sign_mismatches.empty());
    }
    return ok ? 0 : 1;
}

// ------------------------------------------------------------------- entry

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Exact (sigma,tau)-derivations of number rings, innerness, determinant sweeps and derived codes"};
    app.require_subcommand(1);
    app.fallthrough();

    Global g;
    std::string format = "table";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--seed", g.seed, "seed for --random");
    app.add_option("--jobs", g.jobs, "worker threads for sweep and distance enumeration (0 = all cores)");

    std::string ring_text;
    auto* ring = app.add_subcommand("ring", "print a ring's basis, structure constants and endomorphisms");
    ring->add_option("--ring", ring_text, "cyclotomic:P | quadratic:D | biquadratic:M,N")->required();

    MapInput derive_in;
    auto* derive = app.add_subcommand("derive", "build a (sigma,tau)-derivation and print its basis images");
    add_map_options(derive, derive_in, false);

    MapInput check_in;
    std::string from_file;
    auto* check = app.add_subcommand("check", "test the derivation law, or re-verify a JSON artifact");
    check->add_option("--ring", check_in.ring, "ring");
    check->add_option("--sigma", check_in.sigma, "sigma");
    check->add_option("--tau", check_in.tau, "tau");
    check->add_option("--images", check_in.full_images, "all basis images, ';'-separated comma lists");
    check->add_option("--from-file", from_file, "JSON produced by this tool");

    MapInput inner_in;
    std::string method = "all";
    auto* inner = app.add_subcommand("inner", "decide whether a derivation is inner");
    add_map_options(inner, inner_in);
    inner->add_option("--method", method, "decider")->check(CLI::IsMember({"all", "generic", "closed", "conjectural"}));

    std::int64_t min_p = 3;
    std::int64_t max_p = 49;
    bool extended = false;
    auto* sw = app.add_subcommand("sweep", "det(A) for every odd prime in range and every ordered pair");
    sw->add_option("--min-p", min_p, "smallest prime");
    auto* max_opt = sw->add_option("--max-p", max_p, "largest p (inclusive)");
    sw->add_flag("--extended", extended, "all odd primes below 100");

    MapInput code_in;
    bool example = false;
    std::vector<std::string> subsets;
    std::vector<std::string> labels;
    std::int64_t q = 2;
    std::uint64_t budget = default_distance_budget;
    auto* code = app.add_subcommand("code", "linear codes from derivation images reduced mod q");
    code->add_option("--ring", code_in.ring, "ring");
    code->add_option("--sigma", code_in.sigma, "sigma");
    code->add_option("--tau", code_in.tau, "tau");
    code->add_option("--dgen,--dzeta", code_in.gen_images, "generator image(s)");
    code->add_option("--images", code_in.full_images, "all basis images");
    code->add_option("--coeffs", code_in.coeffs, "basis coefficients");
    code->add_option("--subset", subsets, "basis positions j selecting rows D(a_j), comma list; repeatable");
    code->add_option("--label", labels, "label per --subset");
    code->add_option("--q", q, "prime modulus");
    code->add_option("--budget", budget, "maximum codewords enumerated per distance");
    code->add_flag("--example", example, "p=17 setup with its thirteen subsets S1..S13");

    std::string section = "all";
    std::string golden_dir = SIGTAU_DATA_DIR;
    auto* repro = app.add_subcommand("reproduce-paper", "recompute the worked examples and diff the golden files");
    repro->add_option("--section", section, "which example")
        ->check(CLI::IsMember({"all", "p5-matrix", "p5-inner", "codes", "sweep"}));
    repro->add_option("--golden-dir", golden_dir, "directory holding the golden files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }
    g.format = format == "json" ? Format::json : (format == "csv" ? Format::csv : Format::table);

    try {
        if (*ring) {
            return cmd_ring(ring_text, g, out);
        }
        if (*derive) {
            return cmd_derive(derive_in, g, out);
        }
        if (*check) {
            return cmd_check(check_in, from_file, g, out);
        }
        if (*inner) {
            return cmd_inner(inner_in, method, g, out);
        }
        if (*sw) {
            if (extended && max_opt->count() == 0) {
                max_p = 99;
            }
            return cmd_sweep(min_p, max_p, g, out);
        }
        if (*code) {
            return cmd_code(code_in, example, subsets, labels, q, budget, g, out, err);
        }
        if (*repro) {
            return cmd_reproduce(section, golden_dir, g, out, err);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidRing& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidModulus& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidEndomorphism& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionMismatch& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace sigtau::cli
