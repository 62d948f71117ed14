#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "exchlab/error.hpp"
#include "exchlab/experiment.hpp"

namespace exchlab {

const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names{
        "definetti_roundtrip", "decomposition_roundtrip", "bound_sweep",
        "swallow_uniformity",  "inheritance",             "exchangeability_of_conditioning",
    };
    return names;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw ConfigError("config error at '" + path + "': " + what);
}

std::string join(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

void reject_unknown(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed)
{
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items())
        if (!ok.count(key))
            fail(join(path, key), "unknown field");
}

std::uint64_t uint_value(const Json& v, const std::string& p, std::uint64_t min = 0,
                         std::uint64_t max = std::numeric_limits<std::uint64_t>::max())
{
    if (!v.is_number_integer())
        fail(p, "expected a non-negative integer");
    if (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)
        fail(p, "must be non-negative");
    const auto u = v.get<std::uint64_t>();
    if (u < min || u > max)
        fail(p, "must lie in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
    return u;
}

std::string enum_value(const Json& v, const std::string& p, std::initializer_list<const char*> allowed)
{
    if (!v.is_string())
        fail(p, "expected a string");
    const auto s = v.get<std::string>();
    std::string options;
    for (const char* a : allowed) {
        if (s == a)
            return s;
        options += options.empty() ? a : std::string(", ") + a;
    }
    fail(p, "unknown value '" + s + "' (expected one of: " + options + ")");
}

std::uint64_t read_uint(const Json& obj, const std::string& key, const std::string& path,
                        std::optional<std::uint64_t> fallback, std::uint64_t min = 0,
                        std::uint64_t max = std::numeric_limits<std::uint64_t>::max())
{
    const auto p = join(path, key);
    if (!obj.contains(key)) {
        if (!fallback)
            fail(p, "required field missing");
        return *fallback;
    }
    return uint_value(obj.at(key), p, min, max);
}

double read_double(const Json& obj, const std::string& key, const std::string& path, std::optional<double> fallback,
                   double min, double max)
{
    const auto p = join(path, key);
    if (!obj.contains(key)) {
        if (!fallback)
            fail(p, "required field missing");
        return *fallback;
    }
    const Json& v = obj.at(key);
    if (!v.is_number())
        fail(p, "expected a number");
    const double d = v.get<double>();
    if (!(d >= min && d <= max))
        fail(p, "must lie in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
    return d;
}

std::string read_enum(const Json& obj, const std::string& key, const std::string& path, std::optional<std::string> fallback,
                      std::initializer_list<const char*> allowed)
{
    const auto p = join(path, key);
    if (!obj.contains(key)) {
        if (!fallback)
            fail(p, "required field missing");
        return *fallback;
    }
    return enum_value(obj.at(key), p, allowed);
}

const Json& read_array(const Json& obj, const std::string& key, const std::string& path)
{
    if (!obj.at(key).is_array())
        fail(join(path, key), "expected an array");
    return obj.at(key);
}

Json params_definetti(const Json& in, const std::string& path)
{
    reject_unknown(in, path, {"source", "N", "polya_counts", "urn_mixture"});
    Json out;
    out["source"] = read_enum(in, "source", path, "polya", {"polya", "urn_mixture", "triangle"});
    const auto N = read_uint(in, "N", path, 6, 1, 16);
    out["N"] = N;
    Json counts = Json::array({1, 1});
    if (in.contains("polya_counts")) {
        const auto& a = read_array(in, "polya_counts", path);
        if (a.size() != 2)
            fail(join(path, "polya_counts"), "binary source needs exactly 2 colour counts");
        counts = Json::array();
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const auto k = uint_value(a[i], index(join(path, "polya_counts"), i));
            total += k;
            counts.push_back(k);
        }
        if (total == 0)
            fail(join(path, "polya_counts"), "all initial counts are zero");
    }
    out["polya_counts"] = counts;
    Json mix = Json::array({Json{{"ones", 1}, {"weight", 0.5}}, Json{{"ones", N > 1 ? N - 1 : 1}, {"weight", 0.5}}});
    if (in.contains("urn_mixture")) {
        const auto& a = read_array(in, "urn_mixture", path);
        if (a.empty())
            fail(join(path, "urn_mixture"), "needs at least one component");
        mix = Json::array();
        double total = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const auto p = index(join(path, "urn_mixture"), i);
            if (!a[i].is_object())
                fail(p, "expected an object");
            reject_unknown(a[i], p, {"ones", "weight"});
            const auto ones = read_uint(a[i], "ones", p, std::nullopt, 0, N);
            const auto w = read_double(a[i], "weight", p, std::nullopt, 0.0, 1.0);
            total += w;
            mix.push_back({{"ones", ones}, {"weight", w}});
        }
        if (std::abs(total - 1.0) > 1e-12)
            fail(join(path, "urn_mixture"), "weights must sum to 1");
    }
    out["urn_mixture"] = mix;
    return out;
}

Json params_decomposition(const Json& in, const std::string& path)
{
    reject_unknown(in, path, {"m", "n", "distributions"});
    Json out;
    out["m"] = read_uint(in, "m", path, 3, 1, 10);
    out["n"] = read_uint(in, "n", path, 3, 1, 10);
    out["distributions"] = read_uint(in, "distributions", path, 10, 1);
    std::uint64_t size = 1;
    for (std::uint64_t i = 0; i < out["n"].get<std::uint64_t>(); ++i)
        size *= out["m"].get<std::uint64_t>();
    if (size > 100000)
        fail(path, "m^n must not exceed 100000");
    return out;
}

Json params_bound_sweep(const Json& in, const std::string& path)
{
    reject_unknown(in, path, {"N_min", "N_max"});
    Json out;
    const auto lo = read_uint(in, "N_min", path, 1, 1, 200);
    const auto hi = read_uint(in, "N_max", path, 12, 1, 200);
    if (hi < lo)
        fail(join(path, "N_max"), "must be at least N_min");
    out["N_min"] = lo;
    out["N_max"] = hi;
    return out;
}

Json params_swallow(const Json& in, const std::string& path)
{
    reject_unknown(in, path, {"n", "couplings"});
    Json out;
    out["n"] = read_uint(in, "n", path, 4, 1, 7);
    Json couplings = Json::array({"identity", "sort_bits", "sort_polya"});
    if (in.contains("couplings")) {
        const auto& a = read_array(in, "couplings", path);
        if (a.empty())
            fail(join(path, "couplings"), "needs at least one coupling");
        couplings = Json::array();
        for (std::size_t i = 0; i < a.size(); ++i) {
            couplings.push_back(enum_value(a[i], index(join(path, "couplings"), i),
                                           {"identity", "sort_bits", "sort_polya", "skewed_cycle"}));
        }
    }
    out["couplings"] = couplings;
    return out;
}

Json read_model(const Json& in, const std::string& path)
{
    if (!in.is_object())
        fail(path, "expected an object");
    const auto type = read_enum(in, "type", path, std::nullopt, {"er", "geometric"});
    if (type == "er") {
        reject_unknown(in, path, {"type", "p"});
        return {{"type", type}, {"p", read_double(in, "p", path, 0.5, 0.0, 1.0)}};
    }
    reject_unknown(in, path, {"type", "r"});
    if (in.contains("r") && in.at("r").is_number() && in.at("r").get<double>() < 0.0)
        fail(join(path, "r"), "radius must be non-negative");
    return {{"type", type}, {"r", read_double(in, "r", path, 0.3, 0.0, 2.0)}};
}

Json read_condition(const Json& in, const std::string& path)
{
    if (!in.is_object())
        fail(path, "expected an object");
    const auto type = read_enum(in, "type", path, std::nullopt,
                                {"none", "connected", "diameter_at_most", "min_degree_at_least", "edge_count_at_least"});
    Json out{{"type", type}};
    if (type == "diameter_at_most" || type == "min_degree_at_least") {
        reject_unknown(in, path, {"type", "d"});
        out["d"] = read_uint(in, "d", path, std::nullopt);
    } else if (type == "edge_count_at_least") {
        reject_unknown(in, path, {"type", "m"});
        out["m"] = read_uint(in, "m", path, std::nullopt);
    } else {
        reject_unknown(in, path, {"type"});
    }
    return out;
}

Json params_inheritance(const Json& in, const std::string& path)
{
    reject_unknown(in, path, {"models", "n_grid", "conditions", "max_tries"});
    Json out;
    Json models = Json::array({Json{{"type", "er"}, {"p", 0.5}}});
    if (in.contains("models")) {
        const auto& a = read_array(in, "models", path);
        if (a.empty())
            fail(join(path, "models"), "needs at least one model");
        models = Json::array();
        for (std::size_t i = 0; i < a.size(); ++i)
            models.push_back(read_model(a[i], index(join(path, "models"), i)));
    }
    out["models"] = models;
    Json grid = Json::array({10, 20, 40});
    if (in.contains("n_grid")) {
        const auto& a = read_array(in, "n_grid", path);
        if (a.empty())
            fail(join(path, "n_grid"), "needs at least one size");
        grid = Json::array();
        for (std::size_t i = 0; i < a.size(); ++i) {
            grid.push_back(uint_value(a[i], index(join(path, "n_grid"), i), 2, 5000));
        }
    }
    out["n_grid"] = grid;
    Json conds = Json::array({Json{{"type", "none"}}, Json{{"type", "min_degree_at_least"}, {"d", 1}}});
    if (in.contains("conditions")) {
        const auto& a = read_array(in, "conditions", path);
        if (a.empty())
            fail(join(path, "conditions"), "needs at least one condition (use {\"type\": \"none\"})");
        conds = Json::array();
        for (std::size_t i = 0; i < a.size(); ++i)
            conds.push_back(read_condition(a[i], index(join(path, "conditions"), i)));
    }
    out["conditions"] = conds;
    out["max_tries"] = read_uint(in, "max_tries", path, 10000, 1);
    return out;
}

Json params_exchangeability(const Json& in, const std::string& path)
{
    reject_unknown(in, path, {"n", "p", "predicates"});
    Json out;
    const auto n = read_uint(in, "n", path, 4, 1, 16);
    out["n"] = n;
    out["p"] = read_double(in, "p", path, 0.5, 0.0, 1.0);
    std::string alternating;
    for (std::uint64_t i = 0; i < n; ++i)
        alternating.push_back(i % 2 ? '1' : '0');
    Json preds = Json::array({Json{{"type", "count_equals"}, {"k", n / 2}},
                              Json{{"type", "count_at_least"}, {"k", 1}},
                              Json{{"type", "starts_with"}, {"symbol", 1}},
                              Json{{"type", "single_pattern"}, {"pattern", alternating}}});
    if (in.contains("predicates")) {
        const auto& a = read_array(in, "predicates", path);
        if (a.empty())
            fail(join(path, "predicates"), "needs at least one predicate");
        preds = Json::array();
        for (std::size_t i = 0; i < a.size(); ++i) {
            const auto p = index(join(path, "predicates"), i);
            if (!a[i].is_object())
                fail(p, "expected an object");
            const auto type = read_enum(a[i], "type", p, std::nullopt,
                                        {"count_equals", "count_at_least", "count_at_most", "starts_with",
                                         "ends_with", "single_pattern"});
            Json q{{"type", type}};
            if (type.rfind("count_", 0) == 0) {
                reject_unknown(a[i], p, {"type", "k", "expect_exchangeable"});
                q["k"] = read_uint(a[i], "k", p, std::nullopt, 0, n);
            } else if (type == "single_pattern") {
                reject_unknown(a[i], p, {"type", "pattern", "expect_exchangeable"});
                if (!a[i].contains("pattern") || !a[i].at("pattern").is_string())
                    fail(join(p, "pattern"), "expected a binary digit string");
                const auto s = a[i].at("pattern").get<std::string>();
                if (s.size() != n || s.find_first_not_of("01") != std::string::npos)
                    fail(join(p, "pattern"), "must be a binary string of length n");
                q["pattern"] = s;
            } else {
                reject_unknown(a[i], p, {"type", "symbol", "expect_exchangeable"});
                q["symbol"] = read_uint(a[i], "symbol", p, std::nullopt, 0, 1);
            }
            if (a[i].contains("expect_exchangeable")) {
                if (!a[i].at("expect_exchangeable").is_boolean())
                    fail(join(p, "expect_exchangeable"), "expected a boolean");
                q["expect_exchangeable"] = a[i].at("expect_exchangeable");
            }
            preds.push_back(q);
        }
    }
    out["predicates"] = preds;
    return out;
}

} // namespace

Json ExperimentConfig::echo() const
{
    return {{"scenario", scenario}, {"seed", seed}, {"replicas", replicas}, {"params", params}};
}

ExperimentConfig parse_config(const Json& doc, std::optional<std::uint64_t> seed_override)
{
    if (!doc.is_object())
        fail("", "top level must be a JSON object");
    reject_unknown(doc, "", {"scenario", "seed", "replicas", "threads", "params", "output"});
    ExperimentConfig c;
    c.scenario = read_enum(doc, "scenario", "", std::nullopt,
                           {"definetti_roundtrip", "decomposition_roundtrip", "bound_sweep", "swallow_uniformity",
                            "inheritance", "exchangeability_of_conditioning"});
    c.seed = seed_override ? *seed_override : read_uint(doc, "seed", "", std::nullopt);
    c.replicas = read_uint(doc, "replicas", "", kDefaultReplicas, 1);
    c.threads = read_uint(doc, "threads", "", 1, 1, 256);
    const Json params = doc.contains("params") ? doc.at("params") : Json::object();
    if (!params.is_object())
        fail("params", "expected an object");
    if (c.scenario == "definetti_roundtrip")
        c.params = params_definetti(params, "params");
    else if (c.scenario == "decomposition_roundtrip")
        c.params = params_decomposition(params, "params");
    else if (c.scenario == "bound_sweep")
        c.params = params_bound_sweep(params, "params");
    else if (c.scenario == "swallow_uniformity")
        c.params = params_swallow(params, "params");
    else if (c.scenario == "inheritance")
        c.params = params_inheritance(params, "params");
    else
        c.params = params_exchangeability(params, "params");
    if (doc.contains("output")) {
        const Json& o = doc.at("output");
        if (!o.is_object())
            fail("output", "expected an object");
        reject_unknown(o, "output", {"path", "format"});
        if (o.contains("path")) {
            if (!o.at("path").is_string())
                fail("output.path", "expected a string");
            c.out_path = o.at("path").get<std::string>();
        }
        c.format = read_enum(o, "format", "output", "csv", {"csv", "jsonl"});
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config error: cannot open '" + path.string() + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("config error: '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc, seed_override);
}

} // namespace exchlab
