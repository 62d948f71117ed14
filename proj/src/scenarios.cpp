#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "exchlab/decomposition.hpp"
#include "exchlab/distribution.hpp"
#include "exchlab/error.hpp"
#include "exchlab/experiment.hpp"
#include "exchlab/graph_models.hpp"
#include "exchlab/permutation.hpp"
#include "exchlab/seq_models.hpp"
#include "exchlab/stats.hpp"

namespace exchlab {

namespace {

constexpr double kExactTolerance = 1e-12;
constexpr double kTestLevel = 0.001;

/// Runs body(i) for i in [0, count). Each index must write only its own
/// slot; callers aggregate afterwards, so results do not depend on `threads`.
template <class Body>
void for_each_replica(std::size_t count, std::size_t threads, Body&& body)
{
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += threads)
                    body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        });
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

RngStream replica_rng(const ExperimentConfig& c, std::uint64_t cell, std::uint64_t replica)
{
    return RngStream(c.seed, replica_stream_id(cell, replica));
}

ReportCell exact_cell(std::vector<std::pair<std::string, std::string>> keys, std::string metric, double value,
                      std::optional<bool> pass = std::nullopt)
{
    ReportCell c;
    c.keys = std::move(keys);
    c.metric = std::move(metric);
    c.estimate = c.ci_lo = c.ci_hi = value;
    c.pass = pass;
    return c;
}

ReportCell proportion_cell(std::vector<std::pair<std::string, std::string>> keys, std::string metric,
                           std::uint64_t successes, std::uint64_t trials)
{
    const auto e = proportion_estimate(successes, trials);
    ReportCell c;
    c.keys = std::move(keys);
    c.metric = std::move(metric);
    c.estimate = e.estimate;
    c.ci_lo = e.ci_lo;
    c.ci_hi = e.ci_hi;
    c.replicas = trials;
    return c;
}

std::string fmt(double v)
{
    return format_double(v);
}

Pattern zeros_then_ones(std::size_t n, std::size_t ones)
{
    Pattern x(n, 0);
    std::fill(x.end() - static_cast<std::ptrdiff_t>(ones), x.end(), 1);
    return x;
}

// (a) ---------------------------------------------------------------------

Report run_definetti(const ExperimentConfig& c)
{
    const auto& P = c.params;
    const std::size_t N = P["N"].get<std::size_t>();
    const std::string source = P["source"].get<std::string>();
    const std::vector<std::size_t> polya_counts = P["polya_counts"].get<std::vector<std::size_t>>();
    std::vector<std::size_t> urn_ones;
    std::vector<double> urn_weights;
    for (const auto& comp : P["urn_mixture"]) {
        urn_ones.push_back(comp["ones"].get<std::size_t>());
        urn_weights.push_back(comp["weight"].get<double>());
    }

    // exact law of the source
    const SequenceDistribution exact = [&] {
        if (source == "polya")
            return polya_law(polya_counts, N);
        if (source == "urn_mixture") {
            PatternMixture mu;
            for (std::size_t j = 0; j < urn_ones.size(); ++j) {
                mu.atoms.push_back(zeros_then_ones(N, urn_ones[j]));
                mu.weights.push_back(urn_weights[j]);
            }
            return mixture_of_urns(mu, 2, N);
        }
        // X_i = [x-coordinate < 1/2]: Bernoulli(1/4) in the lower triangle, 3/4 in the upper
        ComponentMixture mu;
        mu.atoms = {{0.75, 0.25}, {0.25, 0.75}};
        mu.weights = {0.5, 0.5};
        return iid_mix_distribution(mu, N);
    }();

    auto draw_source = [&](RngStream& rng) -> Pattern {
        if (source == "polya")
            return polya_urn({polya_counts, N}, rng);
        if (source == "urn_mixture") {
            const std::size_t j = draw_discrete(urn_weights, rng);
            return urn_sequence(zeros_then_ones(N, urn_ones[j]), rng);
        }
        const auto pts = triangle_mixture_points(N, rng);
        Pattern x(N);
        for (std::size_t i = 0; i < N; ++i)
            x[i] = pts[i].x < 0.5 ? 1 : 0;
        return x;
    };

    const std::size_t R = c.replicas;
    std::vector<Pattern> original(R), regenerated(R);
    for_each_replica(R, c.threads, [&](std::size_t r) {
        auto rng = replica_rng(c, 0, r);
        original[r] = draw_source(rng);
    });
    std::vector<std::uint64_t> eta_counts(N + 1, 0);
    for (const auto& x : original)
        ++eta_counts[occurrence_count(1, x)];
    std::vector<double> eta_empirical(N + 1);
    for (std::size_t K = 0; K <= N; ++K)
        eta_empirical[K] = static_cast<double>(eta_counts[K]) / static_cast<double>(R);
    for_each_replica(R, c.threads, [&](std::size_t r) {
        auto rng = replica_rng(c, 1, r);
        const std::size_t K = draw_discrete(eta_empirical, rng);
        regenerated[r] = urn_sequence(zeros_then_ones(N, K), rng);
    });

    Report rep{c.scenario, c.echo(), {}};
    const auto eta = eta_mixing_measure(exact);
    for (std::size_t K = 0; K <= N; ++K) {
        auto cell = proportion_cell({{"source", source}, {"K", std::to_string(K)}}, "eta_empirical", eta_counts[K], R);
        rep.cells.push_back(cell);
        rep.cells.push_back(exact_cell({{"source", source}, {"K", std::to_string(K)}}, "eta_exact", eta.eta[K]));
    }

    const std::size_t cells = std::size_t{1} << N;
    std::vector<std::uint64_t> a(cells, 0), b(cells, 0);
    const SequenceDistribution shape = exact;
    for (std::size_t r = 0; r < R; ++r) {
        ++a[shape.encode(original[r])];
        ++b[shape.encode(regenerated[r])];
    }
    const auto chi = two_sample_chi_square(a, b);
    auto test = exact_cell({{"source", source}, {"dof", std::to_string(chi.dof)}, {"statistic", fmt(chi.statistic)}},
                           "two_sample_pattern_pvalue", chi.p_value, chi.p_value >= kTestLevel);
    test.replicas = R;
    rep.cells.push_back(test);

    const auto fit = chi_square_gof_pooled(a, exact.probabilities());
    auto gof = exact_cell({{"source", source}, {"dof", std::to_string(fit.dof)}}, "source_vs_exact_law_pvalue",
                          fit.p_value, fit.p_value >= kTestLevel);
    gof.replicas = R;
    rep.cells.push_back(gof);

    const auto composite = eta_urn_composite(eta.eta);
    const double tv = tv_distance(exact, composite);
    rep.cells.push_back(exact_cell({{"source", source}}, "exact_eta_urn_tv", tv, tv <= kExactTolerance));
    rep.cells.push_back(
        exact_cell({{"source", source}}, "hypergeometric_max_deviation", eta.max_deviation, eta.verified));
    return rep;
}

// (b) ---------------------------------------------------------------------

Report run_decomposition(const ExperimentConfig& c)
{
    const std::size_t m = c.params["m"].get<std::size_t>();
    const std::size_t n = c.params["n"].get<std::size_t>();
    const std::size_t D = c.params["distributions"].get<std::size_t>();
    const std::size_t R = c.replicas;
    Report rep{c.scenario, c.echo(), {}};
    bool all_ok = true;
    for (std::size_t d = 0; d < D; ++d) {
        auto gen = replica_rng(c, d, 0);
        const auto p = random_distribution(m, n, gen, 0.25);
        const auto dec = general_decomposition(p);
        const auto recon = dec.reconstruct();
        double err = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            err = std::max(err, std::abs(recon.probability(i) - p.probability(i)));
        const bool elementary = std::all_of(dec.components.begin(), dec.components.end(), is_elementary);
        const bool ordered = std::all_of(dec.mixing.atoms.begin(), dec.mixing.atoms.end(),
                                         [&](const Pattern& x) { return dec.order.is_sorted(x); });

        std::vector<std::size_t> draws(R);
        for_each_replica(R, c.threads, [&](std::size_t r) {
            auto rng = replica_rng(c, d, r + 1);
            const std::size_t j = draw_discrete(dec.mixing.weights, rng);
            draws[r] = p.encode(elementary_component_sampler(dec.mixing.atoms[j], dec.components[j], rng).output);
        });
        std::vector<std::uint64_t> counts(p.size(), 0);
        for (auto idx : draws)
            ++counts[idx];
        const auto chi = chi_square_gof_pooled(counts, p.probabilities());

        const std::vector<std::pair<std::string, std::string>> key{{"dist", std::to_string(d)}};
        rep.cells.push_back(exact_cell(key, "reconstruction_max_error", err, err <= kExactTolerance));
        rep.cells.push_back(exact_cell(key, "components_elementary", elementary ? 1.0 : 0.0, elementary));
        rep.cells.push_back(exact_cell(key, "support_order_respecting", ordered ? 1.0 : 0.0, ordered));
        auto gof = exact_cell({{"dist", std::to_string(d)}, {"dof", std::to_string(chi.dof)}},
                              "resample_gof_pvalue", chi.p_value, chi.p_value >= kTestLevel / static_cast<double>(D));
        gof.replicas = R;
        rep.cells.push_back(gof);
        all_ok = all_ok && err <= kExactTolerance && elementary && ordered;
    }
    rep.cells.push_back(exact_cell({{"distributions", std::to_string(D)}}, "exact_roundtrip_all", all_ok ? 1.0 : 0.0,
                                   all_ok));
    return rep;
}

// (c) ---------------------------------------------------------------------

Report run_bound_sweep(const ExperimentConfig& c)
{
    const std::size_t lo = c.params["N_min"].get<std::size_t>();
    const std::size_t hi = c.params["N_max"].get<std::size_t>();
    Report rep{c.scenario, c.echo(), {}};
    std::size_t failures = 0, total = 0;
    for (std::size_t N = lo; N <= hi; ++N)
        for (std::size_t K = 0; K <= N; ++K)
            for (std::size_t k = 1; k <= N; ++k) {
                const auto r = df_bound_check(N, K, k);
                ++total;
                failures += r.pass ? 0 : 1;
                rep.cells.push_back(exact_cell({{"N", std::to_string(N)},
                                                {"K", std::to_string(K)},
                                                {"k", std::to_string(k)},
                                                {"bound", fmt(r.bound)},
                                                // infinite-alphabet form k(k-1)/N, reported only
                                                {"bound_infinite", fmt(static_cast<double>(k * (k - 1)) /
                                                                       static_cast<double>(N))},
                                                {"exact", r.tv_exact.value_or("")}},
                                               "tv_to_iid_witness", r.tv, r.pass));
            }
    rep.cells.push_back(exact_cell({{"cells", std::to_string(total)}}, "cells_over_bound",
                                   static_cast<double>(failures), failures == 0));
    return rep;
}

// (d) ---------------------------------------------------------------------

Permutation adversarial_gamma(const std::string& coupling, std::size_t n, RngStream& rng)
{
    if (coupling == "identity")
        return Permutation::identity(n);
    if (coupling == "sort_bits") {
        Pattern bits(n);
        for (auto& b : bits)
            b = rng.uniform01() < 0.3 ? 1 : 0;
        return sorting_permutation(bits);
    }
    if (coupling == "sort_polya")
        return sorting_permutation(polya_urn({{1, 1}, n}, rng));
    // skewed_cycle
    if (rng.uniform01() < 0.9) {
        std::vector<std::size_t> m(n);
        for (std::size_t i = 0; i < n; ++i)
            m[i] = (i + 1) % n;
        return Permutation::from_zero_based(std::move(m));
    }
    return uniform_permutation(n, rng);
}

Report run_swallow(const ExperimentConfig& c)
{
    const std::size_t n = c.params["n"].get<std::size_t>();
    const std::size_t R = c.replicas;
    if (R < 5 * factorial(n))
        throw ConfigError("config error at 'replicas': swallow_uniformity needs at least 5 n! = " +
                          std::to_string(5 * factorial(n)) + " draws");
    Report rep{c.scenario, c.echo(), {}};
    const auto couplings = c.params["couplings"].get<std::vector<std::string>>();
    for (std::size_t ci = 0; ci < couplings.size(); ++ci) {
        std::vector<Permutation> alphas(R), betas(R), gammas(R);
        std::vector<std::uint8_t> exact(R, 0);
        for_each_replica(R, c.threads, [&](std::size_t r) {
            auto rng = replica_rng(c, ci, r);
            gammas[r] = adversarial_gamma(couplings[ci], n, rng);
            auto [alpha, beta] = swallow_decompose(gammas[r], rng);
            exact[r] = compose(alpha, beta) == gammas[r] ? 1 : 0;
            alphas[r] = std::move(alpha);
            betas[r] = std::move(beta);
        });
        const auto mismatches = static_cast<double>(std::count(exact.begin(), exact.end(), 0));
        const auto ta = permutation_uniformity_test(alphas);
        const auto tb = permutation_uniformity_test(betas);
        const auto tg = permutation_uniformity_test(gammas);
        auto cell = [&](const char* metric, const UniformityReport& t, std::optional<bool> pass) {
            auto x = exact_cell({{"coupling", couplings[ci]}, {"dof", std::to_string(t.dof)},
                                 {"critical", fmt(t.critical)}},
                                metric, t.statistic, pass);
            x.replicas = R;
            return x;
        };
        rep.cells.push_back(cell("alpha_chi2", ta, ta.pass));
        rep.cells.push_back(cell("beta_chi2", tb, tb.pass));
        rep.cells.push_back(cell("gamma_chi2", tg, std::nullopt));
        auto ex = exact_cell({{"coupling", couplings[ci]}}, "compose_mismatches", mismatches, mismatches == 0.0);
        ex.replicas = R;
        rep.cells.push_back(ex);
    }
    return rep;
}

// (e) ---------------------------------------------------------------------

struct ReplicaOutcome {
    bool kld = false;
    bool connected = false;
    bool whitney = true;
    double avg_degree = 0.0;
    std::size_t tries = 0;
};

ModelSpec model_from_json(const Json& j, std::size_t n)
{
    if (j["type"] == "er")
        return ErSpec{n, j["p"].get<double>()};
    return GeometricSpec{n, j["r"].get<double>()};
}

std::string model_label(const Json& j)
{
    if (j["type"] == "er")
        return "er(p=" + fmt(j["p"].get<double>()) + ")";
    return "geometric(r=" + fmt(j["r"].get<double>()) + ")";
}

std::optional<GraphPredicate> condition_from_json(const Json& j)
{
    const auto type = j["type"].get<std::string>();
    if (type == "none")
        return std::nullopt;
    if (type == "connected")
        return Connected{};
    if (type == "diameter_at_most")
        return DiameterAtMost{j["d"].get<std::size_t>()};
    if (type == "min_degree_at_least")
        return MinDegreeAtLeast{j["d"].get<std::size_t>()};
    return EdgeCountAtLeast{j["m"].get<std::size_t>()};
}

/// Non-decreasing within confidence intervals: ci_hi[i+1] >= ci_lo[i].
/// Returns the smallest slack; negative means a violation.
double monotone_slack(const std::vector<ReportCell>& series)
{
    double slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < series.size(); ++i)
        slack = std::min(slack, series[i + 1].ci_hi - series[i].ci_lo);
    return series.size() < 2 ? 0.0 : slack;
}

Report run_inheritance(const ExperimentConfig& c)
{
    const auto& P = c.params;
    const auto grid = P["n_grid"].get<std::vector<std::size_t>>();
    const std::size_t max_tries = P["max_tries"].get<std::size_t>();
    const std::size_t R = c.replicas;
    Report rep{c.scenario, c.echo(), {}};
    std::uint64_t cell_id = 0;
    std::uint64_t whitney_violations = 0, samples = 0;
    for (const auto& model_json : P["models"]) {
        const auto label = model_label(model_json);
        for (const auto& cond_json : P["conditions"]) {
            const auto pred = condition_from_json(cond_json);
            const std::string cond_label = pred ? predicate_name(*pred) : "none";
            std::vector<ReportCell> kld_series, conn_series, deg_series;
            for (std::size_t n : grid) {
                const ModelSpec spec = model_from_json(model_json, n);
                std::vector<ReplicaOutcome> out(R);
                for_each_replica(R, c.threads, [&](std::size_t r) {
                    auto rng = replica_rng(c, cell_id, r);
                    GraphSample s;
                    std::size_t tries = 1;
                    if (pred) {
                        auto cs = conditional_sample(spec, ConditionSpec{*pred, max_tries}, rng);
                        s = std::move(cs.sample);
                        tries = cs.tries;
                    } else {
                        s = sample_model(spec, rng);
                    }
                    const auto m = graph_metrics(s.graph);
                    out[r] = {m.kappa == m.lambda && m.lambda == m.min_degree, m.connected,
                              m.kappa <= m.lambda && m.lambda <= m.min_degree, m.avg_degree, tries};
                });
                ++cell_id;
                std::uint64_t kld = 0, conn = 0, bad = 0, tries = 0;
                double sum = 0.0, sum2 = 0.0;
                for (const auto& o : out) {
                    kld += o.kld;
                    conn += o.connected;
                    bad += !o.whitney;
                    tries += o.tries;
                    sum += o.avg_degree;
                    sum2 += o.avg_degree * o.avg_degree;
                }
                whitney_violations += bad;
                samples += R;
                const std::vector<std::pair<std::string, std::string>> key{
                    {"model", label}, {"condition", cond_label}, {"n", std::to_string(n)}};
                kld_series.push_back(proportion_cell(key, "pr_kappa_eq_lambda_eq_delta", kld, R));
                conn_series.push_back(proportion_cell(key, "pr_connected", conn, R));
                ReportCell deg;
                deg.keys = key;
                deg.metric = "avg_degree";
                deg.replicas = R;
                deg.estimate = sum / static_cast<double>(R);
                const double var = std::max(0.0, sum2 / static_cast<double>(R) - deg.estimate * deg.estimate);
                const double half = kCiZ * std::sqrt(var / static_cast<double>(R));
                deg.ci_lo = deg.estimate - half;
                deg.ci_hi = deg.estimate + half;
                deg_series.push_back(deg);
                rep.cells.push_back(kld_series.back());
                rep.cells.push_back(conn_series.back());
                rep.cells.push_back(deg);
                auto acc = exact_cell(key, "acceptance_rate", static_cast<double>(R) / static_cast<double>(tries));
                acc.replicas = R;
                rep.cells.push_back(acc);
                auto wc = exact_cell(key, "whitney_violations", static_cast<double>(bad), bad == 0);
                wc.replicas = R;
                rep.cells.push_back(wc);
            }
            const std::vector<std::pair<std::string, std::string>> key{{"model", label}, {"condition", cond_label}};
            if (model_json["type"] == "er") {
                const double slack = monotone_slack(kld_series);
                rep.cells.push_back(exact_cell(key, "trend_kappa_eq_lambda_eq_delta", slack, slack >= 0.0));
            } else {
                // connectivity probability against average degree
                std::vector<std::size_t> order(grid.size());
                std::iota(order.begin(), order.end(), std::size_t{0});
                std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    return deg_series[a].estimate < deg_series[b].estimate;
                });
                std::vector<ReportCell> sorted;
                for (auto i : order)
                    sorted.push_back(conn_series[i]);
                const double slack = monotone_slack(sorted);
                rep.cells.push_back(exact_cell(key, "trend_connected_vs_avg_degree", slack, slack >= 0.0));
            }
        }
    }
    auto all = exact_cell({{"samples", std::to_string(samples)}}, "whitney_violations_total",
                          static_cast<double>(whitney_violations), whitney_violations == 0);
    all.replicas = samples;
    rep.cells.push_back(all);
    return rep;
}

// (f) ---------------------------------------------------------------------

Report run_exchangeability(const ExperimentConfig& c)
{
    const std::size_t n = c.params["n"].get<std::size_t>();
    const double p = c.params["p"].get<double>();
    const std::vector<double> pi{1.0 - p, p};
    const auto base = iid_law(pi, n);
    Report rep{c.scenario, c.echo(), {}};
    for (const auto& pred : c.params["predicates"]) {
        const auto type = pred["type"].get<std::string>();
        std::function<bool(std::span<const Symbol>)> test;
        std::string label;
        bool symmetric = false;
        if (type.rfind("count_", 0) == 0) {
            const auto k = pred["k"].get<std::size_t>();
            symmetric = true;
            label = type + "(" + std::to_string(k) + ")";
            test = [type, k](std::span<const Symbol> z) {
                const auto ones = occurrence_count(1, z);
                if (type == "count_equals")
                    return ones == k;
                if (type == "count_at_least")
                    return ones >= k;
                return ones <= k;
            };
        } else if (type == "single_pattern") {
            const Pattern target = pattern_from_string(pred["pattern"].get<std::string>());
            label = "single_pattern(" + pred["pattern"].get<std::string>() + ")";
            test = [target](std::span<const Symbol> z) { return std::equal(z.begin(), z.end(), target.begin()); };
        } else {
            const auto sym = pred["symbol"].get<Symbol>();
            const bool first = type == "starts_with";
            label = type + "(" + std::to_string(sym) + ")";
            test = [sym, first](std::span<const Symbol> z) {
                return !z.empty() && (first ? z.front() : z.back()) == sym;
            };
        }
        const std::vector<std::pair<std::string, std::string>> key{
            {"predicate", label}, {"n", std::to_string(n)}, {"count_based", symmetric ? "true" : "false"}};
        SequenceDistribution conditioned = base;
        try {
            conditioned = condition(base, test);
        } catch (const ConditionUnsatisfiable& e) {
            throw ConditionUnsatisfiable("exchangeability_of_conditioning: predicate " + label +
                                         " has probability zero");
        }
        const bool exch = is_exchangeable(conditioned);
        std::optional<bool> expect;
        if (pred.contains("expect_exchangeable"))
            expect = pred["expect_exchangeable"].get<bool>();
        else if (symmetric)
            expect = true;
        const auto worst = worst_transposition(conditioned);
        auto cell = exact_cell(key, "exchangeable", exch ? 1.0 : 0.0,
                               expect ? std::optional<bool>(*expect == exch) : std::nullopt);
        rep.cells.push_back(cell);
        rep.cells.push_back(exact_cell(key, "worst_transposition_gap", worst ? worst->difference : 0.0));
    }
    return rep;
}

} // namespace

Report run_scenario(const ExperimentConfig& config)
{
    if (config.replicas < 1)
        throw ConfigError("config error at 'replicas': must be at least 1");
    if (config.scenario == "definetti_roundtrip")
        return run_definetti(config);
    if (config.scenario == "decomposition_roundtrip")
        return run_decomposition(config);
    if (config.scenario == "bound_sweep")
        return run_bound_sweep(config);
    if (config.scenario == "swallow_uniformity")
        return run_swallow(config);
    if (config.scenario == "inheritance")
        return run_inheritance(config);
    if (config.scenario == "exchangeability_of_conditioning")
        return run_exchangeability(config);
    throw ConfigError("config error at 'scenario': unknown scenario '" + config.scenario + "'");
}

} // namespace exchlab
