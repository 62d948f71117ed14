#include "exchlab/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "exchlab/combinatorics.hpp"

namespace exchlab {

SymbolOrder SymbolOrder::natural(std::size_t m)
{
    std::vector<std::size_t> r(m);
    std::iota(r.begin(), r.end(), std::size_t{0});
    return SymbolOrder(std::move(r));
}

SymbolOrder SymbolOrder::from_ranks(std::vector<std::size_t> rank)
{
    std::vector<bool> seen(rank.size(), false);
    for (auto r : rank) {
        if (r >= rank.size() || seen[r])
            throw InvalidArgument("SymbolOrder: ranks must be a permutation of {0..m-1}");
        seen[r] = true;
    }
    return SymbolOrder(std::move(rank));
}

Pattern SymbolOrder::sorted(std::span<const Symbol> x) const
{
    return apply(sorting_permutation(x, [this](Symbol a, Symbol b) { return less(a, b); }), x);
}

bool SymbolOrder::is_sorted(std::span<const Symbol> x) const
{
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (less(x[i + 1], x[i]))
            return false;
    return true;
}

namespace {

void require_exchangeable(const SequenceDistribution& p, double tol, const char* who)
{
    const auto w = worst_transposition(p);
    if (w && w->difference > tol) {
        Pattern swapped = w->pattern;
        std::swap(swapped[w->position], swapped[w->position + 1]);
        std::ostringstream os;
        os << who << ": input is not exchangeable; worst violation swaps positions " << w->position + 1
           << " and " << w->position + 2 << ": P(" << pattern_to_string(w->pattern) << ") vs P("
           << pattern_to_string(swapped) << ") differ by " << format_double(w->difference);
        throw NotExchangeable(os.str());
    }
}

void require_binary(const SequenceDistribution& p, const char* who)
{
    if (p.alphabet_size() != 2)
        throw InvalidArgument(std::string(who) + ": binary alphabet required, got m = " +
                              std::to_string(p.alphabet_size()));
}

/// Groups pattern indices by sorted pattern; keys are sorted under `order`.
std::map<Pattern, std::vector<std::size_t>> group_by_sorted(const SequenceDistribution& p,
                                                            const SymbolOrder& order)
{
    std::map<Pattern, std::vector<std::size_t>> groups;
    for (std::size_t idx = 0; idx < p.size(); ++idx)
        if (p.probability(idx) > 0.0)
            groups[order.sorted(p.decode(idx))].push_back(idx);
    return groups;
}

} // namespace

PatternMixture urn_representation(const SequenceDistribution& p, double tol)
{
    require_exchangeable(p, tol, "urn_representation");
    PatternMixture mu;
    for (const auto& [x_star, members] : group_by_sorted(p, SymbolOrder::natural(p.alphabet_size()))) {
        double w = 0.0;
        for (auto idx : members)
            w += p.probability(idx);
        mu.atoms.push_back(x_star);
        mu.weights.push_back(w);
    }
    return mu;
}

SequenceDistribution mixture_of_urns(const PatternMixture& mu, std::size_t m, std::size_t n)
{
    mu.validate();
    std::vector<double> probs(pattern_space_size(m, n), 0.0);
    for (std::size_t j = 0; j < mu.atoms.size(); ++j) {
        if (mu.atoms[j].size() != n)
            throw InvalidArgument("mixture_of_urns: atom length differs from n");
        const auto law = urn_law(mu.atoms[j], m);
        for (std::size_t i = 0; i < probs.size(); ++i)
            probs[i] += mu.weights[j] * law.probability(i);
    }
    return SequenceDistribution(m, n, std::move(probs));
}

EtaReport eta_mixing_measure(const SequenceDistribution& p, double tol)
{
    require_binary(p, "eta_mixing_measure");
    require_exchangeable(p, tol, "eta_mixing_measure");
    const std::size_t N = p.length();
    EtaReport r;
    r.eta.assign(N + 1, 0.0);
    // joint[K][n][k] = Pr(eta = K, X_1 + ... + X_n = k)
    std::vector<std::vector<std::vector<double>>> joint(
        N + 1, std::vector<std::vector<double>>(N + 1, std::vector<double>(N + 1, 0.0)));
    for (std::size_t idx = 0; idx < p.size(); ++idx) {
        const double pr = p.probability(idx);
        if (pr == 0.0)
            continue;
        const Pattern z = p.decode(idx);
        std::size_t K = 0;
        for (Symbol s : z)
            K += s;
        r.eta[K] += pr;
        std::size_t k = 0;
        for (std::size_t n = 1; n <= N; ++n) {
            k += z[n - 1];
            joint[K][n][k] += pr;
        }
    }
    for (std::size_t K = 0; K <= N; ++K) {
        if (r.eta[K] <= 0.0)
            continue;
        for (std::size_t n = 1; n <= N; ++n)
            for (std::size_t k = 0; k <= n; ++k) {
                const double cond = joint[K][n][k] / r.eta[K];
                const double h = hypergeom_pmf(static_cast<std::int64_t>(N), static_cast<std::int64_t>(K),
                                               static_cast<std::int64_t>(n), static_cast<std::int64_t>(k));
                r.max_deviation = std::max(r.max_deviation, std::abs(cond - h));
            }
    }
    r.verified = r.max_deviation <= tol;
    return r;
}

SequenceDistribution eta_urn_composite(std::span<const double> eta)
{
    if (eta.empty())
        throw InvalidArgument("eta_urn_composite: empty eta law");
    const std::size_t N = eta.size() - 1;
    return SequenceDistribution::tabulate(2, N, [&](std::span<const Symbol> z) {
        std::size_t K = 0;
        for (Symbol s : z)
            K += s;
        return eta[K] / binomial(N, K);
    });
}

SequenceDistribution Decomposition::reconstruct() const
{
    std::vector<double> probs(pattern_space_size(alphabet_size, length), 0.0);
    for (std::size_t j = 0; j < components.size(); ++j)
        for (std::size_t i = 0; i < probs.size(); ++i)
            probs[i] += mixing.weights[j] * components[j].probability(i);
    return SequenceDistribution(alphabet_size, length, std::move(probs));
}

Decomposition general_decomposition(const SequenceDistribution& p)
{
    return general_decomposition(p, SymbolOrder::natural(p.alphabet_size()));
}

Decomposition general_decomposition(const SequenceDistribution& p, const SymbolOrder& order)
{
    if (order.alphabet_size() != p.alphabet_size())
        throw InvalidArgument("general_decomposition: order is for a different alphabet");
    Decomposition d{order, p.alphabet_size(), p.length(), {}, {}};
    for (const auto& [x_star, members] : group_by_sorted(p, order)) {
        double w = 0.0;
        for (auto idx : members)
            w += p.probability(idx);
        std::vector<double> q(p.size(), 0.0);
        for (auto idx : members)
            q[idx] = p.probability(idx) / w;
        d.mixing.atoms.push_back(x_star);
        d.mixing.weights.push_back(w);
        d.components.emplace_back(p.alphabet_size(), p.length(), std::move(q));
    }
    return d;
}

ComponentDraw elementary_component_sampler(std::span<const Symbol> x_star, const SequenceDistribution& q,
                                           RngStream& rng)
{
    const std::size_t n = x_star.size();
    const std::size_t m = q.alphabet_size();
    if (q.length() != n)
        throw InvalidArgument("elementary_component_sampler: law length differs from x*");
    const auto target_counts = occurrence_counts(x_star, m);
    for (std::size_t idx = 0; idx < q.size(); ++idx)
        if (q.probability(idx) > 0.0 && occurrence_counts(q.decode(idx), m) != target_counts)
            throw InvalidArgument("elementary_component_sampler: Q charges " +
                                  pattern_to_string(q.decode(idx)) + ", not a rearrangement of " +
                                  pattern_to_string(x_star));

    ComponentDraw d;
    d.output = q.decode(draw_discrete(q.probabilities(), rng));

    // positions of each symbol in x*, in uniformly random order
    std::vector<std::vector<std::size_t>> slots(m);
    for (std::size_t j = 0; j < n; ++j)
        slots[x_star[j]].push_back(j);
    for (auto& s : slots)
        s = apply(uniform_permutation(s.size(), rng), s);
    std::vector<std::size_t> next(m, 0);
    std::vector<std::size_t> gamma(n);
    for (std::size_t i = 0; i < n; ++i)
        gamma[i] = slots[d.output[i]][next[d.output[i]]++];
    d.gamma = Permutation::from_zero_based(std::move(gamma));

    auto [alpha, beta] = swallow_decompose(d.gamma, rng);
    d.alpha = std::move(alpha);
    d.beta = std::move(beta);
    d.output = apply(compose(d.alpha, d.beta), x_star);
    return d;
}

bool is_elementary(const SequenceDistribution& p)
{
    std::optional<std::vector<std::size_t>> counts;
    for (std::size_t idx = 0; idx < p.size(); ++idx) {
        if (p.probability(idx) == 0.0)
            continue;
        auto c = occurrence_counts(p.decode(idx), p.alphabet_size());
        if (!counts)
            counts = std::move(c);
        else if (*counts != c)
            return false;
    }
    return true;
}

namespace {

/// Solves a x = b in place by Gaussian elimination with partial pivoting.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b)
{
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col]))
                piv = r;
        if (std::abs(a[piv][col]) < kSingularPivot)
            throw InvalidArgument("signed_mixture_solve: numerically singular system (pivot " +
                                  format_double(a[piv][col]) + "); support points too close");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0)
                continue;
            for (std::size_t c = col; c < n; ++c)
                a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c)
            s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

double bernstein_term(double p, std::size_t n, std::size_t s)
{
    return std::pow(p, static_cast<double>(s)) * std::pow(1.0 - p, static_cast<double>(n - s));
}

} // namespace

SignedSolveResult signed_mixture_solve(const SequenceDistribution& p, std::optional<std::vector<double>> support)
{
    require_binary(p, "signed_mixture_solve");
    require_exchangeable(p, kProbabilityTolerance, "signed_mixture_solve");
    const std::size_t n = p.length();
    SignedSolveResult r;
    if (support) {
        r.support = std::move(*support);
    } else {
        r.support.resize(n + 1);
        for (std::size_t j = 0; j <= n; ++j)
            r.support[j] = n == 0 ? 0.0 : static_cast<double>(j) / static_cast<double>(n);
    }
    if (r.support.size() != n + 1)
        throw InvalidArgument("signed_mixture_solve: need n+1 = " + std::to_string(n + 1) + " support points");
    for (double v : r.support)
        if (!(v >= 0.0 && v <= 1.0))
            throw InvalidArgument("signed_mixture_solve: support point " + format_double(v) + " outside [0,1]");
    {
        auto sorted = r.support;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidArgument("signed_mixture_solve: support points must be distinct");
    }

    // c_s = P(0...0 1...1) with s trailing ones; every pattern with s ones agrees.
    std::vector<double> c(n + 1);
    for (std::size_t s = 0; s <= n; ++s) {
        Pattern z(n, 0);
        std::fill(z.end() - static_cast<std::ptrdiff_t>(s), z.end(), 1);
        c[s] = p.probability(z);
    }
    // Rows scaled by C(n,s): the Bernstein basis keeps entries in [0,1].
    std::vector<std::vector<double>> a(n + 1, std::vector<double>(n + 1));
    std::vector<double> rhs(n + 1);
    for (std::size_t s = 0; s <= n; ++s) {
        const double scale = binomial(n, s);
        for (std::size_t j = 0; j <= n; ++j)
            a[s][j] = scale * bernstein_term(r.support[j], n, s);
        rhs[s] = scale * c[s];
    }
    r.weights = solve_dense(a, rhs);

    // one round of iterative refinement
    std::vector<double> res(n + 1);
    for (std::size_t s = 0; s <= n; ++s) {
        long double acc = rhs[s];
        for (std::size_t j = 0; j <= n; ++j)
            acc -= static_cast<long double>(a[s][j]) * r.weights[j];
        res[s] = static_cast<double>(acc);
    }
    const auto delta = solve_dense(a, res);
    for (std::size_t j = 0; j <= n; ++j)
        r.weights[j] += delta[j];

    for (std::size_t s = 0; s <= n; ++s) {
        double recon = 0.0;
        for (std::size_t j = 0; j <= n; ++j)
            recon += r.weights[j] * bernstein_term(r.support[j], n, s);
        r.residual = std::max(r.residual, std::abs(recon - c[s]));
    }
    return r;
}

namespace {

Rational falling(std::size_t a, std::size_t len)
{
    Rational r(1);
    for (std::size_t i = 0; i < len; ++i)
        r = r * Rational(static_cast<int128>(a) - static_cast<int128>(i));
    return r;
}

Rational power(const Rational& base, std::size_t e)
{
    Rational r(1);
    for (std::size_t i = 0; i < e; ++i)
        r = r * base;
    return r;
}

Rational df_tv_exact(std::size_t N, std::size_t K, std::size_t k)
{
    const Rational q(static_cast<int128>(K), static_cast<int128>(N));
    const Rational one_minus_q(static_cast<int128>(N - K), static_cast<int128>(N));
    const Rational all_draws = falling(N, k);
    Rational tv(0);
    for (std::size_t s = 0; s <= k; ++s) {
        Rational urn(0);
        if (s <= K && k - s <= N - K)
            urn = falling(K, s) * falling(N - K, k - s) * Rational(1, all_draws.num());
        const Rational iid = power(q, s) * power(one_minus_q, k - s);
        tv = tv + Rational(static_cast<int128>(binomial_exact(k, s))) * abs(urn - iid);
    }
    return tv;
}

double df_tv_double(std::size_t N, std::size_t K, std::size_t k)
{
    const double q = static_cast<double>(K) / static_cast<double>(N);
    double tv = 0.0;
    for (std::size_t s = 0; s <= k; ++s) {
        double urn = 0.0;
        if (s <= K && k - s <= N - K) {
            urn = 1.0;
            for (std::size_t i = 0; i < s; ++i)
                urn *= static_cast<double>(K - i) / static_cast<double>(N - i);
            for (std::size_t i = 0; i < k - s; ++i)
                urn *= static_cast<double>(N - K - i) / static_cast<double>(N - s - i);
        }
        tv += binomial(k, s) * std::abs(urn - bernstein_term(q, k, s));
    }
    return tv;
}

} // namespace

DfBoundReport df_bound_check(std::size_t N, std::size_t K, std::size_t k)
{
    if (N == 0 || K > N || k == 0 || k > N)
        throw InvalidArgument("df_bound_check: need 0 <= K <= N and 1 <= k <= N (N=" + std::to_string(N) +
                              ", K=" + std::to_string(K) + ", k=" + std::to_string(k) + ")");
    DfBoundReport r;
    r.N = N;
    r.K = K;
    r.k = k;
    r.bound = 4.0 * static_cast<double>(k) / static_cast<double>(N);
    try {
        if (k > kExactBinomialLimit)
            throw std::overflow_error("k too large");
        const Rational tv = df_tv_exact(N, K, k);
        r.tv = tv.to_double();
        r.tv_exact = tv.to_string();
        r.pass = tv <= Rational(static_cast<int128>(4 * k), static_cast<int128>(N));
    } catch (const std::overflow_error&) {
        r.tv = df_tv_double(N, K, k);
        r.pass = r.tv <= r.bound;
    }
    return r;
}

void write_decomposition(std::ostream& os, const Decomposition& d)
{
    os << d.alphabet_size << ' ' << d.length << '\n';
    os << "# mixing\n";
    for (std::size_t j = 0; j < d.mixing.atoms.size(); ++j)
        os << pattern_to_string(d.mixing.atoms[j]) << '\t' << format_double(d.mixing.weights[j]) << '\n';
    os << "# components\n";
    for (std::size_t j = 0; j < d.components.size(); ++j) {
        const auto& q = d.components[j];
        for (std::size_t idx = 0; idx < q.size(); ++idx)
            if (q.probability(idx) > 0.0)
                os << pattern_to_string(d.mixing.atoms[j]) << " : " << pattern_to_string(q.decode(idx)) << '\t'
                   << format_double(q.probability(idx)) << '\n';
    }
}

void write_signed_result(std::ostream& os, const SignedSolveResult& r)
{
    for (std::size_t j = 0; j < r.support.size(); ++j)
        os << format_double(r.support[j]) << '\t' << format_double(r.weights[j]) << '\n';
    os << "# residual\t" << format_double(r.residual) << '\n';
}

} // namespace exchlab
