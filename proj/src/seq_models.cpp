#include "exchlab/seq_models.hpp"

#include <algorithm>
#include <map>

namespace exchlab {

Pattern urn_sequence(std::span<const Symbol> x, RngStream& rng)
{
    return apply(uniform_permutation(x.size(), rng), x);
}

ElementaryDraw elementary_draw(std::span<const Symbol> x, const ElementaryCoupling& coupling, RngStream& rng)
{
    const std::size_t n = x.size();
    return std::visit(
        [&](const auto& c) -> ElementaryDraw {
            using C = std::decay_t<decltype(c)>;
            ElementaryDraw d;
            if constexpr (std::is_same_v<C, IndependentCoupling>) {
                d.alpha = uniform_permutation(n, rng);
                d.beta = uniform_permutation(n, rng);
            } else {
                if (c.targets.empty() || c.targets.size() != c.weights.size())
                    throw InvalidArgument("elementary_sequence: coupling needs one weight per target");
                double total = 0.0;
                for (double w : c.weights) {
                    if (w < 0.0)
                        throw InvalidArgument("elementary_sequence: coupling target law has a negative weight");
                    total += w;
                }
                if (std::abs(total - 1.0) > kProbabilityTolerance)
                    throw InvalidArgument("elementary_sequence: coupling target law does not sum to 1");
                for (const auto& t : c.targets)
                    if (t.size() != n)
                        throw InvalidArgument("elementary_sequence: target permutation size mismatch");
                const Permutation& gamma = c.targets[draw_discrete(c.weights, rng)];
                auto [alpha, beta] = swallow_decompose(gamma, rng);
                d.alpha = std::move(alpha);
                d.beta = std::move(beta);
            }
            d.output = apply(compose(d.alpha, d.beta), x);
            return d;
        },
        coupling);
}

Pattern polya_urn(const PolyaSpec& spec, RngStream& rng)
{
    std::vector<std::uint64_t> counts(spec.initial_counts.begin(), spec.initial_counts.end());
    std::uint64_t total = 0;
    for (auto k : counts)
        total += k;
    if (total == 0)
        throw InvalidArgument("polya_urn: all initial counts are zero");
    Pattern out;
    out.reserve(spec.steps);
    for (std::size_t t = 0; t < spec.steps; ++t) {
        std::uint64_t ball = rng.bounded(total);
        Symbol colour = 0;
        while (ball >= counts[colour]) {
            ball -= counts[colour];
            ++colour;
        }
        out.push_back(colour);
        ++counts[colour];
        ++total;
    }
    return out;
}

Pattern bernoulli_mixture_sequence(const PointMixture& mu, std::size_t n, RngStream& rng)
{
    if (mu.is_signed)
        throw InvalidArgument("bernoulli_mixture_sequence: cannot sample from a signed mixing measure");
    mu.validate();
    for (double p : mu.atoms)
        if (!(p >= 0.0 && p <= 1.0))
            throw InvalidArgument("bernoulli_mixture_sequence: support point outside [0,1]");
    const double p = mu.atoms[draw_discrete(mu.weights, rng)];
    Pattern out(n);
    for (auto& bit : out)
        bit = rng.uniform01() < p ? 1 : 0;
    return out;
}

std::vector<Pattern> rce_array(const RceSpec& spec, RngStream& rng)
{
    if (spec.rows == 0 || spec.cols == 0)
        throw InvalidArgument("rce_array: rows and cols must be positive");
    if (!spec.f)
        throw InvalidArgument("rce_array: no cell function");
    const double alpha = rng.uniform01();
    std::vector<double> xi(spec.rows), eta(spec.cols);
    for (auto& v : xi)
        v = rng.uniform01();
    for (auto& v : eta)
        v = rng.uniform01();
    std::vector<Pattern> out(spec.rows, Pattern(spec.cols));
    for (std::size_t i = 0; i < spec.rows; ++i) {
        for (std::size_t j = 0; j < spec.cols; ++j) {
            const Symbol s = spec.f(alpha, xi[i], eta[j], rng.uniform01());
            if (s >= spec.alphabet_size)
                throw InvalidArgument("rce_array: cell function returned symbol " + std::to_string(s) +
                                      " outside alphabet of size " + std::to_string(spec.alphabet_size));
            out[i][j] = s;
        }
    }
    return out;
}

namespace {

std::map<std::pair<Symbol, Symbol>, std::size_t> transition_counts(std::span<const Symbol> a)
{
    std::map<std::pair<Symbol, Symbol>, std::size_t> t;
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        ++t[{a[i], a[i + 1]}];
    return t;
}

} // namespace

bool markov_equivalent(std::span<const Symbol> a, std::span<const Symbol> b)
{
    if (a.size() != b.size())
        throw InvalidArgument("markov_equivalent: length mismatch (" + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()) + ")");
    if (a.empty())
        return true;
    return a.front() == b.front() && transition_counts(a) == transition_counts(b);
}

std::vector<Point> triangle_mixture_points(std::size_t n, RngStream& rng)
{
    const bool lower = rng.uniform01() < 0.5;
    std::vector<Point> pts;
    pts.reserve(n);
    while (pts.size() < n) {
        const double u = rng.uniform01();
        const double v = rng.uniform01();
        if (lower) {
            pts.push_back({std::max(u, v), std::min(u, v)});
        } else {
            if (u == v)
                continue; // the diagonal belongs to the lower triangle
            pts.push_back({std::min(u, v), std::max(u, v)});
        }
    }
    return pts;
}

} // namespace exchlab
