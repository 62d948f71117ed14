#include "exchlab/distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "exchlab/permutation.hpp"

namespace exchlab {

std::size_t pattern_space_size(std::size_t m, std::size_t n, std::size_t cap)
{
    if (m == 0)
        throw InvalidArgument("pattern space: alphabet must be non-empty");
    std::size_t size = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (size > cap / m)
            throw InvalidArgument("pattern space: " + std::to_string(m) + "^" + std::to_string(n) +
                                  " exceeds the cap of " + std::to_string(cap) + " patterns");
        size *= m;
    }
    return size;
}

SequenceDistribution::SequenceDistribution(std::size_t m, std::size_t n, std::vector<double> probabilities,
                                           double tolerance)
    : m_(m), n_(n), probs_(std::move(probabilities))
{
    const std::size_t expected = pattern_space_size(m, n);
    if (probs_.size() != expected)
        throw InvalidArgument("distribution: table has " + std::to_string(probs_.size()) +
                              " entries, expected " + std::to_string(expected));
    double total = 0.0;
    for (double& v : probs_) {
        if (!(v >= -tolerance) || v > 1.0 + tolerance)
            throw InvalidArgument("distribution: probability " + format_double(v) + " outside [0,1]");
        v = std::clamp(v, 0.0, 1.0);
        total += v;
    }
    if (std::abs(total - 1.0) > tolerance)
        throw InvalidArgument("distribution: probabilities sum to " + format_double(total) + ", not 1");
}

SequenceDistribution SequenceDistribution::point_mass(std::size_t m, std::span<const Symbol> pattern)
{
    std::vector<double> probs(pattern_space_size(m, pattern.size()), 0.0);
    std::size_t idx = 0;
    for (Symbol s : pattern) {
        if (s >= m)
            throw InvalidArgument("point_mass: symbol " + std::to_string(s) + " outside alphabet");
        idx = idx * m + s;
    }
    probs[idx] = 1.0;
    return SequenceDistribution(m, pattern.size(), std::move(probs));
}

SequenceDistribution SequenceDistribution::tabulate(
    std::size_t m, std::size_t n, const std::function<double(std::span<const Symbol>)>& weight)
{
    const std::size_t size = pattern_space_size(m, n);
    std::vector<double> probs(size);
    Pattern z(n, 0);
    for (std::size_t idx = 0; idx < size; ++idx) {
        probs[idx] = weight(z);
        // increment mixed-radix counter, last coordinate fastest
        for (std::size_t pos = n; pos-- > 0;) {
            if (++z[pos] < m)
                break;
            z[pos] = 0;
        }
    }
    return SequenceDistribution(m, n, std::move(probs));
}

std::size_t SequenceDistribution::encode(std::span<const Symbol> pattern) const
{
    if (pattern.size() != n_)
        throw InvalidArgument("encode: pattern length " + std::to_string(pattern.size()) +
                              " != " + std::to_string(n_));
    std::size_t idx = 0;
    for (Symbol s : pattern) {
        if (s >= m_)
            throw InvalidArgument("encode: symbol " + std::to_string(s) + " outside alphabet");
        idx = idx * m_ + s;
    }
    return idx;
}

Pattern SequenceDistribution::decode(std::size_t index) const
{
    Pattern z(n_);
    for (std::size_t pos = n_; pos-- > 0;) {
        z[pos] = static_cast<Symbol>(index % m_);
        index /= m_;
    }
    return z;
}

std::vector<double> CountDistribution::ones_law() const
{
    if (alphabet_size != 2)
        throw InvalidArgument("ones_law: alphabet is not binary");
    std::vector<double> out(length + 1, 0.0);
    for (const auto& [counts, pr] : law)
        out[counts[1]] += pr;
    return out;
}

namespace {

void require_same_shape(const SequenceDistribution& p, const SequenceDistribution& q, const char* what)
{
    if (p.alphabet_size() != q.alphabet_size() || p.length() != q.length())
        throw InvalidArgument(std::string(what) + ": shape mismatch (m=" +
                              std::to_string(p.alphabet_size()) + ", n=" + std::to_string(p.length()) +
                              " vs m=" + std::to_string(q.alphabet_size()) +
                              ", n=" + std::to_string(q.length()) + ")");
}

} // namespace

double tv_distance(const SequenceDistribution& p, const SequenceDistribution& q)
{
    require_same_shape(p, q, "tv_distance");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        d += std::abs(p.probability(i) - q.probability(i));
    return d;
}

std::optional<TranspositionViolation> worst_transposition(const SequenceDistribution& p)
{
    const std::size_t n = p.length();
    if (n < 2)
        return std::nullopt;
    TranspositionViolation worst;
    worst.difference = -1.0;
    for (std::size_t idx = 0; idx < p.size(); ++idx) {
        Pattern z = p.decode(idx);
        for (std::size_t pos = 0; pos + 1 < n; ++pos) {
            if (z[pos] <= z[pos + 1])
                continue; // each unordered pair visited once
            std::swap(z[pos], z[pos + 1]);
            const double d = std::abs(p.probability(idx) - p.probability(z));
            std::swap(z[pos], z[pos + 1]);
            if (d > worst.difference) {
                worst.difference = d;
                worst.position = pos;
                worst.pattern = z;
            }
        }
    }
    if (worst.difference < 0.0) {
        worst.difference = 0.0; // every pattern is constant
        worst.pattern = p.decode(0);
    }
    return worst;
}

bool is_exchangeable(const SequenceDistribution& p, double tol)
{
    const auto w = worst_transposition(p);
    return !w || w->difference <= tol;
}

double binomial_mixture_pattern_prob(const PointMixture& mu, std::size_t n, std::size_t s)
{
    if (s > n)
        throw InvalidArgument("binomial_mixture_pattern_prob: s > n");
    if (mu.atoms.size() != mu.weights.size())
        throw InvalidArgument("binomial_mixture_pattern_prob: atoms/weights size mismatch");
    double total = 0.0;
    for (std::size_t j = 0; j < mu.atoms.size(); ++j) {
        const double a = mu.atoms[j];
        if (!(a >= 0.0 && a <= 1.0))
            throw InvalidArgument("binomial_mixture_pattern_prob: support point " + format_double(a) +
                                  " outside [0,1]");
        total += mu.weights[j] * std::pow(a, static_cast<double>(s)) *
                 std::pow(1.0 - a, static_cast<double>(n - s));
    }
    return total;
}

SequenceDistribution iid_mix_distribution(const ComponentMixture& mu, std::size_t n)
{
    mu.validate();
    if (mu.is_signed)
        throw InvalidArgument("iid_mix_distribution: signed mixing measure");
    if (mu.atoms.empty())
        throw InvalidArgument("iid_mix_distribution: empty mixing measure");
    const std::size_t m = mu.atoms.front().size();
    for (const auto& pi : mu.atoms) {
        if (pi.size() != m)
            throw InvalidArgument("iid_mix_distribution: components differ in alphabet size");
        double t = 0.0;
        for (double v : pi) {
            if (v < 0.0)
                throw InvalidArgument("iid_mix_distribution: negative component probability");
            t += v;
        }
        if (std::abs(t - 1.0) > kProbabilityTolerance)
            throw InvalidArgument("iid_mix_distribution: component does not sum to 1");
    }
    return SequenceDistribution::tabulate(m, n, [&](std::span<const Symbol> z) {
        double total = 0.0;
        for (std::size_t j = 0; j < mu.atoms.size(); ++j) {
            double prod = mu.weights[j];
            for (Symbol s : z)
                prod *= mu.atoms[j][s];
            total += prod;
        }
        return total;
    });
}

SequenceDistribution condition(const SequenceDistribution& p,
                               const std::function<bool(std::span<const Symbol>)>& predicate)
{
    std::vector<double> probs(p.size(), 0.0);
    double mass = 0.0;
    for (std::size_t idx = 0; idx < p.size(); ++idx) {
        if (p.probability(idx) > 0.0 && predicate(p.decode(idx))) {
            probs[idx] = p.probability(idx);
            mass += probs[idx];
        }
    }
    if (mass <= 0.0)
        throw ConditionUnsatisfiable("condition: the conditioning event has probability zero");
    for (double& v : probs)
        v /= mass;
    return SequenceDistribution(p.alphabet_size(), p.length(), std::move(probs));
}

SequenceDistribution marginal(const SequenceDistribution& p, std::span<const std::size_t> indices)
{
    std::vector<bool> used(p.length(), false);
    for (std::size_t i : indices) {
        if (i >= p.length() || used[i])
            throw InvalidArgument("marginal: indices must be distinct and below " +
                                  std::to_string(p.length()));
        used[i] = true;
    }
    const std::size_t m = p.alphabet_size();
    std::vector<double> probs(pattern_space_size(m, indices.size()), 0.0);
    for (std::size_t idx = 0; idx < p.size(); ++idx) {
        if (p.probability(idx) == 0.0)
            continue;
        const Pattern z = p.decode(idx);
        std::size_t target = 0;
        for (std::size_t i : indices)
            target = target * m + z[i];
        probs[target] += p.probability(idx);
    }
    return SequenceDistribution(m, indices.size(), std::move(probs));
}

CountDistribution count_distribution(const SequenceDistribution& p)
{
    CountDistribution c;
    c.alphabet_size = p.alphabet_size();
    c.length = p.length();
    for (std::size_t idx = 0; idx < p.size(); ++idx) {
        if (p.probability(idx) == 0.0)
            continue;
        c.law[occurrence_counts(p.decode(idx), p.alphabet_size())] += p.probability(idx);
    }
    return c;
}

SequenceDistribution iid_law(std::span<const double> pi, std::size_t n)
{
    ComponentMixture mu;
    mu.atoms.emplace_back(pi.begin(), pi.end());
    mu.weights.push_back(1.0);
    return iid_mix_distribution(mu, n);
}

namespace {

double log_factorial(std::size_t k)
{
    return std::lgamma(static_cast<double>(k) + 1.0);
}

} // namespace

SequenceDistribution urn_law(std::span<const Symbol> x, std::size_t m)
{
    const auto target = occurrence_counts(x, m);
    double log_mass = -log_factorial(x.size());
    for (std::size_t f : target)
        log_mass += log_factorial(f);
    double mass = std::exp(log_mass);
    if (x.size() <= 20) {
        std::uint64_t num = 1;
        for (std::size_t f : target)
            num *= factorial(f);
        mass = static_cast<double>(num) / static_cast<double>(factorial(x.size()));
    }
    return SequenceDistribution::tabulate(m, x.size(), [&](std::span<const Symbol> z) {
        return occurrence_counts(z, m) == target ? mass : 0.0;
    });
}

SequenceDistribution polya_law(std::span<const std::size_t> initial_counts, std::size_t steps)
{
    const std::size_t m = initial_counts.size();
    std::size_t total0 = 0;
    for (auto k : initial_counts)
        total0 += k;
    if (total0 == 0)
        throw InvalidArgument("polya_law: urn starts empty");
    return SequenceDistribution::tabulate(m, steps, [&](std::span<const Symbol> z) {
        std::vector<std::size_t> counts(initial_counts.begin(), initial_counts.end());
        std::size_t total = total0;
        double pr = 1.0;
        for (Symbol s : z) {
            pr *= static_cast<double>(counts[s]) / static_cast<double>(total);
            if (pr == 0.0)
                break;
            ++counts[s];
            ++total;
        }
        return pr;
    });
}

SequenceDistribution random_distribution(std::size_t m, std::size_t n, RngStream& rng, double sparsity)
{
    std::vector<double> w(pattern_space_size(m, n));
    double total = 0.0;
    for (auto& v : w) {
        v = -std::log1p(-rng.uniform01());
        if (rng.uniform01() < sparsity)
            v = 0.0;
        total += v;
    }
    if (total == 0.0) {
        w[static_cast<std::size_t>(rng.bounded(w.size()))] = 1.0;
        total = 1.0;
    }
    for (auto& v : w)
        v /= total;
    return SequenceDistribution(m, n, std::move(w));
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_distribution(std::ostream& os, const SequenceDistribution& p)
{
    os << p.alphabet_size() << ' ' << p.length() << '\n';
    for (std::size_t idx = 0; idx < p.size(); ++idx) {
        if (p.probability(idx) == 0.0)
            continue;
        os << pattern_to_string(p.decode(idx)) << '\t' << format_double(p.probability(idx)) << '\n';
    }
}

SequenceDistribution read_distribution(std::istream& is)
{
    std::string line;
    std::size_t m = 0, n = 0;
    bool have_header = false;
    std::vector<double> probs;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        const auto where = " (line " + std::to_string(line_no) + ")";
        if (!have_header) {
            std::istringstream hs(line);
            if (!(hs >> m >> n))
                throw InvalidArgument("read_distribution: expected header 'm n'" + where);
            probs.assign(pattern_space_size(m, n), 0.0);
            have_header = true;
            continue;
        }
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw InvalidArgument("read_distribution: expected 'pattern<TAB>probability'" + where);
        const Pattern z = pattern_from_string(line.substr(0, tab));
        if (z.size() != n)
            throw InvalidArgument("read_distribution: pattern length differs from n" + where);
        std::size_t idx = 0;
        for (Symbol s : z) {
            if (s >= m)
                throw InvalidArgument("read_distribution: symbol outside alphabet" + where);
            idx = idx * m + s;
        }
        const std::string value = line.substr(tab + 1);
        double v = 0.0;
        const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
        if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
            throw InvalidArgument("read_distribution: bad probability '" + value + "'" + where);
        probs[idx] += v;
    }
    if (!have_header)
        throw InvalidArgument("read_distribution: missing header");
    return SequenceDistribution(m, n, std::move(probs));
}

} // namespace exchlab
