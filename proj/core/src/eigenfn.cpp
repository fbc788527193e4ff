#include "jeq/eigenfn.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "jeq/error.hpp"

namespace jeq {

VertexFunction::VertexFunction(std::vector<int> ground, int w, std::vector<Rational> values)
    : ground_(std::move(ground)), values_(std::move(values)) {
    if (!std::is_sorted(ground_.begin(), ground_.end()) ||
        std::adjacent_find(ground_.begin(), ground_.end()) != ground_.end())
        throw DomainError("ground set must be strictly increasing");
    if (!ground_.empty() && (ground_.front() < 1 || ground_.back() > kMaxGround))
        throw DomainError("ground labels must lie in [1.." + std::to_string(kMaxGround) + "]");
    graph_ = JohnsonGraph::get(static_cast<int>(ground_.size()), w);
    if (static_cast<int>(values_.size()) != graph_->order())
        throw DomainError("function has " + std::to_string(values_.size()) + " values, J(" + std::to_string(n()) + "," +
                          std::to_string(w) + ") has " + std::to_string(graph_->order()) + " vertices");
}

VertexFunction VertexFunction::on(int n, int w, std::vector<Rational> values) {
    std::vector<int> ground(static_cast<std::size_t>(std::max(n, 0)));
    std::iota(ground.begin(), ground.end(), 1);
    return {std::move(ground), w, std::move(values)};
}

VertexFunction VertexFunction::constant(int n, int w, const Rational& c) {
    return on(n, w, std::vector<Rational>(static_cast<std::size_t>(binomial(n, w)), c));
}

VertexFunction VertexFunction::from(std::vector<int> ground, int w, const std::function<Rational(const Triple&)>& fn) {
    auto g = JohnsonGraph::get(static_cast<int>(ground.size()), w);
    std::vector<Rational> values;
    values.reserve(static_cast<std::size_t>(g->order()));
    for (int r = 0; r < g->order(); ++r) {
        std::array<int, 3> e{};
        const auto& t = g->vertex(r);
        for (int i = 0; i < w; ++i) e[static_cast<std::size_t>(i)] = ground[static_cast<std::size_t>(t[i] - 1)];
        values.push_back(fn(Triple(std::span<const int>(e.data(), static_cast<std::size_t>(w)))));
    }
    return {std::move(ground), w, std::move(values)};
}

int VertexFunction::dense(int label) const {
    auto it = std::lower_bound(ground_.begin(), ground_.end(), label);
    if (it == ground_.end() || *it != label) throw InvalidVertex("element " + std::to_string(label) + " is not in the ground set");
    return static_cast<int>(it - ground_.begin()) + 1;
}

const Rational& VertexFunction::operator()(const Triple& labels) const {
    if (labels.arity() != w()) throw InvalidVertex("subset " + labels.to_string() + " has the wrong arity");
    std::array<int, 3> e{};
    for (int i = 0; i < labels.arity(); ++i) e[static_cast<std::size_t>(i)] = dense(labels[i]);
    return at_rank(graph_->index(Triple(std::span<const int>(e.data(), static_cast<std::size_t>(labels.arity())))));
}

Triple VertexFunction::labels(int r) const {
    const auto& t = graph_->vertex(r);
    std::array<int, 3> e{};
    for (int i = 0; i < t.arity(); ++i) e[static_cast<std::size_t>(i)] = ground_[static_cast<std::size_t>(t[i] - 1)];
    return Triple(std::span<const int>(e.data(), static_cast<std::size_t>(t.arity())));
}

bool VertexFunction::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == 0; });
}

std::string to_string(EigenOutcome o) {
    switch (o) {
        case EigenOutcome::Eigenfunction: return "eigenfunction";
        case EigenOutcome::NotEigenfunction: return "not-eigenfunction";
        case EigenOutcome::Zero: return "zero";
    }
    return "?";
}

EigenOutcome is_eigenfunction(const VertexFunction& f, const Rational& theta) {
    if (f.is_zero()) return EigenOutcome::Zero;
    const auto& g = f.graph();
    for (int r = 0; r < g.order(); ++r) {
        Rational sum = 0;
        for (int u : g.neighbor_ranks(r)) sum += f.at_rank(u);
        if (sum != theta * f.at_rank(r)) return EigenOutcome::NotEigenfunction;
    }
    return EigenOutcome::Eigenfunction;
}

VertexFunction partition_function(const TwoPartition& p) {
    const auto& q = p.quotient();
    if (!q.equitable) throw DomainError("the partition function needs an equitable partition");
    const Rational denom = q(0, 1) + q(1, 0);
    if (denom == 0) throw DomainError("the partition function is undefined for θ = k");
    const Rational in1 = -q(0, 1) / denom, in2 = q(1, 0) / denom;
    std::vector<Rational> values;
    values.reserve(p.membership().size());
    for (bool b : p.membership()) values.push_back(b ? in1 : in2);
    return VertexFunction::on(p.n(), 3, std::move(values));
}

VertexFunction characteristic_function(const TwoPartition& p) {
    std::vector<Rational> values;
    values.reserve(p.membership().size());
    for (bool b : p.membership()) values.emplace_back(b ? 1 : 0);
    return VertexFunction::on(p.n(), 3, std::move(values));
}

VertexFunction partial_difference(const VertexFunction& f, int a, int b) {
    if (a == b) throw DomainError("partial difference needs distinct elements");
    if (f.w() < 2) throw DomainError("partial difference needs w >= 2");
    const auto& ground = f.ground();
    if (!std::binary_search(ground.begin(), ground.end(), a) || !std::binary_search(ground.begin(), ground.end(), b))
        throw InvalidVertex("partial difference elements must lie in the ground set");
    std::vector<int> rest;
    for (int x : ground)
        if (x != a && x != b) rest.push_back(x);
    return VertexFunction::from(std::move(rest), f.w() - 1, [&](const Triple& y) { return f(y.with(a)) - f(y.with(b)); });
}

VertexFunction induce(const VertexFunction& g, int w) {
    const int i = g.w();
    if (i > w) throw DomainError("cannot induce from arity " + std::to_string(i) + " down to " + std::to_string(w));
    return VertexFunction::from(g.ground(), w, [&](const Triple& x) {
        Rational sum = 0;
        // Subsets of x of size i, by bitmask over the w positions.
        for (unsigned mask = 0; mask < (1u << w); ++mask) {
            if (std::popcount(mask) != i) continue;
            std::array<int, 3> e{};
            int k = 0;
            for (int j = 0; j < w; ++j)
                if (mask & (1u << j)) e[static_cast<std::size_t>(k++)] = x[j];
            sum += g(Triple(std::span<const int>(e.data(), static_cast<std::size_t>(i))));
        }
        return sum;
    });
}

std::string Lambda1Type::to_string() const {
    auto list = [](const std::vector<int>& v) {
        std::string s = "{";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + "}";
    };
    switch (kind) {
        case Kind::Zero: return "zero";
        case Kind::Type1: return "type1(" + std::to_string(a) + "," + std::to_string(b) + ")";
        case Kind::Type2: return "type2(" + list(m1) + "," + list(m2) + ")";
    }
    return "?";
}

namespace {

VertexFunction type1_on(const std::vector<int>& ground, int a, int b) {
    return VertexFunction::from(ground, 2, [&](const Triple& x) {
        const bool ha = x.contains(a), hb = x.contains(b);
        return Rational(ha == hb ? 0 : (ha ? 1 : -1));
    });
}

VertexFunction type2_on(const std::vector<int>& ground, const std::vector<int>& m1) {
    return VertexFunction::from(ground, 2, [&](const Triple& x) {
        const int in1 = std::count(m1.begin(), m1.end(), x[0]) + std::count(m1.begin(), m1.end(), x[1]);
        return Rational(in1 == 2 ? 1 : (in1 == 0 ? -1 : 0));
    });
}

bool equal_up_to_sign(const VertexFunction& f, const VertexFunction& t) {
    if (f.values() == t.values()) return true;
    for (std::size_t r = 0; r < f.values().size(); ++r)
        if (f.values()[r] != -t.values()[r]) return false;
    return true;
}

std::vector<int> range(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return v;
}

}  // namespace

VertexFunction type1_function(int n, int a, int b) {
    if (a == b) throw DomainError("type-1 template needs distinct elements");
    return type1_on(range(n), a, b);
}

VertexFunction type2_function(int n, const std::vector<int>& m1) {
    if (n % 2 != 0 || static_cast<int>(m1.size()) * 2 != n) throw DomainError("type-2 template needs |M1| = n/2");
    return type2_on(range(n), m1);
}

Lambda1Type classify_lambda1(const VertexFunction& f) {
    if (f.w() != 2) throw DomainError("classify_lambda1 expects a function on J(n,2)");
    const int n = f.n();
    if (n < 5) throw DomainError("classify_lambda1 needs n >= 5");
    Lambda1Type out;
    if (f.is_zero()) return out;
    if (is_eigenfunction(f, eigenvalue({n, 2}, 1)) != EigenOutcome::Eigenfunction)
        throw DomainError("function is not a λ1(" + std::to_string(n) + ",2)-eigenfunction");

    Rational scale = 0;
    for (const auto& v : f.values()) scale = std::max(scale, Rational(abs(v)));
    std::vector<Rational> normalized;
    for (const auto& v : f.values()) {
        normalized.push_back(v / scale);
        if (normalized.back() != 0 && normalized.back() != 1 && normalized.back() != -1)
            throw ClassificationFailure("eigenfunction takes values outside a multiple of {-1,0,1}");
    }
    const VertexFunction g(f.ground(), 2, std::move(normalized));

    // Elements on the +1 and -1 supports.
    std::vector<int> pos_count(static_cast<std::size_t>(n + 1), 0), neg_count(static_cast<std::size_t>(n + 1), 0);
    int pos = 0, neg = 0;
    for (int r = 0; r < g.graph().order(); ++r) {
        const auto& t = g.graph().vertex(r);
        if (g.at_rank(r) == 1) {
            ++pos;
            ++pos_count[static_cast<std::size_t>(t[0])];
            ++pos_count[static_cast<std::size_t>(t[1])];
        } else if (g.at_rank(r) == -1) {
            ++neg;
            ++neg_count[static_cast<std::size_t>(t[0])];
            ++neg_count[static_cast<std::size_t>(t[1])];
        }
    }
    const auto& ground = f.ground();
    auto label = [&](int dense) { return ground[static_cast<std::size_t>(dense - 1)]; };

    // f1: the +1 pairs share one element, the -1 pairs another.
    int a = 0, b = 0;
    for (int x = 1; x <= n; ++x) {
        if (pos > 0 && pos_count[static_cast<std::size_t>(x)] == pos) a = x;
        if (neg > 0 && neg_count[static_cast<std::size_t>(x)] == neg) b = x;
    }
    if (a && b && a != b && equal_up_to_sign(g, type1_on(ground, label(a), label(b)))) {
        out.kind = Lambda1Type::Kind::Type1;
        out.a = std::min(label(a), label(b));
        out.b = std::max(label(a), label(b));
        return out;
    }

    // f2: +1 inside M1, -1 inside M2.
    if (n % 2 == 0) {
        std::vector<int> m1, m2;
        for (int x = 1; x <= n; ++x) (pos_count[static_cast<std::size_t>(x)] > 0 ? m1 : m2).push_back(label(x));
        if (static_cast<int>(m1.size()) * 2 == n && equal_up_to_sign(g, type2_on(ground, m1))) {
            if (m2.front() < m1.front()) std::swap(m1, m2);
            out.kind = Lambda1Type::Kind::Type2;
            out.m1 = std::move(m1);
            out.m2 = std::move(m2);
            return out;
        }
    }
    throw ClassificationFailure("λ1 eigenfunction with values in {-1,0,1} matches neither template");
}

SupportsReport supports_identity(const TwoPartition& p) {
    const auto& q = p.quotient();
    if (!q.equitable) throw DomainError("supports identity needs an equitable partition");
    const int n = p.n();
    if (theta_of(q) != n - 7) throw DomainError("supports identity needs θ = n - 7");
    const auto g = characteristic_function(p);
    SupportsReport rep;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            switch (classify_lambda1(partial_difference(g, i, j)).kind) {
                case Lambda1Type::Kind::Zero: ++rep.t0; break;
                case Lambda1Type::Kind::Type1: ++rep.t1; break;
                case Lambda1Type::Kind::Type2: ++rep.t2; break;
            }
        }
    rep.lhs = q(0, 1) * q(1, 0) * n * (n - 2);
    rep.rhs = Rational(24 * rep.t1 * (n - 4) + 3 * rep.t2 * (n - 2) * (n - 4));
    rep.holds = rep.lhs == rep.rhs;
    return rep;
}

bool zero_diff_transitivity_check(const VertexFunction& f, int a, int b, int c) {
    if (a == b || a == c || b == c) throw DomainError("transitivity check needs distinct elements");
    if (!partial_difference(f, a, b).is_zero() || !partial_difference(f, a, c).is_zero()) return true;
    return partial_difference(f, b, c).is_zero();
}

}  // namespace jeq
