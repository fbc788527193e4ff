#include "jeq/partition.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string_view>
#include <utility>

#include "jeq/error.hpp"

namespace jeq {

std::string to_string(const Matrix2& m) {
    return "[[" + std::to_string(m[0][0]) + "," + std::to_string(m[0][1]) + "],[" + std::to_string(m[1][0]) + "," +
           std::to_string(m[1][1]) + "]]";
}

bool QuotientMatrix::is_integral() const {
    return std::all_of(entries.begin(), entries.end(), [](const Rational& r) { return jeq::is_integer(r); });
}

Matrix2 QuotientMatrix::as_matrix2() const {
    if (q != 2 || !is_integral()) throw DomainError("quotient matrix is not an integral 2x2 matrix");
    Matrix2 m{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<int>((*this)(i, j));
    return m;
}

std::string QuotientMatrix::to_string() const {
    std::string s = "[";
    for (int i = 0; i < q; ++i) {
        s += i ? ",[" : "[";
        for (int j = 0; j < q; ++j) {
            if (j) s += ",";
            s += jeq::to_string((*this)(i, j));
        }
        s += "]";
    }
    return s + "]";
}

Permutation identity_permutation(int n) {
    Permutation p(static_cast<std::size_t>(n + 1));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Permutation inverse(const Permutation& sigma) {
    Permutation inv(sigma.size());
    for (std::size_t x = 1; x < sigma.size(); ++x) inv[static_cast<std::size_t>(sigma[x])] = static_cast<int>(x);
    return inv;
}

Triple apply(const Permutation& sigma, const Triple& t) {
    std::array<int, 3> e{};
    for (int i = 0; i < t.arity(); ++i) e[static_cast<std::size_t>(i)] = sigma.at(static_cast<std::size_t>(t[i]));
    return Triple(std::span<const int>(e.data(), static_cast<std::size_t>(t.arity())));
}

namespace {

void require_w3(const JohnsonGraph& g) {
    if (g.w() != 3) throw DomainError("partitions live on J(n,3)");
}

// Neighbour counts per cell for every vertex; cells are 0-based.
std::vector<int> neighbour_counts(const JohnsonGraph& g, std::span<const int> cell_of, int q) {
    std::vector<int> counts(static_cast<std::size_t>(g.order() * q), 0);
    for (int r = 0; r < g.order(); ++r)
        for (int u : g.neighbor_ranks(r)) ++counts[static_cast<std::size_t>(r * q + cell_of[static_cast<std::size_t>(u)])];
    return counts;
}

EquitableCheck check_partition(const JohnsonGraph& g, std::span<const int> cell_of, int q) {
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(q), 0);
    for (int c : cell_of) ++sizes[static_cast<std::size_t>(c)];
    for (int c = 0; c < q; ++c)
        if (sizes[static_cast<std::size_t>(c)] == 0) throw DomainError("cell " + std::to_string(c + 1) + " is empty");

    const auto counts = neighbour_counts(g, cell_of, q);
    std::vector<std::int64_t> sums(static_cast<std::size_t>(q * q), 0);
    for (int r = 0; r < g.order(); ++r) {
        const int c = cell_of[static_cast<std::size_t>(r)];
        for (int j = 0; j < q; ++j) sums[static_cast<std::size_t>(c * q + j)] += counts[static_cast<std::size_t>(r * q + j)];
    }

    EquitableCheck out;
    out.quotient.q = q;
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            out.quotient.entries.emplace_back(Rational(sums[static_cast<std::size_t>(i * q + j)]) / sizes[static_cast<std::size_t>(i)]);

    out.equitable = true;
    for (int r = 0; r < g.order() && out.equitable; ++r) {
        const int c = cell_of[static_cast<std::size_t>(r)];
        for (int j = 0; j < q; ++j) {
            if (Rational(counts[static_cast<std::size_t>(r * q + j)]) != out.quotient(c, j)) {
                out.equitable = false;
                EquitableWitness w;
                w.vertex = g.vertex(r);
                w.cell = c + 1;
                for (int k = 0; k < q; ++k) {
                    w.observed.push_back(counts[static_cast<std::size_t>(r * q + k)]);
                    w.required.push_back(out.quotient(c, k));
                }
                out.witness = std::move(w);
                break;
            }
        }
    }
    out.quotient.equitable = out.equitable;
    return out;
}

std::vector<int> cells_of(const std::vector<bool>& in_cell1) {
    std::vector<int> c(in_cell1.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = in_cell1[i] ? 0 : 1;
    return c;
}

}  // namespace

TwoPartition::TwoPartition(std::shared_ptr<const JohnsonGraph> graph, std::vector<bool> in_cell1)
    : graph_(std::move(graph)), in_cell1_(std::move(in_cell1)) {
    if (!graph_) throw DomainError("partition without a graph");
    require_w3(*graph_);
    if (static_cast<int>(in_cell1_.size()) != graph_->order())
        throw DomainError("membership has " + std::to_string(in_cell1_.size()) + " entries, J(" + std::to_string(graph_->n()) +
                          ",3) has " + std::to_string(graph_->order()) + " vertices");
    size1_ = static_cast<int>(std::count(in_cell1_.begin(), in_cell1_.end(), true));

    auto check = check_partition(*graph_, cells_of(in_cell1_), 2);
    const auto& b = check.quotient;
    bool flip = false;
    if (b(0, 0) != b(1, 1)) {
        flip = b(0, 0) < b(1, 1);
    } else if (size1_ != graph_->order() - size1_) {
        flip = size1_ > graph_->order() - size1_;
    } else {
        flip = !in_cell1_[0];
    }
    if (flip) {
        in_cell1_.flip();
        size1_ = graph_->order() - size1_;
        check.quotient.entries = {b(1, 1), b(1, 0), b(0, 1), b(0, 0)};
    }
    flipped_ = flip;
    quotient_ = std::move(check.quotient);
}

TwoPartition TwoPartition::from_string(int n, std::string_view cells) {
    auto g = JohnsonGraph::get(n, 3);
    if (static_cast<int>(cells.size()) != g->order())
        throw DomainError("expected " + std::to_string(g->order()) + " cell labels, got " + std::to_string(cells.size()));
    std::vector<bool> in1(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] != '1' && cells[i] != '2') throw DomainError("cell labels must be 1 or 2");
        in1[i] = cells[i] == '1';
    }
    return TwoPartition(std::move(g), std::move(in1));
}

std::string TwoPartition::to_string() const {
    std::string s(in_cell1_.size(), '2');
    for (std::size_t i = 0; i < s.size(); ++i)
        if (in_cell1_[i]) s[i] = '1';
    return s;
}

TwoPartition TwoPartition::permuted(const Permutation& sigma) const {
    if (static_cast<int>(sigma.size()) != n() + 1) throw DomainError("permutation size does not match n");
    std::vector<bool> image(in_cell1_.size());
    for (int r = 0; r < graph_->order(); ++r)
        image[static_cast<std::size_t>(graph_->index(apply(sigma, graph_->vertex(r))))] = in_cell1_[static_cast<std::size_t>(r)];
    return TwoPartition(graph_, std::move(image));
}

TwoPartition TwoPartition::with_vertex_moved(int r) const {
    auto m = in_cell1_;
    m.at(static_cast<std::size_t>(r)) = !m.at(static_cast<std::size_t>(r));
    return TwoPartition(graph_, std::move(m));
}

ThreePartition::ThreePartition(std::shared_ptr<const JohnsonGraph> graph, std::vector<std::uint8_t> cells)
    : graph_(std::move(graph)), cells_(std::move(cells)) {
    if (!graph_) throw DomainError("partition without a graph");
    require_w3(*graph_);
    if (static_cast<int>(cells_.size()) != graph_->order()) throw DomainError("cell vector size does not match the graph");
    std::array<int, 3> sizes{};
    for (auto c : cells_) {
        if (c < 1 || c > 3) throw DomainError("3-partition cells are labelled 1..3");
        ++sizes[c - 1];
    }
    for (int c = 0; c < 3; ++c)
        if (sizes[static_cast<std::size_t>(c)] == 0) throw DomainError("cell " + std::to_string(c + 1) + " is empty");
}

int ThreePartition::cell_size(int c) const {
    return static_cast<int>(std::count(cells_.begin(), cells_.end(), static_cast<std::uint8_t>(c)));
}

QuotientMatrix quotient_matrix(const TwoPartition& p) { return p.quotient(); }

QuotientMatrix quotient_matrix(const ThreePartition& p) { return is_equitable(p).quotient; }

EquitableCheck is_equitable(const TwoPartition& p) {
    return check_partition(p.graph(), cells_of(p.membership()), 2);
}

EquitableCheck is_equitable(const ThreePartition& p) {
    std::vector<int> c(p.cells().begin(), p.cells().end());
    for (auto& x : c) --x;
    return check_partition(p.graph(), c, 3);
}

Rational theta_of(const QuotientMatrix& q) {
    if (q.q != 2) throw DomainError("θ is defined for 2x2 quotient matrices");
    if (!q.equitable) throw DomainError("θ requires an equitable partition");
    Rational theta = q(0, 0) - q(1, 0);
    if (theta != q(1, 1) - q(0, 1)) throw DomainError("quotient rows do not share a common sum");
    return theta;
}

int row_indicator_sum(const TwoPartition& p, int x, int y) {
    int s = 0;
    for (const auto& t : clique_star(x, y, p.graph().context())) s += p.indicator(t);
    return s;
}

LocalParams local_params(const TwoPartition& p) {
    const auto& q = p.quotient();
    if (!q.equitable) throw DomainError("local identities require an equitable partition");
    if (!q.is_integral()) throw DomainError("local identities require an integral quotient matrix");
    return {theta_of(q), q(1, 0)};
}

bool local_identity_check(const TwoPartition& p, const Triple& t) {
    return local_identity_check(p, t, local_params(p));
}

bool local_identity_check(const TwoPartition& p, const Triple& t, const LocalParams& params) {
    if (t.arity() != 3) throw InvalidVertex("expected a vertex of J(n,3)");
    const int rows = row_indicator_sum(p, t[0], t[1]) + row_indicator_sum(p, t[0], t[2]) + row_indicator_sum(p, t[1], t[2]);
    return Rational(p.indicator(t)) * (params.theta + 3) + params.p21 == Rational(rows);
}

namespace {

void require_distinct(std::initializer_list<int> xs) {
    std::set<int> s(xs);
    if (s.size() != xs.size()) throw DomainError("elements must be pairwise distinct");
}

}  // namespace

bool pair_difference_identity(const TwoPartition& p, int a, int b, int c, int d) {
    return pair_difference_identity(p, a, b, c, d, local_params(p).theta);
}

bool pair_difference_identity(const TwoPartition& p, int a, int b, int c, int d, const Rational& theta) {
    require_distinct({a, b, c, d});
    const int lhs = row_indicator_sum(p, a, b) - row_indicator_sum(p, c, d);
    const int inner = p.indicator({a, b, c}) + p.indicator({a, b, d}) - p.indicator({a, c, d}) - p.indicator({b, c, d});
    return Rational(2 * lhs) == (theta + 3) * inner;
}

bool five_term_identity(const TwoPartition& p, int a, int b, int c, int d, int e) {
    return five_term_identity(p, a, b, c, d, e, local_params(p).theta);
}

bool five_term_identity(const TwoPartition& p, int a, int b, int c, int d, int e, const Rational& theta) {
    require_distinct({a, b, c, d, e});
    const int lhs = row_indicator_sum(p, a, b) - row_indicator_sum(p, a, c);
    const int inner = p.indicator({a, b, d}) + p.indicator({a, b, e}) + p.indicator({c, d, e}) - p.indicator({a, c, d}) -
                      p.indicator({a, c, e}) - p.indicator({b, d, e});
    return Rational(2 * lhs) == (theta + 3) * inner;
}

}  // namespace jeq
