#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jeq {

/// Largest ground-set element accepted anywhere (text forms use at most two digits).
inline constexpr int kMaxGround = 99;

std::int64_t binomial(int n, int k);

/// A w-subset of [n] (w <= 3), elements strictly increasing and 1-based.
class Triple {
public:
    Triple() = default;
    /// Sorts its input; throws DomainError on repeats, non-positive elements or arity > 3.
    Triple(std::initializer_list<int> elements);
    explicit Triple(std::span<const int> elements);

    /// Parses the canonical text form "a,b,c".
    static Triple parse(std::string_view text);

    int arity() const noexcept { return arity_; }
    int operator[](int i) const noexcept { return elements_[static_cast<std::size_t>(i)]; }
    int max() const noexcept { return elements_[static_cast<std::size_t>(arity_ - 1)]; }
    bool contains(int x) const noexcept;

    const int* begin() const noexcept { return elements_.data(); }
    const int* end() const noexcept { return elements_.data() + arity_; }

    /// Same subset with one element swapped for another; `to` must not already be present.
    Triple replace(int from, int to) const;
    /// Subset with x added / removed.
    Triple with(int x) const;
    Triple without(int x) const;

    std::string to_string() const;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend std::strong_ordering operator<=>(const Triple&, const Triple&) = default;

private:
    void init(std::span<const int> elements);

    std::array<int, 3> elements_{};
    int arity_ = 0;
};

/// Size of the intersection of two subsets.
int intersection_size(const Triple& s, const Triple& t);

struct GraphContext {
    int n = 0;
    int w = 3;

    /// Throws DomainError unless 1 <= w <= 3 and 2w <= n <= kMaxGround.
    void validate() const;
    friend bool operator==(const GraphContext&, const GraphContext&) = default;
};

/// Distinct eigenvalues of J(n,w), largest first: eigenvalue(i) = (w-i)(n-w-i) - i.
struct Spectrum {
    std::vector<int> eigenvalues;

    int k() const { return eigenvalues.at(0); }
    int lambda(int i) const { return eigenvalues.at(static_cast<std::size_t>(i)); }
};

int eigenvalue(const GraphContext& ctx, int i);
Spectrum spectrum(const GraphContext& ctx);

/// Colex rank through the combinatorial number system; throws InvalidVertex
/// when t has the wrong arity or an element outside [1..n].
std::int64_t rank(const Triple& t, const GraphContext& ctx);
Triple unrank(std::int64_t r, const GraphContext& ctx);

/// |s ∩ t| = w - 1. Throws DomainError on arity mismatch or s == t.
bool adjacent(const Triple& s, const Triple& t);

/// Neighbours in row-major order: for w = 3 the ab-row, ac-row, bc-row, each by
/// ascending new element. Generally: keep the (w-1)-subsets in lexicographic order.
std::vector<Triple> neighbors(const Triple& t, const GraphContext& ctx);

/// The xy-row of Γ(t): triples {x,y,i}, i ∉ t, ascending.
std::vector<Triple> row(const Triple& t, int x, int y, const GraphContext& ctx);
/// The i-column of Γ(t): t with one element replaced by i, in row order.
std::vector<Triple> column(const Triple& t, int i, const GraphContext& ctx);
/// The clique xy*: every triple containing both x and y.
std::vector<Triple> clique_star(int x, int y, const GraphContext& ctx);

/// Vertex table and neighbour cache of J(n,w). Immutable once built.
class JohnsonGraph {
public:
    JohnsonGraph(int n, int w);

    /// Shared, lazily built instance; safe to call from several threads.
    static std::shared_ptr<const JohnsonGraph> get(int n, int w);

    int n() const noexcept { return ctx_.n; }
    int w() const noexcept { return ctx_.w; }
    const GraphContext& context() const noexcept { return ctx_; }
    int order() const noexcept { return static_cast<int>(vertices_.size()); }
    int degree() const noexcept { return degree_; }

    const Triple& vertex(int r) const { return vertices_.at(static_cast<std::size_t>(r)); }
    int index(const Triple& t) const { return static_cast<int>(rank(t, ctx_)); }

    /// Neighbour ranks in the order of neighbors().
    std::span<const int> neighbor_ranks(int r) const {
        return {adjacency_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(degree_),
                static_cast<std::size_t>(degree_)};
    }

private:
    GraphContext ctx_;
    int degree_ = 0;
    std::vector<Triple> vertices_;
    std::vector<int> adjacency_;
};

}  // namespace jeq
