#include "jeq/jgraph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <utility>

#include "jeq/error.hpp"

namespace jeq {

std::int64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Triple::Triple(std::initializer_list<int> elements) {
    init(std::span<const int>(elements.begin(), elements.size()));
}

Triple::Triple(std::span<const int> elements) { init(elements); }

void Triple::init(std::span<const int> elements) {
    if (elements.empty() || elements.size() > 3)
        throw DomainError("subset arity must be between 1 and 3, got " + std::to_string(elements.size()));
    arity_ = static_cast<int>(elements.size());
    std::copy(elements.begin(), elements.end(), elements_.begin());
    std::sort(elements_.begin(), elements_.begin() + arity_);
    for (int i = 0; i < arity_; ++i) {
        if (elements_[static_cast<std::size_t>(i)] < 1)
            throw DomainError("subset elements are 1-based");
        if (i > 0 && elements_[static_cast<std::size_t>(i)] == elements_[static_cast<std::size_t>(i - 1)])
            throw DomainError("repeated element " + std::to_string(elements_[static_cast<std::size_t>(i)]));
    }
}

Triple Triple::parse(std::string_view text) {
    std::vector<int> elements;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string_view token = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        if (token.empty() || token.size() > 2)
            throw DomainError("malformed subset text '" + std::string(text) + "'");
        int value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size())
            throw DomainError("malformed subset text '" + std::string(text) + "'");
        elements.push_back(value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (!std::is_sorted(elements.begin(), elements.end()))
        throw DomainError("subset text must be ascending: '" + std::string(text) + "'");
    return Triple(std::span<const int>(elements));
}

bool Triple::contains(int x) const noexcept {
    return std::find(begin(), end(), x) != end();
}

Triple Triple::replace(int from, int to) const {
    if (!contains(from)) throw DomainError(std::to_string(from) + " not in " + to_string());
    if (contains(to)) throw DomainError(std::to_string(to) + " already in " + to_string());
    std::array<int, 3> e = elements_;
    std::replace(e.begin(), e.begin() + arity_, from, to);
    return Triple(std::span<const int>(e.data(), static_cast<std::size_t>(arity_)));
}

Triple Triple::with(int x) const {
    std::array<int, 3> e{};
    std::copy(begin(), end(), e.begin());
    if (arity_ >= 3) throw DomainError("cannot extend a 3-subset");
    e[static_cast<std::size_t>(arity_)] = x;
    return Triple(std::span<const int>(e.data(), static_cast<std::size_t>(arity_ + 1)));
}

Triple Triple::without(int x) const {
    if (!contains(x)) throw DomainError(std::to_string(x) + " not in " + to_string());
    if (arity_ == 1) throw DomainError("cannot shrink a 1-subset");
    std::array<int, 3> e{};
    int k = 0;
    for (int v : *this)
        if (v != x) e[static_cast<std::size_t>(k++)] = v;
    return Triple(std::span<const int>(e.data(), static_cast<std::size_t>(k)));
}

std::string Triple::to_string() const {
    std::string s;
    for (int i = 0; i < arity_; ++i) {
        if (i) s += ',';
        s += std::to_string(elements_[static_cast<std::size_t>(i)]);
    }
    return s;
}

int intersection_size(const Triple& s, const Triple& t) {
    int c = 0;
    for (int x : s) c += t.contains(x) ? 1 : 0;
    return c;
}

void GraphContext::validate() const {
    if (w < 1 || w > 3) throw DomainError("subset size w must be in 1..3, got " + std::to_string(w));
    if (n < 2 * w) throw DomainError("J(n,w) requires n >= 2w (n=" + std::to_string(n) + ", w=" + std::to_string(w) + ")");
    if (n > kMaxGround) throw DomainError("ground set limited to [1.." + std::to_string(kMaxGround) + "]");
}

int eigenvalue(const GraphContext& ctx, int i) {
    ctx.validate();
    if (i < 0 || i > ctx.w) throw DomainError("eigenvalue index must be in 0..w");
    return (ctx.w - i) * (ctx.n - ctx.w - i) - i;
}

Spectrum spectrum(const GraphContext& ctx) {
    Spectrum s;
    for (int i = 0; i <= ctx.w; ++i) s.eigenvalues.push_back(eigenvalue(ctx, i));
    return s;
}

namespace {

void check_vertex(const Triple& t, const GraphContext& ctx) {
    if (t.arity() != ctx.w)
        throw InvalidVertex("vertex " + t.to_string() + " has arity " + std::to_string(t.arity()) + ", expected " + std::to_string(ctx.w));
    if (t.max() > ctx.n)
        throw InvalidVertex("vertex " + t.to_string() + " has an element outside [1.." + std::to_string(ctx.n) + "]");
}

void check_element(int x, const GraphContext& ctx) {
    if (x < 1 || x > ctx.n) throw InvalidVertex("element " + std::to_string(x) + " outside [1.." + std::to_string(ctx.n) + "]");
}

}  // namespace

std::int64_t rank(const Triple& t, const GraphContext& ctx) {
    ctx.validate();
    check_vertex(t, ctx);
    std::int64_t r = 0;
    for (int i = 0; i < t.arity(); ++i) r += binomial(t[i] - 1, i + 1);
    return r;
}

Triple unrank(std::int64_t r, const GraphContext& ctx) {
    ctx.validate();
    if (r < 0 || r >= binomial(ctx.n, ctx.w)) throw InvalidVertex("rank " + std::to_string(r) + " out of range");
    std::array<int, 3> e{};
    for (int i = ctx.w; i >= 1; --i) {
        int x = i;  // largest x with C(x-1, i) <= r
        while (binomial(x, i) <= r) ++x;
        e[static_cast<std::size_t>(i - 1)] = x;
        r -= binomial(x - 1, i);
    }
    return Triple(std::span<const int>(e.data(), static_cast<std::size_t>(ctx.w)));
}

bool adjacent(const Triple& s, const Triple& t) {
    if (s.arity() != t.arity()) throw DomainError("arity mismatch between " + s.to_string() + " and " + t.to_string());
    if (s == t) throw DomainError("adjacency queried for identical vertices " + s.to_string());
    return intersection_size(s, t) == s.arity() - 1;
}

std::vector<Triple> neighbors(const Triple& t, const GraphContext& ctx) {
    ctx.validate();
    check_vertex(t, ctx);
    std::vector<Triple> out;
    out.reserve(static_cast<std::size_t>(ctx.w * (ctx.n - ctx.w)));
    for (int drop = t.arity() - 1; drop >= 0; --drop) {
        for (int i = 1; i <= ctx.n; ++i) {
            if (t.contains(i)) continue;
            out.push_back(t.replace(t[drop], i));
        }
    }
    return out;
}

std::vector<Triple> row(const Triple& t, int x, int y, const GraphContext& ctx) {
    ctx.validate();
    check_vertex(t, ctx);
    if (ctx.w != 3) throw DomainError("rows are defined for J(n,3)");
    if (x == y || !t.contains(x) || !t.contains(y))
        throw DomainError("pair " + std::to_string(x) + "," + std::to_string(y) + " is not inside " + t.to_string());
    std::vector<Triple> out;
    for (int i = 1; i <= ctx.n; ++i)
        if (!t.contains(i)) out.push_back(Triple{x, y, i});
    return out;
}

std::vector<Triple> column(const Triple& t, int i, const GraphContext& ctx) {
    ctx.validate();
    check_vertex(t, ctx);
    check_element(i, ctx);
    if (ctx.w != 3) throw DomainError("columns are defined for J(n,3)");
    if (t.contains(i)) throw DomainError("column index " + std::to_string(i) + " lies in " + t.to_string());
    return {Triple{t[0], t[1], i}, Triple{t[0], t[2], i}, Triple{t[1], t[2], i}};
}

std::vector<Triple> clique_star(int x, int y, const GraphContext& ctx) {
    ctx.validate();
    if (ctx.w != 3) throw DomainError("xy* is defined for J(n,3)");
    check_element(x, ctx);
    check_element(y, ctx);
    if (x == y) throw DomainError("xy* needs distinct elements");
    std::vector<Triple> out;
    for (int i = 1; i <= ctx.n; ++i)
        if (i != x && i != y) out.push_back(Triple{x, y, i});
    return out;
}

JohnsonGraph::JohnsonGraph(int n, int w) : ctx_{n, w} {
    ctx_.validate();
    degree_ = w * (n - w);
    const auto order = binomial(n, w);
    vertices_.reserve(static_cast<std::size_t>(order));
    for (std::int64_t r = 0; r < order; ++r) vertices_.push_back(unrank(r, ctx_));
    adjacency_.reserve(static_cast<std::size_t>(order) * static_cast<std::size_t>(degree_));
    for (const auto& t : vertices_)
        for (const auto& u : neighbors(t, ctx_)) adjacency_.push_back(static_cast<int>(rank(u, ctx_)));
}

std::shared_ptr<const JohnsonGraph> JohnsonGraph::get(int n, int w) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const JohnsonGraph>> cache;
    GraphContext{n, w}.validate();
    std::lock_guard lock(mutex);
    auto& slot = cache[{n, w}];
    if (!slot) slot = std::make_shared<const JohnsonGraph>(n, w);
    return slot;
}

}  // namespace jeq
