#include "jeq/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "jeq/canonical.hpp"

namespace jeq {

std::vector<Matrix2> candidate_matrices(int n, int theta) {
    const GraphContext ctx{n, 3};
    const auto sp = spectrum(ctx);
    if (theta == sp.k()) throw DomainError("θ = k gives only the trivial partition");
    if (std::find(sp.eigenvalues.begin(), sp.eigenvalues.end(), theta) == sp.eigenvalues.end())
        throw DomainError("θ = " + std::to_string(theta) + " is not an eigenvalue of J(" + std::to_string(n) + ",3)");
    const int k = sp.k();
    std::vector<Matrix2> out;
    for (int b11 = 0; b11 <= k; ++b11) {
        const int b21 = b11 - theta, b12 = k - b11, b22 = k - b21;
        if (b21 < 0 || b21 > k || b22 < 0 || b22 > k || b11 < b22) continue;
        out.push_back({{{b11, b12}, {b21, b22}}});
    }
    return out;
}

std::string to_string(SymmetryMode m) {
    switch (m) {
        case SymmetryMode::None: return "none";
        case SymmetryMode::Dedup: return "dedup";
        case SymmetryMode::Canonical: return "canonical";
    }
    return "?";
}

std::optional<SymmetryMode> parse_symmetry(std::string_view s) {
    if (s == "none") return SymmetryMode::None;
    if (s == "dedup") return SymmetryMode::Dedup;
    if (s == "canonical") return SymmetryMode::Canonical;
    return std::nullopt;
}

void SearchProblem::validate() const {
    const GraphContext ctx{n, 3};
    ctx.validate();
    const int k = eigenvalue(ctx, 0);
    for (const auto& row : q)
        for (int v : row)
            if (v < 0 || v > k) throw DomainError("quotient entries must lie in [0," + std::to_string(k) + "]");
    if (q[0][0] + q[0][1] != k || q[1][0] + q[1][1] != k)
        throw DomainError("quotient rows must sum to k = " + std::to_string(k) + ", got " + jeq::to_string(q));
    const int theta = q[0][0] - q[1][0];
    if (theta == k) throw DomainError("θ = k gives only the trivial partition");
    const auto sp = spectrum(ctx);
    if (std::find(sp.eigenvalues.begin(), sp.eigenvalues.end(), theta) == sp.eigenvalues.end())
        throw DomainError("matrix eigenvalue θ = " + std::to_string(theta) + " is not an eigenvalue of J(" + std::to_string(n) + ",3)");
    if (!prune && binomial(n, 3) > 24) throw DomainError("unpruned enumeration is limited to 24 vertices");
}

int effective_threads(int requested) {
    int t = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* cap = std::getenv("JE_THREADS")) {
        const int c = std::atoi(cap);
        if (c > 0) t = std::min(t, c);
    }
    return std::max(t, 1);
}

namespace {

using Clock = std::chrono::steady_clock;

struct Budget {
    std::uint64_t max_nodes = 0;
    std::optional<Clock::time_point> deadline;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> stop{false};

    // Counts one node; false once any budget is spent.
    bool tick() {
        if (stop.load(std::memory_order_relaxed)) return false;
        const auto n = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (max_nodes && n > max_nodes) stop = true;
        if (deadline && (n & 255) == 0 && Clock::now() > *deadline) stop = true;
        return !stop.load(std::memory_order_relaxed);
    }
};

struct TaskResult {
    std::vector<std::vector<bool>> solutions;
    std::vector<std::vector<Decision>> frontier;
    std::uint64_t local_prunes = 0, size_prunes = 0, spectral_prunes = 0, forced = 0;
    bool interrupted = false;
};

enum class ConstraintKind : std::uint8_t { Vertex, Size, Spectral };

// sum coef * [v in cell 1] == rhs
struct Constraint {
    ConstraintKind kind = ConstraintKind::Vertex;
    int rhs = 0;
    int max_abs = 0;
    std::vector<std::pair<int, int>> terms;
};

struct ConstraintSet {
    std::vector<Constraint> constraints;
    std::vector<std::vector<std::pair<int, int>>> occurrences;  // per vertex: (constraint, coef)
    bool infeasible = false;

    void add(ConstraintKind kind, std::map<int, int> coefs, int rhs) {
        Constraint c;
        c.kind = kind;
        c.rhs = rhs;
        for (auto [v, a] : coefs)
            if (a != 0) {
                c.terms.emplace_back(v, a);
                c.max_abs = std::max(c.max_abs, std::abs(a));
            }
        if (c.terms.empty()) {
            if (rhs != 0) infeasible = true;
            return;
        }
        const int id = static_cast<int>(constraints.size());
        for (auto [v, a] : c.terms) occurrences[static_cast<std::size_t>(v)].emplace_back(id, a);
        constraints.push_back(std::move(c));
    }
};

// Every vertex count as a linear equation, the cell size, and, when asked, the
// orthogonality of the cell-1 indicator to each eigenspace other than V0 and V_θ.
ConstraintSet build_constraints(const JohnsonGraph& g, const Matrix2& q, int target1, bool spectral) {
    const int n = g.n();
    const int theta = q[0][0] - q[1][0];
    ConstraintSet cs;
    cs.occurrences.resize(static_cast<std::size_t>(g.order()));
    for (int v = 0; v < g.order(); ++v) {
        std::map<int, int> c;
        for (int u : g.neighbor_ranks(v)) c[u] = 1;
        c[v] = -theta;
        cs.add(ConstraintKind::Vertex, std::move(c), q[1][0]);
    }
    {
        std::map<int, int> c;
        for (int v = 0; v < g.order(); ++v) c[v] = 1;
        cs.add(ConstraintKind::Size, std::move(c), target1);
    }
    if (!spectral) return cs;
    const GraphContext ctx{n, 3};
    auto rank = [&](int a, int b, int c) {
        std::array<int, 3> t{a, b, c};
        std::sort(t.begin(), t.end());
        return g.index({t[0], t[1], t[2]});
    };
    if (theta != eigenvalue(ctx, 1)) {
        // Every element lies in the same number of cell-1 triples.
        if ((3 * target1) % n != 0) {
            cs.infeasible = true;
            return cs;
        }
        for (int a = 1; a <= n; ++a) {
            std::map<int, int> c;
            for (int b = 1; b <= n; ++b)
                for (int d = b + 1; d <= n; ++d)
                    if (b != a && d != a) c[rank(a, b, d)] = 1;
            cs.add(ConstraintKind::Spectral, std::move(c), 3 * target1 / n);
        }
    }
    // Signed sums over disjoint pairs {a,a'},{b,b'}(,{c,c'}) span V2 and V3.
    std::vector<std::pair<int, int>> pairs;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) pairs.emplace_back(a, b);
    auto disjoint = [](std::pair<int, int> x, std::pair<int, int> y) {
        return x.first != y.first && x.first != y.second && x.second != y.first && x.second != y.second;
    };
    if (theta != eigenvalue(ctx, 2)) {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (std::size_t j = i + 1; j < pairs.size(); ++j) {
                const auto [a, a2] = pairs[i];
                const auto [b, b2] = pairs[j];
                if (!disjoint(pairs[i], pairs[j])) continue;
                std::map<int, int> c;
                for (auto [x, y, s] : {std::tuple{a, b, 1}, {a2, b, -1}, {a, b2, -1}, {a2, b2, 1}})
                    for (int z = 1; z <= n; ++z)
                        if (z != x && z != y) c[rank(x, y, z)] += s;
                cs.add(ConstraintKind::Spectral, std::move(c), 0);
            }
    }
    if (theta != eigenvalue(ctx, 3)) {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (std::size_t j = i + 1; j < pairs.size(); ++j) {
                if (!disjoint(pairs[i], pairs[j])) continue;
                for (std::size_t l = j + 1; l < pairs.size(); ++l) {
                    if (!disjoint(pairs[i], pairs[l]) || !disjoint(pairs[j], pairs[l])) continue;
                    std::map<int, int> c;
                    for (int s = 0; s < 8; ++s) {
                        const int x = s & 4 ? pairs[i].second : pairs[i].first;
                        const int y = s & 2 ? pairs[j].second : pairs[j].first;
                        const int z = s & 1 ? pairs[l].second : pairs[l].first;
                        c[rank(x, y, z)] += std::popcount(static_cast<unsigned>(s)) % 2 ? -1 : 1;
                    }
                    cs.add(ConstraintKind::Spectral, std::move(c), 0);
                }
            }
    }
    return cs;
}

// Backtracking over cell labels with bound propagation on linear equations.
class Engine {
public:
    Engine(const JohnsonGraph& g, const Matrix2& q, const ConstraintSet& cs, bool prune, Budget& budget)
        : g_(g), q_(q), cs_(cs), prune_(prune), budget_(budget), cell_(static_cast<std::size_t>(g.order()), 0),
          fixed_(cs.constraints.size(), 0), pos_(cs.constraints.size(), 0), neg_(cs.constraints.size(), 0),
          queued_(cs.constraints.size(), 0) {
        for (std::size_t i = 0; i < cs.constraints.size(); ++i)
            for (auto [v, a] : cs.constraints[i].terms) (a > 0 ? pos_[i] : neg_[i]) += a;
    }

    // Replays decisions then searches the remaining subtree.
    void run(const std::vector<Decision>& prefix, TaskResult& out) {
        out_ = &out;
        std::vector<Decision> path;
        for (const auto& d : prefix) {
            path.push_back(d);
            if (!decide(d.first, d.second)) return;
        }
        dfs(path, 0);
    }

    // Enumerates prefixes of `depth` branch decisions (or complete leaves).
    void split(int depth, std::vector<std::vector<Decision>>& tasks) {
        std::vector<Decision> path;
        split_rec(path, 0, depth, tasks);
    }

private:
    bool set(int v, std::uint8_t c) {
        auto& cv = cell_[static_cast<std::size_t>(v)];
        if (cv == c) return true;
        if (cv != 0) return false;
        cv = c;
        trail_.push_back(v);
        if (!prune_) return true;
        for (auto [id, a] : cs_.occurrences[static_cast<std::size_t>(v)]) {
            const auto i = static_cast<std::size_t>(id);
            (a > 0 ? pos_[i] : neg_[i]) -= a;
            if (c == 1) fixed_[i] += a;
            if (!queued_[i]) {
                queued_[i] = 1;
                work_.push_back(id);
            }
        }
        return true;
    }

    bool force(int v, std::uint8_t c) {
        if (cell_[static_cast<std::size_t>(v)] == 0 && out_) ++out_->forced;
        return set(v, c);
    }

    bool fail(const Constraint& c) {
        if (!out_) return false;
        switch (c.kind) {
            case ConstraintKind::Vertex: ++out_->local_prunes; break;
            case ConstraintKind::Size: ++out_->size_prunes; break;
            case ConstraintKind::Spectral: ++out_->spectral_prunes; break;
        }
        return false;
    }

    bool check(int id) {
        const auto i = static_cast<std::size_t>(id);
        const auto& con = cs_.constraints[i];
        const int lo = fixed_[i] + neg_[i];
        const int hi = fixed_[i] + pos_[i];
        if (con.rhs < lo || con.rhs > hi) return fail(con);
        if (con.rhs - lo >= con.max_abs && hi - con.rhs >= con.max_abs) return true;
        for (auto [v, a] : con.terms) {
            if (cell_[static_cast<std::size_t>(v)] != 0) continue;
            const int lo_now = fixed_[i] + neg_[i];
            const int hi_now = fixed_[i] + pos_[i];
            const bool one_ok = lo_now + std::max(a, 0) <= con.rhs && hi_now + std::min(a, 0) >= con.rhs;
            const bool zero_ok = lo_now - std::min(a, 0) <= con.rhs && hi_now - std::max(a, 0) >= con.rhs;
            if (!one_ok && !zero_ok) return fail(con);
            if (!one_ok && !force(v, 2)) return false;
            if (!zero_ok && !force(v, 1)) return false;
        }
        return true;
    }

    bool decide(int v, std::uint8_t c) {
        bool ok = set(v, c);
        while (ok && !work_.empty()) {
            const int id = work_.back();
            work_.pop_back();
            queued_[static_cast<std::size_t>(id)] = 0;
            ok = check(id);
        }
        for (int id : work_) queued_[static_cast<std::size_t>(id)] = 0;
        work_.clear();
        return ok;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            const int v = trail_.back();
            trail_.pop_back();
            const auto c = cell_[static_cast<std::size_t>(v)];
            if (prune_)
                for (auto [id, a] : cs_.occurrences[static_cast<std::size_t>(v)]) {
                    const auto i = static_cast<std::size_t>(id);
                    (a > 0 ? pos_[i] : neg_[i]) += a;
                    if (c == 1) fixed_[i] -= a;
                }
            cell_[static_cast<std::size_t>(v)] = 0;
        }
    }

    int next_undecided(int from) const {
        while (from < g_.order() && cell_[static_cast<std::size_t>(from)] != 0) ++from;
        return from;
    }

    bool leaf_is_solution() const {
        if (prune_) return true;
        int size1 = 0;
        for (int v = 0; v < g_.order(); ++v) {
            int c1 = 0;
            for (int u : g_.neighbor_ranks(v)) c1 += cell_[static_cast<std::size_t>(u)] == 1;
            const bool in1 = cell_[static_cast<std::size_t>(v)] == 1;
            size1 += in1;
            if (c1 != (in1 ? q_[0][0] : q_[1][0])) return false;
        }
        return size1 > 0 && size1 < g_.order();
    }

    void record() {
        std::vector<bool> in1(cell_.size());
        for (std::size_t i = 0; i < cell_.size(); ++i) in1[i] = cell_[i] == 1;
        out_->solutions.push_back(std::move(in1));
    }

    static constexpr std::array<std::uint8_t, 2> kBranchOrder{2, 1};

    // False when the budget ran out inside this subtree.
    bool dfs(std::vector<Decision>& path, int from) {
        if (!budget_.tick()) {
            out_->frontier.push_back(path);
            out_->interrupted = true;
            return false;
        }
        const int v = next_undecided(from);
        if (v == g_.order()) {
            if (leaf_is_solution()) record();
            return true;
        }
        for (std::size_t i = 0; i < kBranchOrder.size(); ++i) {
            const auto c = kBranchOrder[i];
            const auto mark = trail_.size();
            path.emplace_back(v, c);
            const bool ok = decide(v, c);
            const bool finished = !ok || dfs(path, v + 1);
            undo(mark);
            path.pop_back();
            if (!finished) {
                for (std::size_t j = i + 1; j < kBranchOrder.size(); ++j) {
                    auto alt = path;
                    alt.emplace_back(v, kBranchOrder[j]);
                    out_->frontier.push_back(std::move(alt));
                }
                return false;
            }
        }
        return true;
    }

    void split_rec(std::vector<Decision>& path, int from, int depth, std::vector<std::vector<Decision>>& tasks) {
        const int v = next_undecided(from);
        if (static_cast<int>(path.size()) == depth || v == g_.order()) {
            tasks.push_back(path);
            return;
        }
        for (auto c : kBranchOrder) {
            const auto mark = trail_.size();
            path.emplace_back(v, c);
            if (decide(v, c)) split_rec(path, v + 1, depth, tasks);
            undo(mark);
            path.pop_back();
        }
    }

    const JohnsonGraph& g_;
    Matrix2 q_;
    const ConstraintSet& cs_;
    bool prune_;
    Budget& budget_;
    std::vector<std::uint8_t> cell_;
    std::vector<int> fixed_, pos_, neg_;
    std::vector<char> queued_;
    std::vector<int> trail_, work_;
    TaskResult* out_ = nullptr;
};

// Column-type counts of the neighbourhood of {1,2,3}; bit 2 = row 12, bit 1 = row 13, bit 0 = row 23.
using TypeCounts = std::array<int, 8>;

TypeCounts permute_rows(const TypeCounts& c, const std::array<int, 3>& perm) {
    TypeCounts out{};
    for (int t = 0; t < 8; ++t) {
        int p = 0;
        for (int r = 0; r < 3; ++r) p |= (t >> (2 - perm[static_cast<std::size_t>(r)]) & 1) << (2 - r);
        out[static_cast<std::size_t>(p)] += c[static_cast<std::size_t>(t)];
    }
    return out;
}

bool row_canonical(const TypeCounts& c) {
    std::array<int, 3> perm{0, 1, 2};
    do {
        if (permute_rows(c, perm) < c) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

void type_multisets(int total, int slot, int ones_left, TypeCounts& cur, std::vector<TypeCounts>& out) {
    if (slot == 8) {
        if (total == 0 && ones_left == 0) out.push_back(cur);
        return;
    }
    const int w = std::popcount(static_cast<unsigned>(slot));
    for (int k = 0; k <= total && k * w <= ones_left; ++k) {
        cur[static_cast<std::size_t>(slot)] = k;
        type_multisets(total - k, slot + 1, ones_left - k * w, cur, out);
    }
    cur[static_cast<std::size_t>(slot)] = 0;
}

// Root tasks with {1,2,3} in cell 1 and columns 4..n filled in sorted type order.
std::vector<std::vector<Decision>> canonical_roots(const JohnsonGraph& g, int b11) {
    const int n = g.n();
    std::vector<TypeCounts> all;
    TypeCounts cur{};
    type_multisets(n - 3, 0, b11, cur, all);
    std::vector<std::vector<Decision>> roots;
    for (const auto& c : all) {
        if (!row_canonical(c)) continue;
        std::vector<Decision> d{{g.index({1, 2, 3}), 1}};
        int col = 4;
        for (int t = 0; t < 8; ++t)
            for (int k = 0; k < c[static_cast<std::size_t>(t)]; ++k, ++col) {
                d.emplace_back(g.index({1, 2, col}), (t >> 2 & 1) ? 1 : 2);
                d.emplace_back(g.index({1, 3, col}), (t >> 1 & 1) ? 1 : 2);
                d.emplace_back(g.index({2, 3, col}), (t & 1) ? 1 : 2);
            }
        roots.push_back(std::move(d));
    }
    return roots;
}

}  // namespace

SearchReport enumerate(const SearchProblem& problem) {
    problem.validate();
    const auto start = Clock::now();
    auto graph = JohnsonGraph::get(problem.n, 3);
    const auto& g = *graph;
    const auto& q = problem.q;

    SearchReport rep;
    rep.n = problem.n;
    rep.q = q;
    rep.symmetry = problem.symmetry;

    const std::int64_t order = g.order();
    const std::int64_t cross = q[0][1] + q[1][0];
    // |X1| b12 = |X2| b21 fixes the cell sizes.
    if (cross == 0 || (order * q[1][0]) % cross != 0) {
        rep.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return rep;
    }
    const int target1 = static_cast<int>(order * q[1][0] / cross);
    if (target1 <= 0 || target1 >= order) {
        rep.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return rep;
    }

    Budget budget;
    budget.max_nodes = problem.limits.max_nodes;
    if (problem.limits.max_seconds > 0)
        budget.deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(problem.limits.max_seconds));

    const auto constraints = build_constraints(g, q, target1, problem.spectral);
    if (problem.prune && constraints.infeasible) {
        rep.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return rep;
    }

    const int threads = effective_threads(problem.threads);
    std::vector<std::vector<Decision>> tasks;
    if (problem.symmetry == SymmetryMode::Canonical) {
        tasks = canonical_roots(g, q[0][0]);
    } else if (threads > 1 && problem.split_depth > 0) {
        Engine splitter(g, q, constraints, problem.prune, budget);
        splitter.split(problem.split_depth, tasks);
    } else {
        tasks.emplace_back();
    }
    rep.tasks = tasks.size();

    std::vector<TaskResult> results(tasks.size());
    std::vector<char> started(tasks.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            if (budget.stop.load()) return;
            started[i] = 1;
            Engine e(g, q, constraints, problem.prune, budget);
            e.run(tasks[i], results[i]);
        }
    };
    if (threads == 1 || tasks.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < std::min<int>(threads, static_cast<int>(tasks.size())); ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::set<std::string> seen;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto& r = results[i];
        rep.local_prunes += r.local_prunes;
        rep.size_prunes += r.size_prunes;
        rep.spectral_prunes += r.spectral_prunes;
        rep.forced += r.forced;
        if (!started[i]) {
            rep.complete = false;
            rep.frontier.push_back(tasks[i]);
            continue;
        }
        if (r.interrupted) rep.complete = false;
        for (const auto& f : r.frontier) rep.frontier.push_back(f);
        for (const auto& in1 : r.solutions) {
            ++rep.raw_solutions;
            TwoPartition p(graph, in1);
            const auto check = is_equitable(p);
            if (!check.equitable || check.quotient.as_matrix2() != q)
                throw std::logic_error("search produced a partition that does not realise " + jeq::to_string(q));
            SearchSolution s{std::move(p), std::nullopt, {}};
            if (problem.symmetry != SymmetryMode::None) {
                s.canonical = canonical_form(s.partition);
                if (!seen.insert(s.canonical).second) continue;
            }
            if (problem.recognize && problem.n % 2 == 0 && q[0][0] - q[1][0] == problem.n - 7)
                s.recognition = recognize(s.partition);
            rep.solutions.push_back(std::move(s));
        }
    }
    rep.nodes = budget.nodes.load();
    rep.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (!rep.complete) throw BudgetExhausted(std::move(rep));
    return rep;
}

std::size_t ClassificationReport::uncertified() const {
    std::size_t u = 0;
    for (const auto& e : entries) u += e.uncertified.size();
    return u;
}

ClassificationReport verify_classification(int n, SymmetryMode symmetry, SearchLimits limits, int threads) {
    if (n % 2 != 0 || n < 8 || n > 14) throw DomainError("classification runs are supported for even n in 8..14");
    ClassificationReport out;
    out.n = n;
    out.symmetry = symmetry;
    for (const auto& q : candidate_matrices(n, n - 7)) {
        if (q[0][0] == q[1][1]) continue;
        SearchProblem prob;
        prob.n = n;
        prob.q = q;
        prob.symmetry = symmetry;
        prob.limits = limits;
        prob.threads = threads;
        SearchReport rep;
        ClassificationEntry e;
        e.q = q;
        try {
            rep = enumerate(prob);
        } catch (const BudgetExhausted& ex) {
            rep = ex.partial();
            e.complete = false;
            out.complete = false;
        }
        e.solutions = rep.solutions.size();
        e.nodes = rep.nodes;
        e.seconds = rep.seconds;
        for (const auto& s : rep.solutions) {
            if (s.recognition && s.recognition->certified) {
                switch (*s.recognition->family) {
                    case Family::Pi1: ++e.pi1; break;
                    case Family::Pi2: ++e.pi2; break;
                    case Family::Pi3: ++e.pi3; break;
                }
            } else {
                e.uncertified.push_back(s.partition.to_string());
            }
        }
        out.entries.push_back(std::move(e));
    }
    return out;
}

}  // namespace jeq
