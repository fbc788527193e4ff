#include "jeq/canonical.hpp"

#include <algorithm>
#include <bitset>

#include "jeq/error.hpp"

namespace jeq {

namespace {

// Cell-1 lookup by element triple, any order.
class Lookup {
public:
    Lookup(const TwoPartition& p, bool complement) : n_(p.n()), bits_(static_cast<std::size_t>((n_ + 1) * (n_ + 1) * (n_ + 1)), 0) {
        const auto& g = p.graph();
        for (int r = 0; r < g.order(); ++r) {
            const auto& t = g.vertex(r);
            const std::uint8_t v = static_cast<std::uint8_t>(p.in_cell1(r) != complement);
            const std::array<int, 3> e{t[0], t[1], t[2]};
            std::array<int, 3> perm{0, 1, 2};
            do {
                bits_[index(e[static_cast<std::size_t>(perm[0])], e[static_cast<std::size_t>(perm[1])], e[static_cast<std::size_t>(perm[2])])] = v;
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }

    bool cell1(int a, int b, int c) const { return bits_[index(a, b, c)] != 0; }

private:
    std::size_t index(int a, int b, int c) const {
        return static_cast<std::size_t>((a * (n_ + 1) + b) * (n_ + 1) + c);
    }

    int n_;
    std::vector<std::uint8_t> bits_;
};

bool transposition_fixes(const Lookup& lk, const TwoPartition& p, int x, int y) {
    const auto& g = p.graph();
    for (int r = 0; r < g.order(); ++r) {
        const auto& t = g.vertex(r);
        std::array<int, 3> e{t[0], t[1], t[2]};
        bool moved = false;
        for (auto& v : e) {
            if (v == x) { v = y; moved = true; }
            else if (v == y) { v = x; moved = true; }
        }
        if (moved && lk.cell1(e[0], e[1], e[2]) != p.in_cell1(r)) return false;
    }
    return true;
}

struct Candidate {
    std::vector<int> tau;  // tau[j-1] = element placed at position j
    std::bitset<kMaxGround + 1> used;
};

// Least string over all relabellings, using '1' for lookup hits.
std::string least_image(const Lookup& lk, int n, const std::vector<int>& twin_rep) {
    std::vector<Candidate> cands(1);
    std::string result;
    for (int j = 1; j <= n; ++j) {
        std::vector<Candidate> next;
        std::string best;
        std::string block;
        for (const auto& c : cands) {
            for (int x = 1; x <= n; ++x) {
                if (c.used[static_cast<std::size_t>(x)]) continue;
                // Only the smallest unused member of a twin class.
                bool skip = false;
                for (int y = 1; y < x && !skip; ++y)
                    skip = !c.used[static_cast<std::size_t>(y)] && twin_rep[static_cast<std::size_t>(y)] == twin_rep[static_cast<std::size_t>(x)];
                if (skip) continue;
                block.clear();
                for (int b = 2; b < j; ++b)
                    for (int a = 1; a < b; ++a)
                        block += lk.cell1(c.tau[static_cast<std::size_t>(a - 1)], c.tau[static_cast<std::size_t>(b - 1)], x) ? '1' : '2';
                if (!next.empty() && block > best) continue;
                if (next.empty() || block < best) {
                    next.clear();
                    best = block;
                }
                Candidate ext = c;
                ext.tau.push_back(x);
                ext.used.set(static_cast<std::size_t>(x));
                next.push_back(std::move(ext));
            }
        }
        result += best;
        cands = std::move(next);
    }
    return result;
}

}  // namespace

std::vector<std::vector<int>> twin_classes(const TwoPartition& p) {
    const int n = p.n();
    const Lookup lk(p, false);
    std::vector<int> rep(static_cast<std::size_t>(n + 1), 0);
    std::vector<std::vector<int>> classes;
    for (int x = 1; x <= n; ++x) {
        if (rep[static_cast<std::size_t>(x)]) continue;
        rep[static_cast<std::size_t>(x)] = x;
        classes.push_back({x});
        for (int y = x + 1; y <= n; ++y)
            if (!rep[static_cast<std::size_t>(y)] && transposition_fixes(lk, p, x, y)) {
                rep[static_cast<std::size_t>(y)] = x;
                classes.back().push_back(y);
            }
    }
    return classes;
}

std::string canonical_form(const TwoPartition& p) {
    const int n = p.n();
    std::vector<int> rep(static_cast<std::size_t>(n + 1), 0);
    for (const auto& cls : twin_classes(p))
        for (int x : cls) rep[static_cast<std::size_t>(x)] = cls.front();

    const auto& q = p.quotient();
    const bool tie = q(0, 0) == q(1, 1) && p.cell_size(1) == p.cell_size(2);
    std::string best = least_image(Lookup(p, false), n, rep);
    // With a full tie the orientation follows vertex {1,2,3}, so both labellings compete.
    if (tie) best = std::min(best, least_image(Lookup(p, true), n, rep));
    return best;
}

}  // namespace jeq
