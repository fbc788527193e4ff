#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "jeq/jgraph.hpp"
#include "jeq/partition.hpp"
#include "jeq/rational.hpp"

namespace jeq {

/// Exact function on the w-subsets of a ground set of labels. The labels are kept
/// sorted and mapped increasingly onto [1..n], so values are stored by the colex
/// rank of the relabelled subset.
class VertexFunction {
public:
    VertexFunction(std::vector<int> ground, int w, std::vector<Rational> values);

    /// Ground set [1..n].
    static VertexFunction on(int n, int w, std::vector<Rational> values);
    static VertexFunction constant(int n, int w, const Rational& c);
    static VertexFunction from(std::vector<int> ground, int w, const std::function<Rational(const Triple&)>& fn);

    int n() const noexcept { return static_cast<int>(ground_.size()); }
    int w() const noexcept { return graph_->w(); }
    const std::vector<int>& ground() const noexcept { return ground_; }
    const JohnsonGraph& graph() const noexcept { return *graph_; }
    const std::vector<Rational>& values() const noexcept { return values_; }

    /// Value at the subset with dense rank r.
    const Rational& at_rank(int r) const { return values_.at(static_cast<std::size_t>(r)); }
    /// Value at a subset written in ground labels.
    const Rational& operator()(const Triple& labels) const;
    /// Subset with dense rank r, in ground labels.
    Triple labels(int r) const;

    bool is_zero() const;

    friend bool operator==(const VertexFunction&, const VertexFunction&) = default;

private:
    int dense(int label) const;

    std::vector<int> ground_;
    std::shared_ptr<const JohnsonGraph> graph_;
    std::vector<Rational> values_;
};

enum class EigenOutcome { Eigenfunction, NotEigenfunction, Zero };

std::string to_string(EigenOutcome o);

/// θ f(x) = Σ_{y ~ x} f(y) at every vertex, with the zero function reported apart.
EigenOutcome is_eigenfunction(const VertexFunction& f, const Rational& theta);

/// -p12/(p12+p21) on cell 1 and p21/(p12+p21) on cell 2: the indicator of cell 1
/// with its V0 component removed, negated.
VertexFunction partition_function(const TwoPartition& p);
/// 1 on cell 1, 0 on cell 2.
VertexFunction characteristic_function(const TwoPartition& p);

/// f_ab(y) = f(y ∪ {a}) - f(y ∪ {b}) on the (w-1)-subsets of ground \ {a,b}.
VertexFunction partial_difference(const VertexFunction& f, int a, int b);

/// h(x) = Σ_{y ⊆ x, |y| = g.w()} g(y) on the w-subsets of the same ground set.
VertexFunction induce(const VertexFunction& g, int w);

struct Lambda1Type {
    enum class Kind { Zero, Type1, Type2 };
    Kind kind = Kind::Zero;
    int a = 0, b = 0;          // Type1, a < b
    std::vector<int> m1, m2;   // Type2, sorted, m1.front() < m2.front()

    std::string to_string() const;
    friend bool operator==(const Lambda1Type&, const Lambda1Type&) = default;
};

/// The {-1,0,1}-template f1(a,b) or f2(M1,M2) a λ1(n,2)-eigenfunction is a
/// multiple of. DomainError when f is nonzero but not a λ1 eigenfunction;
/// ClassificationFailure when it is one but fits neither template.
Lambda1Type classify_lambda1(const VertexFunction& f);

/// f1(a,b) and f2(M1,M2) on J(n,2) over the ground set [1..n].
VertexFunction type1_function(int n, int a, int b);
VertexFunction type2_function(int n, const std::vector<int>& m1);

struct SupportsReport {
    std::int64_t t1 = 0, t2 = 0, t0 = 0;
    Rational lhs, rhs;
    bool holds = false;
};

/// Counts the types of all C(n,2) partial differences of the characteristic
/// function of cell 1 and compares p12 p21 n(n-2) with 24 t1 (n-4) + 3 t2 (n-2)(n-4).
/// DomainError unless p is equitable with θ = n - 7.
SupportsReport supports_identity(const TwoPartition& p);

/// (f_ab ≡ 0 and f_ac ≡ 0) implies f_bc ≡ 0.
bool zero_diff_transitivity_check(const VertexFunction& f, int a, int b, int c);

}  // namespace jeq
