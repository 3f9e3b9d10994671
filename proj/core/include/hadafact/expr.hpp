#pragma once

// Differentiation-closed expression trees for smooth functionals H -> R
// depending on finitely many coordinates. The node set {constant,
// coordinate, sum, product, scalar multiple, integer power, sin/cos/exp}
// is closed under taking partial derivatives, so every derived factor
// stays representable inside the same type.
//
// Trees are immutable and shared; all operations here are pure.

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hadafact/space.hpp"

namespace hadafact {

enum class Prim : std::uint8_t { Sin, Cos, Exp };

const char* prim_name(Prim p);

namespace detail {
struct Node;
}

/// Sorted set of the coordinate indices a tree reads.
struct Support {
    std::vector<int> indices;  // sorted, unique, 1-based

    bool contains(int k) const;
    int max_index() const { return indices.empty() ? 0 : indices.back(); }
    bool empty() const { return indices.empty(); }
    std::size_t size() const { return indices.size(); }
};

class SmoothExpr {
public:
    /// Defaults to the constant 0.
    SmoothExpr();

    static SmoothExpr constant(double c);
    static SmoothExpr coord(int k);  // x_k, 1-based
    static SmoothExpr add(std::vector<SmoothExpr> terms);
    static SmoothExpr mul(std::vector<SmoothExpr> factors);
    static SmoothExpr scale(double c, SmoothExpr e);
    static SmoothExpr int_pow(SmoothExpr base, int exponent);
    static SmoothExpr prim(Prim fn, SmoothExpr arg);

    const detail::Node& node() const { return *node_; }

    /// True iff the tree is literally the constant c.
    bool is_constant(double c) const;
    bool is_constant() const;
    /// Value if the tree is a constant, throws otherwise.
    double constant_value() const;
    /// True iff the tree contains no sin/cos/exp node.
    bool is_polynomial() const;

    double eval(const HVector& x) const;

    /// d/dx_k as a tree; Const(0) when k is outside the support.
    SmoothExpr partial(int k) const;

    Support support() const;

    /// Replace every coordinate node x_k with repl(k).
    SmoothExpr substitute(const std::function<SmoothExpr(int)>& repl) const;

    /// Serialize back to the DSL grammar; parse(str()) evaluates
    /// identically to this tree.
    std::string str() const;

private:
    explicit SmoothExpr(detail::Node n);
    std::shared_ptr<const detail::Node> node_;
};

namespace detail {

struct ConstNode {
    double value;
};
struct CoordNode {
    int index;  // 1-based
};
struct AddNode {
    std::vector<SmoothExpr> terms;
};
struct MulNode {
    std::vector<SmoothExpr> factors;
};
struct ScaleNode {
    double factor;
    SmoothExpr child;
};
struct PowNode {
    SmoothExpr base;
    int exponent;  // >= 2 after simplification
};
struct PrimNode {
    Prim fn;
    SmoothExpr arg;
};

struct Node {
    std::variant<ConstNode, CoordNode, AddNode, MulNode, ScaleNode, PowNode, PrimNode> v;
};

}  // namespace detail

// Convenience builders.
SmoothExpr operator+(SmoothExpr a, SmoothExpr b);
SmoothExpr operator-(SmoothExpr a, SmoothExpr b);
SmoothExpr operator-(SmoothExpr a);
SmoothExpr operator*(SmoothExpr a, SmoothExpr b);
SmoothExpr operator*(double c, SmoothExpr e);

/// Vector of partial derivative values, coeffs[k-1] = (d f / d x_k)(x),
/// sized to max(support(f)).
HVector gradient(const SmoothExpr& f, const HVector& x);

/// <grad f(x), v>.
double directional_derivative(const SmoothExpr& f, const HVector& x, const HVector& v);

/// n-th derivative tensor contracted against the directions:
/// sum over index tuples of the mixed partials times the direction
/// coefficients. Multilinear and symmetric in dirs. Throws
/// std::domain_error when dirs is empty.
double nth_directional(const SmoothExpr& f, const HVector& x, std::span<const HVector> dirs);

inline double apply_prim(Prim p, double x) {
    switch (p) {
        case Prim::Sin: return std::sin(x);
        case Prim::Cos: return std::cos(x);
        case Prim::Exp: return std::exp(x);
    }
    throw std::logic_error("unreachable");
}

namespace detail {

template <typename T, typename Domain>
struct GenericEval {
    const Domain& dom;

    T operator()(const ConstNode& n) const { return dom.from_constant(n.value); }
    T operator()(const CoordNode& n) const { return dom.coordinate(n.index); }
    T operator()(const AddNode& n) const {
        T acc = eval(n.terms.front());
        for (std::size_t i = 1; i < n.terms.size(); ++i) acc = acc + eval(n.terms[i]);
        return acc;
    }
    T operator()(const MulNode& n) const {
        T acc = eval(n.factors.front());
        for (std::size_t i = 1; i < n.factors.size(); ++i) acc = acc * eval(n.factors[i]);
        return acc;
    }
    T operator()(const ScaleNode& n) const { return n.factor * eval(n.child); }
    T operator()(const PowNode& n) const {
        T b = eval(n.base);
        T acc = b;
        for (int i = 1; i < n.exponent; ++i) acc = acc * b;
        return acc;
    }
    T operator()(const PrimNode& n) const { return apply_prim(n.fn, eval(n.arg)); }

    T eval(const SmoothExpr& e) const { return std::visit(*this, e.node().v); }
};

}  // namespace detail

/// Generic evaluation over any commutative ring-like scalar. Domain must
/// provide from_constant(double) and coordinate(int); T must support
/// a + b, a * b, double * a, and apply_prim(Prim, T).
template <typename T, typename Domain>
T eval_in(const SmoothExpr& f, const Domain& dom) {
    return detail::GenericEval<T, Domain>{dom}.eval(f);
}

}  // namespace hadafact
