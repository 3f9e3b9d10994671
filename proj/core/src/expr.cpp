#include "hadafact/expr.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace hadafact {

using detail::AddNode;
using detail::ConstNode;
using detail::CoordNode;
using detail::MulNode;
using detail::Node;
using detail::PowNode;
using detail::PrimNode;
using detail::ScaleNode;

const char* prim_name(Prim p) {
    switch (p) {
        case Prim::Sin: return "sin";
        case Prim::Cos: return "cos";
        case Prim::Exp: return "exp";
    }
    throw std::logic_error("unreachable");
}

bool Support::contains(int k) const {
    return std::binary_search(indices.begin(), indices.end(), k);
}

SmoothExpr::SmoothExpr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

SmoothExpr::SmoothExpr() : SmoothExpr(Node{ConstNode{0.0}}) {}

SmoothExpr SmoothExpr::constant(double c) {
    if (!std::isfinite(c)) throw std::invalid_argument("constants must be finite");
    return SmoothExpr(Node{ConstNode{c}});
}

SmoothExpr SmoothExpr::coord(int k) {
    if (k < 1) throw std::invalid_argument("coordinate index must be >= 1");
    return SmoothExpr(Node{CoordNode{k}});
}

bool SmoothExpr::is_constant() const {
    return std::holds_alternative<ConstNode>(node().v);
}

bool SmoothExpr::is_constant(double c) const {
    const auto* n = std::get_if<ConstNode>(&node().v);
    return n && n->value == c;
}

double SmoothExpr::constant_value() const {
    const auto* n = std::get_if<ConstNode>(&node().v);
    if (!n) throw std::logic_error("expression is not a constant");
    return n->value;
}

SmoothExpr SmoothExpr::add(std::vector<SmoothExpr> terms) {
    std::vector<SmoothExpr> flat;
    double c = 0.0;
    for (auto& t : terms) {
        if (const auto* a = std::get_if<AddNode>(&t.node().v)) {
            for (const auto& sub : a->terms) {
                if (sub.is_constant())
                    c += sub.constant_value();
                else
                    flat.push_back(sub);
            }
        } else if (t.is_constant()) {
            c += t.constant_value();
        } else {
            flat.push_back(std::move(t));
        }
    }
    if (flat.empty()) return constant(c);
    if (c != 0.0) flat.insert(flat.begin(), constant(c));
    if (flat.size() == 1) return flat.front();
    return SmoothExpr(Node{AddNode{std::move(flat)}});
}

SmoothExpr SmoothExpr::mul(std::vector<SmoothExpr> factors) {
    std::vector<SmoothExpr> flat;
    double c = 1.0;
    // Collect plain factors, hoisting scalar coefficients.
    std::function<void(const SmoothExpr&)> absorb = [&](const SmoothExpr& f) {
        if (const auto* m = std::get_if<MulNode>(&f.node().v)) {
            for (const auto& sub : m->factors) absorb(sub);
        } else if (const auto* s = std::get_if<ScaleNode>(&f.node().v)) {
            c *= s->factor;
            absorb(s->child);
        } else if (f.is_constant()) {
            c *= f.constant_value();
        } else {
            flat.push_back(f);
        }
    };
    for (const auto& f : factors) absorb(f);
    if (c == 0.0 || flat.empty()) return constant(c);
    SmoothExpr prod = flat.size() == 1 ? flat.front() : SmoothExpr(Node{MulNode{std::move(flat)}});
    return scale(c, std::move(prod));
}

SmoothExpr SmoothExpr::scale(double c, SmoothExpr e) {
    if (!std::isfinite(c)) throw std::invalid_argument("scale factor must be finite");
    if (e.is_constant()) return constant(c * e.constant_value());
    if (c == 0.0) return constant(0.0);
    if (c == 1.0) return e;
    if (const auto* s = std::get_if<ScaleNode>(&e.node().v))
        return scale(c * s->factor, s->child);
    return SmoothExpr(Node{ScaleNode{c, std::move(e)}});
}

SmoothExpr SmoothExpr::int_pow(SmoothExpr base, int exponent) {
    if (exponent < 0) throw std::invalid_argument("exponent must be a nonnegative integer");
    if (exponent == 0) return constant(1.0);
    if (exponent == 1) return base;
    if (base.is_constant()) {
        double b = base.constant_value();
        double acc = b;
        for (int i = 1; i < exponent; ++i) acc *= b;
        return constant(acc);
    }
    if (const auto* p = std::get_if<PowNode>(&base.node().v))
        return int_pow(p->base, p->exponent * exponent);
    return SmoothExpr(Node{PowNode{std::move(base), exponent}});
}

SmoothExpr SmoothExpr::prim(Prim fn, SmoothExpr arg) {
    return SmoothExpr(Node{PrimNode{fn, std::move(arg)}});
}

SmoothExpr operator+(SmoothExpr a, SmoothExpr b) {
    return SmoothExpr::add({std::move(a), std::move(b)});
}

SmoothExpr operator-(SmoothExpr a, SmoothExpr b) {
    return SmoothExpr::add({std::move(a), SmoothExpr::scale(-1.0, std::move(b))});
}

SmoothExpr operator-(SmoothExpr a) { return SmoothExpr::scale(-1.0, std::move(a)); }

SmoothExpr operator*(SmoothExpr a, SmoothExpr b) {
    return SmoothExpr::mul({std::move(a), std::move(b)});
}

SmoothExpr operator*(double c, SmoothExpr e) { return SmoothExpr::scale(c, std::move(e)); }

namespace {

struct RealDomain {
    const HVector& x;
    double from_constant(double c) const { return c; }
    double coordinate(int k) const { return x.coord(k); }
};

}  // namespace

double SmoothExpr::eval(const HVector& x) const {
    return eval_in<double>(*this, RealDomain{x});
}

SmoothExpr SmoothExpr::partial(int k) const {
    if (k < 1) throw std::invalid_argument("coordinate index must be >= 1");
    struct Diff {
        int k;
        SmoothExpr operator()(const ConstNode&) const { return SmoothExpr::constant(0.0); }
        SmoothExpr operator()(const CoordNode& n) const {
            return SmoothExpr::constant(n.index == k ? 1.0 : 0.0);
        }
        SmoothExpr operator()(const AddNode& n) const {
            std::vector<SmoothExpr> parts;
            parts.reserve(n.terms.size());
            for (const auto& t : n.terms) parts.push_back(t.partial(k));
            return SmoothExpr::add(std::move(parts));
        }
        SmoothExpr operator()(const MulNode& n) const {
            // product rule
            std::vector<SmoothExpr> sum;
            for (std::size_t i = 0; i < n.factors.size(); ++i) {
                std::vector<SmoothExpr> prod;
                prod.reserve(n.factors.size());
                for (std::size_t j = 0; j < n.factors.size(); ++j)
                    prod.push_back(j == i ? n.factors[j].partial(k) : n.factors[j]);
                sum.push_back(SmoothExpr::mul(std::move(prod)));
            }
            return SmoothExpr::add(std::move(sum));
        }
        SmoothExpr operator()(const ScaleNode& n) const {
            return SmoothExpr::scale(n.factor, n.child.partial(k));
        }
        SmoothExpr operator()(const PowNode& n) const {
            return SmoothExpr::scale(
                static_cast<double>(n.exponent),
                SmoothExpr::mul({SmoothExpr::int_pow(n.base, n.exponent - 1), n.base.partial(k)}));
        }
        SmoothExpr operator()(const PrimNode& n) const {
            SmoothExpr inner = n.arg.partial(k);
            switch (n.fn) {
                case Prim::Sin:
                    return SmoothExpr::mul({SmoothExpr::prim(Prim::Cos, n.arg), std::move(inner)});
                case Prim::Cos:
                    return SmoothExpr::scale(
                        -1.0,
                        SmoothExpr::mul({SmoothExpr::prim(Prim::Sin, n.arg), std::move(inner)}));
                case Prim::Exp:
                    return SmoothExpr::mul({SmoothExpr::prim(Prim::Exp, n.arg), std::move(inner)});
            }
            throw std::logic_error("unreachable");
        }
    };
    return std::visit(Diff{k}, node().v);
}

namespace {

void collect_support(const SmoothExpr& e, std::set<int>& out) {
    struct Visitor {
        std::set<int>& out;
        void operator()(const ConstNode&) const {}
        void operator()(const CoordNode& n) const { out.insert(n.index); }
        void operator()(const AddNode& n) const {
            for (const auto& t : n.terms) collect_support(t, out);
        }
        void operator()(const MulNode& n) const {
            for (const auto& f : n.factors) collect_support(f, out);
        }
        void operator()(const ScaleNode& n) const { collect_support(n.child, out); }
        void operator()(const PowNode& n) const { collect_support(n.base, out); }
        void operator()(const PrimNode& n) const { collect_support(n.arg, out); }
    };
    std::visit(Visitor{out}, e.node().v);
}

}  // namespace

Support SmoothExpr::support() const {
    std::set<int> s;
    collect_support(*this, s);
    return Support{std::vector<int>(s.begin(), s.end())};
}

SmoothExpr SmoothExpr::substitute(const std::function<SmoothExpr(int)>& repl) const {
    struct Subst {
        const std::function<SmoothExpr(int)>& repl;
        SmoothExpr operator()(const ConstNode& n) const { return SmoothExpr::constant(n.value); }
        SmoothExpr operator()(const CoordNode& n) const { return repl(n.index); }
        SmoothExpr operator()(const AddNode& n) const {
            std::vector<SmoothExpr> out;
            out.reserve(n.terms.size());
            for (const auto& t : n.terms) out.push_back(t.substitute(repl));
            return SmoothExpr::add(std::move(out));
        }
        SmoothExpr operator()(const MulNode& n) const {
            std::vector<SmoothExpr> out;
            out.reserve(n.factors.size());
            for (const auto& f : n.factors) out.push_back(f.substitute(repl));
            return SmoothExpr::mul(std::move(out));
        }
        SmoothExpr operator()(const ScaleNode& n) const {
            return SmoothExpr::scale(n.factor, n.child.substitute(repl));
        }
        SmoothExpr operator()(const PowNode& n) const {
            return SmoothExpr::int_pow(n.base.substitute(repl), n.exponent);
        }
        SmoothExpr operator()(const PrimNode& n) const {
            return SmoothExpr::prim(n.fn, n.arg.substitute(repl));
        }
    };
    return std::visit(Subst{repl}, node().v);
}

bool SmoothExpr::is_polynomial() const {
    struct Visitor {
        bool operator()(const ConstNode&) const { return true; }
        bool operator()(const CoordNode&) const { return true; }
        bool operator()(const AddNode& n) const {
            return std::all_of(n.terms.begin(), n.terms.end(),
                               [](const SmoothExpr& t) { return t.is_polynomial(); });
        }
        bool operator()(const MulNode& n) const {
            return std::all_of(n.factors.begin(), n.factors.end(),
                               [](const SmoothExpr& f) { return f.is_polynomial(); });
        }
        bool operator()(const ScaleNode& n) const { return n.child.is_polynomial(); }
        bool operator()(const PowNode& n) const { return n.base.is_polynomial(); }
        bool operator()(const PrimNode&) const { return false; }
    };
    return std::visit(Visitor{}, node().v);
}

// --- printing ---------------------------------------------------------

namespace {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Grammar levels: sums < terms < factors < atoms.
enum Level { LvSum = 0, LvTerm = 1, LvFactor = 2, LvAtom = 3 };

int level_of(const SmoothExpr& e) {
    struct Visitor {
        int operator()(const ConstNode& n) const { return n.value < 0 ? LvFactor : LvAtom; }
        int operator()(const CoordNode&) const { return LvAtom; }
        int operator()(const AddNode&) const { return LvSum; }
        int operator()(const MulNode&) const { return LvTerm; }
        int operator()(const ScaleNode&) const { return LvTerm; }
        int operator()(const PowNode&) const { return LvFactor; }
        int operator()(const PrimNode&) const { return LvAtom; }
    };
    return std::visit(Visitor{}, e.node().v);
}

std::string print_expr(const SmoothExpr& e, int min_level);

std::string print_raw(const SmoothExpr& e) {
    struct Visitor {
        std::string operator()(const ConstNode& n) const { return format_double(n.value); }
        std::string operator()(const CoordNode& n) const { return "x" + std::to_string(n.index); }
        std::string operator()(const AddNode& n) const {
            std::string out = print_expr(n.terms.front(), LvTerm);
            for (std::size_t i = 1; i < n.terms.size(); ++i) {
                const SmoothExpr& t = n.terms[i];
                if (const auto* c = std::get_if<ConstNode>(&t.node().v); c && c->value < 0) {
                    out += " - " + format_double(-c->value);
                } else if (const auto* s = std::get_if<ScaleNode>(&t.node().v);
                           s && s->factor < 0) {
                    out += " - " + print_expr(SmoothExpr::scale(-s->factor, s->child), LvTerm);
                } else {
                    out += " + " + print_expr(t, LvTerm);
                }
            }
            return out;
        }
        std::string operator()(const MulNode& n) const {
            std::string out = print_expr(n.factors.front(), LvFactor);
            for (std::size_t i = 1; i < n.factors.size(); ++i)
                out += "*" + print_expr(n.factors[i], LvFactor);
            return out;
        }
        std::string operator()(const ScaleNode& n) const {
            return format_double(n.factor) + "*" + print_expr(n.child, LvFactor);
        }
        std::string operator()(const PowNode& n) const {
            return print_expr(n.base, LvAtom) + "^" + std::to_string(n.exponent);
        }
        std::string operator()(const PrimNode& n) const {
            return std::string(prim_name(n.fn)) + "(" + print_expr(n.arg, LvSum) + ")";
        }
    };
    return std::visit(Visitor{}, e.node().v);
}

std::string print_expr(const SmoothExpr& e, int min_level) {
    std::string s = print_raw(e);
    if (level_of(e) < min_level) return "(" + s + ")";
    return s;
}

}  // namespace

std::string SmoothExpr::str() const { return print_expr(*this, LvSum); }

// --- derivatives ------------------------------------------------------

HVector gradient(const SmoothExpr& f, const HVector& x) {
    Support s = f.support();
    std::vector<double> g(static_cast<std::size_t>(s.max_index()), 0.0);
    for (int k : s.indices) g[static_cast<std::size_t>(k - 1)] = f.partial(k).eval(x);
    return HVector(std::move(g));
}

double directional_derivative(const SmoothExpr& f, const HVector& x, const HVector& v) {
    return inner(gradient(f, x), v);
}

namespace {

double contract(const SmoothExpr& g, const HVector& x, std::span<const HVector> dirs,
                std::size_t i) {
    if (i == dirs.size()) return g.eval(x);
    double acc = 0.0;
    for (int k : g.support().indices) {
        double d = dirs[i].coord(k);
        if (d == 0.0) continue;
        acc += d * contract(g.partial(k), x, dirs, i + 1);
    }
    return acc;
}

}  // namespace

double nth_directional(const SmoothExpr& f, const HVector& x, std::span<const HVector> dirs) {
    if (dirs.empty()) throw std::domain_error("nth_directional requires at least one direction");
    return contract(f, x, dirs, 0);
}

}  // namespace hadafact
