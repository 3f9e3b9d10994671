#include "hadafact/representations.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace hadafact {

namespace {

std::string format_value(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

AxesFactorization::AxesFactorization(SmoothExpr f, QuadratureSpec quad, double probe_tol)
    : f_(std::move(f)), support_(f_.support().indices) {
    // f must vanish on span{u_n} for every supported axis; probe a dyadic
    // grid of offsets in both directions.
    for (int n : support_) {
        for (int p = 0; p <= 12; ++p) {
            for (double sign : {1.0, -1.0}) {
                double delta = sign * 4.0 * std::pow(0.5, p);
                double value = f_.eval(delta * HVector::unit(n));
                if (std::abs(value) > probe_tol)
                    throw std::domain_error("function does not vanish on axis u" +
                                            std::to_string(n) + ": |f(" + format_value(delta) +
                                            "*u" + std::to_string(n) +
                                            ")| = " + format_value(std::abs(value)) +
                                            " exceeds " + format_value(probe_tol));
            }
        }
    }
    if (std::abs(f_.eval(HVector{})) > probe_tol)
        throw std::domain_error("function does not vanish at 0: |f(0)| = " +
                                format_value(std::abs(f_.eval(HVector{}))));

    for (int k : support_) {
        HadamardFactorization first = decompose(f_, HVector{}, StarDomain{}, quad);
        levels_.emplace(k, first.refactor(k));
    }
}

std::vector<std::pair<int, int>> AxesFactorization::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int k : support_)
        for (int j : support_) out.emplace_back(k, j);
    return out;
}

double AxesFactorization::factor(int k, int j, const HVector& x) const {
    auto it = levels_.find(k);
    if (it == levels_.end()) return 0.0;
    return it->second.factor(j, x);
}

double AxesFactorization::reconstruct(const HVector& x) const {
    double s = 0.0;
    for (int k : support_)
        for (int j : support_) s += x.coord(k) * x.coord(j) * factor(k, j, x);
    return s;
}

AxesFactorization axes_vanishing_factorization(SmoothExpr f, QuadratureSpec quad,
                                               double probe_tol) {
    return AxesFactorization(std::move(f), quad, probe_tol);
}

// --- two-point representation -----------------------------------------

namespace {

// Affine change of variables xi = Q(x - z)/L with Q a Householder
// reflection sending (y - z)/L to u_1; z maps to 0 and y to u_1.
struct AffineFrame {
    HVector z;
    double length = 1.0;
    bool reflect = false;
    HVector v;       // reflection axis, Q = I - coeff * v v^T
    double coeff = 0.0;

    HVector forward(const HVector& x) const {
        HVector u = x - z;
        if (reflect) u = u - (coeff * inner(v, u)) * v;
        return (1.0 / length) * u;
    }
};

}  // namespace

double TwoPointFactors::reconstruct(const HVector& x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g[i](x) * h[i](x);
    return s;
}

TwoPointFactors two_point_factorization(const SmoothExpr& f, const HVector& y, const HVector& z,
                                        QuadratureSpec quad, double value_tol) {
    double length = norm(y - z);
    if (length == 0.0) throw std::domain_error("the two zeros y and z must differ");
    double fy = f.eval(y);
    if (std::abs(fy) > value_tol)
        throw std::domain_error("|f(y)| = " + format_value(std::abs(fy)) + " exceeds " +
                                format_value(value_tol));
    double fz = f.eval(z);
    if (std::abs(fz) > value_tol)
        throw std::domain_error("|f(z)| = " + format_value(std::abs(fz)) + " exceeds " +
                                format_value(value_tol));

    int dim = std::max({f.support().max_index(), y.dim(), z.dim(), 1});

    auto frame = std::make_shared<AffineFrame>();
    frame->z = z;
    frame->length = length;
    HVector direction = (1.0 / length) * (y - z);
    HVector axis = direction - HVector::unit(1);
    double axis_sq = inner(axis, axis);
    if (axis_sq > 1e-28) {
        frame->reflect = true;
        frame->v = axis;
        frame->coeff = 2.0 / axis_sq;
    }

    // Pull f back through the inverse map x = z + L * Q xi (Q is an
    // involution), expressed coordinatewise as a substitution.
    SmoothExpr mixed = SmoothExpr::constant(0.0);
    if (frame->reflect) {
        std::vector<SmoothExpr> dot_terms;
        for (int j = 1; j <= dim; ++j) {
            double vj = frame->v.coord(j);
            if (vj != 0.0) dot_terms.push_back(vj * SmoothExpr::coord(j));
        }
        mixed = SmoothExpr::add(std::move(dot_terms));
    }
    SmoothExpr pulled = f.substitute([&](int i) {
        SmoothExpr xi = SmoothExpr::coord(i);
        SmoothExpr q = xi;
        if (frame->reflect && i <= dim && frame->v.coord(i) != 0.0)
            q = std::move(q) - (frame->coeff * frame->v.coord(i)) * mixed;
        return SmoothExpr::constant(z.coord(i)) + length * std::move(q);
    });

    auto factored = std::make_shared<HadamardFactorization>(
        decompose(std::move(pulled), HVector::zeros(dim), StarDomain{}, quad));
    auto y_image = std::make_shared<HVector>(frame->forward(y));
    auto w = std::make_shared<HVector>(factored->factor_vector(*y_image));

    TwoPointFactors out;
    out.y = y;
    out.z = z;
    for (int k = 1; k <= dim; ++k) {
        double wk = w->coord(k);
        out.g.push_back([factored, frame, k, wk](const HVector& x) {
            return factored->factor(k, frame->forward(x)) - wk;
        });
        out.h.push_back([frame, k](const HVector& x) { return frame->forward(x).coord(k); });

        out.g.push_back([frame, k, wk](const HVector& x) {
            return wk * frame->forward(x).coord(k);
        });
        out.h.push_back([frame](const HVector& x) { return frame->forward(x).coord(1); });

        out.g.push_back([frame](const HVector& x) { return 1.0 - frame->forward(x).coord(1); });
        out.h.push_back([frame, k, wk](const HVector& x) {
            return wk * frame->forward(x).coord(k);
        });
    }
    return out;
}

}  // namespace hadafact
