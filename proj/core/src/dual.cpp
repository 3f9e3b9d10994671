#include "hadafact/dual.hpp"

namespace hadafact {

namespace {

struct DualDomain {
    const DualVector& arg;
    DualScalar from_constant(double c) const { return DualScalar(c); }
    DualScalar coordinate(int k) const { return arg.coord(k); }
};

}  // namespace

DualScalar eval(const SmoothExpr& f, const DualVector& arg) {
    return eval_in<DualScalar>(f, DualDomain{arg});
}

}  // namespace hadafact
