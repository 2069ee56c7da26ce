#pragma once
// template bodies for twist.hpp

namespace twistcalc {

namespace detail {

inline Rational factorial(int k) {
    mpz_class f = 1;
    for (int j = 2; j <= k; ++j) f *= j;
    return Rational(f);
}

inline Scalar coeff_power(const Scalar& c, int k) {
    Scalar r(1);
    for (int j = 0; j < k; ++j) r = r * c;
    return r;
}

template <class M>
void push_nonzero(PairList<M>& out, M a, M b) {
    if (is_zero(a) || is_zero(b)) return;
    out.emplace_back(std::move(a), std::move(b));
}

}  // namespace detail

template <class M>
void Twist::abelian_step(const AbelianLeg& leg, int sign, PairList<M>& pairs) const {
    const int cap = safety_cap();
    Scalar c = Scalar::monomial(GaussRat(Rational(0), leg.r * sign), 1, 0);  // ±r i nu
    PairList<M> out;
    for (auto& [A, B] : pairs) {
        for (auto& pa : split_terms(A)) {
            auto lam = ratio(act(leg.e, pa), pa);
            for (auto& pb : split_terms(B)) {
                if (lam) {
                    auto mu = ratio(act(leg.f, pb), pb);
                    if (mu) {
                        GaussRat lm = *lam * *mu;
                        if (lm.is_zero()) {
                            out.emplace_back(pa, pb);
                            continue;
                        }
                        if (!lm.is_real()) throw std::domain_error("complex eigenvalue in diagonal twist leg");
                        out.emplace_back(q_power(leg.r * sign * lm.re) * pa, pb);
                        continue;
                    }
                }
                // nilpotent series
                M ea = pa, fb = pb;
                for (int k = 0;; ++k) {
                    if (is_zero(ea) || is_zero(fb)) break;
                    if (k > cap) throw SeriesCapExceeded("abelian twist leg does not terminate");
                    Scalar ck = detail::coeff_power(c, k);
                    ck *= GaussRat(1 / detail::factorial(k));
                    out.emplace_back(ck * ea, fb);
                    ea = act(leg.e, ea);
                    fb = act(leg.f, fb);
                }
            }
        }
    }
    pairs = std::move(out);
}

template <class M>
M Twist::log_action(const M& b, const Scalar& c) const {
    // log(1 + cE) = sum_{k>=1} (-1)^{k+1} c^k E^k / k
    const int cap = safety_cap();
    M acc = zero_like(b);
    M ek = act(E_, b);
    for (int k = 1; !is_zero(ek); ++k) {
        if (k > cap) throw SeriesCapExceeded("log(1 + cE) does not terminate");
        Scalar ck = detail::coeff_power(c, k);
        ck *= GaussRat(Rational(k % 2 ? 1 : -1, k));
        acc = acc + ck * ek;
        ek = act(E_, ek);
    }
    return acc;
}

template <class M>
PairList<M> Twist::jordanian(const M& a, const M& b, int sign) const {
    // exp(sign * H/2 ⊗ log(1 + sE)) = sum_n sign^n/n! (H/2)^n ⊗ log(1+sE)^n
    const int cap = safety_cap();
    PairList<M> out;
    M hn = a, ln = b;
    Scalar half(Rational(1, 2));
    for (int n = 0;; ++n) {
        if (is_zero(hn) || is_zero(ln)) break;
        if (n > cap) throw SeriesCapExceeded("Jordanian twist leg does not terminate");
        Scalar cn(Rational(sign < 0 && n % 2 ? -1 : 1) / detail::factorial(n));
        out.emplace_back(cn * hn, ln);
        hn = half * act(H_, hn);
        ln = log_action(ln, s());
    }
    return out;
}

template <class M>
PairList<M> Twist::apply(const M& a, const M& b, int sign) const {
    PairList<M> pairs;
    if (is_zero(a) || is_zero(b)) return pairs;
    if (spec_.kind == TwistSpec::Kind::Jordanian) return jordanian(a, b, sign);
    pairs.emplace_back(a, b);
    for (auto& leg : abelian_) abelian_step(leg, sign, pairs);
    return pairs;
}

template <class M>
PairList<M> Twist::inverse_pair(const M& a, const M& b) const {
    return apply(a, b, -1);
}

template <class M>
PairList<M> Twist::forward_pair(const M& a, const M& b) const {
    return apply(a, b, +1);
}

template <class M>
PairList<M> Twist::r_pair(const M& a, const M& b) const {
    PairList<M> out;
    for (auto& [u, v] : inverse_pair(b, a))
        for (auto& pr : forward_pair(v, u)) out.push_back(std::move(pr));
    return out;
}

template <class M>
PairList<M> Twist::r_forward_pair(const M& a, const M& b) const {
    PairList<M> out;
    for (auto& [u, v] : inverse_pair(a, b))
        for (auto& [p, q] : forward_pair(v, u)) out.emplace_back(std::move(q), std::move(p));
    return out;
}

namespace detail {

template <class M>
M series_apply(const Op& x, const LieAlgebraBasis& basis, const M& v, const std::function<Scalar(int)>& coef,
               int start, int stop = -1) {
    const int cap = safety_cap();
    M acc = zero_like(v);
    M xk = v;
    for (int k = 0; k < start; ++k) xk = apply_op(x, basis, xk);
    for (int k = start; !is_zero(xk) && (stop < 0 || k <= stop); ++k) {
        if (k > cap) throw SeriesCapExceeded("operator series does not terminate: " + x.str());
        acc = acc + coef(k) * xk;
        xk = apply_op(x, basis, xk);
    }
    return acc;
}

inline Rational binom_rational(int m, int k) {
    // generalized binomial C(m, k) for integer m
    Rational r = 1;
    for (int j = 0; j < k; ++j) {
        Rational t(m - j, j + 1);
        t.canonicalize();
        r *= t;
    }
    return r;
}

// closed forms when the series argument acts diagonally on v's pieces
template <class M>
std::optional<M> diagonal_apply(const Op& op, const LieAlgebraBasis& basis, const M& v) {
    M acc = zero_like(v);
    for (auto& piece : split_terms(v)) {
        M img = apply_op(op.args[0], basis, piece);
        auto lam = ratio(img, piece);
        if (!lam) return std::nullopt;
        if (lam->is_zero()) {
            acc = acc + piece;
            continue;
        }
        // c = r i nu with r rational
        if (op.c.terms().size() != 1) return std::nullopt;
        auto& [key, cv] = *op.c.terms().begin();
        if (key.nu != 1 || key.q != 0 || !lam->is_real() || !(cv.re == 0)) return std::nullopt;
        Rational k = cv.im * lam->re;
        if (op.kind == Op::Kind::Exp) {
            acc = acc + q_power(k) * piece;
        } else {
            return std::nullopt;
        }
    }
    return acc;
}

}  // namespace detail

template <class M>
M apply_op(const Op& op, const LieAlgebraBasis& basis, const M& v) {
    switch (op.kind) {
        case Op::Kind::Gen:
            return act(basis.get(op.name), v);
        case Op::Kind::Const:
            return op.c * v;
        case Op::Kind::Sum: {
            M acc = zero_like(v);
            for (auto& a : op.args) acc = acc + apply_op(a, basis, v);
            return acc;
        }
        case Op::Kind::Prod: {
            M r = v;
            for (auto it = op.args.rbegin(); it != op.args.rend(); ++it) {
                r = apply_op(*it, basis, r);
                if (is_zero(r)) break;
            }
            return r;
        }
        case Op::Kind::Exp: {
            if (auto d = detail::diagonal_apply(op, basis, v)) return *d;
            Scalar c = op.c;
            return detail::series_apply<M>(
                op.args[0], basis, v,
                [&](int k) {
                    Scalar s = detail::coeff_power(c, k);
                    s *= GaussRat(1 / detail::factorial(k));
                    return s;
                },
                0);
        }
        case Op::Kind::Log1p: {
            Scalar c = op.c;
            return detail::series_apply<M>(
                op.args[0], basis, v,
                [&](int k) {
                    Scalar s = detail::coeff_power(c, k);
                    s *= GaussRat(Rational(k % 2 ? 1 : -1, k));
                    return s;
                },
                1);
        }
        case Op::Kind::Pow1p: {
            Scalar c = op.c;
            int m = op.m;
            return detail::series_apply<M>(
                op.args[0], basis, v,
                [&](int k) {
                    Scalar s = detail::coeff_power(c, k);
                    s *= GaussRat(detail::binom_rational(m, k));
                    return s;
                },
                0, m >= 0 ? m : -1);
        }
    }
    return v;
}

}  // namespace twistcalc
