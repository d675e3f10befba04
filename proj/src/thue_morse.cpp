#include "tmcf/thue_morse.hpp"

namespace tmcf::tm {

cf::ConvergentPair CanonicalConvergent::pair() const {
    auto p = cf::ConvergentPair::make(Phat, Qhat);
    p.canonical = true;
    return p;
}

ClosedForm& ClosedForm::shared() {
    static ClosedForm instance;
    return instance;
}

Rat ClosedForm::beta(long n) {
    if (n < 3) throw Error(Errc::InvalidArgument, "beta_n is defined for n >= 3");
    std::lock_guard lock(mu_);
    return beta_locked(n);
}

Rat ClosedForm::beta_locked(long n) {
    if (auto it = overrides_.find(n); it != overrides_.end()) return it->second;
    if (auto it = betas_.find(n); it != betas_.end()) return it->second;
    // Iterative fill keeps recursion depth flat for large n.
    long first_missing = betas_.empty() ? 3 : betas_.rbegin()->first + 1;
    for (long k = std::max(first_missing, 3L); k <= n; ++k) {
        Rat v;
        if (k == 3) {
            v = -1;
        } else if (k == 4) {
            v = 1;
        } else if (k % 2 == 1) {
            const long h = (k - 1) / 2;
            v = -beta_locked(h + 1) / beta_locked(2 * h);
        } else {
            const long h = (k - 2) / 2;
            v = Rat(1 + (h % 2 == 0 ? 1 : -1)) - beta_locked(2 * h + 1);
        }
        if (v == 0) throw Error(Errc::ShapeViolation, "beta_" + std::to_string(k) + " vanished");
        betas_.emplace(k, v);
    }
    return beta_locked(n);
}

void ClosedForm::extend_locked(long n) {
    if (P_.empty()) {
        P_ = {Poly{1}, Poly{-1, 1}};
        Q_ = {Poly{1, 1}, Poly{1, 0, 1}};
    }
    while (static_cast<long>(P_.size()) < n) {
        const long k = static_cast<long>(P_.size());  // building index k+1 from k, k-1
        const Poly step = Poly::linear(Rat(k % 2 == 0 ? 1 : -1));
        const Rat b = beta_locked(k + 1);
        P_.push_back(step * P_[k - 1] + b * P_[k - 2]);
        Q_.push_back(step * Q_[k - 1] + b * Q_[k - 2]);
    }
}

CanonicalConvergent ClosedForm::canonical(long n) {
    if (n < 1) throw Error(Errc::InvalidArgument, "canonical convergent index must be >= 1");
    std::lock_guard lock(mu_);
    extend_locked(n);
    return {n, P_[n - 1], Q_[n - 1]};
}

void ClosedForm::inject_beta_fault(long n, const Rat& value) {
    std::lock_guard lock(mu_);
    overrides_[n] = value;
    betas_.clear();
    P_.clear();
    Q_.clear();
}

Rat beta(long n) { return ClosedForm::shared().beta(n); }
CanonicalConvergent canonical(long n) { return ClosedForm::shared().canonical(n); }

cf::ConvergentPair double_pair(const cf::ConvergentPair& pair) {
    if (pair.Q.is_zero() || !cf::is_convergent(pair.P, pair.Q).convergent)
        throw Error(Errc::NotAConvergent, pair.P.to_string() + " / " + pair.Q.to_string());
    return cf::ConvergentPair::make(Poly{-1, 1} * substitute(pair.P, Substitution::square),
                                    substitute(pair.Q, Substitution::square));
}

StructureReport structure_report(long n, ClosedForm& cf) {
    if (n < 2) throw Error(Errc::InvalidArgument, "structure_report needs n >= 2");
    auto fail = [n](const std::string& what) {
        throw Error(Errc::ShapeViolation, "n=" + std::to_string(n) + ": " + what);
    };
    StructureReport rep;
    rep.n = n;

    const Poly Qn = cf.canonical(n).Qhat;
    const Poly Q2n = cf.canonical(2 * n).Qhat;
    if (Q2n != substitute(Qn, Substitution::square)) fail("clause (i) Qhat_2n != Qhat_n(z^2)");

    const Poly Qodd = cf.canonical(2 * n - 1).Qhat;
    auto [E, rem] = divmod(Qodd, Poly{1, 1});
    if (!rem.is_zero()) fail("clause (ii) z+1 does not divide Qhat_{2n-1}");
    std::vector<Rat> half;
    for (int k = 0; k <= E.degree(); ++k) {
        if (k % 2 == 1) {
            if (E.coeff(k) != 0) fail("clause (ii) cofactor of Qhat_{2n-1} is not even");
        } else {
            half.push_back(E.coeff(k));
        }
    }
    rep.q_plus = Poly(std::move(half));
    if (rep.q_plus.degree() != n - 1) fail("clause (ii) Q+ has wrong degree");

    for (long k = 3; k <= 2 * n; ++k) {
        const Poly num = cf.canonical(k).Qhat - cf.beta(k) * cf.canonical(k - 2).Qhat;
        auto [a, r] = divmod(num, cf.canonical(k - 1).Qhat);
        if (!r.is_zero() || a != Poly::linear(Rat(k % 2 == 1 ? 1 : -1)))
            fail("clause (iii) ahat_" + std::to_string(k) + " = " + a.to_string());
        rep.monic_quotients.push_back(std::move(a));
    }
    return rep;
}

}  // namespace tmcf::tm
