#pragma once

// Closed-form continued fraction of f~(z) = z^{-1} prod_{n>=0} (1 - z^{-2^n}).
//
// Canonical convergents (monic numerator) obey
//   Qhat_{n+1} = (z + (-1)^n) Qhat_n + beta_{n+1} Qhat_{n-1}     (n >= 2)
// and likewise for Phat, seeded by Phat_1 = 1, Qhat_1 = z + 1,
// Phat_2 = z - 1, Qhat_2 = z^2 + 1. The rational beta_n satisfy
//   beta_3 = -1, beta_4 = 1,
//   beta_{2n+1} = -beta_{n+1} / beta_{2n},
//   beta_{2n+2} = 1 + (-1)^n - beta_{2n+1}                       (n >= 2).

#include <map>
#include <mutex>
#include <vector>

#include "tmcf/cfseries.hpp"

namespace tmcf::tm {

struct CanonicalConvergent {
    long n = 0;
    Poly Phat;
    Poly Qhat;

    cf::ConvergentPair pair() const;
};

/// Memo of beta_n and of the canonical convergents built from them.
/// Append-only under a mutex; one process-wide instance backs the free
/// functions below.
class ClosedForm {
public:
    ClosedForm() = default;
    ClosedForm(const ClosedForm&) = delete;
    ClosedForm& operator=(const ClosedForm&) = delete;

    static ClosedForm& shared();

    Rat beta(long n);
    CanonicalConvergent canonical(long n);

    /// Test hook: pin beta_n to a wrong value and drop dependent state.
    void inject_beta_fault(long n, const Rat& value);

private:
    Rat beta_locked(long n);
    void extend_locked(long n);

    std::mutex mu_;
    std::map<long, Rat> betas_;
    std::map<long, Rat> overrides_;
    std::vector<Poly> P_;  // P_[i] = Phat_{i+1}
    std::vector<Poly> Q_;
};

Rat beta(long n);
CanonicalConvergent canonical(long n);

/// ((z-1) P(z^2), Q(z^2)). Throws NotAConvergent unless the input passes
/// the convergent criterion.
cf::ConvergentPair double_pair(const cf::ConvergentPair& pair);

struct StructureReport {
    long n = 0;
    /// Qhat_{2n-1} = (z+1) * Qplus(z^2)
    Poly q_plus;
    /// Monic quotients ahat_3 .. ahat_{2n}.
    std::vector<Poly> monic_quotients;
};

/// Checks Qhat_{2n} = Qhat_n(z^2), Qhat_{2n-1} = (z+1) E(z^2) with deg E = n-1,
/// and ahat_k = (Qhat_k - beta_k Qhat_{k-2}) / Qhat_{k-1} = z + (-1)^{k-1}
/// for 3 <= k <= 2n. Throws ShapeViolation naming the failing clause.
StructureReport structure_report(long n, ClosedForm& cf = ClosedForm::shared());

}  // namespace tmcf::tm
