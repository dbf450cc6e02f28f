#!/usr/bin/env python3
"""Regenerate tests/golden/reference_values.hpp.

Evaluates the closed-form branch quantities with 50-digit arithmetic
(mpmath) and freezes the correctly rounded doubles. This is the
independent high-precision oracle for the C++ unit tests: the C++ code
must reproduce these numbers through its own (double) evaluation path.

Usage: python3 make_reference_values.py > reference_values.hpp
"""
from mpmath import mp, mpf, sqrt, log

mp.dps = 50


def log_term(s):
    return log(sqrt(s) + sqrt(s - 1))


def denom(s):
    return 2*s - 1 + sqrt((s - 1)/s)*log_term(s)


def branch_a(s):
    return 1/denom(s)


def branch_b(s):
    return s/denom(s)


def branch_sigma(s):
    return (sqrt(s*(s - 1)) + log_term(s))**2 / (2*denom(s)**3)


def branch_lambda(s, alpha):
    A = log_term(s)
    return (sqrt(s*(s - 1)) + A + 4*alpha*denom(s)*A)**2 / (2*denom(s)**3)


def fold_base(s):
    A = log_term(s)
    return 3/(2*s*sqrt(s*(s - 1)))*A**2 + (4 + 3/s)*A \
        + (4*s*s - 5*s - 3)/(2*sqrt(s*(s - 1)))


def fold_coupling(s):
    A = log_term(s)
    return (2/s**2)*A**3 + (2*(4*s - 3)/sqrt(s*(s - 1)))*A**2 \
        + (2*(2*s - 1)*(4*s - 3)/s)*A - 4*(2*s - 1)**2/sqrt(s*(s - 1))


def fold_criterion(s, alpha):
    return fold_base(s) + alpha*fold_coupling(s)


def phi(a, w):
    return sqrt(a)*(sqrt(w*(w - a)) + a*log((sqrt(w) + sqrt(w - a))/sqrt(a)))


def nonlocal_integral(a, b):
    L = log((sqrt(b) + sqrt(b - a))/sqrt(a))
    return 4*L/(sqrt(b*(b - a)) + a*L)


def monotone_increasing_root(f, lo, hi):
    assert f(lo) < 0 < f(hi)
    while hi - lo > mpf('1e-45')*hi:
        mid = (lo + hi)/2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi)/2


def fold_coordinate(alpha):
    return monotone_increasing_root(lambda s: fold_criterion(s, alpha),
                                    mpf('1.000001'), mpf('1e6'))


def emit(name, value, comment):
    print(f"inline constexpr double {name} = {float(value)!r};  // {comment}")


print("// Generated by make_reference_values.py -- do not edit by hand.")
print("// Independent 50-digit evaluations of the closed forms, rounded to double.")
print("#pragma once")
print()
print("namespace refvals {")
print()
emit("kLogTermAt2", log_term(2), "ln(sqrt(2) + 1)")
emit("kLogTermAt4", log_term(4), "ln(2 + sqrt(3))")
print()
emit("kBranchA_S2", branch_a(2), "a(2)")
emit("kBranchB_S2", branch_b(2), "b(2)")
emit("kBranchSigma_S2", branch_sigma(2), "sigma(2)")
emit("kBranchLambda_S2_Alpha1", branch_lambda(2, 1), "lambda(2) at alpha = 1")
emit("kBranchLambda_S10_Alpha1", branch_lambda(10, 1), "lambda(10) at alpha = 1")
emit("kNonlocalI_S2", nonlocal_integral(branch_a(2), branch_b(2)),
     "I(a(2), b(2))")
print()
emit("kPhi_A05_W075", phi(mpf('0.5'), mpf('0.75')), "phi(0.5, 0.75)")
print()
emit("kFoldBase_S2", fold_base(2), "alpha-free fold term at s = 2")
emit("kFoldCoupling_S2", fold_coupling(2), "alpha coefficient at s = 2")
g15 = log_term(mpf(3)/2) - mpf(3)/2*(4*mpf(3)/2 - 5) / \
    (8*(mpf(3)/2 - 1)*sqrt(mpf(3)/2*(mpf(3)/2 - 1)))
emit("kProofSampleG_S15", g15, "interior positivity sample used by the fold proof")
print()
for alpha, tag in [(0, "Alpha0"), (mpf('0.25'), "Alpha025"), (mpf('0.5'), "Alpha05"),
                   (1, "Alpha1"), (2, "Alpha2")]:
    ss = fold_coordinate(alpha)
    emit(f"kSStar_{tag}", ss, f"fold coordinate s* at alpha = {alpha}")
    emit(f"kLambdaStar_{tag}", branch_lambda(ss, alpha),
         f"pull-in voltage at alpha = {alpha}")
print()
ss0 = fold_coordinate(0)
half = branch_lambda(ss0, 0)/2
s_lo = monotone_increasing_root(lambda s: branch_lambda(s, 0) - half,
                                mpf('1.0000000001'), ss0)
s_hi = monotone_increasing_root(lambda s: -(branch_lambda(s, 0) - half),
                                ss0, mpf('1e9'))
emit("kRootBelowFold_HalfLambdaStar0", s_lo,
     "lower root of lambda(s) = lambda*/2 at alpha = 0")
emit("kRootAboveFold_HalfLambdaStar0", s_hi,
     "upper root of lambda(s) = lambda*/2 at alpha = 0")
print()
print("}  // namespace refvals")
