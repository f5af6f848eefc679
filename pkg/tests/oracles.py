"""Independent reference computations used by the tests.

Everything here works in exact Fractions and walks the model forwards, so it
shares no code path with the backward recursion in ``urnscheme.survival``.
"""

from collections import defaultdict
from fractions import Fraction


def bisect_root(f, lo, hi, iters=200):
    flo = f(lo)
    for _ in range(iters):
        mid = (lo + hi) / 2
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def enumerate_increment(t, alpha, A, B, a_items, b_items):
    """Exact E[p_{n+1}] - p_n over every (colour, a, b) outcome triple."""
    p = Fraction(alpha, t)
    total = Fraction(0)
    for a, ra in a_items:
        for b, sb in b_items:
            w = ra * sb
            total += w * p * Fraction(alpha + A - a, t + A)
            total += w * (1 - p) * Fraction(alpha + b, t + B)
    return total - p


def survival_by_paths(t, alpha, M, A, B, a_items, b_items):
    """P{tau > M} by walking every outcome sequence (no state merging)."""
    if not 0 <= alpha <= t:
        return Fraction(0)
    if M == 0:
        return Fraction(1)
    p = Fraction(alpha, t)
    total = Fraction(0)
    for a, ra in a_items:
        na, nt = alpha + A - a, t + A
        if 0 <= na <= nt:
            total += p * ra * survival_by_paths(nt, na, M - 1, A, B, a_items, b_items)
    for b, sb in b_items:
        na, nt = alpha + b, t + B
        if 0 <= na <= nt:
            total += (1 - p) * sb * survival_by_paths(nt, na, M - 1, A, B, a_items, b_items)
    return total


def survival_forward(t, alpha, M, A, B, a_items, b_items):
    """P{tau > M} by pushing exact probability mass forward M steps."""
    if not 0 <= alpha <= t:
        return Fraction(0)
    mass = {(t, alpha): Fraction(1)}
    for _ in range(M):
        nxt = defaultdict(Fraction)
        for (tt, aa), m in mass.items():
            p = Fraction(aa, tt)
            for a, ra in a_items:
                na, nt = aa + A - a, tt + A
                if 0 <= na <= nt:
                    nxt[(nt, na)] += m * p * ra
            for b, sb in b_items:
                na, nt = aa + b, tt + B
                if 0 <= na <= nt:
                    nxt[(nt, na)] += m * (1 - p) * sb
        mass = nxt
    return sum(mass.values(), Fraction(0))
