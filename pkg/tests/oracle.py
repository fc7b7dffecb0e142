"""Independent brute-force coverage counter used to cross-check the verifier.

Develops every base block under the full translation group with plain loops
and counts t-subsets; shares no code with the package's verifier.
"""

from collections import Counter
from itertools import combinations


def develop(m, n, base, action="full"):
    shifts = [(dr, dc) for dr in range(m) for dc in range(n)] if action == "full" \
        else [(0, dc) for dc in range(n)]
    out = []
    for pts in base:
        orbit = {tuple(sorted(((r + dr) % m, (c + dc) % n) for r, c in pts))
                 for dr, dc in shifts}
        out.append(sorted(orbit))
    return out


def coverage(m, n, base, t=3, action="full"):
    cnt = Counter()
    for orbit in develop(m, n, base, action):
        for blk in orbit:
            for sub in combinations(blk, t):
                cnt[sub] += 1
    return cnt


def points(m, n):
    return [(r, c) for r in range(m) for c in range(n)]


def packing_violations(m, n, base, t=3):
    """Number of t-subsets covered more than once."""
    return sum(1 for v in coverage(m, n, base, t).values() if v > 1)


def group_design_violations(m, n, base, group_of, t=3, action="full"):
    """Cross-group t-subsets not covered exactly once plus covered within-group ones."""
    cnt = coverage(m, n, base, t, action)
    bad = 0
    for sub in combinations(points(m, n), t):
        same = len({group_of(p) for p in sub}) == 1
        c = cnt.get(sub, 0)
        if (same and c) or (not same and c != 1):
            bad += 1
    return bad


def is_strict(m, n, base, action="full"):
    size = m * n if action == "full" else n
    return all(len(o) == size for o in develop(m, n, base, action))


def max_correlation(m, n, codewords):
    """Largest nontrivial 2-D cyclic auto- or cross-correlation, by direct shifting."""
    sets = [set(cw) for cw in codewords]
    best = 0
    for i, a in enumerate(sets):
        for j, b in enumerate(sets):
            for dr in range(m):
                for dc in range(n):
                    if i == j and (dr, dc) == (0, 0):
                        continue
                    if j < i:
                        continue
                    shifted = {((r + dr) % m, (c + dc) % n) for r, c in b}
                    best = max(best, len(a & shifted))
    return best


def h_design_violations(m, n, base, group_of, t=3, action="full"):
    """Transversal t-subsets not covered exactly once plus covered non-transversal ones."""
    cnt = coverage(m, n, base, t, action)
    bad = 0
    for sub in combinations(points(m, n), t):
        transversal = len({group_of(p) for p in sub}) == t
        c = cnt.get(sub, 0)
        if (not transversal and c) or (transversal and c != 1):
            bad += 1
    return bad
