"""Upper bounds on code size and closed-form base-block counts.

All arithmetic is exact integer or rational arithmetic.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import ParameterError


@dataclass(frozen=True)
class BoundResult:
    johnson: int
    improved: int
    rule: str

    def to_dict(self):
        return asdict(self)


def johnson_bound(m: int, n: int, w: int, lam: int) -> int:
    """Nested-floor bound floor(1/w floor((v-1)/(w-1) ... floor((v-lam)/(w-lam)))), v = mn."""
    v = m * n
    if m < 1 or n < 1 or lam < 1 or not (v > w >= lam):
        raise ParameterError(f"need mn > w >= lambda >= 1, got m={m} n={n} w={w} lambda={lam}")
    if w == lam:
        # innermost quotient (v - lam) / 0 is undefined
        raise ParameterError("w must exceed lambda")
    x = (v - lam) // (w - lam)
    for i in range(lam - 1, 0, -1):
        x = ((v - i) * x) // (w - i)
    return x // w


def improvement_rule(m: int, n: int) -> str:
    """Which improvement applies to (m, n, 4, 2), if any.

    The returned names are part of the CLI output contract.
    """
    v = m * n
    if v % 24 == 0:
        return "lemma-2.2"
    if m % 3 == 0 and n % 3 == 0 and v % 72 in (0, 18, 36):
        return "lemma-2.4"
    return "johnson"


def oospc_upper_bound(m: int, n: int) -> BoundResult:
    """Bound for weight 4 and correlation 2, with the J - 1 improvements."""
    if m * n <= 4:
        raise ParameterError(f"need mn > 4, got {m * n}")
    j = johnson_bound(m, n, 4, 2)
    rule = improvement_rule(m, n)
    return BoundResult(j, j - 1 if rule != "johnson" else j, rule)


def upper_bound(m: int, n: int, w: int, lam: int) -> BoundResult:
    if w == 4 and lam == 2:
        return oospc_upper_bound(m, n)
    j = johnson_bound(m, n, w, lam)
    return BoundResult(j, j, "johnson")


def g_count_fraction(m: int, n: int, e: int, k: int = 4) -> Fraction:
    if e < 1 or m % e:
        raise ParameterError(f"e={e} does not divide m={m}")
    v, u = m * n, e * n
    return Fraction((v - 1) * (v - 2) - (u - 1) * (u - 2), k * (k - 1) * (k - 2))


def expected_g_base_count(m: int, n: int, e: int, k: int = 4) -> int:
    """Base blocks of a strictly invariant G(m/e, en, k, 3) over Z_m x Z_n."""
    q = g_count_fraction(m, n, e, k)
    if q.denominator != 1:
        raise ParameterError(
            f"({m},{n},{e},{k}): base-block count {q} is not an integer")
    return int(q)


def floor_div_identity(a: int, b: int, c: int) -> bool:
    """floor(floor(c/b)/a) == floor(c/(ab)) for positive a, b and c >= 0."""
    return (c // b) // a == c // (a * b)


def floor_identity_check(m: int, n: int, e: int, k: int = 4) -> bool:
    """Does the G-design count plus J(e,n,k,2) equal J(m,n,k,2) exactly?

    Evaluated in rationals, so parameter sets with a non-integral G-design
    count return False rather than raising.
    """
    lhs = g_count_fraction(m, n, e, k) + johnson_bound(e, n, k, 2)
    return lhs == johnson_bound(m, n, k, 2)


def optimality(size: int, m: int, n: int, w: int, lam: int = 2) -> dict:
    b = upper_bound(m, n, w, lam)
    return {"size": size, "bound": b.improved, "rule": b.rule, "meets_bound": size == b.improved}
