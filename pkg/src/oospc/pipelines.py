"""Multi-stage recipes that chain constructions into optimal codes.

Each recipe returns a :class:`PipelineResult` whose ``stages`` keep every
intermediate design so that callers (and tests) can certify each step.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from . import bounds
from .constructions import (FamilyCounts, IngredientSet, csqs_g_product,
                            cyclic_gstar_expand, cyclic_sqs_to_gstar, fan_product,
                            fan_to_packing, fill, fill_fan, gdesign_to_1fg,
                            gstar_expand_cols, gstar_expand_rows, packing_to_oospc,
                            rosqs_to_1fg, semicyclic_h4)
from .data import load_builtin
from .design import DesignInstance, crt_split, regroup, swap_axes
from .errors import ConstructionError, ParameterError
from .groups import Block
from .search import SearchProblem, search
from .verify import verify_g_star, verify_oospc, verify_packing


@dataclass
class PipelineResult:
    final: object
    stages: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)


def trivial_sqs4() -> DesignInstance:
    return DesignInstance(1, 4, "steiner", 3, (4,), [Block(1, 4, ((0, 0), (0, 1), (0, 2), (0, 3)))])


def as_packing(d: DesignInstance) -> DesignInstance:
    return replace(d, kind="packing", e=None, groups=None, t=3, lam=2)


def _optimal(p: DesignInstance, stage: str):
    rep = verify_packing(p, require_strict=True)
    if not rep.valid:
        raise ConstructionError("packing does not verify", stage, rep)
    return rep.optimal


def pqs32_from_sqs4(budget=None) -> PipelineResult:
    """SQS(4) x G(2,8) -> G(2,16) over Z_4 x Z_8, filled with a searched PQS(16)."""
    g28 = load_builtin("ex-3.5-g28").design
    g = csqs_g_product(trivial_sqs4(), g28)
    found = search(SearchProblem(2, 8, (4,), 3, target=bounds.johnson_bound(2, 8, 4, 2),
                                 budget=budget))
    if not found.found:
        raise ConstructionError("no (2,8,4,2) packing of size J found", "search")
    p = fill(g, found.design)
    code = packing_to_oospc(p)
    return PipelineResult(code, {"g-design": g, "sub": found.design, "packing": p},
                          {"optimal": _optimal(p, "pqs32"),
                           "max_correlation": verify_oospc(code).details["max_correlation"]})


def pqs100_from_gstar() -> PipelineResult:
    """G*(5,4) over Z_10 x Z_2 expanded by 5 along columns, filled with itself."""
    ex = load_builtin("ex-3.1").design
    counts = FamilyCounts()
    g = gstar_expand_cols(replace(ex, kind="g-star"), 5, counts=counts)
    sub = swap_axes(as_packing(ex))
    p = fill(g, sub)
    return PipelineResult(packing_to_oospc(p), {"g-star": g, "sub": sub, "packing": p},
                          {"families": counts.sizes, "optimal": _optimal(p, "pqs100")})


def pair_fan_product(g: int = 8, ingredient: DesignInstance | None = None) -> PipelineResult:
    """G(5,4) over Z_10 x Z_2 with pair orbits, inflated by a semi-cyclic G(2, g)."""
    ex = load_builtin("ex-3.1").design
    if ingredient is None:
        if g != 8:
            raise ParameterError("only the bundled G(2,8) ingredient is available; pass one")
        ingredient = load_builtin("ex-3.5-g28").design
    master = gdesign_to_1fg(ex)
    out = fan_product(master, IngredientSet(g, {2: ingredient}, {4: semicyclic_h4(g)}))
    return PipelineResult(out, {"master": master, "cols": out.cols, "rows": out.rows})


def scyclic_gstar(sqs: DesignInstance, groups: int) -> DesignInstance:
    """Cyclic G*(groups, v/groups) from an S-cyclic SQS(v), certified."""
    d = cyclic_sqs_to_gstar(sqs, groups)
    rep = verify_g_star(d)
    if not rep.valid:
        raise ConstructionError("SQS does not give a cyclic G* design", "s-cyclic", rep)
    return d


def cyclic_gstar_demo(g: int = 3, budget=None) -> PipelineResult:
    """Search an S-cyclic SQS(10), read it as a cyclic G*(5,2), expand by g."""
    found = search(SearchProblem(1, 10, (4,), 3, target=3, kind="steiner", s_cyclic=True,
                                 strict=False, budget=budget))
    if not found.found:
        raise ConstructionError("no S-cyclic SQS(10) found", "search")
    base = scyclic_gstar(found.design, 5)
    counts = FamilyCounts()
    out = cyclic_gstar_expand(base, g, counts=counts)
    return PipelineResult(out, {"sqs": found.design, "cyclic-g-star": base},
                          {"families": counts.sizes})


def scyclic_oospc(sqs_m: DesignInstance, sqs_n: DesignInstance, pqs_g: DesignInstance,
                  m: int, n: int, g: int) -> PipelineResult:
    """Optimal codes over Z_m x Z_{2^e ng} and Z_{mg} x Z_{2^e n}.

    Inputs are S-cyclic SQS(2^e m) and SQS(2^e n) and a strictly cyclic
    PQS(2^e g) of size J(1, 2^e g, 4, 2); m, n, g odd with n, g >= 3.
    """
    if any(x % 2 == 0 for x in (m, n, g)) or n < 3 or g < 3:
        raise ParameterError("m, n, g must be odd with n, g >= 3")
    two = sqs_m.n // m
    if two not in (2, 4) or sqs_n.n != two * n or pqs_g.n != two * g or pqs_g.m != 1:
        raise ParameterError("ingredient orders must be 2^e m, 2^e n, 2^e g with e in {1, 2}")
    jg = bounds.johnson_bound(1, two * g, 4, 2)
    if len(pqs_g.base_blocks) != jg:
        raise ParameterError(f"cyclic PQS({two * g}) must have J = {jg} base blocks")
    stages = {}
    gm = crt_split(replace(scyclic_gstar(sqs_m, m), kind="g-star"), m, two)
    gn = scyclic_gstar(sqs_n, n)
    stages["g-star-m"] = gm

    # Z_m x Z_{2^e ng}
    cols = gstar_expand_cols(gm, n * g)
    cyc = cyclic_gstar_expand(gn, g)
    sub_cols = fill(cyc, as_packing(pqs_g))
    p_cols = fill(cols, sub_cols)
    stages.update({"cols-g-star": cols, "cols-sub": sub_cols, "cols-packing": p_cols})

    # Z_{mg} x Z_{2^e n}
    rows = gstar_expand_rows(gstar_expand_cols(gm, n), g)
    gn2 = crt_split(replace(gn, kind="g-star"), n, two)
    sub = fill(gstar_expand_cols(gn2, g), as_packing(pqs_g))
    sub_rows = swap_axes(regroup(sub, two * n, g))
    p_rows = fill(rows, sub_rows)
    stages.update({"rows-g-star": rows, "rows-sub": sub_rows, "rows-packing": p_rows})
    return PipelineResult((p_cols, p_rows), stages,
                          {"cols-optimal": _optimal(p_cols, "s-cyclic-cols"),
                           "rows-optimal": _optimal(p_rows, "s-cyclic-rows")})


def rosqs_oospc(rosqs_m, rosqs_n, ingredient) -> PipelineResult:
    """Optimal code over Z_m x Z_n from RoSQS(m+1), RoSQS(n+1), m, n = 1 (mod 6).

    For n = 1 the groups are single points and ``rosqs_n`` may be None.

    ``ingredient`` is a strictly semi-cyclic 1-fan design of type n^3 over Z_3 x Z_n.
    """
    m, n = rosqs_m.m, ingredient.n
    if n > 1 and (rosqs_n is None or rosqs_n.m != n):
        raise ParameterError(f"need a RoSQS({n + 1}) to fill the groups")
    if m % 6 != 1 or n % 6 != 1:
        raise ParameterError("this recipe needs m, n = 1 (mod 6)")
    master = swap_axes(rosqs_to_1fg(rosqs_m))
    prod = fan_product(master, IngredientSet(n, {3: ingredient}, {4: semicyclic_h4(n)}))
    full = prod.cols if n == 1 else fill_fan(prod.cols, rosqs_to_1fg(rosqs_n))
    p = fan_to_packing(full)
    return PipelineResult(packing_to_oospc(p),
                          {"master": master, "product": prod.cols, "filled": full, "packing": p},
                          {"optimal": _optimal(p, "rosqs")})


def rosqs_gdesign(rosqs_m, g3: DesignInstance, pqs_g: DesignInstance) -> PipelineResult:
    """RoSQS(m+1) and a strictly semi-cyclic G(3, g) give a G(m, g) over Z_m x Z_g,
    filled with a strictly cyclic PQS(g)."""
    m, g = rosqs_m.m, g3.n
    if m % 6 != 1:
        raise ParameterError("this recipe needs m = 1 (mod 6)")
    master = swap_axes(rosqs_to_1fg(rosqs_m))
    prod = fan_product(master, IngredientSet(g, {3: g3}, {4: semicyclic_h4(g)}))
    p = fill(prod.cols, as_packing(pqs_g))
    return PipelineResult(packing_to_oospc(p), {"master": master, "g-design": prod.cols,
                                                "packing": p},
                          {"optimal": _optimal(p, "rosqs-g")})


def csqs_pipeline(sqs: DesignInstance, g2n: DesignInstance, sub: DesignInstance):
    """Cyclic SQS(m) x semi-cyclic G(2, n), filled with a Z_2 x Z_n packing."""
    g = csqs_g_product(sqs, g2n)
    p = fill(g, sub)
    return PipelineResult(packing_to_oospc(p), {"g-design": g, "packing": p},
                          {"optimal": _optimal(p, "csqs")})
