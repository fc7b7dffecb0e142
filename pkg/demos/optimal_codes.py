"""Build every desk-scale optimal code this package knows how to make and certify it."""

import time

from oospc import bounds, pipelines as P
from oospc.data import load_builtin
from oospc.design import DesignInstance
from oospc.galois import inversive_to_oospc
from oospc.search import SearchProblem, search
from oospc.verify import verify_oospc, verify_packing


def row(name, packing):
    rep = verify_packing(packing, require_strict=True)
    b = bounds.upper_bound(packing.m, packing.n, packing.k[0], 2)
    amb = f"Z{packing.m} x Z{packing.n}"
    print(f"{name:<28} {amb:<11} w={packing.k[0]} {len(packing.base_blocks):>5} / "
          f"{b.improved:<5} {'optimal' if rep.optimal['meets_bound'] else 'below bound'}")


def main():
    t0 = time.perf_counter()
    for key in ("ex-2.3", "lem-6.13"):
        row(f"bundled {key}", load_builtin(key).design)
    row("SQS(4) x G(2,8), filled", P.pqs32_from_sqs4().stages["packing"])
    row("G* expansion, filled", P.pqs100_from_gstar().stages["packing"])
    for p in (3, 5, 7):
        code, packing = inversive_to_oospc(p)
        assert verify_oospc(code).valid
        row(f"inversive plane p={p}", packing)
    sqs = search(SearchProblem(1, 10, kind="steiner", strict=False, s_cyclic=True,
                               target=3)).design
    empty = DesignInstance(1, 6, "packing", 3, (4,), [])
    cols, rows = P.scyclic_oospc(sqs, sqs, empty, 5, 5, 3).final
    row("S-cyclic recipe, columns", cols)
    row("S-cyclic recipe, rows", rows)
    print(f"done in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
