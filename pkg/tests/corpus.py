"""Deterministic test corpora shared by several test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from rmx.bicharacter import FunctionTable, enumerate_all, is_bicharacter_table
from rmx.cyclotomic import CycNumber, root_of_unity
from rmx.groups import GroupSpec

CYCLIC_12 = [(n,) for n in range(1, 13)]
NON_CYCLIC = [(2, 2), (4, 2), (2, 2, 2), (3, 3), (6, 2), (2, 3)]
ACCEPTANCE_GROUPS = CYCLIC_12 + NON_CYCLIC
SMALL_GROUPS = [o for o in ACCEPTANCE_GROUPS if GroupSpec(o).order <= 8]
TINY_GROUPS = [o for o in ACCEPTANCE_GROUPS if GroupSpec(o).order <= 6]


def _perturbations(e: int) -> list[CycNumber]:
    """Nonzero factors that move a value off the e-th roots of unity or scramble it."""
    m = 2 * e
    return [
        CycNumber.from_rational(m, 2),
        CycNumber.from_rational(m, -1),
        CycNumber.from_rational(m, Fraction(1, 3)),
        root_of_unity(m, 1),
        1 + root_of_unity(m, 2) * 2,
        root_of_unity(m, 2),
    ]


def non_bicharacter_tables(orders: tuple[int, ...], count: int = 20, seed: int = 0) -> list[FunctionTable]:
    """``count`` nowhere-zero tables that are not bicharacters, reproducibly.

    Half are bicharacter tables with one entry multiplied by a perturbing
    factor; the rest have random entries drawn from roots of unity and small
    rationals. Every table is confirmed non-multiplicative before it is kept.
    """
    spec = GroupSpec(orders)
    rng = random.Random(f"{orders}-{seed}")
    n, e = spec.order, spec.exponent
    m = 2 * e
    sigmas = list(enumerate_all(spec))
    factors = _perturbations(e)
    values = [root_of_unity(m, k) for k in range(m)] + [
        CycNumber.from_rational(m, q) for q in (2, -3, Fraction(1, 2), Fraction(-5, 7))
    ]
    out: list[FunctionTable] = []
    seen: set = set()
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 100 * count:
            raise RuntimeError(f"could not build {count} non-bicharacter tables on {spec}")
        if n == 1:
            rows = [[CycNumber.from_rational(m, Fraction(rng.choice([-1, 1]) * rng.randint(2, 40), rng.randint(1, 9)))]]
        elif len(out) % 2 == 0:
            sigma = sigmas[rng.randrange(len(sigmas))]
            rows = [[v.lift(m) for v in row] for row in sigma.table().values]
            a, b = rng.randrange(n), rng.randrange(n)
            rows[a][b] = rows[a][b] * factors[rng.randrange(len(factors))]
        else:
            rows = [[values[rng.randrange(len(values))] for _ in range(n)] for _ in range(n)]
        table = FunctionTable(spec, tuple(tuple(r) for r in rows), m)
        if table in seen or not table.is_nowhere_zero() or is_bicharacter_table(table):
            continue
        seen.add(table)
        out.append(table)
    return out
