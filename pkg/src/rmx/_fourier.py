"""Character sums between functions on G x G and coefficient tables on G* x G*.

Two routes are kept apart on purpose:

* ``ansatz_*`` evaluate the fourfold sum
  ``c(a', b') = 1/n^2 sum_{a, b} f(a, b) <a', a>^* <b', b>^*`` term by term;
* ``to_coefficients`` / ``to_function`` factor the same transforms into two
  single-variable passes (O(n^3)).

Tables are indexed by lex index; coefficient tables are sparse dicts keyed by
``(i, j)`` index pairs with zeros pruned.
"""

from __future__ import annotations

from typing import Sequence

from .cyclotomic import CycNumber, from_root_counts
from .groups import GroupSpec

Coeffs = dict[tuple[int, int], CycNumber]


def ansatz_from_exponents(spec: GroupSpec, sexp: Sequence[Sequence[int]]) -> Coeffs:
    """Fourfold sum for ``f(a, b) = zeta_e^sexp[a][b]``, done by counting exponents."""
    tables = spec._tables
    n, e, pair = tables.n, tables.exponent, tables.pair
    den = n * n
    out: Coeffs = {}
    for ap in range(n):
        pa = pair[ap]
        shifted = [[s - pa[a] for s in sexp[a]] for a in range(n)]
        for bp in range(n):
            pb = pair[bp]
            counts = [0] * e
            for row in shifted:
                for s, p in zip(row, pb):
                    counts[(s - p) % e] += 1
            value = from_root_counts(e, counts, den)
            if value:
                out[(ap, bp)] = value
    return out


def ansatz_from_values(spec: GroupSpec, values: Sequence[Sequence[CycNumber]], conductor: int) -> Coeffs:
    """Fourfold sum for an arbitrary table of values in Q(zeta_conductor)."""
    tables = spec._tables
    n, pair = tables.n, tables.pair
    scale = conductor // tables.exponent
    zero = CycNumber.zero(conductor)
    den = n * n
    out: Coeffs = {}
    for ap in range(n):
        pa = pair[ap]
        for bp in range(n):
            pb = pair[bp]
            buckets: dict[int, CycNumber] = {}
            for a in range(n):
                row = values[a]
                for b in range(n):
                    j = (-scale * (pa[a] + pb[b])) % conductor
                    buckets[j] = buckets.get(j, zero) + row[b]
            value = sum((v.mul_root(j) for j, v in buckets.items()), zero) / den
            if value:
                out[(ap, bp)] = value
    return out


def to_coefficients(spec: GroupSpec, values: Sequence[Sequence[CycNumber]], conductor: int) -> Coeffs:
    """Same transform as the ansatz, one variable at a time."""
    tables = spec._tables
    n, pair = tables.n, tables.pair
    scale = conductor // tables.exponent
    zero = CycNumber.zero(conductor)
    half = [
        [sum((values[a][b].mul_root(-scale * pair[bp][b]) for b in range(n)), zero) for bp in range(n)]
        for a in range(n)
    ]
    den = n * n
    out: Coeffs = {}
    for ap in range(n):
        for bp in range(n):
            value = sum((half[a][bp].mul_root(-scale * pair[ap][a]) for a in range(n)), zero) / den
            if value:
                out[(ap, bp)] = value
    return out


def to_function(spec: GroupSpec, coeffs: Coeffs, conductor: int) -> list[list[CycNumber]]:
    """``f(a, b) = sum c(a', b') <a', a> <b', b>`` for a sparse coefficient table."""
    tables = spec._tables
    n, pair = tables.n, tables.pair
    scale = conductor // tables.exponent
    zero = CycNumber.zero(conductor)
    rows: dict[int, list[tuple[int, CycNumber]]] = {}
    for (ap, bp), c in coeffs.items():
        rows.setdefault(ap, []).append((bp, c))
    # half[ap][b] = sum_bp c(ap, bp) <bp, b>
    half = {
        ap: [sum((c.mul_root(scale * pair[bp][b]) for bp, c in terms), zero) for b in range(n)]
        for ap, terms in rows.items()
    }
    return [
        [sum((h[b].mul_root(scale * pair[ap][a]) for ap, h in half.items()), zero) for b in range(n)]
        for a in range(n)
    ]
